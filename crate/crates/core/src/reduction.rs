//! Semidirect products `R ⋉ n`, relative cohomology `H^k(n, g/n)^R`, and
//! the two independent checks of the reduction hypotheses.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::cohomology::{center_dim, Coefficients, CohomologyReport, Complex};
use crate::exactnum::{Echelon, Rational, SparseMatrix, SVec};
use crate::liecore::{derivation_check, jacobiator, Cochain, DerivationMatrix, LieLaw};
use crate::torus_scheme::WeightSystem;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("invalid action: {0}")]
    InvalidAction(String),
}

/// `R` acting on `n` by derivations; `n = <e_1..e_n>`, `R = <e_(n+1)..e_m>`.
#[derive(Clone, Debug)]
pub struct SemidirectData {
    pub n_law: LieLaw<Rational>,
    pub r_law: LieLaw<Rational>,
    pub action: Vec<DerivationMatrix>,
}

impl SemidirectData {
    pub fn new(
        n_law: LieLaw<Rational>,
        r_law: LieLaw<Rational>,
        action: Vec<DerivationMatrix>,
    ) -> Result<Self, ReductionError> {
        let d = SemidirectData { n_law, r_law, action };
        d.validate()?;
        Ok(d)
    }

    /// The torus of a weight system acting diagonally.
    pub fn torus(n_law: LieLaw<Rational>, ws: &WeightSystem) -> Result<Self, ReductionError> {
        let r = ws.torus_dim();
        Self::new(n_law, LieLaw::abelian(r, ()), ws.derivations())
    }

    pub fn n_dim(&self) -> usize {
        self.n_law.dim()
    }

    pub fn r_dim(&self) -> usize {
        self.r_law.dim()
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let bad = |s: String| Err(ReductionError::InvalidAction(s));
        if self.action.len() != self.r_dim() {
            return bad(format!("{} action matrices for dim R = {}", self.action.len(), self.r_dim()));
        }
        if !jacobiator(&self.n_law).is_zero() {
            return bad("n does not satisfy Jacobi".into());
        }
        if !jacobiator(&self.r_law).is_zero() {
            return bad("R does not satisfy Jacobi".into());
        }
        for (a, m) in self.action.iter().enumerate() {
            if m.dim() != self.n_dim() {
                return bad(format!("action matrix {} has size {}", a + 1, m.dim()));
            }
            if let Some((i, j, k, c)) = derivation_check(&self.n_law, m).residual {
                return bad(format!("action matrix {} is not a derivation at ({i}, {j}) -> e{k}: {c}", a + 1));
            }
        }
        for a in 0..self.r_dim() {
            for b in a + 1..self.r_dim() {
                let mut expect = DerivationMatrix::zero(self.n_dim());
                for (c, x) in self.r_law.bracket(a + 1, b + 1) {
                    for (&(row, col), y) in self.action[c - 1].entries() {
                        expect.set(row, col, expect.get(row, col) + x * y);
                    }
                }
                if self.action[a].commutator(&self.action[b]) != expect {
                    return bad(format!("matrices {} and {} do not represent R", a + 1, b + 1));
                }
            }
        }
        Ok(())
    }

    /// `ad_R(e_a)` on `R`, entry `(c, b)` = coefficient of `e_c` in `[e_a, e_b]`.
    pub fn r_adjoint(&self) -> Vec<DerivationMatrix> {
        let r = self.r_dim();
        (1..=r)
            .map(|a| {
                let mut m = DerivationMatrix::zero(r);
                for b in 1..=r {
                    for (c, x) in self.r_law.bracket(a, b) {
                        m.set(*c, b, x.clone());
                    }
                }
                m
            })
            .collect()
    }

    fn invariance(&self) -> Vec<(DerivationMatrix, Option<DerivationMatrix>)> {
        self.action.iter().map(|d| (d.clone(), Some(d.clone()))).collect()
    }
}

/// The law of `R ⋉ n` on `e_1..e_(n+r)`.
pub fn semidirect_build(d: &SemidirectData) -> Result<LieLaw<Rational>, ReductionError> {
    d.validate()?;
    let n = d.n_dim();
    let m = n + d.r_dim();
    let mut e: Vec<(usize, usize, usize, Rational)> =
        d.n_law.constants().iter().map(|(&(i, j, k), c)| (i, j, k, c.clone())).collect();
    for (a, act) in d.action.iter().enumerate() {
        // [e_j, e_(n+a)] = −δ_a e_j
        for j in 1..=n {
            for (l, x) in act.image(j) {
                e.push((j, n + a + 1, l, -x));
            }
        }
    }
    for (&(a, b, c), x) in d.r_law.constants() {
        e.push((n + a, n + b, n + c, x.clone()));
    }
    let law = LieLaw::rational(m, &e).map_err(|err| ReductionError::InvalidAction(err.to_string()))?;
    if !jacobiator(&law).is_zero() {
        return Err(ReductionError::InvalidAction("assembled law fails Jacobi".into()));
    }
    Ok(law)
}

/// `H^k(n, g/n)^R` with `n` acting trivially on `g/n ≅ R`.
pub fn relative_cohomology(d: &SemidirectData, k: usize) -> CohomologyReport {
    let inv = d.action.iter().cloned().zip(d.r_adjoint().into_iter().map(Some)).collect();
    Complex { law: &d.n_law, coefficients: Coefficients::Trivial(d.r_dim()), invariance: inv }.report(k)
}

/// `dim Hom_R(n/[n,n], g/n)` from its defining linear system.
pub fn hom_r_dim(d: &SemidirectData) -> usize {
    let (n, r) = (d.n_dim(), d.r_dim());
    let var = |c: usize, j: usize| (c - 1) * n + (j - 1);
    let ad = d.r_adjoint();
    let mut rows: Vec<SVec> = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for c in 1..=r {
                let row: SVec = d.n_law.bracket(i, j).iter().map(|(l, x)| (var(c, *l), x.clone())).collect();
                rows.push(row);
            }
        }
    }
    for (act, ad_a) in d.action.iter().zip(&ad) {
        for j in 1..=n {
            for c in 1..=r {
                let mut row = SVec::new();
                for (l, x) in act.image(j) {
                    *row.entry(var(c, l)).or_insert_with(Rational::zero) += x;
                }
                for (b, y) in ad_a.row(c) {
                    *row.entry(var(b, j)).or_insert_with(Rational::zero) -= y;
                }
                row.retain(|_, v| !v.is_zero());
                rows.push(row);
            }
        }
    }
    n * r - SparseMatrix::from_rows(n * r, &rows).rank()
}

/// `i(f)`: the same constants on `g`, zero whenever an argument lies in `R`.
pub fn embed(f: &Cochain<Rational>, m: usize) -> Cochain<Rational> {
    let mut out = Cochain::zero(f.degree(), m, m);
    for ((args, k), c) in f.entries() {
        out.add_entry(args.clone(), *k, c.clone());
    }
    out
}

/// Rank data of `ī_q : H^q(n,n)^R → H^q(g,g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub source_dim: usize,
    /// `dim H^q(g,g)`, when computed.
    pub target_dim: Option<usize>,
    pub image_dim: usize,
}

impl InducedMap {
    pub fn injective(&self) -> bool {
        self.image_dim == self.source_dim
    }

    pub fn surjective(&self) -> bool {
        self.target_dim == Some(self.image_dim)
    }
}

fn coboundary_echelon(c: &Complex, q: usize) -> Echelon {
    let mut ech = Echelon::new();
    if q == 0 {
        return ech;
    }
    let (prev, space) = (c.space(q - 1), c.space(q));
    for v in c.invariant_basis(q - 1) {
        ech.insert(space.vector(&c.d(&prev.cochain(&v))));
    }
    ech
}

fn induced_map(d: &SemidirectData, g: &LieLaw<Rational>, q: usize, with_target: bool) -> InducedMap {
    let n_complex = Complex::adjoint(&d.n_law, &[]);
    let n_complex = Complex { invariance: d.invariance(), ..n_complex };
    let g_complex = Complex::adjoint(g, &[]);
    let rep = n_complex.report(q);
    let target_dim = with_target.then(|| g_complex.report(q).dim_h);
    let mut ech = coboundary_echelon(&g_complex, q);
    let base = ech.rank();
    let space = g_complex.space(q);
    for z in &rep.cocycle_basis {
        ech.insert(space.vector(&embed(z, g.dim())));
    }
    InducedMap { degree: q, source_dim: rep.dim_h, target_dim, image_dim: ech.rank() - base }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// `R` has a nonzero center.
    TorusPart,
    /// `R` has zero center.
    NoTorusPart,
}

impl fmt::Display for ReductionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionCase::TorusPart => write!(f, "U != 0"),
            ReductionCase::NoTorusPart => write!(f, "U = 0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub i1_epi: bool,
    pub i2_iso: bool,
    pub i3_mono: bool,
    pub maps: Vec<InducedMap>,
    pub h1_rel: usize,
    pub h2_rel: usize,
    pub hom_r_dim: usize,
    pub h0_g: usize,
    pub h1_g: usize,
    pub complete: bool,
    pub case: ReductionCase,
    /// All three `ī_k` conditions, from the direct rank computation.
    pub direct_verdict: bool,
    /// The case criterion from relative cohomology and completeness.
    pub criterion_verdict: bool,
}

impl ReductionReport {
    pub fn routes_agree(&self) -> bool {
        self.direct_verdict == self.criterion_verdict
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.maps {
            let t = m.target_dim.map_or("-".to_string(), |x| x.to_string());
            out.push_str(&format!(
                "i{}: dim H^{}(n,n)^R = {}, dim H^{}(g,g) = {}, rank = {}\n",
                m.degree, m.degree, m.source_dim, m.degree, t, m.image_dim
            ));
        }
        out.push_str(&format!(
            "i1 epi = {}, i2 iso = {}, i3 mono = {}\n",
            self.i1_epi, self.i2_iso, self.i3_mono
        ));
        out.push_str(&format!(
            "dim H^1(n,g/n)^R = {}, dim H^2(n,g/n)^R = {}, dim Hom_R = {}\n",
            self.h1_rel, self.h2_rel, self.hom_r_dim
        ));
        out.push_str(&format!(
            "dim H^0(g,g) = {}, dim H^1(g,g) = {}, complete = {}, case {}\n",
            self.h0_g, self.h1_g, self.complete, self.case
        ));
        out.push_str(&format!(
            "direct = {}, criterion = {}, agree = {}\n",
            self.direct_verdict,
            self.criterion_verdict,
            self.routes_agree()
        ));
        out
    }
}

/// Checks the reduction hypotheses directly through `ī_1, ī_2, ī_3` and
/// through the relative-cohomology criterion.
pub fn check_reduction(d: &SemidirectData) -> Result<ReductionReport, ReductionError> {
    let g = semidirect_build(d)?;
    let maps: Vec<InducedMap> = (1..=3).map(|q| induced_map(d, &g, q, q < 3)).collect();
    let i1_epi = maps[0].surjective();
    let i2_iso = maps[1].surjective() && maps[1].injective();
    let i3_mono = maps[2].injective();
    let h1_rel = relative_cohomology(d, 1).dim_h;
    let h2_rel = relative_cohomology(d, 2).dim_h;
    let h0_g = center_dim(&g);
    let h1_g = maps[0].target_dim.unwrap_or_default();
    let complete = h0_g == 0 && h1_g == 0;
    let case = if center_dim(&d.r_law) > 0 { ReductionCase::TorusPart } else { ReductionCase::NoTorusPart };
    let rel_zero = h1_rel == 0 && h2_rel == 0;
    let criterion_verdict = match case {
        ReductionCase::TorusPart => complete && rel_zero,
        ReductionCase::NoTorusPart => rel_zero,
    };
    Ok(ReductionReport {
        i1_epi,
        i2_iso,
        i3_mono,
        maps,
        h1_rel,
        h2_rel,
        hom_r_dim: hom_r_dim(d),
        h0_g,
        h1_g,
        complete,
        case,
        direct_verdict: i1_epi && i2_iso && i3_mono,
        criterion_verdict,
    })
}
