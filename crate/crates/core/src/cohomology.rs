//! Cocycles, coboundaries and cohomology of the Chevalley–Eilenberg complex,
//! plain or restricted to invariants of a set of derivations; weight-graded
//! degree-2 homology; the order-by-order obstruction step.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactnum::{Echelon, Rational, SVec, SparseMatrix};
use crate::liecore::{
    ce_differential, derivation_action, derivation_check, jacobiator, nr_bracket, trivial_differential, Cochain,
    DerivationMatrix, LieLaw,
};
use crate::torus_scheme::WeightSystem;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("the input is not a Lie law (nonzero jacobiator)")]
    NotALaw,
    #[error("invariance matrix {0} is not a derivation of the law")]
    NotADerivation(usize),
    #[error("the deformation equation fails at order {0}")]
    OrderViolation(usize),
}

/// Dimensions and bases of `Z^k`, `B^k` and a complement of `B^k` in `Z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub cocycle_basis: Vec<Cochain<Rational>>,
    pub coboundary_basis: Vec<Cochain<Rational>>,
    pub representative_basis: Vec<Cochain<Rational>>,
}

/// All `q`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < q - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, q, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of `C^q` with basis cochains ordered by (arguments, target).
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    keys: Vec<(Vec<usize>, usize)>,
    index: BTreeMap<(Vec<usize>, usize), usize>,
}

impl CochainSpace {
    pub fn new(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        let mut keys = Vec::new();
        for s in subsets(source_dim, degree) {
            for k in 1..=target_dim {
                keys.push((s.clone(), k));
            }
        }
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        CochainSpace { degree, source_dim, target_dim, keys, index }
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn key(&self, i: usize) -> &(Vec<usize>, usize) {
        &self.keys[i]
    }

    pub fn basis_cochain(&self, i: usize) -> Cochain<Rational> {
        let (a, k) = self.keys[i].clone();
        let mut f = Cochain::zero(self.degree, self.source_dim, self.target_dim);
        f.add_entry(a, k, Rational::one());
        f
    }

    pub fn vector(&self, f: &Cochain<Rational>) -> SVec {
        f.entries().iter().map(|(k, c)| (self.index[k], c.clone())).collect()
    }

    pub fn cochain(&self, v: &SVec) -> Cochain<Rational> {
        let mut f = Cochain::zero(self.degree, self.source_dim, self.target_dim);
        for (i, c) in v {
            let (a, k) = self.keys[*i].clone();
            f.add_entry(a, k, c.clone());
        }
        f
    }
}

/// The module a complex takes values in.
#[derive(Clone, Debug)]
pub enum Coefficients {
    /// The adjoint module.
    Adjoint,
    /// A trivial module of the given dimension.
    Trivial(usize),
}

/// A cochain complex of a rational law with an optional invariance
/// condition `δ·f = 0` for each `(δ, ρ(δ))`.
#[derive(Clone, Debug)]
pub struct Complex<'a> {
    pub law: &'a LieLaw<Rational>,
    pub coefficients: Coefficients,
    pub invariance: Vec<(DerivationMatrix, Option<DerivationMatrix>)>,
}

impl<'a> Complex<'a> {
    pub fn adjoint(law: &'a LieLaw<Rational>, derivations: &[DerivationMatrix]) -> Self {
        Complex {
            law,
            coefficients: Coefficients::Adjoint,
            invariance: derivations.iter().map(|d| (d.clone(), Some(d.clone()))).collect(),
        }
    }

    pub fn target_dim(&self) -> usize {
        match self.coefficients {
            Coefficients::Adjoint => self.law.dim(),
            Coefficients::Trivial(r) => r,
        }
    }

    pub fn space(&self, q: usize) -> CochainSpace {
        CochainSpace::new(q, self.law.dim(), self.target_dim())
    }

    pub fn d(&self, f: &Cochain<Rational>) -> Cochain<Rational> {
        match self.coefficients {
            Coefficients::Adjoint => ce_differential(self.law, f),
            Coefficients::Trivial(_) => trivial_differential(self.law, f),
        }
    }

    fn diagonal(&self) -> bool {
        self.invariance.iter().all(|(d, r)| d.is_diagonal() && r.as_ref().is_none_or(|m| m.is_diagonal()))
    }

    /// Basis of the invariant subspace of `C^q`, as coordinate vectors.
    pub fn invariant_basis(&self, q: usize) -> Vec<SVec> {
        let space = self.space(q);
        if self.invariance.is_empty() {
            return (0..space.dim()).map(|i| SVec::from([(i, Rational::one())])).collect();
        }
        if self.diagonal() {
            let diags: Vec<(Vec<Rational>, Option<Vec<Rational>>)> = self
                .invariance
                .iter()
                .map(|(d, r)| (d.diagonal_entries(), r.as_ref().map(|m| m.diagonal_entries())))
                .collect();
            return (0..space.dim())
                .filter(|&i| {
                    let (args, k) = space.key(i);
                    diags.iter().all(|(d, r)| {
                        let mut w = r.as_ref().map_or_else(Rational::zero, |r| r[k - 1].clone());
                        for a in args {
                            w -= &d[a - 1];
                        }
                        w.is_zero()
                    })
                })
                .map(|i| SVec::from([(i, Rational::one())]))
                .collect();
        }
        self.invariant_basis_by_kernel(q)
    }

    /// Joint kernel of the induced actions, computed without the weight shortcut.
    pub fn invariant_basis_by_kernel(&self, q: usize) -> Vec<SVec> {
        let space = self.space(q);
        let m = self.invariance.len().max(1);
        let mut rows: Vec<SVec> = Vec::new();
        for i in 0..space.dim() {
            let f = space.basis_cochain(i);
            let mut col = SVec::new();
            for (a, (d, r)) in self.invariance.iter().enumerate() {
                let g = derivation_action(&(), d, r.as_ref(), &f);
                for (j, c) in space.vector(&g) {
                    col.insert(j * m + a, c);
                }
            }
            rows.push(col);
        }
        SparseMatrix::from_rows(space.dim() * m, &rows).transpose().kernel()
    }

    /// Cohomology report in degree `k`.
    pub fn report(&self, k: usize) -> CohomologyReport {
        let space = self.space(k);
        let next = self.space(k + 1);
        let basis = self.invariant_basis(k);
        let images: Vec<SVec> = basis.iter().map(|v| next.vector(&self.d(&space.cochain(v)))).collect();
        let kernel = SparseMatrix::from_rows(next.dim(), &images).transpose().kernel();
        let cocycles: Vec<SVec> = kernel.iter().map(|c| combine(&basis, c)).collect();
        let mut ech = Echelon::new();
        let mut coboundaries = Vec::new();
        if k > 0 {
            let prev = self.space(k - 1);
            for v in self.invariant_basis(k - 1) {
                let b = space.vector(&self.d(&prev.cochain(&v)));
                if ech.insert(b.clone()) {
                    coboundaries.push(b);
                }
            }
        }
        let mut reps = Vec::new();
        for z in &cocycles {
            if ech.insert(z.clone()) {
                reps.push(z.clone());
            }
        }
        let to_c = |vs: &[SVec]| vs.iter().map(|v| space.cochain(v)).collect::<Vec<_>>();
        CohomologyReport {
            degree: k,
            dim_c: basis.len(),
            dim_z: cocycles.len(),
            dim_b: coboundaries.len(),
            dim_h: cocycles.len() - coboundaries.len(),
            cocycle_basis: to_c(&cocycles),
            coboundary_basis: to_c(&coboundaries),
            representative_basis: to_c(&reps),
        }
    }
}

fn combine(basis: &[SVec], c: &SVec) -> SVec {
    let mut out = SVec::new();
    for (j, x) in c {
        for (i, y) in &basis[*j] {
            let e = out.entry(*i).or_insert_with(Rational::zero);
            *e += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn validate(law: &LieLaw<Rational>, invariance: &[DerivationMatrix]) -> Result<(), CohomologyError> {
    if !jacobiator(law).is_zero() {
        return Err(CohomologyError::NotALaw);
    }
    for (i, d) in invariance.iter().enumerate() {
        if d.dim() != law.dim() || !derivation_check(law, d).ok {
            return Err(CohomologyError::NotADerivation(i));
        }
    }
    Ok(())
}

/// `H^k(g, g)`, optionally restricted to cochains annihilated by each derivation.
pub fn cohomology_dims(
    law: &LieLaw<Rational>,
    k: usize,
    invariance: Option<&[DerivationMatrix]>,
) -> Result<CohomologyReport, CohomologyError> {
    let inv = invariance.unwrap_or(&[]);
    validate(law, inv)?;
    Ok(Complex::adjoint(law, inv).report(k))
}

/// Dimension of the center, from the linear system `φ(x, e_i) = 0`.
pub fn center_dim(law: &LieLaw<Rational>) -> usize {
    let n = law.dim();
    let mut rows: Vec<SVec> = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            let row: SVec = (1..=n)
                .map(|x| (x - 1, law.coeff(x, i, k)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            rows.push(row);
        }
    }
    n - SparseMatrix::from_rows(n, &rows).rank()
}

/// `H_2` of the law in weight `β`: dimension and representatives of
/// `(ker φ̃)_β / Ω_β` as combinations of the pairs `e_i ∧ e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightHomology {
    pub pairs: Vec<(usize, usize)>,
    pub kernel_dim: usize,
    pub boundary_dim: usize,
    pub dim: usize,
    pub basis: Vec<Vec<((usize, usize), Rational)>>,
}

pub fn homology_weight_space(law: &LieLaw<Rational>, ws: &WeightSystem, beta: &[i64]) -> WeightHomology {
    let n = law.dim();
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| ws.sum(&[i, j]) == beta)
        .collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(p, &x)| (x, p)).collect();
    // φ̃ restricted to the weight-β pairs.
    let rows: Vec<SVec> = pairs
        .iter()
        .map(|&(i, j)| law.bracket(i, j).iter().map(|(k, c)| (k - 1, c.clone())).collect())
        .collect();
    let kernel = SparseMatrix::from_rows(n, &rows).transpose().kernel();
    // Ω_β: cyclic sums φ(x,y)∧z.
    let mut omega = Echelon::new();
    let add_wedge = |v: &mut SVec, a: usize, b: usize, c: Rational| {
        if a == b {
            return;
        }
        let (lo, hi, c) = if a < b { (a, b, c) } else { (b, a, -c) };
        let p = index[&(lo, hi)];
        let e = v.entry(p).or_insert_with(Rational::zero);
        *e += c;
    };
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if ws.sum(&[i, j, k]) != beta {
                    continue;
                }
                let mut v = SVec::new();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (l, c) in law.bracket(x, y) {
                        add_wedge(&mut v, *l, z, c.clone());
                    }
                }
                v.retain(|_, c| !c.is_zero());
                omega.insert(v);
            }
        }
    }
    let boundary_dim = omega.rank();
    let mut basis = Vec::new();
    for v in &kernel {
        if omega.insert(v.clone()) {
            basis.push(v.iter().map(|(p, c)| (pairs[*p], c.clone())).collect());
        }
    }
    WeightHomology { kernel_dim: kernel.len(), boundary_dim, dim: basis.len(), basis, pairs }
}

/// Outcome of one obstruction step.
#[derive(Clone, Debug, PartialEq)]
pub enum ObstructionResult {
    /// A correction `φ_{p+1}` with `d φ_{p+1} = ω_{p+1}`.
    Lift { order: usize, term: Cochain<Rational> },
    /// Coordinates of the obstruction class on the representative basis of `H³`.
    Obstructed { order: usize, class: Vec<Rational> },
}

impl ObstructionResult {
    pub fn order(&self) -> usize {
        match self {
            ObstructionResult::Lift { order, .. } | ObstructionResult::Obstructed { order, .. } => *order,
        }
    }
}

/// `ω_γ = ½ Σ_{α+β=γ, α,β ≥ 1} [φ_α, φ_β]` for the given terms `φ_1, φ_2, …`.
pub fn obstruction_cochain(n: usize, terms: &[Cochain<Rational>], gamma: usize) -> Cochain<Rational> {
    let mut w = Cochain::zero(3, n, n);
    for a in 1..gamma {
        let b = gamma - a;
        if a <= terms.len() && b <= terms.len() {
            w = w.plus(&nr_bracket(&terms[a - 1], &terms[b - 1]));
        }
    }
    w.scaled(&Rational::new(1.into(), 2.into()))
}

/// Checks the deformation equation through order `p = terms.len()` and
/// either lifts to order `p + 1` or returns the obstruction class in the
/// representative basis of `h3`.
pub fn obstruction_step(
    law: &LieLaw<Rational>,
    terms: &[Cochain<Rational>],
    h3: &CohomologyReport,
    invariance: Option<&[DerivationMatrix]>,
) -> Result<ObstructionResult, CohomologyError> {
    let inv = invariance.unwrap_or(&[]);
    validate(law, inv)?;
    let n = law.dim();
    let complex = Complex::adjoint(law, inv);
    for (g, term) in terms.iter().enumerate() {
        let gamma = g + 1;
        if ce_differential(law, term) != obstruction_cochain(n, terms, gamma) {
            return Err(CohomologyError::OrderViolation(gamma));
        }
    }
    let order = terms.len() + 1;
    let omega = obstruction_cochain(n, terms, order);
    let c3 = complex.space(3);
    let mut ech = Echelon::new();
    let nb = h3.coboundary_basis.len();
    for (i, b) in h3.coboundary_basis.iter().chain(&h3.representative_basis).enumerate() {
        ech.insert_tracked(c3.vector(b), SVec::from([(i, Rational::one())]));
    }
    let combo = ech.express(c3.vector(&omega)).ok_or(CohomologyError::OrderViolation(order))?;
    let class: Vec<Rational> = (0..h3.representative_basis.len())
        .map(|r| combo.get(&(nb + r)).cloned().unwrap_or_else(Rational::zero))
        .collect();
    if class.iter().any(|c| !c.is_zero()) {
        return Ok(ObstructionResult::Obstructed { order, class });
    }
    let c2 = complex.space(2);
    let basis = complex.invariant_basis(2);
    let images: Vec<SVec> = basis.iter().map(|v| c3.vector(&ce_differential(law, &c2.cochain(v)))).collect();
    let m = SparseMatrix::from_rows(c3.dim(), &images).transpose();
    let mut rhs = vec![Rational::zero(); c3.dim()];
    for (i, c) in c3.vector(&omega) {
        rhs[i] = c;
    }
    let x = m.solve(&rhs).ok_or(CohomologyError::OrderViolation(order))?;
    let coeffs: SVec = x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    Ok(ObstructionResult::Lift { order, term: c2.cochain(&combine(&basis, &coeffs)) })
}
