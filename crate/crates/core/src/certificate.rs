//! Exact verification of the elimination chain showing that
//! `X12·X17·X18·X34²` lies in the Jacobi ideal of the two-torus scheme,
//! plus evaluation of the non-vanishing witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::catalog::a4_weights;
use crate::exactnum::{int, rat, MultiPoly, Rational, Scalar};
use crate::liecore::LieLaw;
use crate::torus_scheme::{jacobi_scheme_polynomials, scheme_coordinates, WeightSystem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateError {
    #[error("certificate needs n >= 9, got {0}")]
    DimensionTooSmall(usize),
    #[error("step {step} does not hold; residual {residual}")]
    StepMismatch { step: String, residual: MultiPoly },
    #[error("step {step} references unknown polynomial {name}")]
    UnknownReference { step: String, name: String },
}

/// The Jacobi polynomials named in the chain, as triples `(i, j, k)`.
pub const NAMED_TRIPLES: [(usize, usize, usize); 6] =
    [(1, 2, 6), (1, 3, 5), (2, 3, 4), (1, 3, 4), (1, 2, 5), (1, 2, 4)];

/// `X12·X17·X18·X34²`.
pub const Z_FULL: [(usize, usize); 5] = [(1, 2), (1, 7), (1, 8), (3, 4), (3, 4)];
/// The full monomial without `X12`.
pub const Z_WITHOUT_12: [(usize, usize); 4] = [(1, 7), (1, 8), (3, 4), (3, 4)];
/// The full monomial without `X17`.
pub const Z_WITHOUT_17: [(usize, usize); 4] = [(1, 2), (1, 8), (3, 4), (3, 4)];
/// The full monomial without `X18`.
pub const Z_WITHOUT_18: [(usize, usize); 4] = [(1, 2), (1, 7), (3, 4), (3, 4)];
/// The full monomial with a single `X34`.
pub const Z_SQUARE_ROOT: [(usize, usize); 4] = [(1, 2), (1, 7), (1, 8), (3, 4)];

/// Two-index coordinate name; an underscore separates indices of two or
/// more digits.
pub fn pair_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("X{i}{j}")
    } else {
        format!("X{i}_{j}")
    }
}

pub fn jacobi_name((i, j, k): (usize, usize, usize)) -> String {
    if i < 10 && j < 10 && k < 10 {
        format!("J{i}{j}{k}")
    } else {
        format!("J{i}_{j}_{k}")
    }
}

/// The coordinate chart of the two-torus scheme in dimension `n`.
pub struct Chart {
    pub n: usize,
    pub weights: WeightSystem,
    pub vars: Arc<Vec<String>>,
    /// Every nonzero Jacobi polynomial, keyed by its name.
    pub jacobi: BTreeMap<String, MultiPoly>,
}

impl Chart {
    pub fn new(n: usize) -> Self {
        let weights = a4_weights(n);
        let (coords, polys) = jacobi_scheme_polynomials(&weights);
        let vars: Arc<Vec<String>> =
            Arc::new(coords.entries().iter().map(|&(i, j, _)| pair_name(i, j)).collect());
        let jacobi = polys
            .into_iter()
            .map(|sp| (jacobi_name(sp.triple), rename(&sp.poly, &vars)))
            .collect();
        Chart { n, weights, vars, jacobi }
    }

    pub fn x(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(self.vars.clone(), &pair_name(i, j))
    }

    pub fn monomial(&self, pairs: &[(usize, usize)]) -> MultiPoly {
        pairs
            .iter()
            .fold(self.constant(Rational::one()), |acc, &(i, j)| &acc * &self.x(i, j))
    }

    pub fn constant(&self, q: Rational) -> MultiPoly {
        MultiPoly::constant(self.vars.clone(), q)
    }

    /// The coordinate values of a law in this chart.
    pub fn point<C: Scalar>(&self, law: &LieLaw<C>) -> Vec<C> {
        scheme_coordinates(&self.weights)
            .entries()
            .iter()
            .map(|&(i, j, k)| law.coeff(i, j, k))
            .collect()
    }
}

/// Same polynomial on a renamed variable list of equal length.
fn rename(p: &MultiPoly, vars: &Arc<Vec<String>>) -> MultiPoly {
    let mut out = MultiPoly::zero(vars.clone());
    for (exps, c) in p.terms() {
        let mut term = MultiPoly::constant(vars.clone(), c.clone());
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = &term * &MultiPoly::var(vars.clone(), &vars[v]).pow(e);
            }
        }
        out = &out + &term;
    }
    out
}

/// The six named Jacobi polynomials of the chain in the chart of dimension `n`.
pub fn scheme_jacobi_basis_62(n: usize) -> Result<Vec<(String, MultiPoly)>, CertificateError> {
    if n < 9 {
        return Err(CertificateError::DimensionTooSmall(n));
    }
    let chart = Chart::new(n);
    Ok(NAMED_TRIPLES
        .iter()
        .map(|&t| {
            let name = jacobi_name(t);
            let p = chart.jacobi.get(&name).cloned().unwrap_or_else(|| MultiPoly::zero(chart.vars.clone()));
            (name, p)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    Jacobi(String),
    Step(String),
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reference::Jacobi(s) | Reference::Step(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertificateStep {
    pub name: String,
    pub combination: Vec<(MultiPoly, Reference)>,
    pub claimed: MultiPoly,
}

/// The chain `f1, f2, f3, f4, final` in the chart of dimension `n`.
pub fn certificate_steps(chart: &Chart) -> Vec<CertificateStep> {
    let x = |i, j| chart.x(i, j);
    let m = |pairs: &[(usize, usize)]| chart.monomial(pairs);
    let j = |s: &str| Reference::Jacobi(s.to_string());
    let st = |s: &str| Reference::Step(s.to_string());
    let neg = |p: MultiPoly| -&p;

    // f1 = X34·(X15 J126 − X12 J135) + X16·(X15 J234 − X24 J135)
    let f1_claim = &x(1, 8)
        * &(&(&m(&[(3, 4), (1, 2), (3, 5)]) - &m(&[(3, 4), (1, 5), (2, 6)])) + &m(&[(1, 6), (2, 4), (3, 5)]));
    let f1 = CertificateStep {
        name: "f1".into(),
        combination: vec![
            (m(&[(3, 4), (1, 5)]), j("J126")),
            (&neg(m(&[(3, 4), (1, 2)])) - &m(&[(1, 6), (2, 4)]), j("J135")),
            (m(&[(1, 6), (1, 5)]), j("J234")),
        ],
        claimed: f1_claim,
    };

    // f2 = X14·f1 − X18(X12 X34 + X16 X24)·J134
    let f2_claim = &m(&[(1, 8), (3, 4)])
        * &(&(&m(&[(1, 2), (3, 4), (1, 7)]) - &m(&[(1, 5), (2, 6), (1, 4)])) + &m(&[(1, 6), (2, 4), (1, 7)]));
    let f2 = CertificateStep {
        name: "f2".into(),
        combination: vec![
            (x(1, 4), st("f1")),
            (neg(&x(1, 8) * &(&m(&[(1, 2), (3, 4)]) + &m(&[(1, 6), (2, 4)]))), j("J134")),
        ],
        claimed: f2_claim,
    };

    // f3 = X14 J125 − X12 J134
    let f3_claim = &(&neg(m(&[(1, 4), (2, 5), (1, 7)])) + &m(&[(1, 4), (1, 5), (2, 6)])) + &m(&[(1, 2), (3, 4), (1, 7)]);
    let f3 = CertificateStep {
        name: "f3".into(),
        combination: vec![(x(1, 4), j("J125")), (neg(x(1, 2)), j("J134"))],
        claimed: f3_claim,
    };

    // f4 = f2 + X18 X34·f3
    let f4_claim = &m(&[(1, 8), (3, 4), (1, 7)])
        * &(&(&m(&[(1, 2), (3, 4)]).scale(&int(2)) - &m(&[(1, 4), (2, 5)])) + &m(&[(1, 6), (2, 4)]));
    let f4 = CertificateStep {
        name: "f4".into(),
        combination: vec![(chart.constant(Rational::one()), st("f2")), (m(&[(1, 8), (3, 4)]), st("f3"))],
        claimed: f4_claim,
    };

    // X12 X17 X18 X34² = (f4 + X17 X18 X34·J124) / 3
    let third = rat(1, 3);
    let fin = CertificateStep {
        name: "final".into(),
        combination: vec![
            (chart.constant(third.clone()), st("f4")),
            (m(&[(1, 7), (1, 8), (3, 4)]).scale(&third), j("J124")),
        ],
        claimed: m(&Z_FULL),
    };
    vec![f1, f2, f3, f4, fin]
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub name: String,
    pub residual: MultiPoly,
    /// `combination = claimed` rendered with the step's references.
    pub identity: String,
}

impl StepOutcome {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub n: usize,
    pub steps: Vec<StepOutcome>,
    /// Coefficients `c_J` with `Σ c_J·J = X12 X17 X18 X34²`.
    pub membership: Vec<(String, MultiPoly)>,
    pub membership_residual: MultiPoly,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(StepOutcome::holds) && self.membership_residual.is_zero()
    }

    pub fn render(&self) -> String {
        let mut out = format!("certificate chain, n = {}\n", self.n);
        for s in &self.steps {
            out.push_str(&format!(
                "{}: {} [{}]\n",
                s.name,
                s.identity,
                if s.holds() { "residual 0" } else { "MISMATCH" }
            ));
        }
        out.push_str("membership: X12*X17*X18*X34^2 =");
        for (i, (name, c)) in self.membership.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            out.push_str(&format!("{sep}({c})*{name}"));
        }
        out.push('\n');
        out
    }
}

/// Expands every step exactly and checks each claimed equality.
pub fn check_steps(chart: &Chart, steps: &[CertificateStep]) -> Result<CertificateReport, CertificateError> {
    let zero = || MultiPoly::zero(chart.vars.clone());
    let mut values: BTreeMap<String, MultiPoly> = BTreeMap::new();
    let mut in_jacobi: BTreeMap<String, BTreeMap<String, MultiPoly>> = BTreeMap::new();
    let mut outcomes = Vec::new();
    for step in steps {
        let mut total = zero();
        let mut coeffs: BTreeMap<String, MultiPoly> = BTreeMap::new();
        let mut parts = Vec::new();
        for (c, r) in &step.combination {
            let unknown = || CertificateError::UnknownReference { step: step.name.clone(), name: r.to_string() };
            let (value, expansion) = match r {
                Reference::Jacobi(name) => {
                    let p = chart.jacobi.get(name).ok_or_else(unknown)?;
                    (p.clone(), BTreeMap::from([(name.clone(), chart.constant(Rational::one()))]))
                }
                Reference::Step(name) => (
                    values.get(name).ok_or_else(unknown)?.clone(),
                    in_jacobi.get(name).ok_or_else(unknown)?.clone(),
                ),
            };
            total = &total + &(c * &value);
            for (jn, jc) in expansion {
                let e = coeffs.entry(jn).or_insert_with(zero);
                *e = &*e + &(c * &jc);
            }
            parts.push(format!("({c})*{r}"));
        }
        let residual = &total - &step.claimed;
        let identity = format!("{} = {}", parts.join(" + "), step.claimed);
        if !residual.is_zero() {
            return Err(CertificateError::StepMismatch { step: step.name.clone(), residual });
        }
        outcomes.push(StepOutcome { name: step.name.clone(), residual, identity });
        values.insert(step.name.clone(), step.claimed.clone());
        coeffs.retain(|_, c| !c.is_zero());
        in_jacobi.insert(step.name.clone(), coeffs);
    }
    let last = steps.last().map(|s| s.name.clone()).unwrap_or_default();
    let membership: Vec<(String, MultiPoly)> = in_jacobi.remove(&last).unwrap_or_default().into_iter().collect();
    let mut combined = zero();
    for (name, c) in &membership {
        combined = &combined + &(c * &chart.jacobi[name]);
    }
    let target = steps.last().map(|s| s.claimed.clone()).unwrap_or_else(zero);
    let membership_residual = &combined - &target;
    Ok(CertificateReport { n: chart.n, steps: outcomes, membership, membership_residual })
}

/// Verifies the full chain in dimension `n`.
pub fn verify_certificate_chain(n: usize) -> Result<CertificateReport, CertificateError> {
    if n < 9 {
        return Err(CertificateError::DimensionTooSmall(n));
    }
    let chart = Chart::new(n);
    let steps = certificate_steps(&chart);
    check_steps(&chart, &steps)
}

/// Product of the structure constants `X_ij` named by `pairs`, with the
/// target index fixed by the two-torus weights.
pub fn nonvanishing_witness<C: Scalar>(pairs: &[(usize, usize)], law: &LieLaw<C>) -> C {
    let ws = a4_weights(law.dim());
    let mut acc = C::one_of(law.ctx());
    for &(i, j) in pairs {
        let s = ws.sum(&[i, j]);
        let c = (1..=law.dim())
            .find(|&k| ws.weight(k) == s.as_slice())
            .map(|k| law.coeff(i, j, k))
            .unwrap_or_else(|| C::zero_of(law.ctx()));
        acc = acc.times(&c);
    }
    acc
}

/// The law with `[e1,ek] = e(k+1)` for `1 < k < n`, `k ≠ 3, 7`,
/// `[e2,e4] = e6`, `[e2,e5] = (1−t)e7`, `[e3,e4] = t e7`.
pub fn witness_without_17(n: usize, t: &Rational) -> LieLaw<Rational> {
    let mut e: Vec<(usize, usize, usize, Rational)> =
        (2..n).filter(|&k| k != 3 && k != 7).map(|k| (1, k, k + 1, Rational::one())).collect();
    e.push((2, 4, 6, Rational::one()));
    e.push((2, 5, 7, Rational::one() - t));
    e.push((3, 4, 7, t.clone()));
    e.retain(|c| !c.3.is_zero());
    LieLaw::rational(n, &e).expect("well-formed witness")
}

/// The canonical deformation in dimension 8 at `t`, extended by an abelian
/// ideal spanned by `e9..en`.
pub fn witness_without_18(n: usize, t: &Rational) -> LieLaw<Rational> {
    let mut e: Vec<(usize, usize, usize, Rational)> =
        [2, 4, 5, 6, 7].iter().map(|&k| (1, k, k + 1, Rational::one())).collect();
    for k in 4..=6 {
        e.push((2, k, k + 2, Rational::one() - t * int(k as i64 - 4)));
    }
    e.push((3, 4, 7, t.clone()));
    e.push((3, 5, 8, t.clone()));
    e.retain(|c| !c.3.is_zero());
    LieLaw::rational(n, &e).expect("well-formed witness")
}
