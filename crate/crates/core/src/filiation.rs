//! Dimension-by-dimension central extensions along a path of weights, with
//! discovery of free parameters and nilpotency relations in a one-parameter
//! local ring.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cohomology::homology_weight_space;
use crate::exactnum::{solve_affine, strip_unit, LocalRing, Rational, RingElement, RingError, Scalar, SparseMatrix, UPoly};
use crate::liecore::{derivation_check, jacobiator, LieLaw};
use crate::torus_scheme::{admissible_set_diagonal, orbit_normalize, MultiIndexSet, WeightSystem};

/// Name given to a newly discovered parameter.
pub const PARAMETER: &str = "t";

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FiliationError {
    #[error("no central extension in dimension {n}: the weight-{n} fiber is empty")]
    EmptyFiber { n: usize },
    #[error("extension coordinate ({0},{1}) cannot be normalized to 1: {2}")]
    BadExtensionPair(usize, usize, String),
    #[error("({0},{1}) is not a coordinate of weight α_{2}")]
    NotACoordinate(usize, usize, usize),
    #[error("a second free parameter would be needed in dimension {n}")]
    SecondParameter { n: usize },
    #[error("center {center} is not admissible: {reason}")]
    BadCenter { center: Rational, reason: String },
    #[error("seed law: {0}")]
    BadSeed(String),
    #[error("weight vector has length {0}, torus dimension is {1}")]
    WeightLength(usize, usize),
    #[error("state invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The leftover constraints of one step and the relation derived from them.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftoverRelation {
    /// Jacobi triples and their values at the solution, before any relation.
    pub values: Vec<((usize, usize, usize), RingElement)>,
    /// Greatest common divisor of the numerators, in the original parameter.
    pub numerator_gcd: UPoly,
    /// Rational roots of that gcd.
    pub roots: Vec<Rational>,
    /// Valuation at the chosen center and the remaining unit factor.
    pub exponent: usize,
    pub unit: UPoly,
}

/// What happened in one extension step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub n: usize,
    pub weight: Vec<i64>,
    pub pair: (usize, usize),
    pub coordinates: Vec<(usize, usize)>,
    pub nu_homology: usize,
    pub nu_kernel: usize,
    /// Values of the new coordinates in the ring used for solving.
    pub solved: Vec<((usize, usize), RingElement)>,
    pub new_parameter: Option<(usize, usize)>,
    pub leftover: Option<LeftoverRelation>,
    pub unexplored: Vec<Rational>,
    pub ring: String,
}

/// One rung of the tower.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeState {
    pub n: usize,
    pub weights: WeightSystem,
    pub law: LieLaw<RingElement>,
    pub admissible: MultiIndexSet,
    pub history: Vec<StepRecord>,
}

impl SchemeState {
    /// Initial state from a rational seed, normalized on its admissible set.
    pub fn seed(law: &LieLaw<Rational>, weights: &WeightSystem) -> Result<Self, FiliationError> {
        if weights.dim() != law.dim() {
            return Err(FiliationError::BadSeed("weights and law differ in dimension".into()));
        }
        if !jacobiator(law).is_zero() {
            return Err(FiliationError::BadSeed("jacobiator is not zero".into()));
        }
        if !weights.is_invariant(law) {
            return Err(FiliationError::BadSeed("law is not invariant under the torus".into()));
        }
        let a = admissible_set_diagonal(law, weights);
        if a.len() + weights.torus_dim() != law.dim() {
            return Err(FiliationError::BadSeed(format!(
                "admissible set {} is not maximal ({} < {})",
                a,
                a.len(),
                law.dim() - weights.torus_dim()
            )));
        }
        let normal = orbit_normalize(law, &a).map_err(|e| FiliationError::BadSeed(e.to_string()))?;
        let ring = LocalRing::field();
        let law = normal.map_coeffs(ring.clone(), |q| ring.constant(q.clone()));
        Ok(SchemeState { n: law.dim(), weights: weights.clone(), law, admissible: a, history: Vec::new() })
    }

    pub fn ring(&self) -> &Arc<LocalRing> {
        self.law.ctx()
    }

    pub fn closed_point(&self) -> LieLaw<Rational> {
        self.law.map_coeffs((), |c| c.residue())
    }

    /// Expressions of the state's constants in the original parameter.
    pub fn render_law(&self) -> String {
        self.law.to_string()
    }
}

/// Columns `(i < j)` with `α_i + α_j = β`, lexicographic.
fn new_coordinates(ws: &WeightSystem, beta: &[i64]) -> Vec<(usize, usize)> {
    let n = ws.dim();
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| ws.sum(&[i, j]) == beta).collect()
}

/// Rows `J_ijk^{n+1}` linear in the new coordinates, with coefficients from the law.
fn jacobi_rows<C: Scalar>(
    law: &LieLaw<C>,
    ws: &WeightSystem,
    beta: &[i64],
    cols: &[(usize, usize)],
) -> Vec<((usize, usize, usize), Vec<C>)> {
    let n = law.dim();
    let index: BTreeMap<(usize, usize), usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if ws.sum(&[i, j, k]) != beta {
                    continue;
                }
                let mut row = vec![C::zero_of(law.ctx()); cols.len()];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (l, y) in law.bracket(a, b) {
                        if *l == c {
                            continue;
                        }
                        let (lo, hi, neg) = if *l < c { (*l, c, false) } else { (c, *l, true) };
                        if let Some(&p) = index.get(&(lo, hi)) {
                            row[p] = if neg { row[p].minus(y) } else { row[p].plus(y) };
                        }
                    }
                }
                if row.iter().any(|x| !x.vanishes()) {
                    out.push(((i, j, k), row));
                }
            }
        }
    }
    out
}

/// `ν` by both routes: weight-β homology, and the kernel of the homogeneous
/// Jacobi system at the closed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberDimension {
    pub homology: usize,
    pub kernel: usize,
}

impl FiberDimension {
    pub fn agree(&self) -> bool {
        self.homology == self.kernel
    }
}

pub fn fiber_dimension(state: &SchemeState, next_weight: &[i64]) -> FiberDimension {
    let cp = state.closed_point();
    let homology = homology_weight_space(&cp, &state.weights, next_weight).dim;
    let cols = new_coordinates(&state.weights, next_weight);
    let rows: Vec<Vec<Rational>> = jacobi_rows(&cp, &state.weights, next_weight, &cols).into_iter().map(|r| r.1).collect();
    let rank = if rows.is_empty() { 0 } else { SparseMatrix::from_dense(&rows).rank() };
    FiberDimension { homology, kernel: cols.len() - rank }
}

fn in_t(p: &UPoly, center: &Rational) -> UPoly {
    p.taylor_shift(&-center.clone())
}

/// Maps every coefficient of a law into another ring.
fn map_law(law: &LieLaw<RingElement>, target: &Arc<LocalRing>) -> Result<LieLaw<RingElement>, RingError> {
    let mut out = LieLaw::abelian(law.dim(), target.clone());
    for (&(i, j, k), c) in law.constants() {
        let m = c.map_into(target)?;
        if !m.vanishes() {
            out.insert(i, j, k, m).expect("indices already valid");
        }
    }
    Ok(out)
}

/// One extension step `n → n + 1`.
///
/// `pair` selects the coordinate fixed to 1 (default: the first coordinate
/// not forced to vanish at the closed point). `center` selects the closed
/// point of a new or free parameter, or the root of a leftover relation.
pub fn extend_step(
    state: &SchemeState,
    next_weight: &[i64],
    pair: Option<(usize, usize)>,
    center: Option<&Rational>,
) -> Result<SchemeState, FiliationError> {
    let r = state.weights.torus_dim();
    if next_weight.len() != r {
        return Err(FiliationError::WeightLength(next_weight.len(), r));
    }
    let n1 = state.n + 1;
    let cols = new_coordinates(&state.weights, next_weight);

    // Optional move of the closed point of a free parameter.
    let mut law = state.law.clone();
    let ring = state.ring().clone();
    if let (Some(c), true) = (center, ring.is_free()) {
        if c != ring.center() {
            let moved = LocalRing::free(ring.param().unwrap(), c.clone());
            law = map_law(&law, &moved).map_err(|e| FiliationError::BadCenter { center: c.clone(), reason: e.to_string() })?;
        }
    }
    if let (Some(c), Some(_)) = (center, ring.relation()) {
        if c != ring.center() {
            return Err(FiliationError::BadCenter {
                center: c.clone(),
                reason: "the parameter is already nilpotent at another point".into(),
            });
        }
    }
    let ring = law.ctx().clone();
    let moved = SchemeState { law: law.clone(), ..state.clone() };
    let fiber = fiber_dimension(&moved, next_weight);
    if fiber.homology == 0 || fiber.kernel == 0 {
        return Err(FiliationError::EmptyFiber { n: n1 });
    }

    let rows = jacobi_rows(&law, &state.weights, next_weight, &cols);
    let cp_rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.1.iter().map(|x| x.residue()).collect()).collect();
    let chosen = match pair {
        Some(p) => {
            if !cols.contains(&p) {
                return Err(FiliationError::NotACoordinate(p.0, p.1, n1));
            }
            p
        }
        None => {
            let kernel = if cp_rows.is_empty() {
                (0..cols.len()).map(|c| BTreeMap::from([(c, Rational::one())])).collect()
            } else {
                SparseMatrix::from_dense(&cp_rows).kernel()
            };
            let c = (0..cols.len())
                .find(|c| kernel.iter().any(|v| v.contains_key(c)))
                .ok_or(FiliationError::EmptyFiber { n: n1 })?;
            cols[c]
        }
    };
    let pc = cols.iter().position(|&c| c == chosen).unwrap();
    let zero = RingElement::zero_of(&ring);
    let one = RingElement::one_of(&ring);
    let mut m = Vec::with_capacity(rows.len() + 1);
    let mut rhs = Vec::with_capacity(rows.len() + 1);
    let mut norm = vec![zero.clone(); cols.len()];
    norm[pc] = one.clone();
    m.push(norm);
    rhs.push(one.clone());
    for (_, row) in &rows {
        m.push(row.clone());
        rhs.push(zero.clone());
    }
    let sol = match solve_affine(&ring, &m, &rhs) {
        Ok(s) => s,
        Err(RingError::InconsistentOverField { row, constant }) => {
            let what = if row == 0 { "normalization".to_string() } else { format!("J_{:?}", rows[row - 1].0) };
            return Err(FiliationError::BadExtensionPair(chosen.0, chosen.1, format!("{what} reduces to {constant} = 0")));
        }
        Err(e) => return Err(e.into()),
    };

    // Free columns become a new parameter.
    let mut values = sol.particular.clone();
    let mut new_parameter = None;
    let mut ring_after = ring.clone();
    if !sol.free_columns.is_empty() {
        if sol.free_columns.len() > 1 || !ring.is_field() {
            return Err(FiliationError::SecondParameter { n: n1 });
        }
        let c0 = center.cloned().unwrap_or_else(Rational::zero);
        let free = LocalRing::free(PARAMETER, c0);
        let t = free.t();
        let lift = |x: &RingElement| free.constant(x.residue());
        values = values
            .iter()
            .zip(&sol.kernel[0])
            .map(|(p, k)| lift(p).plus(&lift(k).times(&t)))
            .collect();
        law = map_law(&law, &free)?;
        ring_after = free;
        new_parameter = Some(cols[sol.free_columns[0]]);
    }

    // Leftover constraints become a relation t^s = 0.
    let mut leftover = None;
    let mut unexplored = Vec::new();
    if !sol.leftovers.is_empty() {
        if !sol.free_columns.is_empty() {
            return Err(FiliationError::SecondParameter { n: n1 });
        }
        let vals: Vec<((usize, usize, usize), RingElement)> =
            sol.leftovers.iter().map(|l| (rows[l.row - 1].0, l.constant.clone())).collect();
        let c = ring.center().clone();
        let mut g = UPoly::zero();
        for (_, v) in &vals {
            g = g.gcd(&in_t(v.numerator(), &c));
        }
        let roots = g.rational_roots().unwrap_or_default();
        unexplored = roots.iter().filter(|x| **x != c).cloned().collect();
        let (exponent, unit) = strip_unit(&g, &c)?;
        let s_new = vals.iter().filter_map(|(_, v)| v.valuation()).min().unwrap_or(0) as u32;
        let s = ring.relation().map_or(s_new, |s0| s0.min(s_new));
        let target = LocalRing::truncated(ring.param().unwrap_or(PARAMETER), s.max(1), c);
        law = map_law(&law, &target)?;
        values = values.iter().map(|v| v.map_into(&target)).collect::<Result<_, _>>()?;
        ring_after = target;
        leftover = Some(LeftoverRelation { values: vals, numerator_gcd: g, roots, exponent, unit });
    }

    let mut out = law.extend_dim(n1);
    for (p, v) in cols.iter().zip(&values) {
        if !v.vanishes() {
            out.insert(p.0, p.1, n1, v.clone()).expect("fresh coordinate");
        }
    }
    let mut weights = state.weights.weights().to_vec();
    weights.push(next_weight.to_vec());
    let solved: Vec<((usize, usize), RingElement)> = if new_parameter.is_some() {
        cols.iter().cloned().zip(values.iter().cloned()).collect()
    } else {
        cols.iter().cloned().zip(sol.particular.iter().cloned()).collect()
    };
    let record = StepRecord {
        n: n1,
        weight: next_weight.to_vec(),
        pair: chosen,
        coordinates: cols.clone(),
        nu_homology: fiber.homology,
        nu_kernel: fiber.kernel,
        solved,
        new_parameter,
        leftover,
        unexplored,
        ring: ring_after.render(),
    };
    let mut history = state.history.clone();
    history.push(record);
    let next = SchemeState {
        n: n1,
        weights: WeightSystem::new(r, weights),
        law: out,
        admissible: state.admissible.with((chosen.0, chosen.1, n1)),
        history,
    };
    if let Some(v) = check_invariants(&next).into_iter().find(|c| !c.1) {
        return Err(FiliationError::InvariantViolation(v.0));
    }
    Ok(next)
}

/// Per-step choices of a filiation run, keyed by the dimension reached.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BranchChoices {
    pub pairs: BTreeMap<usize, (usize, usize)>,
    pub centers: BTreeMap<usize, Rational>,
}

/// Runs the tower from the seed up to `target_dim`; returns every state.
pub fn run_filiation(
    ws: &WeightSystem,
    seed: &LieLaw<Rational>,
    target_dim: usize,
    choices: &BranchChoices,
) -> Result<Vec<SchemeState>, FiliationError> {
    if target_dim > ws.dim() {
        return Err(FiliationError::BadSeed(format!("path has only {} weights", ws.dim())));
    }
    let mut states = vec![SchemeState::seed(seed, &ws.truncate(seed.dim()))?];
    for n1 in seed.dim() + 1..=target_dim {
        let cur = states.last().unwrap();
        let next = extend_step(cur, ws.weight(n1), choices.pairs.get(&n1).copied(), choices.centers.get(&n1))?;
        states.push(next);
    }
    Ok(states)
}

/// Named boolean checks of the state invariants.
pub fn check_invariants(state: &SchemeState) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    out.push(("jacobi identity in the ring".into(), jacobiator(&state.law).is_zero()));
    let cp = state.closed_point();
    out.push(("jacobi identity at the closed point".into(), jacobiator(&cp).is_zero()));
    let ders = state.weights.derivations();
    out.push(("torus acts by derivations".into(), ders.iter().all(|d| derivation_check(&cp, d).ok)));
    let one = RingElement::one_of(state.ring());
    out.push((
        "admissible coordinates equal 1".into(),
        state.admissible.entries().iter().all(|&(i, j, k)| state.law.coeff(i, j, k) == one),
    ));
    let a = admissible_set_diagonal(&cp, &state.weights);
    let maximal = a.len() + state.weights.torus_dim() == state.n;
    let independent = {
        let rows: Vec<_> = state
            .admissible
            .entries()
            .iter()
            .map(|&(i, j, k)| {
                let mut v = vec![Rational::zero(); state.n];
                v[i - 1] += Rational::one();
                v[j - 1] += Rational::one();
                v[k - 1] -= Rational::one();
                v
            })
            .collect();
        rows.is_empty() || SparseMatrix::from_dense(&rows).rank() == rows.len()
    };
    out.push((
        "admissible set is maximal and independent".into(),
        maximal && independent && state.admissible.len() + state.weights.torus_dim() == state.n,
    ));
    out
}

/// Flags of the local ring at a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRingReport {
    pub ring: String,
    pub parameter_count: usize,
    pub relation: Option<u32>,
    pub krull_dim_zero: bool,
    pub nilpotency_orders: Vec<u32>,
    pub formally_rigid: bool,
    pub tangent_dim: usize,
}

pub fn local_ring_report(state: &SchemeState) -> LocalRingReport {
    let ring = state.ring();
    let parameter_count = usize::from(ring.param().is_some());
    let krull_dim_zero = parameter_count == 0 || ring.relation().is_some();
    LocalRingReport {
        ring: ring.render(),
        parameter_count,
        relation: ring.relation(),
        krull_dim_zero,
        nilpotency_orders: ring.relation().into_iter().collect(),
        formally_rigid: krull_dim_zero,
        tangent_dim: parameter_count,
    }
}

/// K-dimension of the ring found by multiplying the maximal-ideal generator
/// until it vanishes; `None` if it survives `cap` powers.
pub fn k_dimension_by_powers(ring: &Arc<LocalRing>, cap: u32) -> Option<usize> {
    if ring.is_field() {
        return Some(1);
    }
    let u = ring.u();
    let mut p = RingElement::one_of(ring);
    for k in 0..=cap {
        if p.vanishes() {
            return Some(k as usize);
        }
        p = p.times(&u);
    }
    None
}

/// Deterministic text trace of one step.
pub fn render_step(rec: &StepRecord) -> String {
    let mut s = String::new();
    let w: Vec<String> = rec.weight.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(s, "step n = {} weight ({})", rec.n, w.join(","));
    let coords: Vec<String> = rec.coordinates.iter().map(|(i, j)| format!("X{i}_{j}")).collect();
    let _ = writeln!(s, "  new coordinates: {}", coords.join(", "));
    let _ = writeln!(s, "  nu = {} (homology), {} (kernel)", rec.nu_homology, rec.nu_kernel);
    let _ = writeln!(s, "  fixed: X{}_{} = 1", rec.pair.0, rec.pair.1);
    if let Some((i, j)) = rec.new_parameter {
        let _ = writeln!(s, "  new parameter: {PARAMETER} := X{i}_{j}");
    }
    for ((i, j), v) in &rec.solved {
        let _ = writeln!(s, "  X{i}_{j} = {}", v.render());
    }
    if let Some(l) = &rec.leftover {
        for (t, v) in &l.values {
            let _ = writeln!(s, "  leftover J{}_{}_{} = {}", t.0, t.1, t.2, v.render());
        }
        let _ = writeln!(s, "  leftover numerator gcd: {}", l.numerator_gcd.render(PARAMETER));
        let roots: Vec<String> = l.roots.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(s, "  rational roots: {}", roots.join(", "));
        let _ = writeln!(s, "  stripped: u^{} * ({})", l.exponent, l.unit.render("u"));
    }
    if !rec.unexplored.is_empty() {
        let roots: Vec<String> = rec.unexplored.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(s, "  unexplored branches at {PARAMETER} = {}", roots.join(", "));
    }
    let _ = writeln!(s, "  ring: {}", rec.ring);
    s
}
