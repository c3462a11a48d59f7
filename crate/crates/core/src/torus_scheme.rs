//! Weight systems, paths of weights, coordinates and Jacobi polynomials of
//! torus-invariant laws, admissible sets and diagonal normalization.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{Echelon, MultiPoly, Rational, SVec, Scalar, SparseMatrix};
use crate::liecore::{ce_differential, Cochain, DerivationMatrix, LieLaw};

/// Torus dimension and one integer weight vector per basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    torus_dim: usize,
    weights: Vec<Vec<i64>>,
}

impl WeightSystem {
    pub fn new(torus_dim: usize, weights: Vec<Vec<i64>>) -> Self {
        for w in &weights {
            assert_eq!(w.len(), torus_dim, "weight vector of wrong length");
        }
        WeightSystem { torus_dim, weights }
    }

    /// Weights with no torus (every vector empty).
    pub fn trivial(n: usize) -> Self {
        WeightSystem { torus_dim: 0, weights: vec![Vec::new(); n] }
    }

    /// One-dimensional weights `α_i = i`.
    pub fn graded(n: usize) -> Self {
        Self::new(1, (1..=n as i64).map(|i| vec![i]).collect())
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `α_i`, 1-based.
    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i - 1]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn truncate(&self, n: usize) -> Self {
        WeightSystem { torus_dim: self.torus_dim, weights: self.weights[..n].to_vec() }
    }

    pub fn sum(&self, idx: &[usize]) -> Vec<i64> {
        let mut s = vec![0; self.torus_dim];
        for &i in idx {
            for (a, b) in s.iter_mut().zip(self.weight(i)) {
                *a += b;
            }
        }
        s
    }

    pub fn is_simple(&self) -> bool {
        let mut w = self.weights.clone();
        w.sort();
        w.windows(2).all(|p| p[0] != p[1])
    }

    /// The diagonal derivations `e_i ↦ α_i(c) e_i`, one per torus coordinate.
    pub fn derivations(&self) -> Vec<DerivationMatrix> {
        (0..self.torus_dim)
            .map(|c| {
                let d: Vec<Rational> =
                    self.weights.iter().map(|w| Rational::from_integer(w[c].into())).collect();
                DerivationMatrix::diagonal(&d)
            })
            .collect()
    }

    /// Whether every nonzero constant respects `α_i + α_j = α_k`.
    pub fn is_invariant<C: Scalar>(&self, law: &LieLaw<C>) -> bool {
        law.constants().keys().all(|&(i, j, k)| self.sum(&[i, j]) == self.weight(k))
    }
}

/// Ordered set of coordinates `(i, j, k)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiIndexSet {
    entries: Vec<(usize, usize, usize)>,
}

impl MultiIndexSet {
    pub fn new(mut entries: Vec<(usize, usize, usize)>) -> Self {
        for &(i, j, _) in &entries {
            assert!(i < j, "multi-index ({i},{j}) must have i < j");
        }
        entries.sort_unstable();
        entries.dedup();
        MultiIndexSet { entries }
    }

    pub fn entries(&self) -> &[(usize, usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, e: &(usize, usize, usize)) -> bool {
        self.entries.binary_search(e).is_ok()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|&(i, j, _)| (i, j)).collect()
    }

    pub fn with(&self, e: (usize, usize, usize)) -> Self {
        let mut v = self.entries.clone();
        v.push(e);
        Self::new(v)
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.entries.iter().all(|e| o.contains(e))
    }

    /// Renders pairs `(i,j)`, or `(i,j;k)` when `full` is set.
    pub fn render(&self, full: bool) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, j, k)| if full { format!("({i},{j};{k})") } else { format!("({i},{j})") })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for MultiIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Diagnostics of [`validate_weight_path`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathReport {
    pub simple: bool,
    /// `Some(n0)` when `α_1..α_{n0}` span the dual of the torus.
    pub initialized_at: Option<usize>,
    pub positivity_witness: Option<Vec<Rational>>,
    /// Entry `n - n0` tells whether `α_{n+1} ∉ {α_i − α_j : i, j ≤ n}`.
    pub difference_condition: Vec<bool>,
}

impl PathReport {
    pub fn valid(&self) -> bool {
        self.initialized_at.is_some()
            && self.positivity_witness.is_some()
            && self.difference_condition.iter().all(|&b| b)
    }
}

fn to_rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Checks the spanning, positivity and difference conditions of a path of
/// weights starting at `n0`.
pub fn validate_weight_path(ws: &WeightSystem, n0: usize) -> PathReport {
    let n0c = n0.min(ws.dim());
    let rows: Vec<Vec<Rational>> = ws.weights[..n0c].iter().map(|w| to_rat(w)).collect();
    let rank = if ws.torus_dim == 0 || rows.is_empty() {
        0
    } else {
        SparseMatrix::from_dense(&rows).rank()
    };
    let initialized_at = (rank == ws.torus_dim && n0 <= ws.dim()).then_some(n0);
    let constraints: Vec<(Vec<Rational>, Rational)> =
        ws.weights.iter().map(|w| (to_rat(w), Rational::one())).collect();
    let positivity_witness = fourier_motzkin(ws.torus_dim, &constraints);
    let mut difference_condition = Vec::new();
    for n in n0c..ws.dim() {
        let next = ws.weight(n + 1);
        let mut ok = true;
        'outer: for i in 1..=n {
            for j in 1..=n {
                let d: Vec<i64> = ws.weight(i).iter().zip(ws.weight(j)).map(|(a, b)| a - b).collect();
                if d == next {
                    ok = false;
                    break 'outer;
                }
            }
        }
        difference_condition.push(ok);
    }
    PathReport { simple: ws.is_simple(), initialized_at, positivity_witness, difference_condition }
}

/// Solves `a·x ≥ b` for all constraints by Fourier–Motzkin elimination and
/// returns a witness, or `None` when infeasible.
pub fn fourier_motzkin(nvars: usize, constraints: &[(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
    let mut levels: Vec<Vec<(Vec<Rational>, Rational)>> = vec![constraints.to_vec()];
    for k in (0..nvars).rev() {
        let cur = levels.last().unwrap();
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            if c.0[k].is_positive() {
                pos.push(c);
            } else if c.0[k].is_negative() {
                neg.push(c);
            } else {
                next.push(c.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                // Positive combination cancelling x_k.
                let (lp, lq) = (-q.0[k].clone(), p.0[k].clone());
                let a: Vec<Rational> = p.0.iter().zip(&q.0).map(|(x, y)| x * &lp + y * &lq).collect();
                next.push((a, &p.1 * &lp + &q.1 * &lq));
            }
        }
        next.sort();
        next.dedup();
        levels.push(next);
    }
    if levels.last().unwrap().iter().any(|(_, b)| b.is_positive()) {
        return None;
    }
    let mut x = vec![Rational::zero(); nvars];
    for k in 0..nvars {
        let cons = &levels[nvars - 1 - k];
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for (a, b) in cons {
            if a[k].is_zero() {
                continue;
            }
            let rest: Rational = (0..k).map(|j| &a[j] * &x[j]).sum();
            let bound = (b - rest) / &a[k];
            if a[k].is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        x[k] = lo.or(hi).unwrap_or_else(Rational::zero);
    }
    let ok = constraints
        .iter()
        .all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>() >= *b);
    assert!(ok, "Fourier-Motzkin back substitution failed");
    Some(x)
}

/// All `(i < j, k)` with `α_i + α_j = α_k`.
pub fn scheme_coordinates(ws: &WeightSystem) -> MultiIndexSet {
    let n = ws.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let s = ws.sum(&[i, j]);
            for k in 1..=n {
                if ws.weight(k) == s.as_slice() {
                    out.push((i, j, k));
                }
            }
        }
    }
    MultiIndexSet::new(out)
}

/// Name of the scheme variable for a coordinate.
pub fn coordinate_name(ws: &WeightSystem, (i, j, k): (usize, usize, usize)) -> String {
    if ws.is_simple() {
        format!("X{i}_{j}")
    } else {
        format!("X{i}_{j}_{k}")
    }
}

/// A Jacobi polynomial `J_ijk^h` of the torus-invariant scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemePolynomial {
    pub triple: (usize, usize, usize),
    pub target: usize,
    pub poly: MultiPoly,
}

/// Coordinates, their variable names and all nonzero `J_ijk^h`.
pub fn jacobi_scheme_polynomials(ws: &WeightSystem) -> (MultiIndexSet, Vec<SchemePolynomial>) {
    let coords = scheme_coordinates(ws);
    let vars: Arc<Vec<String>> =
        Arc::new(coords.entries().iter().map(|&c| coordinate_name(ws, c)).collect());
    let index: BTreeMap<(usize, usize, usize), usize> =
        coords.entries().iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let n = ws.dim();
    // X_ab^l for any order of a, b as (sign, variable position).
    let coord = |a: usize, b: usize, l: usize| -> Option<(bool, usize)> {
        if a == b {
            return None;
        }
        let (lo, hi, neg) = if a < b { (a, b, false) } else { (b, a, true) };
        index.get(&(lo, hi, l)).map(|&p| (neg, p))
    };
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let s = ws.sum(&[i, j, k]);
                for h in 1..=n {
                    if ws.weight(h) != s.as_slice() {
                        continue;
                    }
                    let mut p = MultiPoly::zero(vars.clone());
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for l in 1..=n {
                            let (Some((n1, v1)), Some((n2, v2))) = (coord(a, b, l), coord(l, c, h)) else {
                                continue;
                            };
                            let term = &MultiPoly::var(vars.clone(), &vars[v1]) * &MultiPoly::var(vars.clone(), &vars[v2]);
                            p = if n1 != n2 { &p - &term } else { &p + &term };
                        }
                    }
                    if !p.is_zero() {
                        out.push(SchemePolynomial { triple: (i, j, k), target: h, poly: p });
                    }
                }
            }
        }
    }
    (coords, out)
}

/// Values of the scheme coordinates at a law, in coordinate order.
pub fn law_point<C: Scalar>(law: &LieLaw<C>, coords: &MultiIndexSet) -> Vec<C> {
    coords.entries().iter().map(|&(i, j, k)| law.coeff(i, j, k)).collect()
}

fn exponent_vector(n: usize, (i, j, k): (usize, usize, usize)) -> SVec {
    let mut v = SVec::new();
    for (idx, c) in [(i, 1i64), (j, 1), (k, -1)] {
        let e = v.entry(idx - 1).or_insert_with(Rational::zero);
        *e += Rational::from_integer(c.into());
    }
    v.retain(|_, c| !c.is_zero());
    debug_assert!(v.keys().all(|&x| x < n));
    v
}

/// Greedy lexicographic subset of `J_φ` whose exponent vectors
/// `e_i + e_j − e_k` span the span of all of them.
pub fn admissible_set_diagonal<C: Scalar>(law: &LieLaw<C>, ws: &WeightSystem) -> MultiIndexSet {
    assert_eq!(law.dim(), ws.dim(), "weights and law differ in dimension");
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for &(i, j, k) in law.constants().keys() {
        if ech.insert(exponent_vector(law.dim(), (i, j, k))) {
            out.push((i, j, k));
        }
    }
    MultiIndexSet::new(out)
}

/// Rank of the exponent vectors of all nonzero constants.
pub fn exponent_rank<C: Scalar>(law: &LieLaw<C>) -> usize {
    let rows: Vec<SVec> = law.constants().keys().map(|&c| exponent_vector(law.dim(), c)).collect();
    SparseMatrix::from_rows(law.dim(), &rows).rank()
}

/// Greedy lexicographic set of coordinates `(i<j, k)` whose rows of the
/// coboundary map `C¹ → C²` have full rank `dim B²`; optionally restricted
/// to the torus-invariant complex.
pub fn admissible_set_general(law: &LieLaw<Rational>, invariance: Option<&WeightSystem>) -> MultiIndexSet {
    let n = law.dim();
    let keep_col = |a: usize, b: usize| invariance.is_none_or(|ws| ws.weight(a) == ws.weight(b));
    let keep_row = |i: usize, j: usize, k: usize| invariance.is_none_or(|ws| ws.sum(&[i, j]) == ws.weight(k));
    let mut rows: BTreeMap<(usize, usize, usize), SVec> = BTreeMap::new();
    let mut col = 0usize;
    for a in 1..=n {
        for b in 1..=n {
            if !keep_col(a, b) {
                continue;
            }
            let mut f: Cochain<Rational> = Cochain::zero(1, n, n);
            f.add_entry(vec![a], b, Rational::one());
            for ((t, k), c) in ce_differential(law, &f).entries() {
                if keep_row(t[0], t[1], *k) {
                    rows.entry((t[0], t[1], *k)).or_default().insert(col, c.clone());
                }
            }
            col += 1;
        }
    }
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (key, row) in rows {
        if ech.insert(row) {
            out.push(key);
        }
    }
    MultiIndexSet::new(out)
}

/// Failure of [`orbit_normalize`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("coordinate ({0},{1};{2}) vanishes")]
    ZeroCoordinate(usize, usize, usize),
    #[error("the scaling equations have no rational solution")]
    Inconsistent,
}

fn rational_root(q: &Rational, d: u32) -> Option<Rational> {
    if d == 1 {
        return Some(q.clone());
    }
    let neg = q.is_negative();
    if neg && d.is_multiple_of(2) {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.nth_root(d);
        (num_traits::pow(r.clone(), d as usize) == *x).then_some(r)
    };
    let n = root(&q.numer().abs())?;
    let m = root(q.denom())?;
    let r = Rational::new(n, m);
    Some(if neg { -r } else { r })
}

fn rat_pow(q: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Rational::one() / p
    } else {
        p
    }
}

/// Conjugates `law` by a diagonal matrix so that every coordinate in `a`
/// equals 1.
pub fn orbit_normalize(law: &LieLaw<Rational>, a: &MultiIndexSet) -> Result<LieLaw<Rational>, NormalizeError> {
    let n = law.dim();
    // Rows: exponents of s in s_k / (s_i s_j) and target value 1 / X.
    let mut rows: Vec<(Vec<i64>, Rational)> = Vec::new();
    for &(i, j, k) in a.entries() {
        let x = law.coeff(i, j, k);
        if x.is_zero() {
            return Err(NormalizeError::ZeroCoordinate(i, j, k));
        }
        let mut e = vec![0i64; n];
        e[k - 1] += 1;
        e[i - 1] -= 1;
        e[j - 1] -= 1;
        rows.push((e, Rational::one() / x));
    }
    // Integer row reduction, columns from last to first.
    let mut pivots: Vec<(usize, (Vec<i64>, Rational))> = Vec::new();
    for c in (0..n).rev() {
        while let Some(p) = (0..rows.len()).filter(|&r| rows[r].0[c] != 0).min_by_key(|&r| rows[r].0[c].abs()) {
            let prow = rows[p].clone();
            let mut reduced_all = true;
            #[allow(clippy::needless_range_loop)]
            for r in 0..rows.len() {
                if r == p || rows[r].0[c] == 0 {
                    continue;
                }
                let q = rows[r].0[c].div_euclid(prow.0[c]);
                for (x, y) in rows[r].0.iter_mut().zip(&prow.0) {
                    *x -= q * y;
                }
                rows[r].1 = &rows[r].1 / rat_pow(&prow.1, q);
                if rows[r].0[c] != 0 {
                    reduced_all = false;
                }
            }
            if reduced_all {
                pivots.push((c, rows.remove(p)));
                break;
            }
        }
    }
    if rows.iter().any(|(e, v)| e.iter().all(|&x| x == 0) && !v.is_one()) {
        return Err(NormalizeError::Inconsistent);
    }
    let mut s = vec![Rational::one(); n];
    for (c, (e, v)) in pivots.iter().rev() {
        let mut rhs = v.clone();
        for (j, &ej) in e.iter().enumerate() {
            if j != *c && ej != 0 {
                rhs /= rat_pow(&s[j], ej);
            }
        }
        let d = e[*c];
        let base = if d < 0 { Rational::one() / rhs } else { rhs };
        s[*c] = rational_root(&base, d.unsigned_abs() as u32).ok_or(NormalizeError::Inconsistent)?;
    }
    let out = LieLaw::from_entries(
        n,
        (),
        law.constants()
            .iter()
            .map(|(&(i, j, k), x)| (i, j, k, x * &s[k - 1] / (&s[i - 1] * &s[j - 1]))),
    )
    .expect("rescaling keeps the structure valid");
    if a.entries().iter().any(|&(i, j, k)| !out.coeff(i, j, k).is_one()) {
        return Err(NormalizeError::Inconsistent);
    }
    Ok(out)
}
