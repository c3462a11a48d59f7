use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactnum::{Rational, Scalar};

use super::law::LieLaw;

/// A linear endomorphism `δ` of the underlying space: entry `(l, i)` is the
/// coefficient of `e_l` in `δ(e_i)` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl DerivationMatrix {
    pub fn zero(dim: usize) -> Self {
        DerivationMatrix { dim, entries: BTreeMap::new() }
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut d = Self::zero(diag.len());
        for (i, x) in diag.iter().enumerate() {
            d.set(i + 1, i + 1, x.clone());
        }
        d
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let mut d = Self::zero(rows.len());
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), rows.len(), "derivation matrix must be square");
            for (c, x) in row.iter().enumerate() {
                d.set(r + 1, c + 1, x.clone());
            }
        }
        d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, row: usize, col: usize, x: Rational) {
        assert!(row >= 1 && row <= self.dim && col >= 1 && col <= self.dim);
        if x.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), x);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.entries
    }

    /// `δ(e_i)` as `(l, coefficient)`.
    pub fn image(&self, i: usize) -> Vec<(usize, Rational)> {
        self.entries
            .iter()
            .filter(|((_, c), _)| *c == i)
            .map(|((r, _), x)| (*r, x.clone()))
            .collect()
    }

    /// Columns `x` with a nonzero entry in row `b`, i.e. `δ(e_x)` has an `e_b` part.
    pub fn row(&self, b: usize) -> Vec<(usize, Rational)> {
        self.entries
            .range((b, 0)..(b + 1, 0))
            .map(|((_, c), x)| (*c, x.clone()))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    /// Diagonal entries, `e_i ↦ d_i e_i`.
    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (1..=self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut out = Self::zero(self.dim);
        for ((r, k), a) in &self.entries {
            for ((_, c), b) in o.entries.range((*k, 0)..(*k + 1, 0)) {
                let v = out.get(*r, *c) + a * b;
                out.set(*r, *c, v);
            }
        }
        out
    }

    /// `[self, o] = self∘o − o∘self`.
    pub fn commutator(&self, o: &Self) -> Self {
        let a = self.mul(o);
        let b = o.mul(self);
        let mut out = a;
        for ((r, c), x) in b.entries {
            let v = out.get(r, c) - x;
            out.set(r, c, v);
        }
        out
    }
}

/// Outcome of [`derivation_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationCheck<C> {
    pub ok: bool,
    /// First violated `(i, j, k)` and the residual there.
    pub residual: Option<(usize, usize, usize, C)>,
}

/// Residual vector `δ[e_i,e_j] − [δe_i, e_j] − [e_i, δe_j]` as `(k, coefficient)`.
pub fn derivation_residual<C: Scalar>(law: &LieLaw<C>, d: &DerivationMatrix, i: usize, j: usize) -> BTreeMap<usize, C> {
    let ctx = law.ctx();
    let mut acc: BTreeMap<usize, C> = BTreeMap::new();
    let mut add = |k: usize, c: C| {
        let e = acc.entry(k).or_insert_with(|| C::zero_of(ctx));
        *e = e.plus(&c);
    };
    for (l, c) in law.bracket(i, j) {
        for (k, x) in d.image(*l) {
            add(k, c.scaled(&x));
        }
    }
    for (l, x) in d.image(i) {
        for (k, c) in law.bracket(l, j) {
            add(*k, c.scaled(&-x.clone()));
        }
    }
    for (l, x) in d.image(j) {
        for (k, c) in law.bracket(i, l) {
            add(*k, c.scaled(&-x.clone()));
        }
    }
    acc.retain(|_, c| !c.vanishes());
    acc
}

/// Whether `d` is a derivation of `law`; reports the first violated triple.
pub fn derivation_check<C: Scalar>(law: &LieLaw<C>, d: &DerivationMatrix) -> DerivationCheck<C> {
    assert_eq!(law.dim(), d.dim(), "dimension mismatch");
    for i in 1..=law.dim() {
        for j in i + 1..=law.dim() {
            if let Some((k, c)) = derivation_residual(law, d, i, j).into_iter().next() {
                return DerivationCheck { ok: false, residual: Some((i, j, k, c)) };
            }
        }
    }
    DerivationCheck { ok: true, residual: None }
}
