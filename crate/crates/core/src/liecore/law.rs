use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{Rational, Scalar};

use super::cochain::Cochain;

/// Structural errors when assembling a law.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LawError {
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("bracket ({0},{1}) must have i < j")]
    NotIncreasing(usize, usize),
    #[error("duplicate bracket ({0},{1}) -> e{2}")]
    Duplicate(usize, usize, usize),
    #[error("coefficient {0} does not belong to the law's ring")]
    MixedRing(String),
}

/// Antisymmetric structure constants `φ_ij^k`, stored for `i < j` only.
///
/// Indices are 1-based. A bracket table is kept alongside the constants for
/// fast evaluation of `[e_a, e_b]` in either order.
#[derive(Clone, Debug)]
pub struct LieLaw<C: Scalar> {
    dim: usize,
    ctx: C::Ctx,
    constants: BTreeMap<(usize, usize, usize), C>,
    table: Vec<Vec<(usize, C)>>,
    preimages: Vec<Vec<(usize, usize, C)>>,
}

impl<C: Scalar> PartialEq for LieLaw<C> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.ctx == o.ctx && self.constants == o.constants
    }
}

impl<C: Scalar> LieLaw<C> {
    /// The abelian law of dimension `dim`.
    pub fn abelian(dim: usize, ctx: C::Ctx) -> Self {
        LieLaw {
            dim,
            ctx,
            constants: BTreeMap::new(),
            table: vec![Vec::new(); dim * dim],
            preimages: vec![Vec::new(); dim],
        }
    }

    /// Builds a law from `(i, j, k, φ_ij^k)` with `i < j`.
    pub fn from_entries(
        dim: usize,
        ctx: C::Ctx,
        entries: impl IntoIterator<Item = (usize, usize, usize, C)>,
    ) -> Result<Self, LawError> {
        let mut law = Self::abelian(dim, ctx);
        for (i, j, k, c) in entries {
            law.insert(i, j, k, c)?;
        }
        Ok(law)
    }

    /// Adds a new constant; rejects duplicates and out-of-range indices.
    pub fn insert(&mut self, i: usize, j: usize, k: usize, c: C) -> Result<(), LawError> {
        for x in [i, j, k] {
            if x == 0 || x > self.dim {
                return Err(LawError::IndexOutOfRange(x, self.dim));
            }
        }
        if i >= j {
            return Err(LawError::NotIncreasing(i, j));
        }
        if c.ctx() != self.ctx {
            return Err(LawError::MixedRing(c.to_string()));
        }
        if self.constants.contains_key(&(i, j, k)) {
            return Err(LawError::Duplicate(i, j, k));
        }
        if c.vanishes() {
            return Ok(());
        }
        let n = self.dim;
        self.table[(i - 1) * n + (j - 1)].push((k, c.clone()));
        self.table[(j - 1) * n + (i - 1)].push((k, c.negated()));
        self.preimages[k - 1].push((i, j, c.clone()));
        self.constants.insert((i, j, k), c);
        Ok(())
    }

    fn rebuild(&mut self) {
        let n = self.dim;
        self.table = vec![Vec::new(); n * n];
        self.preimages = vec![Vec::new(); n];
        for ((i, j, k), c) in &self.constants {
            self.table[(i - 1) * n + (j - 1)].push((*k, c.clone()));
            self.table[(j - 1) * n + (i - 1)].push((*k, c.negated()));
            self.preimages[k - 1].push((*i, *j, c.clone()));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    /// Nonzero constants keyed by `(i, j, k)` with `i < j`.
    pub fn constants(&self) -> &BTreeMap<(usize, usize, usize), C> {
        &self.constants
    }

    /// `[e_a, e_b]` as a list of `(k, coefficient)`, valid for any order of `a, b`.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, C)] {
        &self.table[(a - 1) * self.dim + (b - 1)]
    }

    /// Signed constant `φ_ab^k` for any `a, b`.
    pub fn coeff(&self, a: usize, b: usize, k: usize) -> C {
        self.bracket(a, b)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| C::zero_of(&self.ctx))
    }

    /// Pairs `(i < j)` with `φ_ij^k ≠ 0`, for a fixed target `k`.
    pub fn preimages(&self, k: usize) -> &[(usize, usize, C)] {
        &self.preimages[k - 1]
    }

    /// The law as a degree-2 adjoint cochain.
    pub fn as_cochain(&self) -> Cochain<C> {
        let mut f = Cochain::zero(2, self.dim, self.dim);
        for ((i, j, k), c) in &self.constants {
            f.add_entry(vec![*i, *j], *k, c.clone());
        }
        f
    }

    /// Law with entries of the degree-2 cochain `f`.
    pub fn from_cochain(ctx: C::Ctx, f: &Cochain<C>) -> Self {
        assert_eq!(f.degree(), 2);
        let mut law = Self::abelian(f.source_dim(), ctx);
        for ((t, k), c) in f.entries() {
            law.constants.insert((t[0], t[1], *k), c.clone());
        }
        law.rebuild();
        law
    }

    /// Applies `g` to every coefficient, dropping those mapped to zero.
    pub fn map_coeffs<D: Scalar>(&self, ctx: D::Ctx, mut g: impl FnMut(&C) -> D) -> LieLaw<D> {
        let mut law = LieLaw::<D>::abelian(self.dim, ctx);
        for (key, c) in &self.constants {
            let d = g(c);
            if !d.vanishes() {
                law.constants.insert(*key, d);
            }
        }
        law.rebuild();
        law
    }

    /// Restriction to the span of `e_1..e_m`, which must be a subalgebra.
    pub fn truncate(&self, m: usize) -> Self {
        let mut law = Self::abelian(m, self.ctx.clone());
        for ((i, j, k), c) in &self.constants {
            if *j <= m {
                assert!(*k <= m, "e1..e{m} is not a subalgebra");
                law.constants.insert((*i, *j, *k), c.clone());
            }
        }
        law.rebuild();
        law
    }

    /// Same constants viewed in a larger dimension.
    pub fn extend_dim(&self, m: usize) -> Self {
        assert!(m >= self.dim);
        let mut law = Self::abelian(m, self.ctx.clone());
        law.constants = self.constants.clone();
        law.rebuild();
        law
    }
}

impl LieLaw<Rational> {
    /// Convenience constructor for rational laws from `(i, j, k, q)`.
    pub fn rational(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self, LawError> {
        Self::from_entries(dim, (), entries.iter().cloned())
    }
}

impl<C: Scalar> fmt::Display for LieLaw<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .constants
            .iter()
            .map(|((i, j, k), c)| format!("[e{i},e{j}] = ({c}) e{k}"))
            .collect();
        write!(f, "dim {}: {}", self.dim, parts.join(", "))
    }
}
