use std::collections::BTreeMap;

use crate::exactnum::{Scalar, SVec};

/// Sorts `v` in place and returns the sign of the sorting permutation, or
/// `None` if an index repeats.
pub fn sort_with_sign(v: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

/// Sparse alternating cochain: entries keyed by strictly increasing argument
/// tuples and a target index, all 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<C> {
    degree: usize,
    source_dim: usize,
    target_dim: usize,
    entries: BTreeMap<(Vec<usize>, usize), C>,
}

impl<C: Scalar> Cochain<C> {
    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        Cochain { degree, source_dim, target_dim, entries: BTreeMap::new() }
    }

    /// The identity map as a degree-1 adjoint cochain.
    pub fn identity(ctx: &C::Ctx, dim: usize) -> Self {
        let mut f = Self::zero(1, dim, dim);
        for i in 1..=dim {
            f.add_entry(vec![i], i, C::one_of(ctx));
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn entries(&self) -> &BTreeMap<(Vec<usize>, usize), C> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `c` at `(args, k)`; the arguments may be unsorted, in which case
    /// the permutation sign is applied. Repeated arguments contribute nothing.
    pub fn add_entry(&mut self, mut args: Vec<usize>, k: usize, c: C) {
        assert_eq!(args.len(), self.degree, "wrong arity");
        assert!(k >= 1 && k <= self.target_dim, "target index {k} out of range");
        assert!(args.iter().all(|&a| a >= 1 && a <= self.source_dim), "argument out of range");
        let Some(sign) = sort_with_sign(&mut args) else { return };
        let c = if sign < 0 { c.negated() } else { c };
        self.add_sorted(args, k, c);
    }

    pub(crate) fn add_sorted(&mut self, args: Vec<usize>, k: usize, c: C) {
        if c.vanishes() {
            return;
        }
        let key = (args, k);
        match self.entries.get_mut(&key) {
            Some(x) => {
                let s = x.plus(&c);
                if s.vanishes() {
                    self.entries.remove(&key);
                } else {
                    *x = s;
                }
            }
            None => {
                self.entries.insert(key, c);
            }
        }
    }

    /// Coefficient of `e_k` in `f(e_{a_1}, …, e_{a_q})` for arbitrary order.
    pub fn get(&self, args: &[usize], k: usize, ctx: &C::Ctx) -> C {
        let mut v = args.to_vec();
        let Some(sign) = sort_with_sign(&mut v) else { return C::zero_of(ctx) };
        match self.entries.get(&(v, k)) {
            Some(c) if sign < 0 => c.negated(),
            Some(c) => c.clone(),
            None => C::zero_of(ctx),
        }
    }

    /// Values at a sorted argument tuple as `(k, coefficient)`.
    pub fn values_at(&self, sorted: &[usize]) -> Vec<(usize, C)> {
        let lo = (sorted.to_vec(), 0);
        let hi = (sorted.to_vec(), usize::MAX);
        self.entries.range(lo..=hi).map(|((_, k), c)| (*k, c.clone())).collect()
    }

    pub fn plus(&self, o: &Self) -> Self {
        self.check_shape(o);
        let mut out = self.clone();
        for ((t, k), c) in &o.entries {
            out.add_sorted(t.clone(), *k, c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scaled(&self, q: &crate::exactnum::Rational) -> Self {
        self.map(|c| c.scaled(q))
    }

    pub fn times(&self, s: &C) -> Self {
        self.map(|c| c.times(s))
    }

    /// Applies `g` to each coefficient, dropping zeros.
    pub fn map<D: Scalar>(&self, mut g: impl FnMut(&C) -> D) -> Cochain<D> {
        let mut out = Cochain::zero(self.degree, self.source_dim, self.target_dim);
        for ((t, k), c) in &self.entries {
            out.add_sorted(t.clone(), *k, g(c));
        }
        out
    }

    fn check_shape(&self, o: &Self) {
        assert!(
            self.degree == o.degree && self.source_dim == o.source_dim && self.target_dim == o.target_dim,
            "cochain shapes differ"
        );
    }

    /// Same entries regarded in larger source and target dimensions.
    pub fn embed(&self, source_dim: usize, target_dim: usize) -> Self {
        assert!(source_dim >= self.source_dim && target_dim >= self.target_dim);
        Cochain { degree: self.degree, source_dim, target_dim, entries: self.entries.clone() }
    }
}

impl Cochain<crate::exactnum::Rational> {
    /// Coordinates relative to an indexing of the basis cochains.
    pub fn to_svec(&self, index: &impl Fn(&[usize], usize) -> usize) -> SVec {
        self.entries.iter().map(|((t, k), c)| (index(t, *k), c.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    #[test]
    fn sign_of_sorting() {
        let mut v = vec![3, 1, 2];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, vec![1, 2, 3]);
        let mut w = vec![2, 1];
        assert_eq!(sort_with_sign(&mut w), Some(-1));
        let mut r = vec![2, 1, 2];
        assert_eq!(sort_with_sign(&mut r), None);
    }

    #[test]
    fn alternating_storage() {
        let mut f: Cochain<Rational> = Cochain::zero(2, 3, 3);
        f.add_entry(vec![2, 1], 3, int(5));
        assert_eq!(f.get(&[1, 2], 3, &()), int(-5));
        assert_eq!(f.get(&[2, 1], 3, &()), int(5));
        assert_eq!(f.get(&[2, 2], 3, &()), int(0));
        f.add_entry(vec![1, 2], 3, int(5));
        assert!(f.is_zero());
    }
}
