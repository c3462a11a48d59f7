use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse rational vector: index to nonzero coefficient.
pub type SVec = BTreeMap<usize, Rational>;

/// `v -= c * w`, dropping entries that cancel.
pub(crate) fn sub_scaled(v: &mut SVec, c: &Rational, w: &SVec) {
    for (k, x) in w {
        let prod = c * x;
        match v.get_mut(k) {
            Some(e) => {
                *e -= prod;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(*k, -prod);
            }
        }
    }
}

fn scale_in_place(v: &mut SVec, c: &Rational) {
    for e in v.values_mut() {
        *e *= c;
    }
}

/// Sparse matrix over the rationals; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[SVec]) -> Self {
        let mut m = Self::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row {
                m.set(r, *c, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn row_vectors(&self) -> Vec<SVec> {
        let mut out = vec![SVec::new(); self.rows];
        for ((r, c), x) in &self.entries {
            out[*r].insert(*c, x.clone());
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for ((r, c), x) in &self.entries {
            t.entries.insert((*c, *r), x.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for ((r, c), x) in &self.entries {
            out[*r] += x * &v[*c];
        }
        out
    }

    /// Exact rank by pivoted Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for row in self.row_vectors() {
            ech.insert(row);
        }
        ech.rank()
    }

    /// Reduced row echelon form: pivot rows (leading coefficient 1) and their columns.
    pub fn rref(&self) -> (Vec<SVec>, Vec<usize>) {
        let mut pending: Vec<SVec> =
            self.row_vectors().into_iter().filter(|r| !r.is_empty()).collect();
        let mut done: Vec<SVec> = Vec::new();
        let mut pivot_cols = Vec::new();
        for col in 0..self.cols {
            let best = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&col))
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i);
            let Some(i) = best else { continue };
            let mut prow = pending.swap_remove(i);
            let inv = Rational::one() / &prow[&col];
            scale_in_place(&mut prow, &inv);
            for r in pending.iter_mut().chain(done.iter_mut()) {
                if let Some(c) = r.get(&col).cloned() {
                    sub_scaled(r, &c, &prow);
                }
            }
            pending.retain(|r| !r.is_empty());
            done.push(prow);
            pivot_cols.push(col);
        }
        (done, pivot_cols)
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<SVec> {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = SVec::new();
            v.insert(f, Rational::one());
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Some(x) = row.get(&f) {
                    v.insert(p, -x);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = self.clone();
        aug.cols += 1;
        for (r, x) in rhs.iter().enumerate() {
            aug.set(r, self.cols, x.clone());
        }
        let (rows, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row.get(&self.cols).cloned().unwrap_or_else(Rational::zero);
        }
        Some(x)
    }
}

/// Incrementally built row echelon form, optionally tracking how each pivot
/// row was combined from the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, (SVec, SVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_tracked(&self, mut v: SVec, mut combo: SVec) -> (SVec, SVec) {
        let mut from = 0usize;
        while let Some((&lead, c)) = v.range(from..).next() {
            match self.pivots.get(&lead) {
                Some((p, pc)) => {
                    let c = c.clone();
                    sub_scaled(&mut v, &c, p);
                    sub_scaled(&mut combo, &c, pc);
                }
                None => from = lead + 1,
            }
        }
        (v, combo)
    }

    /// Fully reduced remainder of `v` against the current pivots.
    pub fn reduce(&self, v: SVec) -> SVec {
        self.reduce_tracked(v, SVec::new()).0
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SVec) -> bool {
        self.insert_tracked(v, SVec::new()).is_none()
    }

    /// Inserts `v` labelled by `combo`. If `v` is dependent, returns the
    /// combination of labels that sums to zero.
    pub fn insert_tracked(&mut self, v: SVec, combo: SVec) -> Option<SVec> {
        let (mut v, mut combo) = self.reduce_tracked(v, combo);
        let Some((&lead, c)) = v.iter().next() else {
            return Some(combo);
        };
        let inv = Rational::one() / c;
        scale_in_place(&mut v, &inv);
        scale_in_place(&mut combo, &inv);
        self.pivots.insert(lead, (v, combo));
        None
    }

    /// Coefficients over the tracked labels expressing `v`, if `v` lies in the span.
    pub fn express(&self, v: SVec) -> Option<SVec> {
        let (rest, combo) = self.reduce_tracked(v, SVec::new());
        rest.is_empty().then(|| combo.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(SparseMatrix::new(3, 3).rank(), 0);
        assert_eq!(SparseMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn heisenberg_exponent_rows() {
        // e1+e2-e3, e1+e3, e2-2e3: third = first - second + ... checked by hand:
        // (1,1,-1) - (1,0,1) = (0,1,-2), so rank 2.
        let m = dense(&[&[1, 1, -1], &[1, 0, 1], &[0, 1, -2]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = dense(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = m.kernel();
        assert_eq!(ker.len() + m.rank(), 4);
        for v in ker {
            let dv: Vec<Rational> = (0..4).map(|i| v.get(&i).cloned().unwrap_or_default()).collect();
            assert!(m.mul_vec(&dv).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = dense(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let s = dense(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[int(1), int(3)]).is_none());
    }

    #[test]
    fn tracked_dependency() {
        let mut e = Echelon::new();
        let v = |xs: &[(usize, i64)]| xs.iter().map(|&(k, x)| (k, int(x))).collect::<SVec>();
        let tag = |i: usize| v(&[(i, 1)]);
        assert!(e.insert_tracked(v(&[(0, 1), (1, 1)]), tag(0)).is_none());
        assert!(e.insert_tracked(v(&[(1, 1), (2, 1)]), tag(1)).is_none());
        let dep = e.insert_tracked(v(&[(0, 1), (1, 2), (2, 1)]), tag(2)).unwrap();
        assert_eq!(dep, v(&[(0, -1), (1, -1), (2, 1)]));
    }
}
