use crate::exactnum::Scalar;

use super::cochain::{sort_with_sign, Cochain};
use super::derivation::DerivationMatrix;
use super::law::LieLaw;

fn signed<C: Scalar>(c: C, negative: bool) -> C {
    if negative {
        c.negated()
    } else {
        c
    }
}

/// `J_ijk^l = Σ_s (φ_ij^s φ_sk^l + φ_jk^s φ_si^l + φ_ki^s φ_sj^l)` for `i < j < k`.
pub fn jacobiator<C: Scalar>(law: &LieLaw<C>) -> Cochain<C> {
    let n = law.dim();
    let mut out = Cochain::zero(3, n, n);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (s, x) in law.bracket(a, b) {
                        for (l, y) in law.bracket(*s, c) {
                            out.add_sorted(vec![i, j, k], *l, x.times(y));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Contribution of the first sum of the differential,
/// `Σ_{i<j} (−1)^{i+j} f(φ(x_i, x_j), x_1, …, x̂_i, …, x̂_j, …)`.
fn bracket_term<C: Scalar>(law: &LieLaw<C>, f: &Cochain<C>, out: &mut Cochain<C>) {
    for ((b, k), c) in f.entries() {
        for (ps, &s) in b.iter().enumerate() {
            let rest: Vec<usize> = b.iter().copied().filter(|&y| y != s).collect();
            for (x, y, phi) in law.preimages(s) {
                if rest.contains(x) || rest.contains(y) {
                    continue;
                }
                let px = rest.partition_point(|&z| z < *x);
                let mut a = rest.clone();
                a.insert(px, *x);
                let py = a.partition_point(|&z| z < *y);
                a.insert(py, *y);
                // 1-based positions px + 1 and py + 1 in the merged tuple.
                let negative = (px + py + ps) % 2 == 1;
                out.add_sorted(a, *k, signed(phi.times(c), negative));
            }
        }
    }
}

/// Chevalley–Eilenberg differential with coefficients in the adjoint module.
pub fn ce_differential<C: Scalar>(law: &LieLaw<C>, f: &Cochain<C>) -> Cochain<C> {
    let n = law.dim();
    assert_eq!(f.source_dim(), n, "cochain source dimension differs from the law");
    assert_eq!(f.target_dim(), n, "adjoint cochain expected");
    let mut out = Cochain::zero(f.degree() + 1, n, n);
    bracket_term(law, f, &mut out);
    for ((b, k), c) in f.entries() {
        for x in 1..=n {
            if b.binary_search(&x).is_ok() {
                continue;
            }
            let p = b.partition_point(|&y| y < x);
            let mut a = b.clone();
            a.insert(p, x);
            for (l, phi) in law.bracket(x, *k) {
                out.add_sorted(a.clone(), *l, signed(phi.times(c), p % 2 == 1));
            }
        }
    }
    out
}

/// Differential of cochains valued in a trivial module (only the bracket term).
pub fn trivial_differential<C: Scalar>(law: &LieLaw<C>, f: &Cochain<C>) -> Cochain<C> {
    assert_eq!(f.source_dim(), law.dim());
    let mut out = Cochain::zero(f.degree() + 1, law.dim(), f.target_dim());
    bracket_term(law, f, &mut out);
    out
}

/// Nijenhuis–Richardson product `f • g` over `(q, m−1)`-shuffles.
pub fn nr_product<C: Scalar>(f: &Cochain<C>, g: &Cochain<C>) -> Cochain<C> {
    let n = f.source_dim();
    assert_eq!(g.source_dim(), n, "source dimensions differ");
    assert!(f.target_dim() == n && g.target_dim() == n, "adjoint cochains expected");
    let (m, q) = (f.degree(), g.degree());
    assert!(m >= 1, "the left factor must have positive degree");
    let mut out = Cochain::zero(m + q - 1, n, n);
    for ((bg, s), cg) in g.entries() {
        for ((sf, k), cf) in f.entries() {
            let Ok(ps) = sf.binary_search(s) else { continue };
            let rest: Vec<usize> = sf.iter().copied().filter(|y| y != s).collect();
            if rest.iter().any(|r| bg.binary_search(r).is_ok()) {
                continue;
            }
            let inversions: usize = bg.iter().map(|b| rest.partition_point(|r| r < b)).sum();
            let mut a: Vec<usize> = bg.iter().chain(rest.iter()).copied().collect();
            a.sort_unstable();
            out.add_sorted(a, *k, signed(cg.times(cf), (inversions + ps) % 2 == 1));
        }
    }
    out
}

/// Graded bracket `[f, g] = f•g − (−1)^{(m−1)(q−1)} g•f`.
pub fn nr_bracket<C: Scalar>(f: &Cochain<C>, g: &Cochain<C>) -> Cochain<C> {
    let (m, q) = (f.degree(), g.degree());
    let fg = nr_product(f, g);
    let gf = nr_product(g, f);
    if ((m - 1) * (q - 1)) % 2 == 0 {
        fg.minus(&gf)
    } else {
        fg.plus(&gf)
    }
}

/// Induced action `(δ·f)(x) = ρ(δ) f(x) − Σ_p f(x_1, …, δx_p, …)` where `ρ(δ)`
/// acts on the target (`None` for the trivial target action).
pub fn derivation_action<C: Scalar>(
    ctx: &C::Ctx,
    delta: &DerivationMatrix,
    target: Option<&DerivationMatrix>,
    f: &Cochain<C>,
) -> Cochain<C> {
    assert_eq!(delta.dim(), f.source_dim());
    let mut out = Cochain::zero(f.degree(), f.source_dim(), f.target_dim());
    for ((b, k), c) in f.entries() {
        if let Some(rho) = target {
            for (l, x) in rho.image(*k) {
                out.add_sorted(b.clone(), l, c.times(&C::from_rational(ctx, &x)));
            }
        }
        for (pb, &bb) in b.iter().enumerate() {
            for (x, dx) in delta.row(bb) {
                let mut a = b.clone();
                a[pb] = x;
                let mut sorted = a.clone();
                let Some(sign) = sort_with_sign(&mut sorted) else { continue };
                // `sorted` with x replaced by bb is `b` up to the same sign.
                let coef = c.times(&C::from_rational(ctx, &-dx));
                out.add_sorted(sorted, *k, signed(coef, sign < 0));
            }
        }
    }
    out
}
