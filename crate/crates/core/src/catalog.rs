//! Built-in laws with their declared tori.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::exactnum::{int, rat, LocalRing, Rational, RingElement, Scalar, UPoly};
use crate::liecore::{derivation_check, jacobiator, LieLaw};
use crate::torus_scheme::WeightSystem;

/// A law with rational or local-ring coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLaw {
    Rational(LieLaw<Rational>),
    Local(LieLaw<RingElement>),
}

impl AnyLaw {
    pub fn dim(&self) -> usize {
        match self {
            AnyLaw::Rational(l) => l.dim(),
            AnyLaw::Local(l) => l.dim(),
        }
    }

    /// The coefficient ring, `K` for rational laws.
    pub fn ring(&self) -> Arc<LocalRing> {
        match self {
            AnyLaw::Rational(_) => LocalRing::field(),
            AnyLaw::Local(l) => l.ctx().clone(),
        }
    }

    /// The law at the closed point of its ring.
    pub fn closed_point(&self) -> LieLaw<Rational> {
        match self {
            AnyLaw::Rational(l) => l.clone(),
            AnyLaw::Local(l) => l.map_coeffs((), |c| c.residue()),
        }
    }

    pub fn jacobi_holds(&self) -> bool {
        match self {
            AnyLaw::Rational(l) => jacobiator(l).is_zero(),
            AnyLaw::Local(l) => jacobiator(l).is_zero(),
        }
    }

    /// Whether every torus derivation is a derivation of the law.
    pub fn torus_acts(&self, ws: &WeightSystem) -> bool {
        ws.derivations().iter().all(|d| match self {
            AnyLaw::Rational(l) => derivation_check(l, d).ok,
            AnyLaw::Local(l) => derivation_check(l, d).ok,
        })
    }

    pub fn as_local(&self) -> LieLaw<RingElement> {
        match self {
            AnyLaw::Rational(l) => {
                let ring = LocalRing::field();
                l.map_coeffs(ring.clone(), |q| ring.constant(q.clone()))
            }
            AnyLaw::Local(l) => l.clone(),
        }
    }
}

impl fmt::Display for AnyLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyLaw::Rational(l) => l.fmt(f),
            AnyLaw::Local(l) => l.fmt(f),
        }
    }
}

/// A named catalog law.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub law: AnyLaw,
    pub weights: WeightSystem,
    /// Whether the closed point has an orbit of maximal dimension `n − dim T`.
    pub maximal_orbit: bool,
}

fn q_law(n: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>) -> LieLaw<Rational> {
    LieLaw::from_entries(n, (), entries).expect("catalog law is well formed")
}

fn ones(entries: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize, Rational)> {
    entries.iter().map(|&(i, j, k)| (i, j, k, Rational::one())).collect()
}

fn entry(name: String, law: AnyLaw, weights: WeightSystem, maximal_orbit: bool) -> CatalogEntry {
    CatalogEntry { name, law, weights, maximal_orbit }
}

pub fn heisenberg3() -> CatalogEntry {
    let ws = WeightSystem::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    entry("heisenberg3".into(), AnyLaw::Rational(q_law(3, ones(&[(1, 2, 3)]))), ws, true)
}

pub fn abelian(m: usize) -> CatalogEntry {
    entry(format!("abelian({m})"), AnyLaw::Rational(LieLaw::abelian(m, ())), WeightSystem::trivial(m), false)
}

fn n56_pairs() -> Vec<(usize, usize, usize)> {
    vec![(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5)]
}

pub fn n56() -> CatalogEntry {
    entry("n56".into(), AnyLaw::Rational(q_law(5, ones(&n56_pairs()))), WeightSystem::graded(5), true)
}

pub fn n619() -> CatalogEntry {
    let mut p = n56_pairs();
    p.extend([(1, 5, 6), (2, 4, 6)]);
    entry("n619".into(), AnyLaw::Rational(q_law(6, ones(&p))), WeightSystem::graded(6), true)
}

/// Weights `α_i = (i, 0)` for `i ≤ 3` and `(i − 4, 1)` beyond.
pub fn a4_weights(n: usize) -> WeightSystem {
    let w = (1..=n as i64).map(|i| if i <= 3 { vec![i, 0] } else { vec![i - 4, 1] }).collect();
    WeightSystem::new(2, w)
}

fn a4_base(n: usize) -> Vec<(usize, usize, usize)> {
    let mut p: Vec<_> = (2..n).filter(|&i| i != 3).map(|i| (1, i, i + 1)).collect();
    p.extend((4..=n.saturating_sub(2)).map(|i| (2, i, i + 2)));
    p
}

pub fn a4n(n: usize) -> CatalogEntry {
    assert!(n >= 6, "a4n needs n >= 6");
    entry(format!("a4n({n})"), AnyLaw::Rational(q_law(n, ones(&a4_base(n)))), a4_weights(n), true)
}

/// The canonical one-parameter deformation of `a4n(n)`, free for `n ≤ 8`
/// and with `t² = 0` from `n = 9` on.
pub fn a4n_t(n: usize) -> CatalogEntry {
    assert!(n >= 7, "a4n_t needs n >= 7");
    let ring = if n <= 8 { LocalRing::free("t", int(0)) } else { LocalRing::truncated("t", 2, int(0)) };
    let t = ring.t();
    let one = ring.constant(Rational::one());
    let mut e: Vec<(usize, usize, usize, RingElement)> = (2..n)
        .filter(|&i| i != 3)
        .map(|i| (1, i, i + 1, one.clone()))
        .collect();
    for i in 4..=n - 2 {
        e.push((2, i, i + 2, one.minus(&t.scaled(&int(i as i64 - 4)))));
    }
    for i in 4..=n.saturating_sub(3) {
        e.push((3, i, i + 3, t.clone()));
    }
    let law = LieLaw::from_entries(n, ring, e).expect("catalog law is well formed");
    entry(format!("a4n_t({n})"), AnyLaw::Local(law), a4_weights(n), true)
}

const D1: &[i64] = &[2, 1];
const D2: &[i64] = &[2, 0, -2];
const D3: &[i64] = &[4, 2, -4, -2];

/// Constants `X_ij` (target `i + j`) of the filiform tower as fractions
/// of polynomials in `t`, beyond `X_1k = 1`.
fn filiform_fractions() -> Vec<(usize, usize, &'static [i64], &'static [i64])> {
    vec![
        (2, 3, &[1], &[1]),
        (2, 4, &[1], &[1]),
        (2, 5, &[1, -1], &[1]),
        (3, 4, &[0, 1], &[1]),
        (2, 6, &[1, -2], &[1]),
        (3, 5, &[0, 1], &[1]),
        (2, 7, &[2, -5], D1),
        (3, 6, &[0, 2, -2], D1),
        (4, 5, &[0, 0, 3], D1),
        (2, 8, &[2, -7, 5], D1),
        (3, 7, &[0, 2, -5], D1),
        (4, 6, &[0, 0, 3], D1),
        (2, 9, &[2, -10, 16, -5], D2),
        (3, 8, &[0, 4, -16, 8, -5], D3),
        (4, 7, &[0, 0, 6, -12, 15], D3),
        (5, 6, &[0, 0, 0, 12, -21], D3),
        (2, 10, &[4, -22, 44, -26, 36], D3),
        (3, 9, &[0, 4, -22, 32, -41], D3),
        (4, 8, &[0, 0, 6, -24, 36], D3),
        (5, 7, &[0, 0, 0, 12, -21], D3),
    ]
}

/// The filiform constants up to dimension `n` (at most 12) over `ring`.
pub fn filiform_over(n: usize, ring: &Arc<LocalRing>) -> LieLaw<RingElement> {
    let mut e: Vec<(usize, usize, usize, RingElement)> =
        (2..n).map(|k| (1, k, k + 1, ring.constant(Rational::one()))).collect();
    for (i, j, num, den) in filiform_fractions() {
        if i + j <= n {
            let c = ring
                .from_t_fraction(&UPoly::from_ints(num), &UPoly::from_ints(den))
                .expect("denominator is a unit at the center");
            if !c.vanishes() {
                e.push((i, j, i + j, c));
            }
        }
    }
    LieLaw::from_entries(n, ring.clone(), e).expect("catalog law is well formed")
}

/// The filiform family `f_n(t)` for `7 ≤ n ≤ 11`, over `K[t]` localized at 0.
pub fn fn_t(n: usize) -> CatalogEntry {
    assert!((7..=11).contains(&n), "fn_t is defined for 7 <= n <= 11");
    let law = filiform_over(n, &LocalRing::free("t", int(0)));
    entry(format!("fn_t({n})"), AnyLaw::Local(law), WeightSystem::graded(n), true)
}

/// The canonical deformation of `f_12` over `K[u]/(u^5)`.
pub fn f12() -> CatalogEntry {
    let law = filiform_over(12, &LocalRing::truncated("t", 5, int(0)));
    entry("f12".into(), AnyLaw::Local(law), WeightSystem::graded(12), true)
}

/// The filiform tower at `t = 1/10` in dimension 12.
pub fn w12() -> CatalogEntry {
    let t = rat(1, 10);
    let mut e: Vec<(usize, usize, usize, Rational)> = (2..12).map(|k| (1, k, k + 1, Rational::one())).collect();
    for (i, j, num, den) in filiform_fractions() {
        let c = UPoly::from_ints(num).eval(&t) / UPoly::from_ints(den).eval(&t);
        e.push((i, j, i + j, c));
    }
    entry("w12".into(), AnyLaw::Rational(q_law(12, e)), WeightSystem::graded(12), true)
}

/// `[e_1,e_k] = e_{k+1}` (3 < k < n), `[e_2,e_k] = e_{k+2}` (3 < k < n−1),
/// `[e_3,e_k] = e_{k+3}` (3 < k < n−2).
pub fn bn(n: usize) -> CatalogEntry {
    assert!(n >= 5, "bn needs n >= 5");
    let mut p: Vec<_> = (4..n).map(|k| (1, k, k + 1)).collect();
    p.extend((4..n - 1).map(|k| (2, k, k + 2)));
    p.extend((4..n.saturating_sub(2)).map(|k| (3, k, k + 3)));
    entry(format!("bn({n})"), AnyLaw::Rational(q_law(n, ones(&p))), a4_weights(n), true)
}

/// `[e_i, e_j] = (j − i) e_{i+j}` truncated to dimension `n`.
pub fn witt(n: usize) -> CatalogEntry {
    let mut e = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if i + j <= n {
                e.push((i, j, i + j, int((j - i) as i64)));
            }
        }
    }
    entry(format!("witt({n})"), AnyLaw::Rational(q_law(n, e)), WeightSystem::graded(n), true)
}

/// Looks up `heisenberg3`, `n56`, `n619`, `f12`, `w12` or a family member
/// such as `a4n(9)`, `a4n_t(9)`, `fn_t(8)`, `bn(10)`, `witt(12)`, `abelian(3)`.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let name = name.trim();
    match name {
        "heisenberg3" => return Some(heisenberg3()),
        "n56" => return Some(n56()),
        "n619" => return Some(n619()),
        "f12" => return Some(f12()),
        "w12" => return Some(w12()),
        _ => {}
    }
    let (family, rest) = name.split_once('(')?;
    let n: usize = rest.strip_suffix(')')?.trim().parse().ok()?;
    match family {
        "a4n" if (6..=40).contains(&n) => Some(a4n(n)),
        "a4n_t" if (7..=40).contains(&n) => Some(a4n_t(n)),
        "fn_t" if (7..=11).contains(&n) => Some(fn_t(n)),
        "bn" if (5..=40).contains(&n) => Some(bn(n)),
        "witt" if (1..=40).contains(&n) => Some(witt(n)),
        "abelian" if (1..=12).contains(&n) => Some(abelian(n)),
        _ => None,
    }
}

/// The standard list of catalog entries checked by the self test.
pub fn standard_entries() -> Vec<CatalogEntry> {
    let mut v = vec![heisenberg3(), n56(), n619()];
    v.extend((6..=14).map(a4n));
    v.extend((7..=12).map(a4n_t));
    v.extend((7..=11).map(fn_t));
    v.push(f12());
    v.push(w12());
    v.extend((9..=12).map(bn));
    v.extend([witt(8), witt(12)]);
    v.extend((2..=4).map(abelian));
    v
}
