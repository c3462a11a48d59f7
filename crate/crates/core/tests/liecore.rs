mod common;

use common::{closed, cochain, runner, sl2};
use lie_schemes::catalog;
use lie_schemes::exactnum::{int, Rational};
use lie_schemes::liecore::{ce_differential, derivation_check, jacobiator, nr_bracket, nr_product};
use lie_schemes::{Cochain, DerivationMatrix, LieLaw};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) { int(1) } else { int(-1) }
}

#[test]
fn jacobiator_examples() {
    assert!(jacobiator(&closed("heisenberg3")).is_zero());
    assert!(jacobiator(&closed("a4n(6)")).is_zero());
    let bad = LieLaw::rational(3, &[(1, 2, 3, int(1)), (1, 3, 1, int(1))]).unwrap();
    let j = jacobiator(&bad);
    assert_eq!(j.get(&[1, 2, 3], 3, &()), int(-1));
    // Brute-force oracle from the defining triple sum.
    for (key, v) in j.entries() {
        let (i, jj, k) = (key.0[0], key.0[1], key.0[2]);
        let mut s = int(0);
        for m in 1..=3 {
            s += bad.coeff(i, jj, m) * bad.coeff(m, k, key.1)
                + bad.coeff(jj, k, m) * bad.coeff(m, i, key.1)
                + bad.coeff(k, i, m) * bad.coeff(m, jj, key.1);
        }
        assert_eq!(&s, v);
    }
}

#[test]
fn differential_examples() {
    for law in [closed("heisenberg3"), closed("a4n(7)"), sl2()] {
        let id = Cochain::identity(&(), law.dim());
        assert_eq!(ce_differential(&law, &id), law.as_cochain());
        for x in 1..=law.dim() {
            let mut v = Cochain::zero(0, law.dim(), law.dim());
            v.add_entry(vec![], x, int(1));
            let dv = ce_differential(&law, &v);
            for y in 1..=law.dim() {
                for k in 1..=law.dim() {
                    assert_eq!(dv.get(&[y], k, &()), law.coeff(y, x, k));
                }
            }
        }
    }
    let ab = LieLaw::<Rational>::abelian(4, ());
    let mut f = Cochain::zero(2, 4, 4);
    f.add_entry(vec![1, 3], 2, int(5));
    assert!(ce_differential(&ab, &f).is_zero());
}

#[test]
fn product_examples() {
    let law = closed("a4n(6)");
    let phi = law.as_cochain();
    let id = Cochain::identity(&(), 6);
    let mut f = Cochain::zero(2, 6, 6);
    f.add_entry(vec![2, 5], 1, int(3));
    f.add_entry(vec![1, 4], 6, int(-2));
    assert_eq!(nr_product(&id, &f), f);
    assert!(nr_product(&phi, &phi).is_zero());
    assert!(nr_bracket(&phi, &phi).is_zero());
    let bad = LieLaw::rational(3, &[(1, 2, 3, int(1)), (1, 3, 1, int(1))]).unwrap();
    let b = bad.as_cochain();
    assert_eq!(nr_product(&b, &b), jacobiator(&bad));
    assert_eq!(nr_bracket(&b, &b), jacobiator(&bad).scaled(&int(2)));
    let h = closed("heisenberg3").as_cochain();
    assert!(nr_bracket(&h, &h).is_zero());
}

#[test]
fn derivation_examples() {
    for n in [6, 9, 12] {
        let law = closed(&format!("a4n({n})"));
        let diag: Vec<Rational> = (1..=n as i64).map(int).collect();
        assert!(derivation_check(&law, &DerivationMatrix::diagonal(&diag)).ok);
        assert!(derivation_check(&law, &DerivationMatrix::zero(n)).ok);
    }
    let g = closed("fn_t(9)");
    let diag: Vec<Rational> = (1..=9).map(int).collect();
    assert!(derivation_check(&g, &DerivationMatrix::diagonal(&diag)).ok);
    let h = closed("heisenberg3");
    let r = derivation_check(&h, &DerivationMatrix::diagonal(&[int(1), int(1), int(1)]));
    assert!(!r.ok);
    assert_eq!(r.residual.unwrap().0, 1);
}

fn dd_laws() -> Vec<LieLaw<Rational>> {
    [
        "heisenberg3",
        "n56",
        "n619",
        "a4n(6)",
        "a4n(9)",
        "fn_t(8)",
        "witt(8)",
        "bn(9)",
        "w12",
        "abelian(3)",
    ]
    .iter()
    .map(|n| closed(n))
    .collect()
}

#[test]
fn d_squared_vanishes_on_200_cochains() {
    let laws = dd_laws();
    let mut checked = 0;
    for (idx, law) in laws.iter().enumerate() {
        let n = law.dim();
        let strat = (0usize..=3).prop_flat_map(move |q| cochain(n, q, 6));
        runner(20, idx as u8 + 1)
            .run(&strat, |f| {
                let dd = ce_differential(law, &ce_differential(law, &f));
                prop_assert!(dd.is_zero());
                Ok(())
            })
            .unwrap();
        checked += 20;
    }
    assert_eq!(checked, 200);
    let s = sl2();
    runner(50, 99)
        .run(&(0usize..=2).prop_flat_map(|q| cochain(3, q, 6)), |f| {
            prop_assert!(ce_differential(&s, &ce_differential(&s, &f)).is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn differential_is_bracket_with_law_on_100_cases() {
    let laws: Vec<LieLaw<Rational>> =
        vec![closed("heisenberg3"), closed("n56"), closed("n619"), closed("a4n(6)"), closed("witt(6)"), sl2()];
    let strat = (0..laws.len(), 1usize..=2).prop_flat_map(|(l, q)| (Just(l), Just(q), cochain(6, q, 6)));
    runner(100, 7)
        .run(&strat, |(l, q, f)| {
            let law = &laws[l];
            let f = f.embed(6, 6);
            let f = restrict(&f, law.dim());
            let lhs = ce_differential(law, &f);
            let rhs = nr_bracket(&law.as_cochain(), &f).scaled(&sign(q + 1));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
}

/// Drops entries that mention indices beyond `n`.
fn restrict(f: &Cochain<Rational>, n: usize) -> Cochain<Rational> {
    let mut g = Cochain::zero(f.degree(), n, n);
    for ((args, k), c) in f.entries() {
        if *k <= n && args.iter().all(|&a| a <= n) {
            g.add_entry(args.clone(), *k, c.clone());
        }
    }
    g
}

#[test]
fn jacobi_iff_self_bracket_vanishes_on_500_tables() {
    let table = (2usize..=4).prop_flat_map(|n| {
        let entry = (1..=n, 1..=n, 1..=n, -1i64..=1);
        (Just(n), prop::collection::vec(entry, 0..=5))
    });
    let mut jacobi = 0;
    let mut not = 0;
    runner(500, 11)
        .run(&table, |(n, es)| {
            let mut law = LieLaw::<Rational>::abelian(n, ());
            for (i, j, k, c) in es {
                if i < j && c != 0 && law.coeff(i, j, k) == int(0) {
                    law.insert(i, j, k, int(c)).unwrap();
                }
            }
            let phi = law.as_cochain();
            let j = jacobiator(&law);
            let b = nr_bracket(&phi, &phi);
            prop_assert_eq!(j.is_zero(), b.is_zero());
            prop_assert_eq!(b, j.scaled(&int(2)));
            Ok(())
        })
        .unwrap();
    // Count both outcomes with the same seed to make sure each occurs.
    let mut r = runner(500, 11);
    for _ in 0..500 {
        let (n, es) = table.new_tree(&mut r).unwrap().current();
        let mut law = LieLaw::<Rational>::abelian(n, ());
        for (i, j, k, c) in es {
            if i < j && c != 0 && law.coeff(i, j, k) == int(0) {
                law.insert(i, j, k, int(c)).unwrap();
            }
        }
        if jacobiator(&law).is_zero() { jacobi += 1 } else { not += 1 }
    }
    assert!(jacobi > 0 && not > 0, "{jacobi} {not}");
}

#[test]
fn graded_antisymmetry() {
    let strat = (1usize..=3, 1usize..=3).prop_flat_map(|(m, q)| (cochain(4, m, 5), cochain(4, q, 5)));
    runner(100, 13)
        .run(&strat, |(f, g)| {
            let (m, q) = (f.degree(), g.degree());
            prop_assert_eq!(nr_bracket(&f, &g), nr_bracket(&g, &f).scaled(&-sign((m - 1) * (q - 1))));
            Ok(())
        })
        .unwrap();
}

#[test]
fn local_laws_share_the_operations() {
    let e = catalog::a4n_t(9);
    let law = e.law.as_local();
    assert!(jacobiator(&law).is_zero());
    let phi = law.as_cochain();
    assert!(nr_bracket(&phi, &phi).is_zero());
}
