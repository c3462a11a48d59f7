use lie_schemes::catalog;
use lie_schemes::cohomology::cohomology_dims;
use lie_schemes::exactnum::Rational;
use lie_schemes::exactnum::{int, rat, LocalRing, UPoly};
use lie_schemes::filiation::{
    check_invariants, extend_step, fiber_dimension, k_dimension_by_powers, local_ring_report, run_filiation,
    BranchChoices, FiliationError, SchemeState,
};
use lie_schemes::liecore::jacobiator;
use lie_schemes::WeightSystem;

fn a4_tower() -> Vec<SchemeState> {
    run_filiation(&catalog::a4_weights(12), &catalog::a4n(6).law.closed_point(), 12, &BranchChoices::default()).unwrap()
}

fn f_tower(center12: Option<i64>) -> Vec<SchemeState> {
    let mut ch = BranchChoices::default();
    if let Some(d) = center12 {
        ch.centers.insert(12, rat(1, d));
    }
    run_filiation(&WeightSystem::graded(12), &catalog::n56().law.closed_point(), 12, &ch).unwrap()
}

#[test]
fn a4_tower_matches_catalog_deformation() {
    let st = a4_tower();
    assert_eq!(st[0].law.map_coeffs((), |c| c.residue()), catalog::a4n(6).law.closed_point());
    assert_eq!(st[0].ring().render(), "K");
    for s in &st[1..] {
        let expect = catalog::a4n_t(s.n).law.as_local();
        assert_eq!(s.law, expect, "n = {}", s.n);
        let rep = local_ring_report(s);
        if s.n <= 8 {
            assert_eq!((rep.parameter_count, rep.relation, rep.formally_rigid), (1, None, false));
        } else {
            assert_eq!(rep.ring, "K[u]/(u^2)");
            assert!(rep.formally_rigid && rep.krull_dim_zero);
            assert_eq!(rep.tangent_dim, 1);
        }
    }
    let l9 = st[3].history.last().unwrap().leftover.as_ref().unwrap();
    assert!(l9.values.iter().all(|(_, v)| v.numerator() == &UPoly::from_ints(&[0, 0, 3])));
}

#[test]
fn f_tower_matches_rational_functions() {
    let st = f_tower(None);
    assert_eq!(st[1].law.map_coeffs((), |c| c.residue()), catalog::n619().law.closed_point());
    for s in &st[2..7] {
        assert_eq!(s.law, catalog::fn_t(s.n).law.as_local(), "n = {}", s.n);
    }
    let last = st.last().unwrap();
    assert_eq!(last.law, catalog::f12().law.as_local());
    let rep = local_ring_report(last);
    assert_eq!(rep.ring, "K[u]/(u^5)");
    assert!(rep.formally_rigid);
    assert_eq!(rep.tangent_dim, 1);
    // Solved values at n = 12 before the relation, against the free-ring constants.
    let free = LocalRing::free("t", int(0));
    let full = catalog::filiform_over(12, &free);
    let rec = last.history.last().unwrap();
    for ((i, j), v) in &rec.solved {
        assert_eq!(*v, full.coeff(*i, *j, 12), "X{i}_{j}");
    }
}

#[test]
fn n12_leftover_is_the_witt_factor() {
    let st = f_tower(None);
    let rec = st.last().unwrap().history.last().unwrap();
    let l = rec.leftover.as_ref().unwrap();
    let free = LocalRing::free("t", int(0));
    let target = free
        .from_t_fraction(&UPoly::from_ints(&[0, 0, 0, 0, 0, -9, 90]), &UPoly::one())
        .unwrap();
    // Independent value: the Jacobi polynomials of the free-ring law.
    let j = jacobiator(&catalog::filiform_over(12, &free));
    let mut triples: Vec<_> = l.values.iter().map(|(t, _)| *t).collect();
    triples.sort();
    assert_eq!(triples, vec![(2, 3, 7), (2, 4, 6), (3, 4, 5)]);
    for (t, v) in &l.values {
        assert_eq!(*v, j.get(&[t.0, t.1, t.2], 12, &free));
        // J237 = -J246 = J345 = 9t^5(10t - 1) / unit.
        let sign = if *t == (2, 4, 6) { -1 } else { 1 };
        assert_eq!(*v.numerator(), target.numerator().scale(&int(sign)), "{t:?}");
    }
    assert_eq!(l.exponent, 5);
    assert_eq!(l.roots, vec![int(0), rat(1, 10)]);
    assert_eq!(rec.unexplored, vec![rat(1, 10)]);
    // The unit denominator, compared with (2+t)^2 (1-t^2).
    let den = UPoly::from_ints(&[2, 1]);
    let den = &(&den * &den) * &UPoly::from_ints(&[1, 0, -1]);
    assert!(l.values.iter().all(|(_, v)| v.denominator() == &den));
}

#[test]
fn w_branch_is_reduced_and_rigid() {
    let st = f_tower(Some(10));
    let last = st.last().unwrap();
    assert_eq!(last.ring().render(), "K");
    assert!(last.ring().is_field());
    assert_eq!(last.closed_point(), catalog::w12().law.closed_point());
    let ders = last.weights.derivations();
    assert_eq!(cohomology_dims(&last.closed_point(), 2, Some(&ders)).unwrap().dim_h, 0);
    let rep = local_ring_report(last);
    assert_eq!((rep.parameter_count, rep.tangent_dim, rep.formally_rigid), (0, 0, true));
}

#[test]
fn nu_routes_agree_and_invariants_hold_on_both_towers() {
    for tower in [a4_tower(), f_tower(None), f_tower(Some(10))] {
        for w in tower.windows(2) {
            let rec = w[1].history.last().unwrap();
            assert_eq!(rec.nu_homology, rec.nu_kernel, "n = {}", rec.n);
            let f = fiber_dimension(&w[0], w[1].weights.weight(w[1].n));
            assert!(f.agree());
            assert!(w[0].admissible.is_subset(&w[1].admissible));
            assert_eq!(w[1].admissible.len(), w[0].admissible.len() + 1);
        }
        for s in &tower {
            for (name, ok) in check_invariants(s) {
                assert!(ok, "n = {}: {name}", s.n);
            }
        }
    }
}

#[test]
fn rigidity_iff_finite_dimension() {
    for tower in [a4_tower(), f_tower(None), f_tower(Some(10))] {
        for s in &tower {
            let rep = local_ring_report(s);
            let dim = k_dimension_by_powers(s.ring(), 64);
            assert_eq!(rep.formally_rigid, dim.is_some(), "n = {}", s.n);
            assert_eq!(dim, s.ring().k_dimension());
        }
    }
}

#[test]
fn documented_nu_values() {
    let st = a4_tower();
    assert_eq!(fiber_dimension(&st[0], catalog::a4_weights(7).weight(7)).homology, 2);
    assert_eq!(st[3].history.last().unwrap().nu_homology, 1);
}

#[test]
fn alternative_pair_rescues_the_pole() {
    let ws = WeightSystem::graded(9);
    let seed = catalog::n56().law.closed_point();
    let mut ch = BranchChoices::default();
    ch.centers.insert(7, int(-2));
    ch.pairs.insert(9, (1, 8));
    let err = run_filiation(&ws, &seed, 9, &ch).unwrap_err();
    assert!(matches!(err, FiliationError::BadExtensionPair(1, 8, _)), "{err}");
    ch.pairs.insert(9, (2, 7));
    let st = run_filiation(&ws, &seed, 9, &ch).unwrap();
    let cp = st.last().unwrap().closed_point();
    let got: Vec<Rational> = [(1, 8), (2, 7), (3, 6), (4, 5)].iter().map(|&(i, j)| cp.coeff(i, j, 9)).collect();
    assert_eq!(got, vec![int(0), int(1), int(-1), int(1)]);
}

#[test]
fn failure_modes() {
    let st = a4_tower();
    // Reusing the weight of e_7 at n = 7 would need a second parameter.
    let err = extend_step(&st[1], &[3, 1], None, None).unwrap_err();
    assert_eq!(err, FiliationError::SecondParameter { n: 8 });
    let err = extend_step(&st[0], &[40, 40], None, None).unwrap_err();
    assert_eq!(err, FiliationError::EmptyFiber { n: 7 });
    let err = extend_step(&st[0], &[3, 1], Some((1, 2)), None).unwrap_err();
    assert_eq!(err, FiliationError::NotACoordinate(1, 2, 7));
    // A center that is not a root of the leftover.
    let f = f_tower(None);
    let err = extend_step(&f[6], &[12], None, Some(&rat(1, 3))).unwrap_err();
    assert_eq!(err, FiliationError::EmptyFiber { n: 12 });
    let err = extend_step(&f[6], &[12], Some((1, 11)), Some(&rat(1, 3))).unwrap_err();
    assert!(matches!(err, FiliationError::EmptyFiber { .. } | FiliationError::BadExtensionPair(1, 11, _)), "{err}");
    // Seeds must have maximal admissible sets.
    let h = catalog::heisenberg3().law.closed_point();
    let err = SchemeState::seed(&h, &WeightSystem::new(1, vec![vec![1], vec![1], vec![2]])).unwrap_err();
    assert!(matches!(err, FiliationError::BadSeed(_)));
}

#[test]
fn default_pair_skips_forced_zero_coordinates() {
    // At the pole t = -2 the coordinate X1_8 is forced to vanish, so the
    // default choice moves on to the next coordinate.
    let ws = WeightSystem::graded(9);
    let mut ch = BranchChoices::default();
    ch.centers.insert(7, int(-2));
    let st = run_filiation(&ws.truncate(8), &catalog::n56().law.closed_point(), 8, &ch).unwrap();
    let next = extend_step(st.last().unwrap(), &[9], None, None).unwrap();
    assert_eq!(next.history.last().unwrap().pair, (2, 7));
}
