mod common;

use lie_schemes::catalog;
use lie_schemes::certificate::{
    certificate_steps, check_steps, nonvanishing_witness, scheme_jacobi_basis_62, verify_certificate_chain,
    witness_without_17, witness_without_18, CertificateError, Chart, Z_FULL, Z_SQUARE_ROOT, Z_WITHOUT_12,
    Z_WITHOUT_17, Z_WITHOUT_18,
};
use lie_schemes::exactnum::{int, rat, Rational};
use lie_schemes::filiation::{run_filiation, BranchChoices};
use lie_schemes::liecore::jacobiator;
use lie_schemes::{LieLaw, MultiPoly, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn parsed(chart: &Chart, text: &str) -> MultiPoly {
    MultiPoly::parse(chart.vars.clone(), text).unwrap()
}

#[test]
fn named_jacobi_polynomials_match_hand_forms() {
    let chart = Chart::new(9);
    let basis = scheme_jacobi_basis_62(9).unwrap();
    let expected = [
        ("J126", "X12*X36 - X26*X18 + X16*X27"),
        ("J135", "-X35*X18 + X15*X36"),
        ("J234", "-X34*X27 + X24*X36"),
        ("J134", "-X34*X17 + X14*X35"),
        ("J125", "X12*X35 - X25*X17 + X15*X26"),
        ("J124", "X12*X34 - X24*X16 + X14*X25"),
    ];
    assert_eq!(basis.len(), expected.len());
    for ((name, poly), (en, text)) in basis.iter().zip(expected) {
        assert_eq!(name, en);
        assert_eq!(poly, &parsed(&chart, text), "{name}");
    }
}

#[test]
fn named_polynomials_are_stable_in_n() {
    let small = scheme_jacobi_basis_62(9).unwrap();
    for n in 10..=12 {
        let big = scheme_jacobi_basis_62(n).unwrap();
        for ((a, p), (b, q)) in small.iter().zip(&big) {
            assert_eq!(a, b);
            assert_eq!(p.to_string(), q.to_string());
        }
    }
}

#[test]
fn jacobi_polynomials_vanish_at_the_rigid_law() {
    let law = catalog::a4n(9).law.closed_point();
    let chart = Chart::new(9);
    let pt = chart.point(&law);
    assert_eq!(pt[chart.vars.iter().position(|v| v == "X34").unwrap()], Rational::zero());
    for (name, p) in scheme_jacobi_basis_62(9).unwrap() {
        assert!(p.eval(&pt).is_zero(), "{name}");
    }
    for (name, p) in &chart.jacobi {
        assert!(p.eval(&pt).is_zero(), "{name}");
    }
}

#[test]
fn chain_holds_for_n_9_to_12() {
    for n in 9..=12 {
        let report = verify_certificate_chain(n).unwrap();
        assert!(report.passed(), "n = {n}");
        let names: Vec<&str> = report.steps.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["f1", "f2", "f3", "f4", "final"]);
        assert!(report.steps.iter().all(|s| s.residual.is_zero()));
        let used: Vec<&str> = report.membership.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(used, ["J124", "J125", "J126", "J134", "J135", "J234"]);
    }
}

#[test]
fn chain_rejects_small_dimension() {
    assert_eq!(verify_certificate_chain(8).unwrap_err(), CertificateError::DimensionTooSmall(8));
    assert!(scheme_jacobi_basis_62(7).is_err());
}

#[test]
fn corrupted_step_reports_residual() {
    let chart = Chart::new(9);
    let mut steps = certificate_steps(&chart);
    steps[2].claimed = &steps[2].claimed + &chart.x(1, 2);
    match check_steps(&chart, &steps) {
        Err(CertificateError::StepMismatch { step, residual }) => {
            assert_eq!(step, "f3");
            assert_eq!(residual, -&chart.x(1, 2));
        }
        other => panic!("expected mismatch, got {other:?}"),
    }
}

#[test]
fn f1_and_f3_match_hand_expansions() {
    let chart = Chart::new(9);
    let steps = certificate_steps(&chart);
    let f1 = parsed(&chart, "X18*X34*X12*X35 - X18*X34*X15*X26 + X18*X16*X24*X35");
    let f3 = parsed(&chart, "-X14*X25*X17 + X14*X15*X26 + X12*X34*X17");
    assert_eq!(steps[0].claimed, f1);
    assert_eq!(steps[2].claimed, f3);
}

#[test]
fn witnesses() {
    for n in 9..=12 {
        let b = catalog::bn(n).law.closed_point();
        assert_eq!(nonvanishing_witness(&Z_WITHOUT_12, &b), Rational::one());
        assert!(nonvanishing_witness(&Z_FULL, &b).is_zero());

        let one = Rational::one();
        let ii = witness_without_17(n, &one);
        assert!(jacobiator(&ii).is_zero());
        assert_eq!(nonvanishing_witness(&Z_WITHOUT_17, &ii), one);

        let iii = witness_without_18(n, &one);
        assert!(jacobiator(&iii).is_zero());
        assert_eq!(nonvanishing_witness(&Z_WITHOUT_18, &iii), one);

        let a = catalog::a4n_t(n).law.as_local();
        let z = nonvanishing_witness(&Z_SQUARE_ROOT, &a);
        assert_eq!(z, a.ctx().t());
        assert!(!z.vanishes());
        assert!(z.times(&z).vanishes());

        let ab = LieLaw::<Rational>::abelian(n, ());
        assert!(nonvanishing_witness(&Z_FULL, &ab).is_zero());
        assert!(nonvanishing_witness(&Z_SQUARE_ROOT, &ab).is_zero());
    }
}

#[test]
fn witness_families_satisfy_jacobi_for_all_sampled_t() {
    for t in [int(0), int(2), rat(-3, 7), rat(1, 10)] {
        for n in [9, 11] {
            assert!(jacobiator(&witness_without_17(n, &t)).is_zero());
            assert!(jacobiator(&witness_without_18(n, &t)).is_zero());
            let z17 = nonvanishing_witness(&Z_WITHOUT_17, &witness_without_17(n, &t));
            assert_eq!(z17, &t * &t);
        }
    }
}

#[test]
fn membership_vanishes_at_filiation_closed_points() {
    let states =
        run_filiation(&catalog::a4_weights(12), &catalog::a4n(6).law.closed_point(), 12, &BranchChoices::default())
            .unwrap();
    for state in states.iter().filter(|s| s.n >= 9) {
        let chart = Chart::new(state.n);
        let report = verify_certificate_chain(state.n).unwrap();
        let pt = chart.point(&state.closed_point());
        assert!(chart.monomial(&Z_FULL).eval(&pt).is_zero());
        let mut total = Rational::zero();
        for (name, c) in &report.membership {
            total += c.eval(&pt) * chart.jacobi[name].eval(&pt);
        }
        assert!(total.is_zero(), "n = {}", state.n);
    }
}

#[test]
fn membership_identity_holds_at_random_points() {
    let chart = Chart::new(9);
    let report = verify_certificate_chain(9).unwrap();
    let z = chart.monomial(&Z_FULL);
    let nv = chart.vars.len();
    common::runner(50, 62)
        .run(&prop::collection::vec(-5i64..=5, nv), |vals| {
            let pt: Vec<Rational> = vals.into_iter().map(int).collect();
            let mut total = Rational::zero();
            for (name, c) in &report.membership {
                total += c.eval(&pt) * chart.jacobi[name].eval(&pt);
            }
            prop_assert_eq!(total, z.eval(&pt));
            Ok(())
        })
        .unwrap();
}

#[test]
fn report_renders_every_step() {
    let text = verify_certificate_chain(9).unwrap().render();
    for s in ["f1:", "f2:", "f3:", "f4:", "final:", "membership:"] {
        assert!(text.contains(s), "{s}");
    }
    assert!(!text.contains("MISMATCH"));
}
