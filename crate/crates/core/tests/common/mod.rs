#![allow(dead_code)]

use lie_schemes::catalog;
use lie_schemes::exactnum::{int, Rational};
use lie_schemes::{Cochain, LieLaw};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// A runner with a fixed seed and an exact case count.
pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

/// `sl_2` with basis `h, e, f`.
pub fn sl2() -> LieLaw<Rational> {
    LieLaw::rational(3, &[(1, 2, 2, int(2)), (1, 3, 3, int(-2)), (2, 3, 1, int(1))]).unwrap()
}

pub fn closed(name: &str) -> LieLaw<Rational> {
    catalog::lookup(name).unwrap().law.closed_point()
}

/// Random sparse cochain of a given degree with small integer values.
pub fn cochain(n: usize, degree: usize, max_terms: usize) -> impl Strategy<Value = Cochain<Rational>> {
    let term = (prop::collection::btree_set(1..=n, degree), 1..=n, -3i64..=3);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |ts| {
        let mut f = Cochain::zero(degree, n, n);
        for (args, k, c) in ts {
            if c != 0 {
                f.add_entry(args.into_iter().collect(), k, int(c));
            }
        }
        f
    })
}
