use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Coefficient interface shared by rational laws and laws over a local ring.
///
/// `Ctx` carries whatever is needed to build constants (nothing for `Q`, the
/// owning ring for ring elements). Binary operations on values from different
/// contexts panic; callers validate ring agreement at construction time.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn zero_of(ctx: &Self::Ctx) -> Self {
        Self::from_rational(ctx, &Rational::zero())
    }

    fn one_of(ctx: &Self::Ctx) -> Self {
        Self::from_rational(ctx, &Rational::one())
    }

    fn scaled(&self, q: &Rational) -> Self {
        self.times(&Self::from_rational(&self.ctx(), q))
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_rational(_: &(), q: &Rational) -> Self {
        q.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, q: &Rational) -> Self {
        self * q
    }
}
