//! Exact arithmetic: rationals, sparse linear algebra, polynomials and the
//! one-parameter local ring.

mod local_ring;
mod matrix;
mod mpoly;
mod parse;
mod rational;
mod scalar;
mod upoly;

pub use local_ring::{
    solve_affine, strip_unit, AffineSolution, Leftover, LocalRing, RingElement, RingError,
};
pub use matrix::{Echelon, SVec, SparseMatrix};
pub use mpoly::MultiPoly;
pub use parse::ParseError;
pub use rational::{int, parse_rational, rat, Rational};
pub use scalar::Scalar;
pub use upoly::UPoly;
