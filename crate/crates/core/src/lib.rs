//! Exact computations on schemes of Lie algebra laws over the rationals.
//!
//! The crate covers structure-constant laws and their Chevalley–Eilenberg
//! complex, torus-invariant Jacobi schemes and admissible coordinate slices,
//! a central-extension engine that tracks a one-parameter local ring, an
//! ideal-membership certificate checker, and semidirect-product reduction
//! checks. All arithmetic is exact.

pub mod catalog;
pub mod certificate;
pub mod cohomology;
pub mod exactnum;
pub mod filiation;
pub mod liecore;
pub mod reduction;
pub mod torus_scheme;

pub use exactnum::{LocalRing, MultiPoly, Rational, RingElement, Scalar, SparseMatrix, UPoly};

pub use liecore::{Cochain, DerivationMatrix, LieLaw};
pub use torus_scheme::{MultiIndexSet, WeightSystem};
