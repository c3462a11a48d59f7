//! Lie laws as structure constants, cochains, the Chevalley–Eilenberg
//! differential and the Nijenhuis–Richardson product and bracket.

mod cochain;
mod derivation;
mod law;
mod ops;

pub use cochain::{sort_with_sign, Cochain};
pub use derivation::{derivation_check, derivation_residual, DerivationCheck, DerivationMatrix};
pub use law::{LawError, LieLaw};
pub use ops::{ce_differential, derivation_action, jacobiator, nr_bracket, nr_product, trivial_differential};
