//! Exact engine for magnetic equivariant graded Brauer groups of finite
//! magnetic groups, with the supporting cohomology, graded-algebra and
//! representation calculus.

pub mod error;
pub mod brauer;
pub mod cohom;
pub mod exactla;
pub mod gradalg;
pub mod magcore;
pub mod magrep;

pub use error::{MagError, Result};
pub use magcore::{FiniteGroup, MagneticGroup, Mode, Subgroup};

/// Engine version recorded alongside cached results.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
