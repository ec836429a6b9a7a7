//! Exact and arbitrary-precision machinery for rapidly converging series of
//! Apéry's constant ζ(3).

pub mod bbp;
pub mod bench;
pub mod error;
pub mod hpreal;
pub mod identities;
pub mod oracle;
pub mod pbern;
pub mod series;
pub mod surd;

pub use error::{Error, Result};
pub use hpreal::HPReal;
pub use surd::{ExtSurd, SurdValue};
