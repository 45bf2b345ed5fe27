//! Exact occurrence statistics of digit strings in cyclic binary sequences.
//!
//! Closed forms live in [`tnumbers`], [`coeffs`] and [`patterncounts`]; the
//! brute-force [`oracle`] enumerates sequences directly and arbitrates every
//! closed form. [`analytics`] and [`physics`] hold the floating-point side.

pub mod analytics;
pub mod coeffs;
pub mod distribution;
pub mod errata;
pub mod error;
pub mod exactmath;
pub mod oracle;
pub mod pattern;
pub mod patterncounts;
pub mod physics;
pub mod tnumbers;

pub use distribution::{CountDistribution, IndexKind, JointDistribution, Scope};
pub use error::{CountError, Result};
pub use exactmath::{BigNat, SequenceFamily};
pub use pattern::{Pattern, PatternClass};
pub use tnumbers::SequenceType;
