//! Cross-intersecting families with covering-number constraints: set-family
//! primitives, shifting, the extremal constructions, exact counting and an
//! exhaustive search oracle.

pub mod cli;
pub mod constructions;
pub mod count;
pub mod error;
pub mod family;
pub mod grid;
pub mod report;
pub mod search;
pub mod shifting;
pub mod transversal;

pub use error::{Error, Result};
pub use family::{is_cross_intersecting, max_companion, CrossPair, Family, SetWord};
