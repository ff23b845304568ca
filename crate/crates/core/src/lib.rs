//! Exact computations with subsequence sums in the vector spaces F_p^d.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: the group F_p^d, subspaces, flats, linear maps.
//! * [`sumset`]: dense indicator sets, `S_A`, `m*A`, the growth step.
//! * [`structure`]: rich hyperplanes, half-space growth, the dilation
//!   decomposition in F_p and the full decomposition of incomplete sequences.
//! * [`constants`]: exact Olson and Davenport constants by exhaustive search.
//! * [`extremal`]: extremal zero-sum-free configurations and their classification.
//! * [`io`]: the plain-text sequence file format.

pub mod constants;
pub mod error;
pub mod extremal;
pub mod group;
pub mod io;
pub mod structure;
pub mod sumset;

pub use error::{Error, ErrorCategory, Result};
pub use group::{GroupElement, GroupSpec};
pub use sumset::{ElementSequence, IndicatorSet};
