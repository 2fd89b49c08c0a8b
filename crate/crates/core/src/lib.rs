//! Inversion-refined pattern avoidance.
//!
//! Counting tables `av_n^k(B)`, explicit inversion-preserving injections,
//! the f-map on (almost) decomposable 1324-avoiders, limit sequences and the
//! partition families and generating functions that describe them.

pub mod almost_decomp;
pub mod enumerate;
pub mod error;
pub mod injections;
pub mod partitions;
pub mod perm;
pub mod qseries;
pub mod report;

pub use error::{Error, Result};
pub use perm::{basis, perm, LehmerCode, PatternBasis, Permutation};
