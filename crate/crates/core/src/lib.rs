//! Exact arithmetic for twisted double Hurwitz numbers.
//!
//! Twisted double Hurwitz numbers count tuples of permutations in the
//! symmetric group on `2n` points that factor through a fixed fixed-point-free
//! involution `tau`, or equivalently weighted leveled graphs with an
//! involution (twisted monodromy graphs). This crate computes them two
//! independent ways:
//!
//! * [`oracle`]: brute-force enumeration of the defining factorization
//!   tuples, the ground truth at small degree;
//! * [`tropical`]: enumeration of twisted monodromy graphs with the
//!   multiplicity formula `2^b * prod_V (w_V - 1) * prod_e w(e) / |Aut|`.
//!
//! The two must agree exactly, and the test suite checks that they do.
//! On top of the counting engines, [`lab`] recovers the piecewise-polynomial
//! structure of the numbers (walls, chambers, exact interpolation,
//! homogeneous parts) and evaluates the genus-0 wall-crossing identity.
//!
//! All arithmetic is exact: integer counts, `BigRational` everywhere a
//! division appears. There is no floating point in this crate.

pub mod cover;
pub mod error;
pub mod lab;
pub mod oracle;
pub mod partition;
pub mod permutation;
pub mod poly;
pub mod tropical;
pub mod twist;

pub use cover::{GraphContribution, QuotientGraph, TwistedCover};
pub use error::Error;
pub use lab::{ChamberSignature, Sign, Wall};
pub use oracle::HurwitzInput;
pub use partition::{double_factorial, Partition};
pub use permutation::Permutation;
pub use poly::RationalPoly;

/// Default cap on the number of moved points (`2n`) for exhaustive scans.
pub const DEFAULT_CAP_2N: usize = 12;
