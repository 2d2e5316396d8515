//! Exact computation in groups of piecewise-affine permutations of an
//! interval `[0; r)` with slopes in a cyclic group `⟨n⟩` and breakpoints in
//! `ℤ[1/n]`: breakpoint algebra, explicit element constructions, a wreath
//! product copy with decidable membership, arithmetic coded into boundary
//! slopes, a two-commutator rewriter, and a first-order toolkit with an
//! interpretation-reduction compiler checkable on finite structures.
//!
//! Everything is computed with arbitrary-precision rationals; there is no
//! floating point and no tolerance anywhere.

pub mod bijection;
pub mod campaign;
pub mod commutators;
pub mod constructions;
pub mod folog;
pub mod interp;
pub mod interval;
pub mod numbers;
pub mod plmap;
pub mod sampling;
pub mod wreath;

pub use bijection::PLBijection;
pub use interval::IntervalSet;
pub use numbers::{GroupContext, Rational};
pub use plmap::PLMap;
pub use wreath::WreathElement;

/// Errors surfaced by fallible constructions, parsers, and domain checks.
///
/// Mixing values from different [`GroupContext`]s is a caller bug and panics
/// instead of erroring; front ends validate contexts at their boundary.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    Context(String),
    #[error("invalid map: {0}")]
    Map(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Domain(String),
}
