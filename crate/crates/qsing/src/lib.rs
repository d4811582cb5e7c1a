//! Exact-integer toolkit for singularities of quiver moduli spaces.
//!
//! A quiver is a finite directed multigraph stored as a dense arrow-count
//! matrix; a setting pairs it with a strictly positive dimension vector.
//! Settings reduce to a unique irreducible *type*, types form a poset under
//! degeneration, and the smooth/singular verdict for a moduli space is read
//! off from the types of its stable decompositions.

pub mod canon;
pub mod compactify;
pub mod dot;
pub mod jsonio;
pub mod local;
pub mod moduli;
pub mod names;
pub mod poset;
pub mod quiver;
pub mod reduction;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QError {
    /// Structurally valid input that violates a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input that fails to parse or has inconsistent shapes.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// An i64 computation left the representable range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, QError>;
