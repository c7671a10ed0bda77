pub mod algebra;
pub mod ca;
pub mod cli;
pub mod error;
pub mod field;
pub mod finiteness;
pub mod lca;
pub mod linalg;
pub mod monoid;
pub mod parse;
pub mod pattern;
pub mod sample;
pub mod sentence;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use algebra::{AlgElem, AlgMatrix};
pub use monoid::{Elem, Monoid};
pub use pattern::{Pattern, SymbolPattern, VectorPattern};

/// Outcome of a property check: either it holds, or it fails with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
