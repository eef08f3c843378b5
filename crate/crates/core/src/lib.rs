//! Component counting, bracket state sums and related invariants of
//! arborescent knots and links, driven by a three-valued crossing algebra.
//!
//! ```
//! use knotalg_core::{algebra, expr};
//!
//! let borromean = expr::parse("<<2> <-2>> <2> <-2>").unwrap();
//! assert_eq!(algebra::closure_components(&borromean), 3);
//! ```

pub mod algebra;
pub mod bracket;
pub mod enumerate;
pub mod expr;
pub mod graph;
pub mod oracle;
pub mod rational;
pub mod tensor;

use std::fmt;

use thiserror::Error;

pub use algebra::{closure_components, eval_conn, ConnClass, ConnValue};
pub use expr::{parse, Expr, Leaf, LeafPath, ParseError};
pub use rational::{Fraction, ParityClass};

/// Largest crossing count any state sum will enumerate.
pub const HARD_MAX_CROSSINGS: u32 = 63;

/// Cap on the number of crossings for operations that visit all `2^n`
/// smoothing states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Capacity(u32);

impl Capacity {
    pub const DEFAULT: Capacity = Capacity(24);

    /// Returns `None` above [`HARD_MAX_CROSSINGS`].
    pub fn new(max_crossings: u32) -> Option<Capacity> {
        (max_crossings <= HARD_MAX_CROSSINGS).then_some(Capacity(max_crossings))
    }

    pub fn max_crossings(self) -> u32 {
        self.0
    }

    pub fn check(self, crossings: u64) -> Result<u32, Error> {
        if crossings > u64::from(self.0) {
            Err(Error::Capacity { crossings, limit: self.0 })
        } else {
            Ok(crossings as u32)
        }
    }
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity::DEFAULT
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} crossings", self.0)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{crossings} crossings exceeds the limit of {limit}")]
    Capacity { crossings: u64, limit: u32 },
    #[error(transparent)]
    Fraction(#[from] rational::FractionError),
    #[error(transparent)]
    Tensor(#[from] tensor::TensorError),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
