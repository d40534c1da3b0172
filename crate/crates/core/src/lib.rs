//! Generation and classification of square binary matrices with exactly `k`
//! ones in every row and every column, up to row/column permutation.
//!
//! The crate is organized around three representations of a binary matrix,
//! namely the bit grid, the tuple of row codes and the tuple of column codes
//! (see [`codec`]), and two symmetry-reduction levels:
//!
//! * **semi-canonical**: both the row-code tuple and the column-code tuple
//!   are nondecreasing. [`semicanon`] enumerates exactly the semi-canonical
//!   matrices of a family without walking the whole family.
//! * **canonical**: the row-code tuple is the lexicographic minimum over the
//!   entire orbit under row and column permutations. [`canonical`] computes
//!   canonical forms and counts equivalence classes by filtering the
//!   semi-canonical stream.
//!
//! [`oracle`] is a deliberately slow brute-force reimplementation used only
//! to validate the fast path at small sizes; it shares no generation code
//! with the rest of the crate.

pub mod bitcore;
pub mod canonical;
pub mod codec;
pub mod oracle;
pub mod semicanon;

pub use canonical::{CanonReport, Permutation};
pub use codec::{format_matrix, parse_matrix, BinMatrix, ColTuple, MatrixStyle, RowTuple};
pub use oracle::{OracleBudget, OracleReport};
pub use semicanon::{EnumReport, RegularSpec};

/// Errors reported by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The column-permutation search was asked to handle more columns than
    /// its configured factorial budget allows.
    #[error("canonical search refused: {m} columns exceeds the factorial budget of {budget} (raise the budget to force the m! search)")]
    FactorialBudget { m: usize, budget: usize },

    /// A brute-force oracle routine was asked for a size above its budget.
    #[error("oracle refused: n = {n} exceeds the {task} budget of {budget}")]
    OracleBudget {
        n: usize,
        budget: usize,
        task: &'static str,
    },

    /// Malformed matrix text.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
