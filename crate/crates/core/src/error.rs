use thiserror::Error;

use crate::classes::BaseClassId;
use crate::search::SearchStats;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("clause {clause} contains a complementary pair of literals")]
    Tautology { clause: String },

    #[error("variable {var} is already bound to {existing}")]
    ConflictingBinding { var: u32, existing: u8 },

    #[error("formula is not in class {class}")]
    NotInClass { class: BaseClassId },

    #[error("class {class} is not defined clause-by-clause")]
    NotClauseDefined { class: BaseClassId },

    #[error("formula has width {width}, at most {max} is supported")]
    WidthExceeded { width: usize, max: usize },

    #[error("invalid hitting set instance: {0}")]
    InvalidInstance(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search timed out after {} nodes", .0.nodes)]
    Timeout(SearchStats),
}
