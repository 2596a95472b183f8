use thiserror::Error;

use crate::operators::FamilyViolation;
use crate::presentation::{StructuralError, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    Structural(#[from] StructuralError),

    #[error("presentation violates {} axiom(s): {}", .0.violations.len(), .0.summary())]
    Invalid(ValidationReport),

    #[error("{what} has {count} objects, above the limit of {limit}")]
    TooLarge {
        what: String,
        count: usize,
        limit: usize,
    },

    #[error("unknown object id {0}")]
    UnknownObject(usize),

    #[error("not a thick submodule: {0}")]
    NotThick(String),

    #[error("objects belong to a different presentation")]
    PresentationMismatch,

    #[error("object {0} is not a member of the generated submodule")]
    NotGenerated(usize),

    #[error("operator requires K acting on itself (module tables equal to category tables, action = tensor)")]
    NotSelfAction,

    #[error("multiplicative set is empty")]
    EmptyMultiplicativeSet,

    #[error("set is not multiplicatively closed: {0} (x) {1} = {2} is missing")]
    NotMultiplicativelyClosed(usize, usize, usize),

    #[error("invalid family: {0}")]
    Family(FamilyViolation),

    #[error("operator table is not total: missing entry for object {0}")]
    TableNotTotal(usize),

    #[error("operator table entry for object {0} is not a thick submodule")]
    TableEntryNotThick(usize),

    #[error("operator table entry for object {0} does not contain the object")]
    TableEntryNotExtensive(usize),

    #[error("operator '{operator}' produced a non-thick image on a submodule ({detail})")]
    ImageNotThick { operator: String, detail: String },

    #[error("operator fails the required property '{0}'")]
    GateFailed(&'static str),

    #[error("submodule is not a fixed point of the operator")]
    NotFixedPoint,

    #[error("monoid identity candidate is not neutral against point {0}")]
    NeutralityFailure(usize),

    #[error("{0}")]
    Resource(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot resolve '{token}' in {context}")]
    Resolve { token: String, context: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process status for the command line: 2 for malformed input and usage
    /// problems, 1 for everything that is a failed check on valid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Structural(_)
            | Error::TooLarge { .. }
            | Error::Parse { .. }
            | Error::Resolve { .. }
            | Error::Usage(_)
            | Error::Io(_) => 2,
            _ => 1,
        }
    }
}
