use thiserror::Error;

use crate::algebra::AtomSpace;

/// Errors raised by the library.
///
/// Input errors describe malformed or inconsistent arguments. Contract
/// errors mean a documented precondition of an operation did not hold and
/// carry enough context to locate the offending item.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("atom space must contain at least one atom")]
    EmptyAtomSpace,

    #[error("elements live in different atom spaces ({left} vs {right} atoms)")]
    SpaceMismatch { left: usize, right: usize },

    #[error("atom {atom} is out of range for an algebra with {atom_count} atoms")]
    AtomOutOfRange { atom: usize, atom_count: usize },

    #[error("atom list is not strictly increasing at position {position}")]
    UnsortedAtoms { position: usize },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("member {index} is the zero element")]
    ZeroMember { index: usize },

    #[error("{what}: size {size} exceeds the configured cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("expander construction failed after {attempts} attempts")]
    ConstructionFailed { attempts: usize },

    #[error(
        "no perfect matching: the index set {deficient:?} has only {neighbourhood} neighbours"
    )]
    HallViolation {
        deficient: Vec<usize>,
        neighbourhood: usize,
    },

    #[error("certification failed at level {level}: kappa {kappa} is below the bound {bound}")]
    Certification {
        level: usize,
        kappa: String,
        bound: String,
    },

    #[error("level {level} is not graded: {whole:?} splits into {part:?} and the rest, neither in the next level")]
    NotGraded {
        level: usize,
        whole: Vec<usize>,
        part: Vec<usize>,
    },

    #[error("internal contradiction in proof replay: {0}")]
    InternalContradiction(String),
}

impl Error {
    pub(crate) fn mismatch(left: AtomSpace, right: AtomSpace) -> Self {
        Error::SpaceMismatch {
            left: left.atom_count(),
            right: right.atom_count(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
