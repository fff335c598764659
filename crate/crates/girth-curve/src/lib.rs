//! Girth of a cyclic word in a free group.
//!
//! The generating system is improved by half-disc automorphisms until no
//! half-disc shortens the word; the girth is then the least crossing count
//! over all discs. An exhaustive search over the same moves serves as an
//! independent check.

mod descent;
mod oracle;

use girth_interface::InterfaceError;
use girth_word::WordError;
use thiserror::Error;

pub use descent::{
    apply_shortcut, find_shortcut, girth_word, is_shortcut, locally_minimize, min_disc_wedge, shortcut_automorphism,
    Descent, GirthCertificate, TraceStep,
};
pub use oracle::{oracle_girth, oracle_search, OracleRun};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("word is trivial up to conjugacy")]
    TrivialWord,
    #[error("search visited more than {budget} states")]
    BudgetExhausted { budget: usize },
    #[error("postcondition violated: {0}")]
    PostconditionViolation(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Interface(#[from] InterfaceError),
}
