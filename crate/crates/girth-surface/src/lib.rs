//! Girth of a compact subsurface of a handlebody boundary.
//!
//! The subsurface is given as a [`SurfaceMap`]. [`girth_surface`] decides
//! whether some simple closed curve in the subsurface meets an essential
//! disc at most `n` times, by colouring the map's countries with each disc
//! and half-disc interface, building a disc from the coloured map and then a
//! curve crossing it rarely. [`oracle_surface_girth`] checks the answer by
//! enumerating embedded curves in the subsurface.

mod construct;
mod continents;
mod girth;
mod oracle;
mod prune;
mod segregation;
mod view;
mod walks;

use girth_curve::CurveError;
use girth_map::{MapError, SurfaceMap};
use thiserror::Error;

pub use construct::{construct_curve, construct_disc, SurfaceCurve};
pub use continents::{continents, BoundaryPiece, ContinentDecomposition, UBoundary};
pub use girth::{girth_surface, surface_girth, Certificate, GirthRun, Witness};
pub use oracle::{oracle_surface_girth, OracleOutcome};
pub use segregation::{segregating_roads, Line, SegregatingRoad, SegregationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("curve search visited more than {budget} states")]
    BudgetExhausted { budget: usize },
    #[error("no essential curve found within {bound} crossings of the dual graph")]
    LengthBound { bound: usize },
    #[error("postcondition violated: {0}")]
    PostconditionViolation(String),
    #[error("recursion deeper than the subsurface complexity allows: {0}")]
    RecursionGuard(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// Negative Euler characteristic.
pub fn ec(m: &SurfaceMap) -> Result<i64, SurfaceError> {
    Ok(-girth_map::euler_char(m)?)
}
