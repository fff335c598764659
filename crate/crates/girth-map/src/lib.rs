//! Spherical maps of a handlebody cut along a disc system, carrying the
//! boundary of a subsurface as arcs between slots on the disc copies.
//!
//! The map format is JSON; see [`SurfaceMap`]. [`validate`] is the authority
//! on well-formedness. [`locally_minimize_map`] replaces discs by boundary
//! compressions along shortcut half-discs until none remain.

mod complex;
mod cut;
mod descent;
mod map;
mod validate;

use thiserror::Error;

pub use complex::{Complex, DiscCurve, DualEdge, DualGraph, EdgeKind, HalfDiscPath};
pub use cut::cut_road;
pub use descent::{
    boundary_compress, find_compressing_half_disc, find_shortcut_half_disc, half_disc_circle, half_disc_is_essential,
    locally_minimize_map, min_essential_half_disc, remove_bigons, slide_disc, MapStep,
};
pub use map::{country_label, partner_country, Face, Interval, SurfaceMap};
pub use validate::{boundary_components, euler_char, validate, BoundaryComponent, Diagnostics};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("malformed map document: {0}")]
    Json(String),
    #[error("genus {0} outside 1..=26")]
    Genus(u8),
    #[error("genus {genus} needs {} countries, found {found}", 2 * *genus as usize)]
    CountryCount { genus: u8, found: usize },
    #[error("slot {slot} out of range (slot count {count})")]
    SlotId { slot: usize, count: usize },
    #[error("slot {0} listed twice")]
    DuplicateSlot(usize),
    #[error("generator {generator}: {plus} slots on the + side, {minus} on the - side")]
    UnequalSlots { generator: usize, plus: usize, minus: usize },
    #[error("gluing pair ({plus}, {minus}) does not join a + side to its - side")]
    GluingSides { plus: usize, minus: usize },
    #[error("slot {0} glued twice")]
    GluingRepeated(usize),
    #[error("slot {0} is not glued")]
    Unglued(usize),
    #[error("generator {generator}: gluing does not reverse slot order at slot {slot}")]
    GluingOrder { generator: usize, slot: usize },
    #[error("slot {0} carries more than one arc end")]
    ArcRepeated(usize),
    #[error("slot {0} has no arc")]
    ArcMissing(usize),
    #[error("face {face}: {reason}")]
    Face { face: usize, reason: String },
    #[error("interval {0} listed in no face")]
    IntervalMissing(String),
    #[error("interval {0} listed more than once")]
    IntervalRepeated(String),
    #[error("arc ({0}, {1}) does not separate an in-S face from an out-of-S face")]
    ArcSides(usize, usize),
    #[error("glued intervals {0} and {1} disagree on membership in S")]
    GluedSides(String, String),
    #[error("cell structure is not a sphere: {0}")]
    NotSphere(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("half-disc rejected: {0}")]
    HalfDisc(String),
    #[error("a subsurface boundary component misses every disc (essential: {essential})")]
    DetachedBoundary { essential: bool },
    #[error("postcondition violated: {0}")]
    PostconditionViolation(String),
}
