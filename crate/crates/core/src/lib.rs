//! Exact computational geometry of piecewise-linear knots and links:
//! enumeration and certification of quadrisecants, the secant-line
//! obstruction surface, winding invariants of line families, and Sturm
//! root counts certifying degree bounds for bounding surfaces.

pub mod algebra;
pub mod exact;
pub mod geom;
pub mod link;
pub mod obstruction;
pub mod report;
pub mod stabbing;
pub mod surfaces;
pub mod winding;

pub use exact::{AlgKey, AlgReal, Rat};
