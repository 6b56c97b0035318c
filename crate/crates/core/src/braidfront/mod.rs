//! Positive braid words, their rainbow and cylindrical closure fronts,
//! Maslov potentials, Ng's resolution and component bookkeeping.

mod braid;
mod front;
mod resolution;

pub use braid::{parse_braid, BraidError, BraidWord};
pub use front::{
    cylindrical_closure, rainbow_closure, BasepointMode, Basepoint, Crossing, Cusp, CuspSide,
    FrontArc, FrontDiagram, FrontError, FrontKind,
};
pub use resolution::{
    components_and_connectivity, ng_resolution, Chord, ChordKind, ComponentMap,
    ConnectivityReport, LagrangianDiagram, Quadrant,
};
