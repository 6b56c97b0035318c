//! Combinatorial Legendrian invariants of positive braid closures.
//!
//! The crate computes, for the rainbow closure of a positive braid word:
//! the Chekanov-Eliashberg differential graded algebra with base points,
//! its augmentations over small finite fields, the torus action and quotient
//! point counts, normal rulings with the switch/return/departure calculus,
//! Barannikov normal forms classifying augmentations into ruling strata,
//! the explicit quiver representations attached to augmentations, and the
//! dual-boundary homotopy-type report for the resulting moduli cells.
//! An appendix module reads Stokes diagrams off formal irregular types and
//! extracts cylindrical braid words, plus Newton polygon slopes.
//!
//! Everything is exact: finite fields are table driven, polynomials have
//! integer coefficients, Stokes slope data is rational. The only floating
//! point lives in the Stokes sampler and the SVG renderer.

pub mod algebra;
pub mod augvar;
pub mod barannikov;
pub mod braidfront;
pub mod dga;
pub mod render;
pub mod rulings;
pub mod sheafrep;
pub mod stokes;

mod matfq;

pub use algebra::fq::{field_arith, Fq};
pub use augvar::Augmentation;
pub use braidfront::{parse_braid, BasepointMode, BraidWord, FrontDiagram};
pub use dga::Dga;
pub use rulings::NormalRuling;

/// Schema tag stamped on every JSON document the tools emit.
pub const SCHEMA: &str = "legendrian-lab/1";
