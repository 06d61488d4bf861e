//! Finite quandle theory toolkit.
//!
//! The crate builds and enumerates finite quandles, assembles the rack,
//! degenerate and quandle chain complexes with the positive and negative
//! boundary maps, computes their (co)homology exactly through Smith normal
//! form, parses planar-diagram codes of oriented links, and evaluates the
//! positive and negative quandle 2-cocycle state-sum invariants.
//!
//! Module map:
//!
//! - [`quandle`]: operation tables, axiom validation, orbits, enumeration.
//! - [`chain`]: tuple bases and boundary matrices `d1`, `d2`, `∂±`.
//! - [`snf`]: dense big-integer matrices and Smith normal form.
//! - [`homology`]: homology/cohomology groups, cocycle and coboundary bases.
//! - [`diagram`]: PD parsing, arcs, faces, checkerboard shading, crossing signs.
//! - [`invariants`]: colorings, state sums, lemma checks and theorem sweeps.

pub mod chain;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod invariants;
pub mod quandle;
pub mod snf;

pub use chain::{BoundaryMatrix, Flavor, IntChain, Sign, TupleBasis};
pub use diagram::{ArcSet, CrossingSigns, FaceSet, PdDiagram, Shading};
pub use error::{Error, Result};
pub use homology::{AbelianGroupDescriptor, Cochain2, CoefficientGroup};
pub use invariants::{Coloring, GroupRingValue};
pub use quandle::{OrbitPartition, QuandleTable, ValidationReport};
