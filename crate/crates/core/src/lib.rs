//! Mutation of skew-symmetrizable matrices and their diagrams, quasi-Cartan
//! companions, companion bases of real roots, and the reflection relations
//! satisfied by companion bases.
//!
//! Vertices are 0-based in the Rust API and 1-based in every JSON document
//! and on the command line.

#![allow(clippy::needless_range_loop)]

pub mod companion;
pub mod corpus;
pub mod diagram;
pub mod linalg;
pub mod matrix;
pub mod relations;
pub mod roots;
pub mod sqrt_ring;
pub mod wire;

pub use companion::{Companion, CompanionError, EpsPolicy, Sign};
pub use diagram::{Cycle, Diagram, DiagramError, Edge};
pub use matrix::{MatrixError, MutationSequence, SkewMatrix};
pub use roots::{CompanionBasis, CompanionTriple, RootError, RootLattice, RootVec};
pub use sqrt_ring::{SqrtError, SqrtNum};
