//! Quantum graphs on the matrix algebra M_n.
//!
//! A quantum graph is an operator space S of M_n, represented here by the
//! orthogonal projector onto S; the adjacency operator is the realignment
//! of that projector. The crate constructs and validates the parametric
//! families invariant under classical matrix groups (unitary, orthogonal,
//! diagonal unitary/orthogonal, hyperoctahedral), extracts their discrete
//! strange-graph models, and computes or bounds connected components,
//! chromatic number, independence number, and clique number -- with a
//! machine-checkable witness attached to every exact positive claim.

pub mod abcgraphs;
pub mod classical;
pub mod constructions;
pub mod error;
pub mod numlin;
pub mod qgraph;
pub mod superop;
pub mod witness;

pub use abcgraphs::{
    canonical, classical_embedding, from_strange_graph, hyp_build, hyp_enumerate, random_abc,
    AbcParams, BlockDecomposition, CanonicalKind, HypEntry, HypParams, RandomProfile,
    ValidationReport,
};
pub use classical::{ClassicalGraph, StrangeGraph};
pub use error::{Error, Result};
pub use numlin::{CMatrix, Rng, Tolerance};
pub use qgraph::{invariant_family, InvariantGroup, QuantumGraph};
pub use superop::SuperOp;
