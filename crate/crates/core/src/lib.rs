//! Symmetric bar-and-joint frameworks.
//!
//! This crate classifies realizations of a graph by a point group `S` and a
//! *type* `Φ : S → Aut(G)`, builds the linear space `U` of all configurations
//! that have the prescribed symmetry, samples symmetry-generic realizations
//! from it, and decides infinitesimal rigidity, independence and
//! isostaticity.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! JSON or the command line lives in the companion `symrig` crate.
//!
//! Vertex indices are zero-based throughout the API; they are rendered as
//! `v1, v2, …` by [`Graph::label`].
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod classify;
pub mod error;
pub mod generic;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod perm;
pub mod placement;
pub mod rigidity;

pub use classify::{
    enumerate_types, find_base_type, find_homomorphic_type, is_homomorphism, type_catalog,
    verify_type, TypeAssignment, TypeCatalog,
};
pub use error::{Error, Result};
pub use generic::{
    class_is_empty, config_space_basis, orbit_sample, orbit_structure, sample_config,
    sym_generic_verdict, ConfigSpaceBasis, Emptiness, OrbitStructure, SymGenericOptions,
    SymGenericReport, Witness,
};
pub use graph::{automorphisms, coincidence_automorphisms, is_automorphism, Graph};
pub use group::{
    close_group, schoenflies_group, GroupParams, LinearSubspace, OrthogonalOp, SymmetryGroup,
};
pub use perm::Permutation;
pub use placement::Placement;
pub use rigidity::{
    affine_span_dim, rigidity_matrix, rigidity_verdict, trivial_motion_basis, Framework,
    RigidityReport,
};

/// Default cap on the vertex count for automorphism searches.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 12;

/// Default relative singular-value threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Default absolute tolerance for coordinate comparisons.
pub const DEFAULT_GEOM_TOL: f64 = 1e-9;

/// Relative singular-value cutoff used for kernels (fixed subspaces, `U`).
pub const KERNEL_TOL: f64 = 1e-9;
