//! Uniform hypergraphs, the spectral radius of their adjacency tensor, exact
//! matching numbers, and the tooling to test extremal results about
//! unicyclic hypergraphs exhaustively at small sizes.

pub mod canon;
pub mod enumerate;
pub mod families;
pub mod hypergraph;
pub mod matching;
pub mod spectral;
pub mod transforms;
pub mod verify;

pub use canon::{automorphism_orbits, canonical_form, canonical_key, is_isomorphic, CanonicalForm, CanonicalKey};
pub use enumerate::{count, generate, EnumerateError, GenSpec, Shape};
pub use families::{build_family, case_for, preset, Family, FamilyError, FamilyParams, Preset, Roles};
pub use hypergraph::{Cycle, Hypergraph, HypergraphError, StructureReport};
pub use matching::{class_filter, matching_number, ClassMode, MatchingResult};
pub use spectral::{
    apply_adjacency, eigen_residual, principal_eigenpair, rayleigh_value, EigenPair, SolverConfig, SpectralError,
};
pub use transforms::{move_edges, switch_edges, MoveSpec, SwitchSpec, TransformError};
pub use verify::{report_table, verify_theorem, Status, TableFormat, VerifyError, VerifyReport};
