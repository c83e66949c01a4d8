//! Automorphism groups of graphs, with a focus on Cayley graphs of the
//! symmetric group generated by sets of transpositions.
//!
//! Permutations compose left to right throughout: `p.compose(&q)` applies `p`
//! first, then `q`.

pub mod perm;
pub mod permgroup;

pub use perm::{Perm, PermError};
pub use permgroup::{direct_sum, is_normal, wreath, GroupError, GroupOrder, PermGroup};
pub mod graphcore;
pub use graphcore::{build_named, GraphError, NamedGraph, SearchLimits, SimpleGraph};
pub mod transposition;
pub use transposition::{FamilyTag, TranspositionError, TranspositionSet};
pub mod cayley;
pub use cayley::{build_cayley, CayleyError, CayleyGraph, CayleyOptions, CayleySummary};
pub mod autsearch;
pub use autsearch::{
    automorphism_group, automorphism_group_with, cayley_automorphism_group, is_vertex_transitive, vertex_stabilizer,
    AutConfig, AutError, AutResult,
};
pub mod theoremlab;
pub use theoremlab::{
    aut_group_fixing_s, check_normal, feng_condition, four_cycle_census, predict_aut, six_cycle_census,
    verify_prediction, CycleCensus, FengReport, Prediction, TheoremError, VerifyReport,
};
