//! Root systems in Bourbaki ε-coordinates, finite-order torus elements, condition (⋆) in
//! its root-theoretic form, explicit torus elements for the supported families, and the
//! parity obstruction.

mod construct;
mod eseries;
mod lattice;
mod star;
mod system;
mod torus;
mod weight;

pub use construct::{construct_t0, SpaceDescriptor};
pub use eseries::{e_series_lambda, verify_e_series_solution, ESeriesReport};
pub use lattice::order_modulo_lattice;
pub use star::{
    bounded_star_search, bounded_star_search_with_budget, check_star_conditions,
    search_point_to_weight, BoundedSearch, StarReport,
};
pub use system::{build_root_system, parity_obstruction, ParityObstruction, RootKind, RootSystem};
pub use torus::{
    evaluate_character, find_inverting_element, weyl_relation_check, z0, SignedPerm,
    SpinCoordinate, TorusElement, WeylAction, WeylRelation,
};
pub use weight::{frac, r, Weight};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("unsupported root system {kind}{rank}")]
    UnsupportedType { kind: String, rank: usize },
    #[error("node {node} out of range for rank {rank}")]
    InvalidNode { node: usize, rank: usize },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("hirzebruch surface F_{0} has odd index")]
    OddHirzebruchIndex(u64),
    #[error("weight {0} has half-integral coordinates but the torus has no spin coordinate")]
    SpinWeightWithoutSpinCoordinate(String),
    #[error("weight {0} is not a character of this torus")]
    UnrepresentableWeight(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("spin coordinate violates 2q = sum of exponents: {0}")]
    SpinConstraint(String),
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
    #[error("cannot parse descriptor: {0}")]
    Parse(String),
}
