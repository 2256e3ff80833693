//! Torus fixed-point models of the supported spaces and the specialized Euler pairing
//! `H(v, w) = Σ_p c_p · conj(v_p) · w_p` with Lefschetz coefficients
//! `c_p = det(1 - t0, T_pX)^{-1}`.

mod class;
mod pairing;
mod realness;
mod space;

pub use class::{ClassMetadata, LocalizedClass};
pub use pairing::{
    euler_characteristic, euler_pairing, gram_matrix, lefschetz_coefficients, verify_star_direct,
    GramReport, Localizer,
};
pub use realness::{involution, realness_check, Involution};
pub use space::{build_space, product_class, product_space, FactorInfo, FixedPoint, SpaceModel};

use thiserror::Error;

use crate::cyclotomic::CyclotomicError;
use crate::rootdata::RootDataError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("singular localization: {0}")]
    SingularLocalization(String),
    #[error("class lives on {class}, not on {space}")]
    SpaceMismatch { space: String, class: String },
    #[error("expected {expected} factors, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("no Weyl element inverts t0 on {0}")]
    NoInvolution(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}
