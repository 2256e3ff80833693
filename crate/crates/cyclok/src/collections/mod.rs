//! Localized classes of the standard exceptional collections: Beilinson, Kapranov,
//! quadrics with spinor bundles, Hirzebruch surfaces and external products.

mod central;
mod descriptor;
mod line;
mod quadric;
mod schur;
mod standard;

pub use central::CentralCharacter;
pub use descriptor::{BundleDescriptor, SpinorSign};
pub use line::{line_bundle_class, restrict_t0};
pub use quadric::{quadric_collection, spinor_class};
pub use schur::{box_partitions, kapranov_collection, schur_class, schur_evaluate};
pub use standard::{
    beilinson_collection, bundle_class, central_character, hirzebruch_collection,
    product_collection, standard_collection, Collection,
};

use thiserror::Error;

use crate::localization::LocalizationError;
use crate::rootdata::RootDataError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollectionError {
    #[error("line bundle {twist} is not defined on {space}")]
    UnsupportedTwist { space: String, twist: String },
    #[error("bundle {bundle} is not supported on {space}")]
    UnsupportedBundle { space: String, bundle: String },
    #[error("no twist pins {0} to unit length")]
    NormalizationFailure(String),
    #[error("no standard collection on {0}")]
    NoCollection(String),
    #[error("cannot parse bundle descriptor: {0}")]
    Parse(String),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}
