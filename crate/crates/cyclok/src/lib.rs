//! Exact verification engine for the cyclotomic specialization of torus-equivariant
//! K-theory on homogeneous spaces.

pub mod collections;
pub mod congruence;
pub mod cyclotomic;
pub mod localization;
pub mod rootdata;

pub use cyclotomic::{classify_unit_vector, Cyclotomic, CyclotomicError, UnitVectorClass};
