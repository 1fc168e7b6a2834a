//! Surfaces as rational lattices: toric fans, intersection forms, Mori cones
//! and Zariski decomposition.

mod builtins;
pub mod linalg;
mod model;
mod toric;
mod zariski;

pub use builtins::{
    base_fan, blp114, builtin_surface, f1, index3m, quotient_resolution, toric_blowup, BlowupModel,
    Surface,
};
pub use model::{DivisorClass, NamedClass, SurfaceDescriptor, SurfaceModel};
pub use toric::{Fan, Ray};
pub use zariski::{
    project_onto_complement, zariski_decompose, zariski_decompose_ordered, ZariskiDecomposition,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("unknown curve label {0}")]
    UnknownCurve(String),
    #[error("unknown surface {0}")]
    UnknownSurface(String),
    #[error("class {class} is not pseudo-effective: the nef class {nef} has negative intersection with it")]
    NotPseudoEffective { class: String, nef: String },
    #[error("class {0} is not big")]
    NotBig(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}
