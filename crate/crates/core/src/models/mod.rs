//! Concrete fixtures: Euclidean space with homotheties, the Heisenberg group
//! with anisotropic dilations and its gauge distance, the translation action
//! groupoid, finite models loaded from JSON, and the lift turning a
//! metric-space dilation into a deformation of the pair groupoid.

mod broken;
mod dilation;
mod euclidean;
mod finite;
mod heisenberg;
mod translation;

pub use broken::BrokenDeformation;
pub use dilation::{lift_dilation, lift_dilation_unchecked, LiftedDeformation, MetricDilation};
pub use euclidean::EuclideanSpace;
pub use finite::{FiniteGroupoid, FinitePoints};
pub use heisenberg::{gauge, invert, product, scale_point, HeisenbergSpace};
pub use translation::{TranslationAction, TranslationModel};

use crate::constructions::{ActionGroupoid, MetricSpace};
use crate::error::Result;
use crate::sample::BoundedSampler;
use crate::scalar::Real;

/// Euclidean space with the lifted homothety deformation.
pub fn euclidean<S: Real>(dim: usize) -> Result<LiftedDeformation<EuclideanSpace<S>>> {
    lift_dilation(EuclideanSpace::new(dim)?)
}

/// Heisenberg group with its gauge distance and lifted dilations.
pub fn heisenberg<S: Real>() -> Result<LiftedDeformation<HeisenbergSpace<S>>> {
    lift_dilation(HeisenbergSpace::new())
}

/// Translation action groupoid with the step-scaling deformation.
pub fn translation_action<S: Real>(dim: usize) -> Result<TranslationModel<S>> {
    TranslationModel::new(dim)
}

/// Euclidean deformation with one family of fibers contracted by a constant
/// factor instead of the scale parameter. Breaks the action and contraction
/// axioms; used as the negative fixture in classification tests.
pub fn euclidean_broken<S: Real>() -> Result<BrokenDeformation<S>> {
    BrokenDeformation::new()
}

/// Finite groupoid model loaded and validated from a JSON document.
pub fn finite_from_path<S: Real>(path: &std::path::Path) -> Result<FiniteGroupoid<S>> {
    FiniteGroupoid::from_path(path)
}

/// Action groupoid over a free action, normed by how far elements move points.
pub fn action_groupoid<A: crate::constructions::GroupAction>(
    action: A,
) -> Result<ActionGroupoid<A>> {
    ActionGroupoid::normed(action)
}

/// Deterministic draws from a bounded region of a metric space.
pub fn sample_bounded<M: MetricSpace>(
    space: &M,
    sampler: &BoundedSampler<M::Point, M::Scalar>,
) -> Result<Vec<M::Point>> {
    sampler.validate()?;
    space.sample_ball(sampler)
}
