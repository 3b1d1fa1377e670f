//! Normed groupoids, scaling deformations and the algebra they generate.
//!
//! The crate provides:
//! - groupoid and normed-groupoid interfaces with the derived fiber and
//!   object distances and convergence predicates ([`groupoid`]);
//! - standard constructions: pair groupoids over metric spaces, the double
//!   groupoid of same-source pairs, action groupoids, and the correspondence
//!   between norms and right-invariant fiber distances ([`constructions`]);
//! - scaling deformations with domain bookkeeping, based dilations, induced
//!   local structures and the approximate difference/sum/inverse operations
//!   ([`deformation`]);
//! - idempotent right quasigroups and their scaled families ([`irq`]);
//! - concrete models: Euclidean homotheties, the Heisenberg group with its
//!   gauge and anisotropic dilations, translation actions, finite JSON
//!   models ([`models`]);
//! - numerical estimation of vanishing-scale limits, axiom suites, structure
//!   classification and tangent extraction ([`analysis`]).
//!
//! Everything numeric is generic over the scalar type through [`scalar::Real`]
//! (f32 or f64); the aliases at the crate root fix f64, which is what the
//! command-line front end and the acceptance suites use.

pub mod analysis;
pub mod constructions;
pub mod deformation;
pub mod error;
pub mod groupoid;
pub mod irq;
pub mod models;
pub mod sample;
pub mod scalar;
pub mod scaling;
pub mod seminorm;

pub use error::{Error, Result};

/// f64 scaling parameter.
pub type Scale64 = scaling::Scale<f64>;
/// f64 Euclidean space.
pub type Euclidean64 = models::EuclideanSpace<f64>;
/// f64 Heisenberg group model.
pub type Heisenberg64 = models::HeisenbergSpace<f64>;
/// f64 schedule of vanishing scales.
pub type Schedule64 = analysis::EpsSchedule<f64>;
/// f64 sampling configuration.
pub type SampleConfig64 = sample::SampleConfig<f64>;
