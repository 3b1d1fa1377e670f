//! Numerical estimation of vanishing-scale limits and the property suites
//! built on top of it: axiom checks, structure classification, the cone
//! identity and tangent extraction on fibers.

mod checks;
mod classify;
mod cone;
mod dilation_axioms;
mod fiber;
mod limit;
mod report;
mod schedule;
mod suites;
mod tangent;

pub use checks::{
    approx_op_laws, deformation_laws, double_groupoid_laws, fiber_distance_laws,
    gamma_irq_laws, groupoid_axioms, irq_derived_laws, iterate_irq_laws, norm_axioms, CheckCtx,
};
pub use classify::{classify_structure, Classification, Verdict};
pub use cone::check_cone;
pub use dilation_axioms::{check_dilation_axioms, AxiomSelect};
pub use fiber::{fiber_dilation_structure, FiberSpace};
pub use limit::{estimate_limit, try_estimate_limit, AffinePoint, LimitEstimate};
pub use report::{CheckReport, Checker};
pub use schedule::EpsSchedule;
pub use suites::{run_check_suite, suite_ids, ModelHandle, ModelSpec, SuiteConfig};
pub use tangent::{tangent_distance, tangent_norm, tangent_op, TangentOp};
