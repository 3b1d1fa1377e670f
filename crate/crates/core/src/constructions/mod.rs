//! Standard normed groupoids built from simpler data: the pair groupoid of a
//! metric space, the double groupoid of same-source arrow pairs, action
//! groupoids, and the correspondence between norms and right-invariant
//! families of fiber distances.

mod action;
mod double;
mod fiber_norm;
mod trivial;

pub use action::{ActionArrow, ActionGroupoid, GroupAction};
pub use double::{AlphaDouble, FiberPair};
pub use fiber_norm::{
    fiber_distances_from_norm, norm_from_fiber_distances, DerivedFiberMetric, FiberMetric,
    FiberMetricFn, FiberNormed,
};
pub use trivial::{MetricSpace, PairArrow, TrivialGroupoid};
