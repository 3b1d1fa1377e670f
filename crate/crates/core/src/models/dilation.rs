//! Metric-space dilations and their lift to pair-groupoid deformations.
//!
//! A dilation assigns to every base point x and scale ε a map δ_ε^x fixing x,
//! acting as a group in ε and contracting toward x as the scale vanishes.
//! Lifted to the pair groupoid it moves the head of an arrow by the dilation
//! based at the tail: δ_ε((p, q)) = (δ_ε^q p, q). The based dilations of the
//! lifted deformation restrict back to the original point dilation on every
//! fiber, which is what the round-trip tests pin down.

use num_traits::{Float, One};
use crate::constructions::{MetricSpace, PairArrow, TrivialGroupoid};
use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::sample::{BoundedSampler, SampleConfig};
use crate::scalar::Real;
use crate::scaling::Scale;

pub trait MetricDilation: MetricSpace {
    /// δ_ε^base applied to y.
    fn dilate(&self, eps: Scale<Self::Scalar>, base: &Self::Point, y: &Self::Point)
        -> Self::Point;
}

/// Deformation of the pair groupoid induced by a point dilation.
#[derive(Clone, Debug)]
pub struct LiftedDeformation<M> {
    groupoid: TrivialGroupoid<M>,
}

impl<M: MetricDilation> LiftedDeformation<M> {
    pub fn space(&self) -> &M {
        &self.groupoid.space
    }
}

impl<M: MetricDilation> Deformation for LiftedDeformation<M> {
    type G = TrivialGroupoid<M>;

    fn groupoid(&self) -> &Self::G {
        &self.groupoid
    }

    fn apply(
        &self,
        eps: Scale<M::Scalar>,
        g: &PairArrow<M::Point>,
    ) -> Result<PairArrow<M::Point>> {
        Ok(PairArrow::new(
            self.groupoid.space.dilate(eps, &g.tail, &g.head),
            g.tail.clone(),
        ))
    }
}

/// Lift a point dilation without checking anything.
pub fn lift_dilation_unchecked<M: MetricDilation>(space: M) -> LiftedDeformation<M> {
    LiftedDeformation {
        groupoid: TrivialGroupoid::new(space),
    }
}

/// Lift a point dilation after validating the dilation laws on a smoke
/// sample: base points fixed, neutral scale trivial, multiplicative in the
/// scale, and contracting toward the base as the scale vanishes. A failure
/// reports the axiom tag and the witnessing data.
pub fn lift_dilation<M: MetricDilation>(space: M) -> Result<LiftedDeformation<M>> {
    validate_dilation(&space, &SampleConfig::new(0x11F7, 32, M::Scalar::one()))?;
    Ok(lift_dilation_unchecked(space))
}

pub(crate) fn validate_dilation<M: MetricDilation>(
    space: &M,
    cfg: &SampleConfig<M::Scalar>,
) -> Result<()> {
    let sampler = BoundedSampler {
        center: space.base_point(),
        radius: cfg.radius,
        seed: cfg.seed,
        count: cfg.count,
    };
    let pts = space.sample_ball(&sampler)?;
    let tol = space.tolerance();
    let scales = [
        Scale::new(M::Scalar::of(0.5))?,
        Scale::new(M::Scalar::of(0.25))?,
        Scale::new(M::Scalar::of(0.7))?,
    ];
    let fail = |axiom: &str, witness: String| -> Result<()> {
        Err(Error::AxiomViolation {
            axiom: axiom.into(),
            witness,
        })
    };
    for (i, x) in pts.iter().enumerate() {
        let y = &pts[(i + 1) % pts.len()];
        for eps in scales {
            // Base point fixed.
            let fx = space.dilate(eps, x, x);
            if space.gap(&fx, x) > tol {
                return fail("base-fixed", format!("x={x:?}, eps={:?}", eps.value()));
            }
            // Neutral scale is the identity.
            let idy = space.dilate(Scale::one(), x, y);
            if space.gap(&idy, y) > tol {
                return fail("neutral-scale", format!("x={x:?}, y={y:?}"));
            }
            for mu in scales {
                let nested = space.dilate(eps, x, &space.dilate(mu, x, y));
                let direct = space.dilate(eps.compose(mu), x, y);
                if space.gap(&nested, &direct) > tol {
                    return fail(
                        "scale-action",
                        format!("x={x:?}, y={y:?}, eps={:?}, mu={:?}", eps.value(), mu.value()),
                    );
                }
            }
            // Invertibility within the sampled scales.
            let back = space.dilate(eps.inverse(), x, &space.dilate(eps, x, y));
            if space.gap(&back, y) > tol {
                return fail("scale-inverse", format!("x={x:?}, y={y:?}"));
            }
        }
        // Contraction toward the base along a dyadic schedule.
        let mut prev = M::Scalar::infinity();
        for k in 1..20 {
            let eps = Scale::new(M::Scalar::of(0.5).powi(k))?;
            let d = space.distance(&space.dilate(eps, x, y), x);
            if d > prev + tol {
                return fail("contraction", format!("x={x:?}, y={y:?}, step {k}"));
            }
            prev = d;
        }
        if prev > tol.max(space.distance(x, y) * M::Scalar::of(1e-5)) {
            return fail("contraction", format!("x={x:?}, y={y:?}, residual {prev}"));
        }
    }
    Ok(())
}
