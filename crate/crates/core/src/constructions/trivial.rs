//! The pair (trivial) groupoid of a metric space: arrows are ordered pairs of
//! points composing by cancellation of the shared middle point, and the norm
//! of an arrow is the distance between its endpoints.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::sample::{BoundedSampler, SampleConfig, SampleSet, Sampleable, SplitMix64};
use crate::scalar::Real;

/// A metric space model: point type, distance, a base point and a bounded
/// sampler. Distance axioms are property-tested on samples, never assumed.
pub trait MetricSpace {
    type Scalar: Real;
    type Point: Clone + Debug;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Self::Scalar;

    /// Comparison metric for closeness decisions and violation magnitudes.
    /// Defaults to the distance; spaces whose metric is not Lipschitz in the
    /// coordinates (the gauge of a graded group scales like a root in the
    /// vertical directions) override it with a coordinate metric so that
    /// equality tests are not noise-amplified.
    fn gap(&self, a: &Self::Point, b: &Self::Point) -> Self::Scalar {
        self.distance(a, b)
    }

    fn tolerance(&self) -> Self::Scalar {
        Self::Scalar::of(1e-9)
    }

    fn points_close(&self, a: &Self::Point, b: &Self::Point) -> bool {
        self.gap(a, b) <= self.tolerance()
    }

    /// Default center for bounded samplers.
    fn base_point(&self) -> Self::Point;

    /// Deterministic draws from the ball described by the sampler.
    fn sample_ball(
        &self,
        sampler: &BoundedSampler<Self::Point, Self::Scalar>,
    ) -> Result<Vec<Self::Point>>;
}

/// Arrow of a pair groupoid: `head` is the target point, `tail` the source.
#[derive(Clone, Debug, PartialEq)]
pub struct PairArrow<P> {
    pub head: P,
    pub tail: P,
}

impl<P> PairArrow<P> {
    pub fn new(head: P, tail: P) -> Self {
        PairArrow { head, tail }
    }
}

/// Pair groupoid over a metric space. The norm is separable: there is exactly
/// one arrow per ordered pair of points, so vanishing norms force equal
/// endpoints.
#[derive(Clone, Debug)]
pub struct TrivialGroupoid<M> {
    pub space: M,
}

impl<M: MetricSpace> TrivialGroupoid<M> {
    pub fn new(space: M) -> Self {
        TrivialGroupoid { space }
    }

    fn points(&self, cfg: &SampleConfig<M::Scalar>, seed: u64, count: usize) -> Vec<M::Point> {
        let sampler = BoundedSampler {
            center: self.space.base_point(),
            radius: cfg.radius,
            seed,
            count,
        };
        self.space.sample_ball(&sampler).unwrap_or_default()
    }
}

impl<M: MetricSpace> Groupoid for TrivialGroupoid<M> {
    type Scalar = M::Scalar;
    type Object = M::Point;
    type Arrow = PairArrow<M::Point>;

    fn source(&self, g: &Self::Arrow) -> Self::Object {
        g.tail.clone()
    }

    fn target(&self, g: &Self::Arrow) -> Self::Object {
        g.head.clone()
    }

    fn identity(&self, x: &Self::Object) -> Self::Arrow {
        PairArrow::new(x.clone(), x.clone())
    }

    fn compose(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow> {
        if !self.space.points_close(&g.tail, &h.head) {
            return Err(Error::NotComposable(format!(
                "source(g)={:?} but target(h)={:?}",
                g.tail, h.head
            )));
        }
        Ok(PairArrow::new(g.head.clone(), h.tail.clone()))
    }

    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow {
        PairArrow::new(g.tail.clone(), g.head.clone())
    }

    fn object_gap(&self, x: &Self::Object, y: &Self::Object) -> Self::Scalar {
        self.space.gap(x, y)
    }

    fn arrow_gap(&self, g: &Self::Arrow, h: &Self::Arrow) -> Self::Scalar {
        self.space.gap(&g.head, &h.head) + self.space.gap(&g.tail, &h.tail)
    }

    fn tolerance(&self) -> Self::Scalar {
        self.space.tolerance()
    }

    // h·through·g = to has the unique solution h = (to.head, through.head),
    // g = (through.tail, to.tail).
    fn simple_factors(
        &self,
        through: &Self::Arrow,
        to: &Self::Arrow,
    ) -> Option<(Self::Arrow, Self::Arrow)> {
        Some((
            PairArrow::new(to.head.clone(), through.head.clone()),
            PairArrow::new(through.tail.clone(), to.tail.clone()),
        ))
    }
}

impl<M: MetricSpace> NormedGroupoid for TrivialGroupoid<M> {
    fn norm(&self, g: &Self::Arrow) -> Self::Scalar {
        self.space.distance(&g.head, &g.tail)
    }

    fn separable(&self) -> bool {
        true
    }

    fn object_distance(&self, x: &Self::Object, y: &Self::Object) -> Result<Self::Scalar> {
        // The unique arrow from x to y is (y, x) with norm d(y, x).
        Ok(self.space.distance(x, y))
    }
}

impl<M: MetricSpace> Sampleable for TrivialGroupoid<M> {
    fn sample_set(
        &self,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> SampleSet<Self::Object, Self::Arrow> {
        let mut seeds = SplitMix64::new(cfg.seed);
        let n = cfg.count;
        let draw = |k: u64, count: usize, seeds: &mut SplitMix64| {
            let _ = k;
            let s = seeds.next_u64();
            self.points(cfg, s, count)
        };

        let objects = draw(0, n, &mut seeds);
        let heads = draw(1, n, &mut seeds);
        let tails = draw(2, n, &mut seeds);
        let arrows: Vec<_> = heads
            .iter()
            .zip(&tails)
            .map(|(a, b)| PairArrow::new(a.clone(), b.clone()))
            .collect();

        let a = draw(3, n, &mut seeds);
        let b = draw(4, n, &mut seeds);
        let c = draw(5, n, &mut seeds);
        let d = draw(6, n, &mut seeds);
        let composable_pairs = (0..a.len().min(b.len()).min(c.len()))
            .map(|i| {
                (
                    PairArrow::new(a[i].clone(), b[i].clone()),
                    PairArrow::new(b[i].clone(), c[i].clone()),
                )
            })
            .collect();
        let composable_triples = (0..a.len().min(b.len()).min(c.len()).min(d.len()))
            .map(|i| {
                (
                    PairArrow::new(a[i].clone(), b[i].clone()),
                    PairArrow::new(b[i].clone(), c[i].clone()),
                    PairArrow::new(c[i].clone(), d[i].clone()),
                )
            })
            .collect();

        let base = draw(7, n, &mut seeds);
        let fiber_pairs = (0..a.len().min(b.len()).min(base.len()))
            .map(|i| {
                (
                    PairArrow::new(a[i].clone(), base[i].clone()),
                    PairArrow::new(b[i].clone(), base[i].clone()),
                )
            })
            .collect();
        let fiber_triples = (0..a.len().min(b.len()).min(c.len()).min(base.len()))
            .map(|i| {
                (
                    PairArrow::new(a[i].clone(), base[i].clone()),
                    PairArrow::new(b[i].clone(), base[i].clone()),
                    PairArrow::new(c[i].clone(), base[i].clone()),
                )
            })
            .collect();
        let fiber_quads = (0..a
            .len()
            .min(b.len())
            .min(c.len())
            .min(d.len())
            .min(base.len()))
            .map(|i| {
                (
                    PairArrow::new(a[i].clone(), base[i].clone()),
                    PairArrow::new(b[i].clone(), base[i].clone()),
                    PairArrow::new(c[i].clone(), base[i].clone()),
                    PairArrow::new(d[i].clone(), base[i].clone()),
                )
            })
            .collect();
        // u = (base, c) has target(u) = base = source(g) = source(h).
        let translation_triples = (0..a.len().min(b.len()).min(c.len()).min(base.len()))
            .map(|i| {
                (
                    PairArrow::new(a[i].clone(), base[i].clone()),
                    PairArrow::new(b[i].clone(), base[i].clone()),
                    PairArrow::new(base[i].clone(), c[i].clone()),
                )
            })
            .collect();

        SampleSet {
            objects,
            arrows,
            composable_pairs,
            composable_triples,
            fiber_pairs,
            fiber_triples,
            fiber_quads,
            translation_triples,
        }
    }

    fn sample_fiber_arrows(
        &self,
        x: &Self::Object,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> Vec<Self::Arrow> {
        self.points(cfg, cfg.seed, cfg.count)
            .into_iter()
            .map(|p| PairArrow::new(p, x.clone()))
            .collect()
    }
}
