//! Deterministic sampling: a splitmix64 stream, bounded-set samplers and the
//! bundles of sampled data that the property suites consume.
//!
//! Everything is reproducible from a 64-bit seed; the same seed always yields
//! the same stream, which is what makes the check reports replayable.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::scalar::Real;

/// splitmix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_unit<S: Real>(&mut self) -> S {
        let v = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        S::of(v)
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric<S: Real>(&mut self) -> S {
        let u: S = self.next_unit();
        u + u - S::one()
    }

    /// Uniform index below `n` (n > 0).
    pub fn next_index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal via Box-Muller.
    pub fn next_gaussian<S: Real>(&mut self) -> S {
        let mut u: S = self.next_unit();
        if u == S::zero() {
            u = S::of(1e-12);
        }
        let v: S = self.next_unit();
        let two_pi = S::of(std::f64::consts::TAU);
        (-(S::one() + S::one()) * u.ln()).sqrt() * (two_pi * v).cos()
    }

    /// Independent substream.
    pub fn fork(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }
}

/// Bounded sampler: `count` draws from the ball of `radius` around `center`.
#[derive(Clone, Debug)]
pub struct BoundedSampler<P, S> {
    pub center: P,
    pub radius: S,
    pub seed: u64,
    pub count: usize,
}

impl<P, S: Real> BoundedSampler<P, S> {
    pub fn new(center: P, radius: S, seed: u64, count: usize) -> Result<Self> {
        let s = BoundedSampler {
            center,
            radius,
            seed,
            count,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > S::zero()) {
            return Err(Error::InvalidSampler(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        if self.count == 0 {
            return Err(Error::InvalidSampler("count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn stream(&self) -> SplitMix64 {
        SplitMix64::new(self.seed)
    }
}

/// Parameters for drawing a [`SampleSet`]: stream seed, sample count and the
/// radius of the bounded region the samples come from.
#[derive(Clone, Copy, Debug)]
pub struct SampleConfig<S> {
    pub seed: u64,
    pub count: usize,
    pub radius: S,
}

impl<S: Real> SampleConfig<S> {
    pub fn new(seed: u64, count: usize, radius: S) -> Self {
        SampleConfig {
            seed,
            count,
            radius,
        }
    }

    pub fn with_count(self, count: usize) -> Self {
        SampleConfig { count, ..self }
    }
}

impl<S: Real> Default for SampleConfig<S> {
    fn default() -> Self {
        SampleConfig {
            seed: 0x5EED_CAFE,
            count: 256,
            radius: S::one(),
        }
    }
}

/// Sampled raw material for the law suites. Components may be empty when a
/// model cannot produce them; checks treat empty inputs as vacuous.
#[derive(Clone, Debug, Default)]
pub struct SampleSet<O, A> {
    pub objects: Vec<O>,
    pub arrows: Vec<A>,
    /// (g, h) with target(h) = source(g), so g·h is defined.
    pub composable_pairs: Vec<(A, A)>,
    /// (g, h, k) with g·h and h·k defined.
    pub composable_triples: Vec<(A, A, A)>,
    /// (g, h) in a common fiber: source(g) = source(h).
    pub fiber_pairs: Vec<(A, A)>,
    /// (g, h, k) in a common fiber.
    pub fiber_triples: Vec<(A, A, A)>,
    /// (g, h, k, l) in a common fiber.
    pub fiber_quads: Vec<(A, A, A, A)>,
    /// (g, h, u) with source(g) = source(h) = target(u).
    pub translation_triples: Vec<(A, A, A)>,
}

/// Models that can manufacture sample sets from a bounded region.
pub trait Sampleable: Groupoid {
    fn sample_set(
        &self,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> SampleSet<Self::Object, Self::Arrow>;

    /// Arrows in the fiber over `x`, drawn from the bounded region.
    fn sample_fiber_arrows(
        &self,
        x: &Self::Object,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> Vec<Self::Arrow>;
}

/// Uniform draw from a Euclidean ball, any dimension. Gaussian direction with
/// a radial correction keeps acceptance independent of the dimension.
pub fn ball_point<S: Real>(rng: &mut SplitMix64, center: &[S], radius: S) -> Vec<S> {
    let dim = center.len();
    let mut dir: Vec<S> = (0..dim).map(|_| rng.next_gaussian()).collect();
    let mut norm = S::zero();
    for d in &dir {
        norm += *d * *d;
    }
    let norm = norm.sqrt();
    if norm == S::zero() {
        return center.to_vec();
    }
    let u: S = rng.next_unit();
    let r = radius * u.powf(S::one() / S::of(dim as f64));
    for d in dir.iter_mut() {
        *d = *d / norm * r;
    }
    center.iter().zip(dir).map(|(c, d)| *c + d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn unit_draws_stay_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let v: f64 = rng.next_unit();
            assert!((0.0..1.0).contains(&v));
            let s: f64 = rng.next_symmetric();
            assert!((-1.0..1.0).contains(&s));
        }
    }

    #[test]
    fn ball_points_stay_inside() {
        let mut rng = SplitMix64::new(3);
        let center = vec![1.0f64, -2.0, 0.5];
        for _ in 0..500 {
            let p = ball_point(&mut rng, &center, 2.0);
            let r2: f64 = p
                .iter()
                .zip(&center)
                .map(|(a, c)| (a - c) * (a - c))
                .sum();
            assert!(r2.sqrt() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn sampler_validation() {
        assert!(BoundedSampler::new(vec![0.0f64], 0.0, 1, 3).is_err());
        assert!(BoundedSampler::new(vec![0.0f64], 1.0, 1, 0).is_err());
        assert!(BoundedSampler::new(vec![0.0f64], 1.0, 1, 3).is_ok());
    }
}
