//! Euclidean space of a fixed dimension, with the homothety
//! δ_ε^x y = x + ε(y − x) as its dilation.

use crate::constructions::MetricSpace;
use crate::error::{Error, Result};
use crate::sample::{ball_point, BoundedSampler};
use crate::scalar::Real;
use crate::scaling::Scale;

use super::MetricDilation;

#[derive(Clone, Debug)]
pub struct EuclideanSpace<S> {
    dim: usize,
    tol: S,
}

impl<S: Real> EuclideanSpace<S> {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModelSpec(
                "euclidean dimension must be at least 1".into(),
            ));
        }
        Ok(EuclideanSpace {
            dim,
            tol: S::of(1e-9),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl<S: Real> MetricSpace for EuclideanSpace<S> {
    type Scalar = S;
    type Point = Vec<S>;

    fn distance(&self, a: &Vec<S>, b: &Vec<S>) -> S {
        let mut acc = S::zero();
        for (x, y) in a.iter().zip(b) {
            let d = *x - *y;
            acc += d * d;
        }
        acc.sqrt()
    }

    fn tolerance(&self) -> S {
        self.tol
    }

    fn base_point(&self) -> Vec<S> {
        vec![S::zero(); self.dim]
    }

    fn sample_ball(&self, sampler: &BoundedSampler<Vec<S>, S>) -> Result<Vec<Vec<S>>> {
        sampler.validate()?;
        if sampler.center.len() != self.dim {
            return Err(Error::InvalidSampler(format!(
                "center has dimension {}, space has {}",
                sampler.center.len(),
                self.dim
            )));
        }
        let mut rng = sampler.stream();
        Ok((0..sampler.count)
            .map(|_| ball_point(&mut rng, &sampler.center, sampler.radius))
            .collect())
    }
}

impl<S: Real> MetricDilation for EuclideanSpace<S> {
    fn dilate(&self, eps: Scale<S>, base: &Vec<S>, y: &Vec<S>) -> Vec<S> {
        // The neutral scale is the identity map, exactly.
        if eps.is_one() {
            return y.clone();
        }
        let e = eps.value();
        base.iter()
            .zip(y)
            .map(|(b, p)| *b + e * (*p - *b))
            .collect()
    }
}
