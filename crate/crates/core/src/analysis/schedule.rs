//! Geometric schedules of vanishing scales: ε_k = λ^(k₀+k).

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::scaling::Scale;

#[derive(Clone, Copy, Debug)]
pub struct EpsSchedule<S> {
    lambda: S,
    start: i32,
    len: usize,
}

impl<S: Real> EpsSchedule<S> {
    pub fn new(lambda: S, start: i32, len: usize) -> Result<Self> {
        if !(lambda > S::zero() && lambda < S::one()) {
            return Err(Error::InvalidConfig(format!(
                "schedule base must lie in (0, 1), got {lambda}"
            )));
        }
        if len < 2 {
            return Err(Error::InvalidConfig(
                "schedule needs at least two steps".into(),
            ));
        }
        Ok(EpsSchedule { lambda, start, len })
    }

    pub fn lambda(&self) -> S {
        self.lambda
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn eps(&self, k: usize) -> Scale<S> {
        Scale::new(self.lambda.powi(self.start + k as i32)).expect("positive power")
    }

    pub fn iter(&self) -> impl Iterator<Item = Scale<S>> + '_ {
        (0..self.len).map(|k| self.eps(k))
    }

    /// A longer variant of the same schedule, for contraction checks that
    /// need to drive residuals below algebraic tolerances.
    pub fn extended(&self, len: usize) -> Self {
        EpsSchedule {
            lambda: self.lambda,
            start: self.start,
            len: len.max(self.len),
        }
    }
}

impl<S: Real> Default for EpsSchedule<S> {
    /// λ = 1/2, starting at λ¹, 24 steps.
    fn default() -> Self {
        EpsSchedule {
            lambda: S::of(0.5),
            start: 1,
            len: 24,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_default() {
        let s = EpsSchedule::<f64>::default();
        assert_eq!(s.eps(0).value(), 0.5);
        assert_eq!(s.eps(23).value(), 0.5f64.powi(24));
        assert_eq!(s.iter().count(), 24);
        let vals: Vec<f64> = s.iter().map(|e| e.value()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(EpsSchedule::new(1.0f64, 1, 8).is_err());
        assert!(EpsSchedule::new(0.0f64, 1, 8).is_err());
        assert!(EpsSchedule::new(0.5f64, 1, 1).is_err());
    }
}
