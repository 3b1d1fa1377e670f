//! Limit estimation along a vanishing-scale schedule: evaluate a net, track
//! successive residuals, fit the convergence order from residual ratios and
//! apply one step of geometric-series extrapolation when the ratios are
//! stable.


use crate::constructions::PairArrow;
use crate::error::{Error, Result};
use crate::groupoid::tail_nonincreasing;
use crate::scalar::Real;
use crate::scaling::Scale;

use super::EpsSchedule;

/// Values that can be extrapolated along a geometric tail:
/// `a.extrapolate(b, t) = a + t·(a − b)`.
pub trait AffinePoint<S>: Clone {
    fn extrapolate(&self, prev: &Self, factor: S) -> Self;
}

impl<S: Real> AffinePoint<S> for S {
    fn extrapolate(&self, prev: &Self, factor: S) -> S {
        *self + factor * (*self - *prev)
    }
}

impl<S: Real> AffinePoint<S> for Vec<S> {
    fn extrapolate(&self, prev: &Self, factor: S) -> Vec<S> {
        self.iter()
            .zip(prev)
            .map(|(a, b)| *a + factor * (*a - *b))
            .collect()
    }
}

impl<S: Real> AffinePoint<S> for [S; 3] {
    fn extrapolate(&self, prev: &Self, factor: S) -> [S; 3] {
        [
            self[0] + factor * (self[0] - prev[0]),
            self[1] + factor * (self[1] - prev[1]),
            self[2] + factor * (self[2] - prev[2]),
        ]
    }
}

impl<S: Real, P: AffinePoint<S>> AffinePoint<S> for PairArrow<P> {
    fn extrapolate(&self, prev: &Self, factor: S) -> PairArrow<P> {
        PairArrow::new(
            self.head.extrapolate(&prev.head, factor),
            self.tail.extrapolate(&prev.tail, factor),
        )
    }
}

impl<S: Real, P, E> AffinePoint<S> for crate::constructions::ActionArrow<P, E>
where
    P: AffinePoint<S>,
    E: AffinePoint<S>,
{
    fn extrapolate(&self, prev: &Self, factor: S) -> Self {
        crate::constructions::ActionArrow::new(
            self.point.extrapolate(&prev.point, factor),
            self.element.extrapolate(&prev.element, factor),
        )
    }
}

/// Estimated limit: the extrapolated value, the schedule and iterates that
/// produced it, per-step residuals, the fitted order of the residual decay
/// and the convergence verdict.
#[derive(Clone, Debug)]
pub struct LimitEstimate<V, S> {
    pub value: V,
    pub eps: Vec<S>,
    pub iterates: Vec<V>,
    pub residuals: Vec<S>,
    pub order: Option<S>,
    pub converged: bool,
}

impl<V, S: Real> LimitEstimate<V, S> {
    pub fn final_residual(&self) -> S {
        self.residuals.last().copied().unwrap_or_else(S::zero)
    }
}

/// Evaluate the net along the schedule and assemble the estimate, reporting
/// non-convergence in the `converged` flag rather than as an error.
pub fn try_estimate_limit<V, S, F, M>(
    mut f: F,
    sched: &EpsSchedule<S>,
    metric: M,
    tol: S,
) -> Result<LimitEstimate<V, S>>
where
    S: Real,
    V: AffinePoint<S>,
    F: FnMut(Scale<S>) -> Result<V>,
    M: Fn(&V, &V) -> S,
{
    let mut eps = Vec::with_capacity(sched.len());
    let mut iterates: Vec<V> = Vec::with_capacity(sched.len());
    for e in sched.iter() {
        let v = f(e).map_err(|err| {
            Error::DomainExhausted(format!("at scale {}: {err}", e.value()))
        })?;
        eps.push(e.value());
        iterates.push(v);
    }
    let residuals: Vec<S> = iterates
        .windows(2)
        .map(|w| metric(&w[1], &w[0]))
        .collect();

    // Rounding noise in the iterates is amplified as the scale shrinks, so a
    // net that has converged to working precision shows residuals that decay
    // geometrically and then drift. Truncate at the first sign of the drift:
    // a residual increase, or a residual ratio that breaks from the clean
    // prefix. The reported trace keeps every step.
    let mut cut = residuals.len();
    {
        // Reference ratio from the first half of the trace.
        let half = residuals.len() / 2;
        let mut first_ratios: Vec<S> = residuals[..half.max(2).min(residuals.len())]
            .windows(2)
            .filter(|w| w[0] > S::zero() && w[1] > S::zero())
            .map(|w| w[1] / w[0])
            .collect();
        first_ratios.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let q_ref = first_ratios.get(first_ratios.len() / 2).copied();
        for k in 1..residuals.len() {
            if residuals[k] > residuals[k - 1] {
                cut = k;
                break;
            }
            if let Some(q) = q_ref {
                if q < S::one() && residuals[k - 1] > S::zero() {
                    let ratio = residuals[k] / residuals[k - 1];
                    if (ratio - q).abs() > (S::of(0.25) * q).max(S::of(0.05)) {
                        cut = k;
                        break;
                    }
                }
            }
        }
    }
    let effective = &residuals[..cut];
    let last = &iterates[cut];
    let final_residual = effective.last().copied().unwrap_or_else(S::zero);
    let converged = final_residual <= tol && tail_nonincreasing(effective, tol);

    // Fit the decay order from residual ratios above the noise floor.
    let floor = effective
        .iter()
        .fold(S::zero(), |a, b| a.max(*b))
        * S::of(1e-12);
    let mut ratios = Vec::new();
    for w in effective.windows(2) {
        if w[0] > floor && w[1] > floor {
            ratios.push(w[1] / w[0]);
        }
    }
    let tail: Vec<S> = ratios.iter().rev().take(8).copied().collect();
    let order;
    let mut value = last.clone();
    if tail.len() >= 2 {
        let mut sorted = tail.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let q = sorted[sorted.len() / 2];
        if q > S::zero() && q < S::one() {
            order = Some(q.ln() / sched.lambda().ln());
            // Extrapolate only when the tail ratios are coherent.
            let stable = tail
                .iter()
                .all(|r| (*r - q).abs() <= S::of(0.2) * q.max(S::of(1e-3)));
            if stable && q < S::of(0.95) && converged && cut >= 2 {
                let prev = &iterates[cut - 1];
                value = last.extrapolate(prev, q / (S::one() - q));
            }
        } else {
            order = None;
        }
    } else {
        order = None;
    }

    Ok(LimitEstimate {
        value,
        eps,
        iterates,
        residuals,
        order,
        converged,
    })
}

/// As [`try_estimate_limit`], but a net whose residuals stagnate above the
/// tolerance is an error.
pub fn estimate_limit<V, S, F, M>(
    f: F,
    sched: &EpsSchedule<S>,
    metric: M,
    tol: S,
) -> Result<LimitEstimate<V, S>>
where
    S: Real,
    V: AffinePoint<S>,
    F: FnMut(Scale<S>) -> Result<V>,
    M: Fn(&V, &V) -> S,
{
    let est = try_estimate_limit(f, sched, metric, tol)?;
    if !est.converged {
        return Err(Error::NotConverging(format!(
            "final residual {} against tolerance {tol}",
            est.final_residual()
        )));
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs_metric(a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }

    #[test]
    fn constant_net() {
        let sched = EpsSchedule::default();
        let est = estimate_limit(|_| Ok(3.25f64), &sched, abs_metric, 1e-9).unwrap();
        assert_eq!(est.value, 3.25);
        assert!(est.residuals.iter().all(|r| *r == 0.0));
        assert!(est.converged);
        assert!(est.order.is_none());
    }

    #[test]
    fn linear_net_has_order_one_and_geometric_residuals() {
        // f(ε) = L + aε. The independent residual oracle is the closed form
        // r_k = |a|·λ^(k₀+k)·(1 − λ).
        let (limit, a) = (2.0f64, 0.7f64);
        let sched = EpsSchedule::new(0.5, 1, 24).unwrap();
        let est = estimate_limit(
            |e| Ok(limit + a * e.value()),
            &sched,
            abs_metric,
            1e-6,
        )
        .unwrap();
        for (k, r) in est.residuals.iter().enumerate() {
            let oracle = a * 0.5f64.powi(1 + k as i32) * 0.5;
            assert!((r - oracle).abs() <= 4e-15, "step {k}");
        }
        let order = est.order.unwrap();
        assert!((order - 1.0).abs() < 1e-6);
        // Within twice the last schedule term of the limit; the geometric
        // extrapolation lands much closer.
        assert!((est.value - limit).abs() <= 2.0 * a * 0.5f64.powi(24));
        assert!((est.value - limit).abs() <= 1e-12);
    }

    #[test]
    fn quadratic_net_has_order_two() {
        let sched = EpsSchedule::new(0.5, 1, 20).unwrap();
        let est = estimate_limit(
            |e| Ok(1.0 + 0.3 * e.value() * e.value()),
            &sched,
            abs_metric,
            1e-6,
        )
        .unwrap();
        assert!((est.order.unwrap() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn oscillation_is_not_converging() {
        let sched = EpsSchedule::new(0.5, 1, 20).unwrap();
        let err = estimate_limit(
            |e| Ok((1.0 / e.value()).sin()),
            &sched,
            abs_metric,
            1e-6,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotConverging(_)));
    }

    #[test]
    fn failing_nets_exhaust_the_domain() {
        let sched = EpsSchedule::<f64>::default();
        let err = estimate_limit(
            |e| {
                if e.value() < 1e-3 {
                    Err(Error::NotInDomain("too small".into()))
                } else {
                    Ok(1.0)
                }
            },
            &sched,
            abs_metric,
            1e-6,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DomainExhausted(_)));
    }

    #[test]
    fn vector_extrapolation() {
        let sched = EpsSchedule::new(0.5, 1, 24).unwrap();
        let est = estimate_limit(
            |e| Ok(vec![1.0 - e.value(), 2.0 + 3.0 * e.value()]),
            &sched,
            |a: &Vec<f64>, b: &Vec<f64>| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
            },
            1e-6,
        )
        .unwrap();
        assert_eq!(est.value, vec![1.0, 2.0]);
    }
}
