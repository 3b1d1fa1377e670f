//! Groupoid and normed-groupoid interfaces.
//!
//! A groupoid is a small category with every arrow invertible: a partial
//! composition `g·h` defined when `target(h) = source(g)`, an inverse, and an
//! identity arrow at each object. A norm assigns a length to each arrow; it
//! vanishes exactly on identities, is subadditive over composition and is
//! invariant under inversion. From the norm we derive a distance on each
//! fiber (the set of arrows with a common source), a distance between
//! objects, and the convergence predicates used throughout the analysis
//! layer.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub trait Groupoid {
    type Scalar: Real;
    type Object: Clone + Debug;
    type Arrow: Clone + Debug;

    /// Source object of an arrow.
    fn source(&self, g: &Self::Arrow) -> Self::Object;

    /// Target object of an arrow.
    fn target(&self, g: &Self::Arrow) -> Self::Object;

    /// Identity arrow at an object.
    fn identity(&self, x: &Self::Object) -> Self::Arrow;

    /// Partial composition `g·h`, defined when `target(h) = source(g)`.
    /// The result has `source(g·h) = source(h)` and `target(g·h) = target(g)`.
    fn compose(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow>;

    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow;

    /// Model metric on objects, used for closeness decisions and violation
    /// magnitudes in the check suites.
    fn object_gap(&self, x: &Self::Object, y: &Self::Object) -> Self::Scalar;

    /// Model metric on arrows, used only for test comparisons.
    fn arrow_gap(&self, g: &Self::Arrow, h: &Self::Arrow) -> Self::Scalar;

    /// Closeness tolerance. Floating-point payloads make exact equality
    /// meaningless; finite models override the gap with a discrete metric.
    fn tolerance(&self) -> Self::Scalar {
        Self::Scalar::of(1e-9)
    }

    fn objects_close(&self, x: &Self::Object, y: &Self::Object) -> bool {
        self.object_gap(x, y) <= self.tolerance()
    }

    fn arrows_close(&self, g: &Self::Arrow, h: &Self::Arrow) -> bool {
        self.arrow_gap(g, h) <= self.tolerance()
    }

    fn composable(&self, g: &Self::Arrow, h: &Self::Arrow) -> bool {
        self.objects_close(&self.target(h), &self.source(g))
    }

    /// Right difference `g·h⁻¹` of two arrows in a common fiber.
    fn difference(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow> {
        if !self.objects_close(&self.source(g), &self.source(h)) {
            return Err(Error::FiberMismatch(format!(
                "source({g:?}) != source({h:?})"
            )));
        }
        self.compose(g, &self.inverse(h))
    }

    /// Solve `h·through·g = to` for (h, g), when the model can. Needed only
    /// for the simple convergence mode; pair groupoids have a unique
    /// solution, most models none.
    fn simple_factors(
        &self,
        through: &Self::Arrow,
        to: &Self::Arrow,
    ) -> Option<(Self::Arrow, Self::Arrow)> {
        let _ = (through, to);
        None
    }
}

pub trait NormedGroupoid: Groupoid {
    /// Arrow norm: zero exactly on identities, subadditive over composition,
    /// invariant under inversion.
    fn norm(&self, g: &Self::Arrow) -> Self::Scalar;

    /// Model-asserted separability: no net of arrows between two fixed
    /// distinct objects has norms tending to zero. Sanity-checked on finite
    /// samples by the norm suite, never proven.
    fn separable(&self) -> bool {
        true
    }

    /// Distance on the fiber over `source(g)`: the norm of `g·h⁻¹`.
    fn fiber_distance(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Scalar> {
        Ok(self.norm(&self.difference(g, h)?))
    }

    /// Infimum of arrow norms over arrows from `x` to `y`; +∞ when the
    /// objects are not connected. Only models with a closed form or a finite
    /// arrow enumeration can answer.
    fn object_distance(&self, x: &Self::Object, y: &Self::Object) -> Result<Self::Scalar> {
        let _ = (x, y);
        Err(Error::Unsupported(
            "object distance needs arrow enumeration or a closed form".into(),
        ))
    }
}

/// Convergence mode for a sequence of arrows against a candidate limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceMode {
    /// Factorizations `h_k·a_k·g_k = a` with both factor norms vanishing.
    Simple,
    /// Norms of `a_k⁻¹·a` vanish.
    Left,
    /// Norms of `a_k·a⁻¹` vanish.
    Right,
}

/// Residual trace of a convergence check.
#[derive(Clone, Debug)]
pub struct ConvergenceTrace<S> {
    pub mode: ConvergenceMode,
    pub residuals: Vec<S>,
    pub tol: S,
    pub converged: bool,
}

/// True on a residual tail when past the floor it never increases. The last
/// quarter of the sequence is inspected; residuals below the floor are
/// treated as converged noise.
pub(crate) fn tail_nonincreasing<S: Real>(residuals: &[S], floor: S) -> bool {
    if residuals.len() < 2 {
        return true;
    }
    let start = residuals.len() - (residuals.len() / 4).max(2).min(residuals.len());
    residuals[start..]
        .windows(2)
        .all(|w| w[1] <= w[0] || w[1] <= floor)
}

/// Decide whether a finite sequence of arrows converges to `limit` in the
/// given mode. A finite sequence cannot witness a limit; the acceptance rule
/// is the desk-scale proxy: the final residual is below `tol` and the
/// residuals are non-increasing over the last quarter of the sequence.
pub fn converges_to<G: NormedGroupoid>(
    g: &G,
    seq: &[G::Arrow],
    limit: &G::Arrow,
    mode: ConvergenceMode,
    tol: G::Scalar,
) -> Result<ConvergenceTrace<G::Scalar>> {
    if seq.is_empty() {
        return Err(Error::InvalidConfig("empty arrow sequence".into()));
    }
    let mut residuals = Vec::with_capacity(seq.len());
    for a_k in seq {
        let r = match mode {
            ConvergenceMode::Right => g.norm(&g.compose(a_k, &g.inverse(limit))?),
            ConvergenceMode::Left => g.norm(&g.compose(&g.inverse(a_k), limit)?),
            ConvergenceMode::Simple => {
                let (h, gg) = g.simple_factors(a_k, limit).ok_or_else(|| {
                    Error::Unsupported(
                        "model cannot solve h·a·g = b for the simple mode".into(),
                    )
                })?;
                g.norm(&h) + g.norm(&gg)
            }
        };
        residuals.push(r);
    }
    let converged = *residuals.last().expect("nonempty") <= tol
        && tail_nonincreasing(&residuals, tol);
    Ok(ConvergenceTrace {
        mode,
        residuals,
        tol,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::TrivialGroupoid;
    use crate::models::EuclideanSpace;

    fn line() -> TrivialGroupoid<EuclideanSpace<f64>> {
        TrivialGroupoid::new(EuclideanSpace::new(1).unwrap())
    }

    fn arrow(head: f64, tail: f64) -> crate::constructions::PairArrow<Vec<f64>> {
        crate::constructions::PairArrow::new(vec![head], vec![tail])
    }

    #[test]
    fn composition_endpoints() {
        let g = line();
        let gh = g.compose(&arrow(1.0, 2.0), &arrow(2.0, 3.0)).unwrap();
        assert_eq!(gh, arrow(1.0, 3.0));
        assert_eq!(g.source(&gh), vec![3.0]);
        assert_eq!(g.target(&gh), vec![1.0]);
    }

    #[test]
    fn identity_is_right_neutral() {
        let g = line();
        let a = arrow(1.0, 5.0);
        let e = g.identity(&g.source(&a));
        assert_eq!(g.compose(&a, &e).unwrap(), a);
    }

    #[test]
    fn mismatched_endpoints_reject() {
        let g = line();
        assert!(matches!(
            g.compose(&arrow(1.0, 2.0), &arrow(3.0, 4.0)),
            Err(Error::NotComposable(_))
        ));
    }

    #[test]
    fn inverse_swaps_and_involutes() {
        let g = line();
        let a = arrow(1.0, 2.0);
        assert_eq!(g.inverse(&a), arrow(2.0, 1.0));
        assert_eq!(g.inverse(&g.inverse(&a)), a);
        let e = g.identity(&vec![4.0]);
        assert_eq!(g.inverse(&e), e);
    }

    #[test]
    fn difference_collapses_common_tail() {
        let g = line();
        // (p, y)·(y, q) after inverting the second argument: (p, q).
        let d = g.difference(&arrow(2.0, 7.0), &arrow(5.0, 7.0)).unwrap();
        assert_eq!(d, arrow(2.0, 5.0));
        let a = arrow(3.0, 1.0);
        let dd = g.difference(&a, &a).unwrap();
        assert_eq!(dd, g.identity(&g.target(&a)));
        assert!(matches!(
            g.difference(&arrow(0.0, 1.0), &arrow(0.0, 2.0)),
            Err(Error::FiberMismatch(_))
        ));
    }

    #[test]
    fn fiber_distance_matches_base_distance() {
        let g = line();
        let d = g
            .fiber_distance(&arrow(2.0, 7.0), &arrow(5.0, 7.0))
            .unwrap();
        assert_eq!(d, 3.0);
        let a = arrow(2.0, 7.0);
        assert_eq!(g.fiber_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn object_distance_closed_form() {
        let g = line();
        assert_eq!(g.object_distance(&vec![1.0], &vec![4.0]).unwrap(), 3.0);
        assert_eq!(g.object_distance(&vec![2.0], &vec![2.0]).unwrap(), 0.0);
    }

    #[test]
    fn constant_sequence_converges_with_zero_residuals() {
        let g = line();
        let a = arrow(1.0, 0.0);
        let seq = vec![a.clone(); 6];
        for mode in [
            ConvergenceMode::Right,
            ConvergenceMode::Left,
            ConvergenceMode::Simple,
        ] {
            let t = converges_to(&g, &seq, &a, mode, 1e-12).unwrap();
            assert!(t.converged, "{mode:?}");
            assert!(t.residuals.iter().all(|r| *r == 0.0));
        }
    }

    #[test]
    fn geometric_sequence_right_converges() {
        let g = line();
        let seq: Vec<_> = (0..20)
            .map(|k| arrow(1.0 + 0.5f64.powi(k), 0.0))
            .collect();
        let t = converges_to(&g, &seq, &arrow(1.0, 0.0), ConvergenceMode::Right, 1e-5).unwrap();
        assert!(t.converged);
        for (k, r) in t.residuals.iter().enumerate() {
            assert!((r - 0.5f64.powi(k as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn simple_mode_tracks_both_endpoints() {
        let g = line();
        // (x_k, y_k) -> (x, y) iff d(x, x_k) + d(y_k, y) -> 0.
        let seq: Vec<_> = (0..16)
            .map(|k| arrow(2.0 + 0.5f64.powi(k), -1.0 - 0.5f64.powi(k)))
            .collect();
        let t = converges_to(&g, &seq, &arrow(2.0, -1.0), ConvergenceMode::Simple, 1e-3).unwrap();
        assert!(t.converged);
        assert!((t.residuals[0] - 2.0).abs() < 1e-12);
        // A sequence drifting in the second component must not converge.
        let bad: Vec<_> = (0..16).map(|k| arrow(2.0 + 0.5f64.powi(k), 3.0)).collect();
        let t = converges_to(&g, &bad, &arrow(2.0, -1.0), ConvergenceMode::Simple, 1e-3).unwrap();
        assert!(!t.converged);
    }

    #[test]
    fn two_candidate_limits_are_fiber_close() {
        // If the same sequence passes against two limits at tolerance t, the
        // limits are within 2t in the fiber distance.
        let g = line();
        let seq: Vec<_> = (0..24).map(|k| arrow(0.5f64.powi(k), 5.0)).collect();
        let tau = 1e-4;
        let a = arrow(0.5 * tau, 5.0);
        let b = arrow(-0.5 * tau, 5.0);
        let ta = converges_to(&g, &seq, &a, ConvergenceMode::Right, tau).unwrap();
        let tb = converges_to(&g, &seq, &b, ConvergenceMode::Right, tau).unwrap();
        assert!(ta.converged && tb.converged);
        assert!(g.fiber_distance(&a, &b).unwrap() <= 2.0 * tau);
    }
}
