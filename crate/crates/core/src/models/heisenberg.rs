//! The Heisenberg group on ℝ³ with the symmetric polarized product
//! (a, b, c)(a', b', c') = (a + a', b + b', c + c' + (ab' − a'b)/2),
//! anisotropic dilations δ_ε(a, b, c) = (εa, εb, ε²c) and the gauge
//! ‖(a, b, c)‖ = ((a² + b²)² + 16c²)^{1/4}.
//!
//! The constant 16 makes the gauge a genuine metric; the triangle inequality
//! is nevertheless property-tested, never assumed. Dilations are exact group
//! automorphisms, and the gauge is exactly homogeneous: for dyadic ε both
//! identities hold bit for bit, because scaling by a power of two commutes
//! with rounding.

use crate::constructions::MetricSpace;
use crate::error::Result;
use crate::sample::BoundedSampler;
use crate::scalar::Real;
use crate::scaling::Scale;

use super::MetricDilation;

pub type HPoint<S> = [S; 3];

pub fn product<S: Real>(x: &HPoint<S>, y: &HPoint<S>) -> HPoint<S> {
    let half = S::of(0.5);
    // x[0]·y[1] − y[0]·x[1] with relative accuracy (Kahan's determinant via
    // fused multiply-adds); the naive form loses the vertical coordinate of
    // near-inverse products to absolute rounding.
    let w = y[0] * x[1];
    let e = y[0].mul_add(x[1], -w);
    let det = x[0].mul_add(y[1], -w) - e;
    [x[0] + y[0], x[1] + y[1], x[2] + y[2] + half * det]
}

pub fn invert<S: Real>(x: &HPoint<S>) -> HPoint<S> {
    [-x[0], -x[1], -x[2]]
}

pub fn scale_point<S: Real>(eps: Scale<S>, x: &HPoint<S>) -> HPoint<S> {
    let e = eps.value();
    [e * x[0], e * x[1], e * e * x[2]]
}

/// Homogeneous gauge; the fourth root is taken as two square roots so that
/// scaling by exact powers of two stays exact.
pub fn gauge<S: Real>(x: &HPoint<S>) -> S {
    let sixteen = S::of(16.0);
    let q = x[0] * x[0] + x[1] * x[1];
    (q * q + sixteen * x[2] * x[2]).sqrt().sqrt()
}

#[derive(Clone, Debug)]
pub struct HeisenbergSpace<S> {
    tol: S,
}

impl<S: Real> HeisenbergSpace<S> {
    pub fn new() -> Self {
        HeisenbergSpace { tol: S::of(1e-9) }
    }

    pub fn neutral(&self) -> HPoint<S> {
        [S::zero(); 3]
    }
}

impl<S: Real> Default for HeisenbergSpace<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Real> MetricSpace for HeisenbergSpace<S> {
    type Scalar = S;
    type Point = HPoint<S>;

    /// Left-invariant distance d(x, y) = ‖x⁻¹·y‖.
    fn distance(&self, a: &HPoint<S>, b: &HPoint<S>) -> S {
        gauge(&product(&invert(a), b))
    }

    /// Coordinate sup-metric. The gauge grows like the square root of the
    /// vertical displacement, which would amplify rounding noise in equality
    /// tests far beyond machine precision.
    fn gap(&self, a: &HPoint<S>, b: &HPoint<S>) -> S {
        let mut m = S::zero();
        for i in 0..3 {
            m = m.max((a[i] - b[i]).abs());
        }
        m
    }

    fn tolerance(&self) -> S {
        self.tol
    }

    fn base_point(&self) -> HPoint<S> {
        [S::zero(); 3]
    }

    fn sample_ball(&self, sampler: &BoundedSampler<HPoint<S>, S>) -> Result<Vec<HPoint<S>>> {
        sampler.validate()?;
        let mut rng = sampler.stream();
        let r = sampler.radius;
        let quarter = S::of(0.25);
        let mut out = Vec::with_capacity(sampler.count);
        // Gauge balls at the origin sit inside the box |a|,|b| ≤ r,
        // |c| ≤ r²/4; rejection from the box, then left-translate.
        let mut guard = 0usize;
        while out.len() < sampler.count {
            guard += 1;
            if guard > sampler.count.saturating_mul(10_000) + 10_000 {
                return Err(crate::error::Error::InvalidSampler(
                    "rejection sampling failed to fill the gauge ball".into(),
                ));
            }
            let w = [
                rng.next_symmetric::<S>() * r,
                rng.next_symmetric::<S>() * r,
                rng.next_symmetric::<S>() * r * r * quarter,
            ];
            if gauge(&w) <= r {
                out.push(product(&sampler.center, &w));
            }
        }
        Ok(out)
    }
}

impl<S: Real> MetricDilation for HeisenbergSpace<S> {
    /// δ_ε^x y = x · δ_ε(x⁻¹ y).
    fn dilate(&self, eps: Scale<S>, base: &HPoint<S>, y: &HPoint<S>) -> HPoint<S> {
        if eps.is_one() {
            return *y;
        }
        product(base, &scale_point(eps, &product(&invert(base), y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let x = [1.0f64, 2.0, 0.5];
        let y = [-0.5, 1.0, 2.0];
        let z = [3.0, -1.0, 0.25];
        let assoc_l = product(&product(&x, &y), &z);
        let assoc_r = product(&x, &product(&y, &z));
        for i in 0..3 {
            assert!((assoc_l[i] - assoc_r[i]).abs() < 1e-12);
        }
        let e = [0.0; 3];
        assert_eq!(product(&x, &invert(&x)), e);
        assert_eq!(product(&invert(&x), &x), e);
        assert_eq!(product(&x, &e), x);
    }

    #[test]
    fn dilations_are_automorphisms_exactly_for_dyadic_scales() {
        let x = [0.3, -1.7, 0.9];
        let y = [2.1, 0.4, -0.8];
        for k in 1..20 {
            let eps = Scale::new(0.5f64.powi(k)).unwrap();
            let lhs = scale_point(eps, &product(&x, &y));
            let rhs = product(&scale_point(eps, &x), &scale_point(eps, &y));
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn gauge_is_exactly_homogeneous_for_dyadic_scales() {
        let x = [0.37, -1.21, 0.053];
        for k in 1..24 {
            let e = 0.5f64.powi(k);
            let eps = Scale::new(e).unwrap();
            assert_eq!(gauge(&scale_point(eps, &x)), e * gauge(&x), "k={k}");
        }
    }

    #[test]
    fn gauge_is_symmetric_under_inversion() {
        let x = [0.3, 0.9, -0.2];
        assert_eq!(gauge(&x), gauge(&invert(&x)));
    }

    #[test]
    fn distance_is_left_invariant() {
        let s = HeisenbergSpace::<f64>::new();
        let (a, x, y) = ([1.0, -2.0, 0.7], [0.2, 0.5, -1.0], [-0.3, 0.1, 0.4]);
        let d0 = s.distance(&x, &y);
        let d1 = s.distance(&product(&a, &x), &product(&a, &y));
        assert!((d0 - d1).abs() < 1e-12);
    }

    #[test]
    fn sampler_stays_in_the_gauge_ball() {
        let s = HeisenbergSpace::<f64>::new();
        let sampler = BoundedSampler::new([0.0; 3], 1.5, 9, 200).unwrap();
        let pts = s.sample_ball(&sampler).unwrap();
        assert_eq!(pts.len(), 200);
        for p in &pts {
            assert!(gauge(p) <= 1.5 + 1e-12);
        }
        assert_eq!(pts, s.sample_ball(&sampler).unwrap());
    }
}
