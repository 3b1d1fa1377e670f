//! Idempotent right quasigroups: a carrier with two operations ∘ and •
//! satisfying x ∘ (x • y) = x • (x ∘ y) = y and x ∘ x = x • x = x. The
//! derived difference, sum and inverse operations and their iterates realize
//! an approximate affine calculus; scaled families indexed by the scaling
//! group arise from based dilations on groupoid fibers and on metric spaces
//! carrying a dilation.

mod finite;

pub use finite::FiniteIrq;

use std::fmt::Debug;

use crate::deformation::{dilation, Deformation};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::models::MetricDilation;
use crate::scalar::Real;
use crate::scaling::Scale;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrqDir {
    Circ,
    Bullet,
}

pub trait Irq {
    type Scalar: Real;
    type Elem: Clone + Debug;

    fn circ(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn bullet(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;

    /// Metric on elements for test comparisons.
    fn gap(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Scalar;

    fn apply(&self, dir: IrqDir, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        match dir {
            IrqDir::Circ => self.circ(x, y),
            IrqDir::Bullet => self.bullet(x, y),
        }
    }

    /// Difference based at x: (x ∘ u) • (x ∘ v), the approximate v − u.
    fn diff(&self, x: &Self::Elem, u: &Self::Elem, v: &Self::Elem) -> Result<Self::Elem> {
        self.bullet(&self.circ(x, u)?, &self.circ(x, v)?)
    }

    /// Sum based at x: x • ((x ∘ u) ∘ v), the approximate u + v.
    fn sum(&self, x: &Self::Elem, u: &Self::Elem, v: &Self::Elem) -> Result<Self::Elem> {
        self.bullet(x, &self.circ(&self.circ(x, u)?, v)?)
    }

    /// Inverse based at x: (x ∘ u) • x, the approximate reflection of u.
    fn inv(&self, x: &Self::Elem, u: &Self::Elem) -> Result<Self::Elem> {
        self.bullet(&self.circ(x, u)?, x)
    }
}

/// k-fold iterate of ∘ or • in the second argument; negative k swaps the
/// operations. The triple (carrier, ∘_k, •_k) is again an irq.
pub fn iterate<Q: Irq>(
    q: &Q,
    k: i64,
    dir: IrqDir,
    x: &Q::Elem,
    y: &Q::Elem,
) -> Result<Q::Elem> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    let (steps, dir) = if k > 0 {
        (k, dir)
    } else {
        (
            -k,
            match dir {
                IrqDir::Circ => IrqDir::Bullet,
                IrqDir::Bullet => IrqDir::Circ,
            },
        )
    };
    let mut acc = y.clone();
    for _ in 0..steps {
        acc = q.apply(dir, x, &acc)?;
    }
    Ok(acc)
}

/// A family of irqs indexed by the scaling group: ∘ at ε, with • at ε given
/// by ∘ at ε⁻¹, compatible in the sense x ∘_ε (x ∘_μ y) = x ∘_{εμ} y.
pub trait GammaIrq {
    type Scalar: Real;
    type Elem: Clone + Debug;

    fn circ_at(
        &self,
        eps: Scale<Self::Scalar>,
        x: &Self::Elem,
        y: &Self::Elem,
    ) -> Result<Self::Elem>;

    fn gap(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Scalar;

    fn bullet_at(
        &self,
        eps: Scale<Self::Scalar>,
        x: &Self::Elem,
        y: &Self::Elem,
    ) -> Result<Self::Elem> {
        self.circ_at(eps.inverse(), x, y)
    }

    /// The plain irq at a fixed scale.
    fn at(&self, eps: Scale<Self::Scalar>) -> AtScale<'_, Self>
    where
        Self: Sized,
    {
        AtScale { family: self, eps }
    }
}

pub struct AtScale<'a, Q: GammaIrq> {
    family: &'a Q,
    eps: Scale<Q::Scalar>,
}

impl<'a, Q: GammaIrq> Irq for AtScale<'a, Q> {
    type Scalar = Q::Scalar;
    type Elem = Q::Elem;

    fn circ(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.family.circ_at(self.eps, x, y)
    }

    fn bullet(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.family.bullet_at(self.eps, x, y)
    }

    fn gap(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Scalar {
        self.family.gap(a, b)
    }
}

/// Scaled irq on the fiber over `source` of a deformation: g ∘_ε h is the
/// dilation of h based at g. Its based sum and difference coincide with the
/// deformation's based approximate operations.
pub struct FiberIrq<'a, D: Deformation> {
    pub def: &'a D,
}

/// The scaled irq carried by the fiber of a deformation over one object.
/// The fiber must be nonempty, which holds as soon as the object exists
/// (it carries its identity arrow); domain failures surface per operation.
pub fn from_dilatation<'a, D: Deformation>(
    def: &'a D,
    _x: &<D::G as Groupoid>::Object,
) -> FiberIrq<'a, D> {
    FiberIrq { def }
}

impl<'a, D: Deformation> GammaIrq for FiberIrq<'a, D> {
    type Scalar = <D::G as Groupoid>::Scalar;
    type Elem = <D::G as Groupoid>::Arrow;

    fn circ_at(
        &self,
        eps: Scale<Self::Scalar>,
        x: &Self::Elem,
        y: &Self::Elem,
    ) -> Result<Self::Elem> {
        dilation(self.def, eps, x, y)
    }

    fn gap(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Scalar {
        self.def.groupoid().arrow_gap(a, b)
    }
}

/// Scaled irq on the points of a metric space with a dilation:
/// x ∘_ε y = δ_ε^x y.
pub struct MetricIrq<'a, M: MetricDilation> {
    pub space: &'a M,
}

impl<'a, M: MetricDilation> GammaIrq for MetricIrq<'a, M> {
    type Scalar = M::Scalar;
    type Elem = M::Point;

    fn circ_at(
        &self,
        eps: Scale<Self::Scalar>,
        x: &Self::Elem,
        y: &Self::Elem,
    ) -> Result<Self::Elem> {
        Ok(self.space.dilate(eps, x, y))
    }

    fn gap(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Scalar {
        self.space.distance(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PairArrow;
    use crate::models::{self, EuclideanSpace};

    fn euclid_irq() -> MetricIrq<'static, EuclideanSpace<f64>> {
        use std::sync::OnceLock;
        static SPACE: OnceLock<EuclideanSpace<f64>> = OnceLock::new();
        MetricIrq {
            space: SPACE.get_or_init(|| EuclideanSpace::new(1).unwrap()),
        }
    }

    #[test]
    fn idempotency_and_cancellation() {
        let fam = euclid_irq();
        let q = fam.at(Scale::new(0.5).unwrap());
        let (x, y) = (vec![0.2], vec![0.9]);
        assert_eq!(q.circ(&x, &x).unwrap(), x);
        assert_eq!(q.bullet(&x, &x).unwrap(), x);
        let there = q.circ(&x, &y).unwrap();
        assert!((q.bullet(&x, &there).unwrap()[0] - y[0]).abs() < 1e-15);
        let back = q.bullet(&x, &y).unwrap();
        assert!((q.circ(&x, &back).unwrap()[0] - y[0]).abs() < 1e-15);
    }

    #[test]
    fn half_scale_halves_the_gap() {
        let fam = euclid_irq();
        let q = fam.at(Scale::new(0.5).unwrap());
        assert_eq!(q.circ(&vec![0.0], &vec![4.0]).unwrap(), vec![2.0]);
    }

    #[test]
    fn derived_ops_closed_forms() {
        let fam = euclid_irq();
        let e = 0.25;
        let q = fam.at(Scale::new(e).unwrap());
        let (u, v) = (0.8, -0.4);
        let diff = q.diff(&vec![0.0], &vec![u], &vec![v]).unwrap();
        assert!((diff[0] - (v - u + e * u)).abs() < 1e-15);
        let sum = q.sum(&vec![0.0], &vec![u], &vec![v]).unwrap();
        assert!((sum[0] - (u + v - e * u)).abs() < 1e-15);
        let inv = q.inv(&vec![0.0], &vec![u]).unwrap();
        assert!((inv[0] - (-u + e * u)).abs() < 1e-15);
        // diff of equal arguments collapses to x ∘ u by idempotency.
        let d = q.diff(&vec![0.3], &vec![u], &vec![u]).unwrap();
        let cu = q.circ(&vec![0.3], &vec![u]).unwrap();
        assert!((d[0] - cu[0]).abs() < 1e-15);
        // sum based at x with first argument x returns the second argument.
        let s = q.sum(&vec![0.3], &vec![0.3], &vec![v]).unwrap();
        assert!((s[0] - v).abs() < 1e-15);
        // inverse of the base point is the base point.
        let i = q.inv(&vec![0.3], &vec![0.3]).unwrap();
        assert!((i[0] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn iterates_match_power_scales() {
        let fam = euclid_irq();
        let e = 0.5;
        let q = fam.at(Scale::new(e).unwrap());
        let (x, y) = (vec![0.0], vec![1.0]);
        // k = 1 is the operation itself.
        assert_eq!(
            iterate(&q, 1, IrqDir::Circ, &x, &y).unwrap(),
            q.circ(&x, &y).unwrap()
        );
        // k = -1 is the other operation.
        assert_eq!(
            iterate(&q, -1, IrqDir::Circ, &x, &y).unwrap(),
            q.bullet(&x, &y).unwrap()
        );
        // Iterating the scaled operation k times is the operation at the
        // k-th power of the scale.
        for k in [2i64, 3, -2] {
            let it = iterate(&q, k, IrqDir::Circ, &x, &y).unwrap();
            let direct = fam
                .at(Scale::new(e).unwrap().pow(k as i32))
                .circ(&x, &y)
                .unwrap();
            assert!((it[0] - direct[0]).abs() < 1e-15, "k={k}");
        }
        assert!(matches!(
            iterate(&q, 0, IrqDir::Circ, &x, &y),
            Err(Error::ZeroIndex)
        ));
    }

    #[test]
    fn scale_compatibility_law() {
        let fam = euclid_irq();
        let (x, y) = (vec![0.3], vec![-0.9]);
        for (a, b) in [(0.5, 0.25), (0.3, 0.7), (2.0, 0.25)] {
            let ea = Scale::new(a).unwrap();
            let eb = Scale::new(b).unwrap();
            let nested = fam.circ_at(ea, &x, &fam.circ_at(eb, &x, &y).unwrap()).unwrap();
            let direct = fam.circ_at(ea.compose(eb), &x, &y).unwrap();
            assert!((nested[0] - direct[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn fiber_irq_agrees_with_based_operations() {
        let def = models::euclidean::<f64>(1).unwrap();
        let x = vec![0.0f64];
        let fam = from_dilatation(&def, &x);
        let eps = Scale::new(0.25).unwrap();
        let g = PairArrow::new(vec![0.6], x.clone());
        let u = PairArrow::new(vec![-0.2], x.clone());
        let h = PairArrow::new(vec![0.9], x.clone());

        let q = fam.at(eps);
        let sum = q.sum(&g, &u, &h).unwrap();
        let via = crate::deformation::based_sum(&def, eps, &g, &u, &h).unwrap();
        assert!(fam.gap(&sum, &via) < 1e-15);

        let diff = q.diff(&g, &u, &h).unwrap();
        let via = crate::deformation::based_diff(&def, eps, &g, &u, &h).unwrap();
        assert!(fam.gap(&diff, &via) < 1e-15);

        let inv = q.inv(&g, &u).unwrap();
        let via = crate::deformation::based_inv(&def, eps, &g, &u).unwrap();
        assert!(fam.gap(&inv, &via) < 1e-15);
    }
}
