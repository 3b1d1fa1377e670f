//! Tangent quantities of a deformation: the rescaled fiber distance, the
//! rescaled norm, and the limits of the based approximate operations.

use num_traits::Float;
use crate::deformation::{based_diff, based_inv, based_sum, dilation, Deformation};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::scaling::Scale;

use super::{estimate_limit, AffinePoint, EpsSchedule, LimitEstimate};

type Arr<D> = <<D as Deformation>::G as Groupoid>::Arrow;
type Sc<D> = <<D as Deformation>::G as Groupoid>::Scalar;

/// Limit of d(δ_ε g · (δ_ε h)⁻¹)/|ε| for two arrows in a common fiber:
/// the tangent distance between g and h.
pub fn tangent_distance<D: Deformation>(
    def: &D,
    g: &Arr<D>,
    h: &Arr<D>,
    sched: &EpsSchedule<Sc<D>>,
    tol: Sc<D>,
) -> Result<LimitEstimate<Sc<D>, Sc<D>>> {
    let gd = def.groupoid();
    if !gd.objects_close(&gd.source(g), &gd.source(h)) {
        return Err(Error::FiberMismatch(format!("{g:?} vs {h:?}")));
    }
    estimate_limit(
        |eps| {
            let dg = def.apply(eps, g)?;
            let dh = def.apply(eps, h)?;
            Ok(gd.fiber_distance(&dg, &dh)? / eps.modulus())
        },
        sched,
        |a, b| (*a - *b).abs(),
        tol,
    )
}

/// Limit of d(δ_ε g)/|ε|: the tangent norm of g.
pub fn tangent_norm<D: Deformation>(
    def: &D,
    g: &Arr<D>,
    sched: &EpsSchedule<Sc<D>>,
    tol: Sc<D>,
) -> Result<LimitEstimate<Sc<D>, Sc<D>>> {
    let gd = def.groupoid();
    estimate_limit(
        |eps| Ok(gd.norm(&def.apply(eps, g)?) / eps.modulus()),
        sched,
        |a, b| (*a - *b).abs(),
        tol,
    )
}

/// Which based net to take to its limit.
#[derive(Clone, Copy, Debug)]
pub enum TangentOp<S> {
    /// Σ-limit of (args[0], args[1]) based at `base`.
    Sum,
    /// Δ-limit of (args[0], args[1]) based at `base`; the approximate
    /// args[1] − args[0].
    Diff,
    /// Inverse limit of args[0] based at `base`.
    Inv,
    /// Limit dilation of parameter μ: the net
    /// δ^base_{ε⁻¹} δ^{δ^base_ε args[0]}_μ δ^base_ε args[1].
    LimitDilation(Scale<S>),
}

/// Estimate the limit of a based approximate operation. All arguments must
/// share the source of `base`; the value is an arrow of the same fiber.
pub fn tangent_op<D: Deformation>(
    def: &D,
    op: TangentOp<Sc<D>>,
    base: &Arr<D>,
    args: &[Arr<D>],
    sched: &EpsSchedule<Sc<D>>,
    tol: Sc<D>,
) -> Result<LimitEstimate<Arr<D>, Sc<D>>>
where
    Arr<D>: AffinePoint<Sc<D>>,
{
    let gd = def.groupoid();
    let need = |n: usize| -> Result<()> {
        if args.len() < n {
            return Err(Error::InvalidConfig(format!(
                "operation needs {n} arguments, got {}",
                args.len()
            )));
        }
        Ok(())
    };
    for a in args {
        if !gd.objects_close(&gd.source(a), &gd.source(base)) {
            return Err(Error::FiberMismatch(format!(
                "argument {a:?} is not in the fiber of {base:?}"
            )));
        }
    }
    // Residuals of arrow nets are measured in the model's comparison
    // metric: convergence order and extrapolation live in coordinates,
    // where the decay is geometric. Gauge-type fiber distances see vertical
    // displacements as a root and would flatten the order.
    let metric = |a: &Arr<D>, b: &Arr<D>| -> Sc<D> { gd.arrow_gap(a, b) };
    match op {
        TangentOp::Sum => {
            need(2)?;
            estimate_limit(
                |eps| based_sum(def, eps, base, &args[0], &args[1]),
                sched,
                metric,
                tol,
            )
        }
        TangentOp::Diff => {
            need(2)?;
            estimate_limit(
                |eps| based_diff(def, eps, base, &args[0], &args[1]),
                sched,
                metric,
                tol,
            )
        }
        TangentOp::Inv => {
            need(1)?;
            estimate_limit(
                |eps| based_inv(def, eps, base, &args[0]),
                sched,
                metric,
                tol,
            )
        }
        TangentOp::LimitDilation(mu) => {
            need(2)?;
            estimate_limit(
                |eps| {
                    let pivot = dilation(def, eps, base, &args[0])?;
                    let inner = dilation(def, mu, &pivot, &dilation(def, eps, base, &args[1])?)?;
                    dilation(def, eps.inverse(), base, &inner)
                },
                sched,
                metric,
                tol,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PairArrow;
    use crate::models;

    fn pa(h: f64, t: f64) -> PairArrow<Vec<f64>> {
        PairArrow::new(vec![h], vec![t])
    }

    #[test]
    fn equal_arguments_have_zero_tangent_distance() {
        let def = models::euclidean::<f64>(1).unwrap();
        let g = pa(0.7, 0.0);
        let est = tangent_distance(&def, &g, &g, &EpsSchedule::default(), 1e-9).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.iterates.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn euclidean_tangent_distance_is_the_distance_itself() {
        let def = models::euclidean::<f64>(1).unwrap();
        let est = tangent_distance(
            &def,
            &pa(0.9, 0.2),
            &pa(-0.3, 0.2),
            &EpsSchedule::default(),
            1e-9,
        )
        .unwrap();
        assert!((est.value - 1.2).abs() <= 1e-9);
        assert!(est.residuals.iter().all(|r| *r <= 1e-9));
    }

    #[test]
    fn euclidean_tangent_norm_is_the_length() {
        let def = models::euclidean::<f64>(1).unwrap();
        let est = tangent_norm(&def, &pa(1.5, 0.25), &EpsSchedule::default(), 1e-9).unwrap();
        assert!((est.value - 1.25).abs() <= 1e-9);
        // Identity arrows have tangent norm zero at every scale.
        let e = def.groupoid().identity(&vec![0.4]);
        let est = tangent_norm(&def, &e, &EpsSchedule::default(), 1e-9).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn heisenberg_tangent_norm_is_the_gauge() {
        let def = models::heisenberg::<f64>().unwrap();
        let p = [0.4, -0.3, 0.1];
        let q = [0.1, 0.2, -0.05];
        let arrow = PairArrow::new(p, q);
        let est = tangent_norm(&def, &arrow, &EpsSchedule::default(), 1e-6).unwrap();
        let expected = models::gauge(&models::product(&models::invert(&q), &p));
        assert!((est.value - expected).abs() < 1e-12, "value {}", est.value);
        assert!(est.converged);
    }

    #[test]
    fn euclidean_tangent_sum_with_fitted_order() {
        let def = models::euclidean::<f64>(1).unwrap();
        let base = pa(0.0, 0.0);
        let est = tangent_op(
            &def,
            TangentOp::Sum,
            &base,
            &[pa(1.0, 0.0), pa(2.0, 0.0)],
            &EpsSchedule::default(),
            1e-6,
        )
        .unwrap();
        assert!((est.value.head[0] - 3.0).abs() <= 1e-6);
        let order = est.order.unwrap();
        assert!((order - 1.0).abs() <= 0.1);
    }

    #[test]
    fn sum_based_at_its_first_argument_is_constant() {
        let def = models::euclidean::<f64>(1).unwrap();
        let base = pa(0.3, 0.0);
        let h = pa(-0.8, 0.0);
        let est = tangent_op(
            &def,
            TangentOp::Sum,
            &base,
            &[base.clone(), h.clone()],
            &EpsSchedule::default(),
            1e-9,
        )
        .unwrap();
        assert!(def.groupoid().arrow_gap(&est.value, &h) < 1e-9);
        assert!(est.residuals.iter().all(|r| *r <= 1e-9));
    }

    #[test]
    fn mismatched_fibers_are_rejected() {
        let def = models::euclidean::<f64>(1).unwrap();
        assert!(matches!(
            tangent_distance(
                &def,
                &pa(1.0, 0.0),
                &pa(1.0, 0.5),
                &EpsSchedule::default(),
                1e-9
            ),
            Err(Error::FiberMismatch(_))
        ));
    }
}
