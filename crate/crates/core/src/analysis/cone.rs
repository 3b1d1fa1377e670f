//! The cone identity of the tangent distance: contracting both arguments by
//! μ scales the tangent distance by |μ|, and the limit dilation based at the
//! base point itself is the plain dilation at μ.

use num_traits::{Float, One};
use crate::deformation::{dilation, Deformation};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::scalar::Real;
use crate::scaling::Scale;

use super::{
    estimate_limit, AffinePoint, CheckCtx, Checker, CheckReport, EpsSchedule,
};

type Arr<D> = <<D as Deformation>::G as Groupoid>::Arrow;
type Sc<D> = <<D as Deformation>::G as Groupoid>::Scalar;

/// Tangent distance between u and v under the dilations based at `w`:
/// the limit of d(δ^w_ε u, δ^w_ε v)/|ε| on the fiber.
fn based_tangent_distance<D: Deformation>(
    def: &D,
    w: &Arr<D>,
    u: &Arr<D>,
    v: &Arr<D>,
    sched: &EpsSchedule<Sc<D>>,
    tol: Sc<D>,
) -> Result<Sc<D>> {
    let gd = def.groupoid();
    let est = estimate_limit(
        |eps| {
            let du = dilation(def, eps, w, u)?;
            let dv = dilation(def, eps, w, v)?;
            Ok(gd.fiber_distance(&du, &dv)? / eps.modulus())
        },
        sched,
        |a, b| (*a - *b).abs(),
        tol,
    )?;
    Ok(est.value)
}

/// Check the cone identity at base `w` for arrows u, v in its fiber and a
/// contraction parameter μ with |μ| < 1. Two reports come back: the
/// |μ|-homogeneity of the tangent distance at the stated tolerance, and the
/// agreement of the limit dilation based at w with the plain dilation,
/// gated at the scalar-net tolerance.
pub fn check_cone<D: Deformation>(
    def: &D,
    w: &Arr<D>,
    u: &Arr<D>,
    v: &Arr<D>,
    mu: Scale<Sc<D>>,
    sched: &EpsSchedule<Sc<D>>,
    tol: f64,
    ctx: &CheckCtx,
) -> Result<Vec<CheckReport>>
where
    Arr<D>: AffinePoint<Sc<D>>,
{
    if mu.modulus() >= Sc::<D>::one() {
        return Err(Error::InvalidConfig(format!(
            "cone parameter must have modulus below 1, got {}",
            mu.modulus()
        )));
    }
    let gd = def.groupoid();
    let mut dist = Checker::new("cone-distance", ctx.model.clone(), ctx.seed, tol);
    let limit_tol = Sc::<D>::of(tol.max(super::checks::SCALAR_NET_TOL));

    // |μ|-homogeneity of the tangent distance.
    let base_dist = based_tangent_distance(def, w, u, v, sched, limit_tol)?;
    let mu_u = dilation(def, mu, w, u)?;
    let mu_v = dilation(def, mu, w, v)?;
    let contracted = based_tangent_distance(def, w, &mu_u, &mu_v, sched, limit_tol)?;
    dist.observe((contracted - mu.modulus() * base_dist).abs(), || {
        format!(
            "distance cone identity fails: got {contracted}, want {}",
            mu.modulus() * base_dist
        )
    });

    // The limit dilation with both bases at w is the plain dilation at μ.
    let mut dila = Checker::new(
        "cone-dilation",
        ctx.model.clone(),
        ctx.seed,
        tol.max(super::checks::SCALAR_NET_TOL),
    );
    let est = estimate_limit(
        |eps| {
            let pivot = dilation(def, eps, w, w)?;
            let inner = dilation(def, mu, &pivot, &dilation(def, eps, w, v)?)?;
            dilation(def, eps.inverse(), w, &inner)
        },
        sched,
        |a: &Arr<D>, b: &Arr<D>| gd.arrow_gap(a, b),
        Sc::<D>::of(tol.max(super::checks::ARROW_NET_TOL)),
    )?;
    let direct = dilation(def, mu, w, v)?;
    dila.observe(
        gd.fiber_distance(&est.value, &direct)
            .unwrap_or_else(|_| gd.arrow_gap(&est.value, &direct)),
        || "limit dilation at the base differs from the plain dilation".to_string(),
    );
    Ok(vec![dist.finish(), dila.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PairArrow;
    use crate::models;

    #[test]
    fn euclidean_cone_identity_is_exact() {
        let def = models::euclidean::<f64>(1).unwrap();
        // Dyadic data keeps the whole computation exact.
        let w = PairArrow::new(vec![0.125], vec![0.0]);
        let u = PairArrow::new(vec![0.75], vec![0.0]);
        let v = PairArrow::new(vec![-0.5], vec![0.0]);
        for m in [0.5, 0.25] {
            let reps = check_cone(
                &def,
                &w,
                &u,
                &v,
                Scale::new(m).unwrap(),
                &EpsSchedule::default(),
                1e-12,
                &CheckCtx::new("euclidean(1)", 0),
            )
            .unwrap();
            for rep in reps {
                assert!(rep.pass, "{}: {:?}", rep.check, rep.witnesses);
            }
        }
        // Generic coordinates carry rescaled rounding noise; the suite
        // tolerance absorbs it.
        let w = PairArrow::new(vec![0.1], vec![0.0]);
        let u = PairArrow::new(vec![0.7], vec![0.0]);
        let v = PairArrow::new(vec![-0.4], vec![0.0]);
        let reps = check_cone(
            &def,
            &w,
            &u,
            &v,
            Scale::new(0.5).unwrap(),
            &EpsSchedule::default(),
            1e-9,
            &CheckCtx::new("euclidean(1)", 0),
        )
        .unwrap();
        for rep in reps {
            assert!(rep.pass, "{}: {:?}", rep.check, rep.witnesses);
        }
    }

    #[test]
    fn degenerate_pair_gives_zero_on_both_sides() {
        let def = models::euclidean::<f64>(1).unwrap();
        let w = PairArrow::new(vec![0.0], vec![0.0]);
        let u = PairArrow::new(vec![0.3], vec![0.0]);
        let reps = check_cone(
            &def,
            &w,
            &u,
            &u,
            Scale::new(0.5).unwrap(),
            &EpsSchedule::default(),
            1e-12,
            &CheckCtx::new("euclidean(1)", 0),
        )
        .unwrap();
        assert!(reps.iter().all(|r| r.pass));
    }

    #[test]
    fn rejects_expanding_parameters() {
        let def = models::euclidean::<f64>(1).unwrap();
        let w = PairArrow::new(vec![0.0], vec![0.0]);
        assert!(matches!(
            check_cone(
                &def,
                &w,
                &w,
                &w,
                Scale::new(2.0).unwrap(),
                &EpsSchedule::default(),
                1e-9,
                &CheckCtx::new("euclidean(1)", 0),
            ),
            Err(Error::InvalidConfig(_))
        ));
    }
}
