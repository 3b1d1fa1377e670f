//! Classification of a deformation by which tangent limits exist on
//! samples. The strong verdict needs convergent rescaled norms and a
//! convergent approximate-difference net; the weak verdict needs convergent
//! rescaled fiber distances and limit dilations. A strong structure is also
//! weak, and its tangent distance factors through the tangent norm of the
//! difference limit, which is verified whenever the strong verdict is
//! reported.

use num_traits::{Float, One, Zero};
use crate::deformation::{approx_diff, induce, Deformation};
use crate::error::Result;
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::sample::{SampleConfig, Sampleable};
use crate::scalar::Real;
use crate::scaling::Scale;

use super::checks::{ARROW_NET_TOL, SCALAR_NET_TOL};
use super::{
    deformation_laws, tangent_distance, tangent_norm, tangent_op, try_estimate_limit,
    AffinePoint, CheckCtx, Checker, CheckReport, EpsSchedule, TangentOp,
};

type Arr<D> = <<D as Deformation>::G as Groupoid>::Arrow;
type Sc<D> = <<D as Deformation>::G as Groupoid>::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Strong,
    Weak,
    Neither,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Strong => "gs",
            Verdict::Weak => "gw",
            Verdict::Neither => "neither",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub reports: Vec<CheckReport>,
}

impl Classification {
    pub fn passed(&self, check: &str) -> bool {
        self.reports.iter().any(|r| r.check == check && r.pass)
    }
}

/// Classify a deformation on sampled data. Limit checks run on a truncated
/// sample (uniformity over bounded sets is approximated by the max over the
/// sampler output).
pub fn classify_structure<D>(
    def: &D,
    cfg: &SampleConfig<Sc<D>>,
    sched: &EpsSchedule<Sc<D>>,
    tol: f64,
    ctx: &CheckCtx,
) -> Result<Classification>
where
    D: Deformation,
    D::G: Sampleable,
    Arr<D>: AffinePoint<Sc<D>>,
{
    let gd = def.groupoid();
    let set = gd.sample_set(cfg);
    let limit_cfg = cfg.with_count(cfg.count.min(32).max(1));
    let limit_set = gd.sample_set(&limit_cfg);
    let limit_tol = Sc::<D>::of(tol.max(SCALAR_NET_TOL));
    let arrow_tol = Sc::<D>::of(tol.max(ARROW_NET_TOL));

    let mut reports = deformation_laws(def, &set, sched, tol, ctx);
    let base_ok = reports.iter().all(|r| r.pass);

    // Strong axioms: rescaled norms converge, the approximate-difference net
    // converges uniformly over the sample.
    let mut a3mod = Checker::new("tangent-norm-net", ctx.model.clone(), ctx.seed, tol);
    for g in &limit_set.arrows {
        match tangent_norm(def, g, sched, limit_tol) {
            Ok(est) => {
                // A vanishing tangent norm must mean a near-identity arrow.
                if est.value <= limit_tol {
                    let e = gd.identity(&gd.source(g));
                    a3mod.observe(gd.arrow_gap(g, &e), || {
                        format!("tangent norm ~ 0 on the non-identity {g:?}")
                    });
                } else {
                    a3mod.observe(Sc::<D>::zero(), || unreachable!());
                }
            }
            Err(e) => a3mod.fail(format!("tangent norm diverges on {g:?}: {e}")),
        }
    }
    let a3mod = a3mod.finish();

    let mut a4 = Checker::new("approx-diff-net", ctx.model.clone(), ctx.seed, tol);
    let mut diff_limits = Vec::new();
    for (g, h) in &limit_set.fiber_pairs {
        let est = try_estimate_limit(
            |eps| approx_diff(def, eps, g, h),
            sched,
            |a: &Arr<D>, b: &Arr<D>| gd.arrow_gap(a, b),
            arrow_tol,
        );
        match est {
            Ok(est) if est.converged => {
                diff_limits.push((g.clone(), h.clone(), est.value));
                a4.observe(Sc::<D>::zero(), || unreachable!());
            }
            Ok(est) => a4.fail(format!(
                "difference net stalls at {} on ({g:?}, {h:?})",
                est.final_residual()
            )),
            Err(e) => a4.fail(format!("difference net fails on ({g:?}, {h:?}): {e}")),
        }
    }
    let a4 = a4.finish();

    // Weak axioms: rescaled fiber distances converge; limit dilations exist.
    let mut a3 = Checker::new("tangent-distance-net", ctx.model.clone(), ctx.seed, tol);
    for (g, h) in &limit_set.fiber_pairs {
        match tangent_distance(def, g, h, sched, limit_tol) {
            Ok(_) => a3.observe(Sc::<D>::zero(), || unreachable!()),
            Err(e) => a3.fail(format!("tangent distance diverges on ({g:?}, {h:?}): {e}")),
        }
    }
    let a3 = a3.finish();

    let mut a4weak = Checker::new("limit-dilation-net", ctx.model.clone(), ctx.seed, tol);
    let mus = [
        Scale::new(Sc::<D>::of(0.5))?,
        Scale::new(Sc::<D>::of(0.25))?,
    ];
    for (w, u, v) in limit_set.fiber_triples.iter().take(16) {
        for &mu in &mus {
            match tangent_op(
                def,
                TangentOp::LimitDilation(mu),
                w,
                &[u.clone(), v.clone()],
                sched,
                arrow_tol,
            ) {
                Ok(_) => a4weak.observe(Sc::<D>::zero(), || unreachable!()),
                Err(e) => a4weak.fail(format!(
                    "limit dilation fails on ({w:?}, {u:?}, {v:?}): {e}"
                )),
            }
        }
    }
    let a4weak = a4weak.finish();

    let strong = base_ok && a3mod.pass && a4.pass;
    let weak = base_ok && a3.pass && a4weak.pass;

    reports.push(a3mod);
    reports.push(a4);
    reports.push(a3);
    reports.push(a4weak);

    // For a strong structure the tangent distance equals the tangent norm of
    // the difference limit; sample both sides. The per-scale identity
    // (rescaled fiber distance = rescaled norm of the local difference,
    // composed with the deformation) is sampled too, and the difference net
    // converges to its limit in the componentwise sense as well.
    if strong {
        let mut p = Checker::new("strong-factorization", ctx.model.clone(), ctx.seed, tol.max(1e-6));
        for (g, h, diff_limit) in &diff_limits {
            let lhs = tangent_distance(def, g, h, sched, limit_tol);
            let rhs = tangent_norm(def, diff_limit, sched, limit_tol);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => {
                    let scale = Sc::<D>::one().max(a.value);
                    p.observe((a.value - b.value).abs() / scale, || {
                        format!(
                            "tangent distance {} != tangent norm of the difference limit {}",
                            a.value, b.value
                        )
                    });
                }
                _ => p.fail(format!("factorization nets failed on ({g:?}, {h:?})")),
            }
            for eps in sched.iter().take(6) {
                let direct = (|| -> Result<Sc<D>> {
                    let dg = def.apply(eps, g)?;
                    let dh = def.apply(eps, h)?;
                    Ok(gd.fiber_distance(&dg, &dh)? / eps.modulus())
                })();
                let via_local = (|| -> Result<Sc<D>> {
                    let local = induce(def, eps);
                    let diff = local.difference(g, h)?;
                    Ok(gd.norm(&def.apply(eps, &diff)?) / eps.modulus())
                })();
                if let (Ok(a), Ok(b)) = (direct, via_local) {
                    let scale = Sc::<D>::one().max(a);
                    p.observe((a - b).abs() / scale, || {
                        format!(
                            "per-scale factorization fails at {:?} on ({g:?}, {h:?})",
                            eps.value()
                        )
                    });
                }
            }
            // The local differences converge to the difference limit in the
            // simple sense: step by step they share their target with the
            // approximate-difference net, and their source slides to the
            // common source of the pair. Both gaps are coordinate
            // statements; in the norm they close at the square root of the
            // coordinate rate.
            let mut worst = Sc::<D>::zero();
            let src = gd.source(g);
            let mut prev_drift = Sc::<D>::infinity();
            let mut final_drift = Sc::<D>::zero();
            for eps in sched.iter().take(16) {
                let (Ok(local), Ok(net)) = (
                    induce(def, eps).difference(g, h),
                    approx_diff(def, eps, g, h),
                ) else {
                    continue;
                };
                worst = worst.max(gd.object_gap(&gd.target(&local), &gd.target(&net)));
                let drift = gd.object_gap(&gd.source(&local), &src);
                if drift > prev_drift {
                    worst = worst.max(drift - prev_drift);
                }
                prev_drift = drift;
                final_drift = drift;
            }
            worst = worst.max((final_drift - Sc::<D>::of(ARROW_NET_TOL)).max(Sc::<D>::zero()));
            p.observe(worst, || {
                format!("local differences do not slide to the limit on ({g:?}, {h:?})")
            });
        }
        reports.push(p.finish());
    }

    let verdict = if strong && reports.iter().all(|r| r.pass) {
        Verdict::Strong
    } else if weak {
        Verdict::Weak
    } else {
        Verdict::Neither
    };
    Ok(Classification { verdict, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn euclidean_is_strong() {
        let def = models::euclidean::<f64>(1).unwrap();
        let cls = classify_structure(
            &def,
            &SampleConfig::new(2, 24, 1.0),
            &EpsSchedule::default(),
            1e-9,
            &CheckCtx::new("euclidean(1)", 2),
        )
        .unwrap();
        assert_eq!(cls.verdict, Verdict::Strong);
    }

    #[test]
    fn broken_fixture_is_neither_with_witnesses() {
        let def = models::euclidean_broken::<f64>().unwrap();
        let cls = classify_structure(
            &def,
            &SampleConfig::new(2, 24, 1.0),
            &EpsSchedule::default(),
            1e-9,
            &CheckCtx::new("euclidean-broken", 2),
        )
        .unwrap();
        assert_eq!(cls.verdict, Verdict::Neither);
        assert!(cls
            .reports
            .iter()
            .any(|r| !r.pass && !r.witnesses.is_empty()));
    }
}
