//! Axiom suites for a metric space with a dilation: the algebraic laws of
//! the based maps, contraction toward the base, existence of the rescaled
//! tangent distance together with the agreement of closeness notions, and
//! existence of the limit dilations.

use num_traits::{Float, One, Zero};
use crate::error::Result;
use crate::models::MetricDilation;
use crate::sample::{BoundedSampler, SampleConfig, SplitMix64};
use crate::scalar::Real;
use crate::scaling::Scale;

use super::{try_estimate_limit, AffinePoint, CheckCtx, Checker, CheckReport, EpsSchedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomSelect {
    Algebra,
    Contraction,
    TangentDistance,
    LimitDilation,
    All,
}

impl AxiomSelect {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "a1" | "algebra" => AxiomSelect::Algebra,
            "a2" | "contraction" => AxiomSelect::Contraction,
            "a3" | "tangent-distance" => AxiomSelect::TangentDistance,
            "a4weak" | "limit-dilation" => AxiomSelect::LimitDilation,
            "all" => AxiomSelect::All,
            _ => return None,
        })
    }

    fn wants(self, other: AxiomSelect) -> bool {
        self == AxiomSelect::All || self == other
    }
}

/// Run the selected dilation-structure suites on points sampled around the
/// base point.
pub fn check_dilation_axioms<M>(
    space: &M,
    cfg: &SampleConfig<M::Scalar>,
    sched: &EpsSchedule<M::Scalar>,
    tol: f64,
    select: AxiomSelect,
    ctx: &CheckCtx,
) -> Result<Vec<CheckReport>>
where
    M: MetricDilation,
    M::Point: AffinePoint<M::Scalar>,
{

    let sampler = BoundedSampler {
        center: space.base_point(),
        radius: cfg.radius,
        seed: cfg.seed,
        count: cfg.count,
    };
    let pts = space.sample_ball(&sampler)?;
    let mut rng = SplitMix64::new(cfg.seed ^ 0xD11A);
    let pick = |rng: &mut SplitMix64| pts[rng.next_index(pts.len())].clone();
    let mut reports = Vec::new();
    let scales: Vec<Scale<M::Scalar>> = sched.iter().take(5).collect();
    let limit_samples = cfg.count.min(48).max(1);

    if select.wants(AxiomSelect::Algebra) {
        let mut c = Checker::new("dilation-algebra", ctx.model.clone(), ctx.seed, tol);
        for _ in 0..cfg.count {
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            let scale = M::Scalar::one().max(space.distance(&x, &y));
            c.observe(
                space.gap(&space.dilate(Scale::one(), &x, &y), &y) / scale,
                || format!("neutral scale moves y: x={x:?}, y={y:?}"),
            );
            for &eps in &scales {
                c.observe(
                    space.gap(&space.dilate(eps, &x, &x), &x) / scale,
                    || format!("base moved at {:?}: x={x:?}", eps.value()),
                );
                for &mu in scales.iter().take(3) {
                    let nested = space.dilate(eps, &x, &space.dilate(mu, &x, &y));
                    let direct = space.dilate(eps.compose(mu), &x, &y);
                    c.observe(space.gap(&nested, &direct) / scale, || {
                        format!(
                            "scale action fails at ({:?}, {:?}): x={x:?}, y={y:?}",
                            eps.value(),
                            mu.value()
                        )
                    });
                }
                let back = space.dilate(eps.inverse(), &x, &space.dilate(eps, &x, &y));
                c.observe(space.gap(&back, &y) / scale, || {
                    format!("scale inverse fails at {:?}", eps.value())
                });
            }
        }
        reports.push(c.finish());
    }

    if select.wants(AxiomSelect::Contraction) {
        let mut c = Checker::new("dilation-contraction", ctx.model.clone(), ctx.seed, tol.max(1e-6));
        let deep = sched.extended(40);
        let floor = M::Scalar::of(c.tol());
        let mut prev = M::Scalar::infinity();
        let mut worst_increase = M::Scalar::zero();
        let mut last = M::Scalar::zero();
        for eps in deep.iter() {
            let mut sup = M::Scalar::zero();
            let mut rng2 = SplitMix64::new(cfg.seed ^ 0xC0);
            for _ in 0..cfg.count {
                let x = pts[rng2.next_index(pts.len())].clone();
                let y = pts[rng2.next_index(pts.len())].clone();
                sup = sup.max(space.distance(&space.dilate(eps, &x, &y), &x));
            }
            if sup > prev && sup > floor {
                worst_increase = worst_increase.max(sup - prev);
            }
            prev = sup;
            last = sup;
        }
        c.observe(last.max(worst_increase), || {
            format!("contraction sup-net stalls at {last}")
        });
        reports.push(c.finish());
    }

    if select.wants(AxiomSelect::TangentDistance) {
        let mut c = Checker::new("dilation-tangent-distance", ctx.model.clone(), ctx.seed, tol);
        let close = M::Scalar::of(tol.max(1e-6));
        let margin = M::Scalar::of(10.0);
        for _ in 0..limit_samples {
            let x = pick(&mut rng);
            let u = pick(&mut rng);
            let v = pick(&mut rng);
            let est = try_estimate_limit(
                |eps| {
                    Ok(space.distance(
                        &space.dilate(eps, &x, &u),
                        &space.dilate(eps, &x, &v),
                    ) / eps.modulus())
                },
                sched,
                |a: &M::Scalar, b: &M::Scalar| (*a - *b).abs(),
                M::Scalar::of(tol.max(1e-6)),
            );
            match est {
                Ok(est) => {
                    if !est.converged {
                        c.fail(format!(
                            "rescaled distance net stalls at {} on x={x:?}",
                            est.final_residual()
                        ));
                        continue;
                    }
                    // Agreement of closeness: the tangent distance and the
                    // ambient distance call the same pairs close (within a
                    // fixed margin); vanishing tangent distance forces equal
                    // points at sample scale.
                    let ambient = space.distance(&u, &v);
                    if est.value <= close {
                        c.observe((ambient - margin * close).max(M::Scalar::zero()), || {
                            format!("tangent distance ~0 but points apart: u={u:?}, v={v:?}")
                        });
                    }
                    if ambient <= close {
                        c.observe((est.value - margin * close).max(M::Scalar::zero()), || {
                            format!("points coincide but tangent distance {}", est.value)
                        });
                    }
                    // Symmetry of the limit.
                    let sym = try_estimate_limit(
                        |eps| {
                            Ok(space.distance(
                                &space.dilate(eps, &x, &v),
                                &space.dilate(eps, &x, &u),
                            ) / eps.modulus())
                        },
                        sched,
                        |a: &M::Scalar, b: &M::Scalar| (*a - *b).abs(),
                        M::Scalar::of(tol.max(1e-6)),
                    );
                    if let Ok(sym) = sym {
                        let scale = M::Scalar::one().max(est.value);
                        c.observe((est.value - sym.value).abs() / scale, || {
                            format!("tangent distance asymmetric on x={x:?}")
                        });
                    }
                }
                Err(e) => c.fail(format!("net failed on x={x:?}: {e}")),
            }
        }
        reports.push(c.finish());
    }

    if select.wants(AxiomSelect::LimitDilation) {
        let mut c = Checker::new("dilation-limit", ctx.model.clone(), ctx.seed, tol.max(1e-6));
        let mus = [Scale::new(M::Scalar::of(0.5))?, Scale::new(M::Scalar::of(0.25))?];
        for _ in 0..limit_samples {
            let x = pick(&mut rng);
            let u = pick(&mut rng);
            let v = pick(&mut rng);
            for &mu in &mus {
                let est = try_estimate_limit(
                    |eps| {
                        let xu = space.dilate(eps, &x, &u);
                        let inner = space.dilate(mu, &xu, &space.dilate(eps, &x, &v));
                        Ok(space.dilate(eps.inverse(), &x, &inner))
                    },
                    sched,
                    |a: &M::Point, b: &M::Point| space.gap(a, b),
                    M::Scalar::of(tol.max(super::checks::ARROW_NET_TOL)),
                );
                match est {
                    Ok(est) if est.converged => {}
                    Ok(est) => c.fail(format!(
                        "limit dilation stalls at {} on x={x:?}, u={u:?}, v={v:?}",
                        est.final_residual()
                    )),
                    Err(e) => c.fail(format!("limit dilation failed: {e}")),
                }
            }
        }
        reports.push(c.finish());
    }

    Ok(reports)
}
