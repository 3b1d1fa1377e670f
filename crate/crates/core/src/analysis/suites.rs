//! Named check suites over the built-in models: the registry behind the
//! command-line `verify` subcommand and the acceptance runs. Suites are
//! deterministic in the seed; reports carry the full provenance needed to
//! replay them.

use std::path::PathBuf;

use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::irq::{from_dilatation, FiniteIrq};
use crate::models::{
    self, BrokenDeformation, EuclideanSpace, FiniteGroupoid, HeisenbergSpace, LiftedDeformation,
    TranslationModel,
};
use crate::sample::{SampleConfig, Sampleable};
use crate::scalar::Real;
use crate::scaling::Scale;

use super::checks::{fiber_tuples, scale_pairs};
use super::{
    approx_op_laws, check_cone, classify_structure, deformation_laws, double_groupoid_laws,
    fiber_distance_laws, gamma_irq_laws, groupoid_axioms, irq_derived_laws, iterate_irq_laws,
    norm_axioms, CheckCtx, CheckReport, EpsSchedule,
};

/// Model vocabulary of the front end.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Euclidean { dim: usize },
    Heisenberg,
    TranslationAction { dim: usize },
    Finite { path: PathBuf },
    FiniteIrq { path: PathBuf },
    EuclideanBroken,
}

impl ModelSpec {
    /// Parse a model name plus its parameters.
    pub fn parse(name: &str, dim: Option<usize>, path: Option<&str>) -> Result<Self> {
        match name {
            "euclidean" => Ok(ModelSpec::Euclidean {
                dim: dim.unwrap_or(1),
            }),
            "heisenberg" => Ok(ModelSpec::Heisenberg),
            "translation-action" => Ok(ModelSpec::TranslationAction {
                dim: dim.unwrap_or(1),
            }),
            "finite" => Ok(ModelSpec::Finite {
                path: PathBuf::from(path.ok_or_else(|| {
                    Error::InvalidModelSpec("finite models need --path".into())
                })?),
            }),
            "finite-irq" => Ok(ModelSpec::FiniteIrq {
                path: PathBuf::from(path.ok_or_else(|| {
                    Error::InvalidModelSpec("finite irqs need --path".into())
                })?),
            }),
            "euclidean-broken" => Ok(ModelSpec::EuclideanBroken),
            other => Err(Error::InvalidModelSpec(format!(
                "unknown model {other}; known: euclidean, heisenberg, translation-action, finite, finite-irq, euclidean-broken"
            ))),
        }
    }

    pub fn id(&self) -> String {
        match self {
            ModelSpec::Euclidean { dim } => format!("euclidean({dim})"),
            ModelSpec::Heisenberg => "heisenberg".into(),
            ModelSpec::TranslationAction { dim } => format!("translation-action({dim})"),
            ModelSpec::Finite { path } => format!("finite({})", path.display()),
            ModelSpec::FiniteIrq { path } => format!("finite-irq({})", path.display()),
            ModelSpec::EuclideanBroken => "euclidean-broken".into(),
        }
    }
}

/// A built model, ready to run suites.
pub enum ModelHandle {
    Euclidean(LiftedDeformation<EuclideanSpace<f64>>),
    Heisenberg(LiftedDeformation<HeisenbergSpace<f64>>),
    Translation(TranslationModel<f64>),
    Finite(FiniteGroupoid<f64>),
    FiniteIrq(FiniteIrq),
    Broken(BrokenDeformation<f64>),
}

/// Suite parameters: sample count, seed, tolerance, sampling radius and the
/// scale schedule.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub radius: f64,
    pub schedule: EpsSchedule<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 512,
            seed: 0x5EED_CAFE,
            tol: 1e-9,
            radius: 1.0,
            schedule: EpsSchedule::default(),
        }
    }
}


const GROUPOID_SUITES: &[&str] = &["groupoid-axioms", "norm-axioms", "fiber-distance"];
const DEFORMATION_SUITES: &[&str] = &[
    "deformation-axioms",
    "double-groupoid",
    "approx-ops",
    "irq-laws",
    "irq-derived",
    "cone",
    "classify",
];

/// All suite ids, with the models they apply to.
pub fn suite_ids() -> Vec<(&'static str, &'static str)> {
    vec![
        ("groupoid-axioms", "all groupoid models"),
        ("norm-axioms", "all groupoid models"),
        ("fiber-distance", "all groupoid models"),
        ("deformation-axioms", "models carrying a deformation"),
        ("double-groupoid", "models carrying a deformation"),
        ("approx-ops", "models carrying a deformation"),
        ("irq-laws", "deformation fibers and finite irqs"),
        ("irq-derived", "deformation fibers and finite irqs"),
        ("cone", "euclidean, heisenberg"),
        ("classify", "models carrying a deformation"),
    ]
}

impl ModelHandle {
    pub fn build(spec: &ModelSpec) -> Result<Self> {
        Ok(match spec {
            ModelSpec::Euclidean { dim } => ModelHandle::Euclidean(models::euclidean(*dim)?),
            ModelSpec::Heisenberg => ModelHandle::Heisenberg(models::heisenberg()?),
            ModelSpec::TranslationAction { dim } => {
                ModelHandle::Translation(models::translation_action(*dim)?)
            }
            ModelSpec::Finite { path } => ModelHandle::Finite(models::finite_from_path(path)?),
            ModelSpec::FiniteIrq { path } => ModelHandle::FiniteIrq(FiniteIrq::from_path(path)?),
            ModelSpec::EuclideanBroken => ModelHandle::Broken(models::euclidean_broken()?),
        })
    }

    pub fn supported_suites(&self) -> Vec<&'static str> {
        match self {
            ModelHandle::Euclidean(_) | ModelHandle::Heisenberg(_) => {
                let mut v = GROUPOID_SUITES.to_vec();
                v.extend_from_slice(DEFORMATION_SUITES);
                v
            }
            ModelHandle::Translation(_) => {
                let mut v = GROUPOID_SUITES.to_vec();
                v.extend_from_slice(&[
                    "deformation-axioms",
                    "double-groupoid",
                    "approx-ops",
                    "classify",
                ]);
                v
            }
            ModelHandle::Broken(_) => {
                let mut v = GROUPOID_SUITES.to_vec();
                v.extend_from_slice(&["deformation-axioms", "classify"]);
                v
            }
            ModelHandle::Finite(_) => GROUPOID_SUITES.to_vec(),
            ModelHandle::FiniteIrq(_) => vec!["irq-laws", "irq-derived"],
        }
    }

    /// Run one suite by id. Unknown ids are rejected; ids known globally but
    /// not applicable to this model are configuration errors.
    pub fn run_suite(
        &self,
        model_id: &str,
        suite: &str,
        cfg: &SuiteConfig,
    ) -> Result<Vec<CheckReport>> {
        let canonical = match suite {
            // Historical alias kept for report compatibility.
            "irq-prop45" => "irq-derived",
            s => s,
        };
        if !suite_ids().iter().any(|(id, _)| *id == canonical) {
            return Err(Error::UnknownSuite(suite.into()));
        }
        if !self.supported_suites().contains(&canonical) {
            return Err(Error::InvalidConfig(format!(
                "suite {canonical} does not apply to model {model_id}"
            )));
        }
        let ctx = CheckCtx::new(model_id, cfg.seed);
        match self {
            ModelHandle::Euclidean(def) => run_deformation_suite(def, canonical, cfg, &ctx),
            ModelHandle::Heisenberg(def) => run_deformation_suite(def, canonical, cfg, &ctx),
            ModelHandle::Translation(def) => run_deformation_suite(def, canonical, cfg, &ctx),
            ModelHandle::Broken(def) => run_deformation_suite(def, canonical, cfg, &ctx),
            ModelHandle::Finite(g) => run_groupoid_suite(g, canonical, cfg, &ctx),
            ModelHandle::FiniteIrq(q) => run_finite_irq_suite(q, canonical, cfg, &ctx),
        }
    }
}

fn run_groupoid_suite<G>(
    g: &G,
    suite: &str,
    cfg: &SuiteConfig,
    ctx: &CheckCtx,
) -> Result<Vec<CheckReport>>
where
    G: NormedGroupoid + Sampleable,
    G::Scalar: crate::scalar::Real,
{
    let set = g.sample_set(&SampleConfig::new(
        cfg.seed,
        cfg.samples,
        G::Scalar::of(cfg.radius),
    ));
    Ok(match suite {
        "groupoid-axioms" => vec![groupoid_axioms(g, &set, cfg.tol, ctx)],
        "norm-axioms" => vec![norm_axioms(g, &set, cfg.tol, ctx)],
        "fiber-distance" => vec![fiber_distance_laws(g, &set, cfg.tol, ctx)],
        other => return Err(Error::InvalidConfig(format!("suite {other} needs a deformation"))),
    })
}

fn run_deformation_suite<D>(
    def: &D,
    suite: &str,
    cfg: &SuiteConfig,
    ctx: &CheckCtx,
) -> Result<Vec<CheckReport>>
where
    D: Deformation,
    D::G: Sampleable + Clone,
    <D::G as Groupoid>::Scalar: crate::scalar::Real,
    <D::G as Groupoid>::Arrow: super::AffinePoint<<D::G as Groupoid>::Scalar>,
{
    type Sc<D> = <<D as Deformation>::G as Groupoid>::Scalar;
    let gd = def.groupoid();
    let sample_cfg = SampleConfig::new(cfg.seed, cfg.samples, Sc::<D>::of(cfg.radius));
    let sched = EpsSchedule::new(
        Sc::<D>::of(cfg.schedule.lambda().as_f64()),
        cfg.schedule.start(),
        cfg.schedule.len(),
    )?;
    match suite {
        "groupoid-axioms" | "norm-axioms" | "fiber-distance" => {
            let set = gd.sample_set(&sample_cfg);
            Ok(match suite {
                "groupoid-axioms" => vec![groupoid_axioms(gd, &set, cfg.tol, ctx)],
                "norm-axioms" => vec![norm_axioms(gd, &set, cfg.tol, ctx)],
                _ => vec![fiber_distance_laws(gd, &set, cfg.tol, ctx)],
            })
        }
        "deformation-axioms" => {
            let set = gd.sample_set(&sample_cfg);
            Ok(deformation_laws(def, &set, &sched, cfg.tol, ctx))
        }
        "double-groupoid" => {
            let set = gd.sample_set(&sample_cfg.with_count(cfg.samples.min(256)));
            Ok(double_groupoid_laws(def, &set, &sched, cfg.tol, ctx))
        }
        "approx-ops" => {
            let set = gd.sample_set(&sample_cfg.with_count(cfg.samples.min(512)));
            Ok(vec![approx_op_laws(def, &set, &sched, cfg.tol, ctx)])
        }
        "irq-laws" => {
            let x = gd
                .sample_set(&sample_cfg.with_count(1))
                .objects
                .into_iter()
                .next()
                .ok_or_else(|| Error::InvalidConfig("no objects sampled".into()))?;
            let elems = gd.sample_fiber_arrows(&x, &sample_cfg.with_count(cfg.samples.min(128)));
            let fam = from_dilatation(def, &x);
            let scales: Vec<Scale<Sc<D>>> = scale_pairs::<Sc<D>>(cfg.seed ^ 1, 6)
                .into_iter()
                .map(|(a, _)| a)
                .collect();
            Ok(vec![gamma_irq_laws(&fam, &elems, &scales, cfg.tol, ctx)])
        }
        "irq-derived" => {
            let tuples = fiber_tuples(def, &sample_cfg.with_count(cfg.samples.min(256)));
            let x = gd
                .sample_set(&sample_cfg.with_count(1))
                .objects
                .into_iter()
                .next()
                .ok_or_else(|| Error::InvalidConfig("no objects sampled".into()))?;
            let fam = from_dilatation(def, &x);
            let pairs = scale_pairs::<Sc<D>>(cfg.seed ^ 2, 4);
            Ok(vec![irq_derived_laws(&fam, &tuples, &pairs, cfg.tol, ctx)])
        }
        "cone" => {
            let set = gd.sample_set(&sample_cfg.with_count(cfg.samples.min(8).max(2)));
            let mut reports = Vec::new();
            for (w, u, v) in set.fiber_triples.iter().take(4) {
                for m in [0.5, 0.25] {
                    reports.extend(check_cone(
                        def,
                        w,
                        u,
                        v,
                        Scale::new(Sc::<D>::of(m))?,
                        &sched,
                        cfg.tol,
                        ctx,
                    )?);
                }
            }
            Ok(reports)
        }
        "classify" => {
            let cls = classify_structure(def, &sample_cfg.with_count(cfg.samples.min(64)), &sched, cfg.tol, ctx)?;
            Ok(cls.reports)
        }
        other => Err(Error::UnknownSuite(other.into())),
    }
}

fn run_finite_irq_suite(
    q: &FiniteIrq,
    suite: &str,
    cfg: &SuiteConfig,
    ctx: &CheckCtx,
) -> Result<Vec<CheckReport>> {
    let carrier = q.carrier();
    match suite {
        "irq-laws" => {
            // Exhaustive idempotency and cancellation through the loaded
            // tables, reported in the same shape as the sampled suites.
            let mut c = super::Checker::new("irq-laws", ctx.model.clone(), ctx.seed, cfg.tol);
            use crate::irq::Irq;
            for &x in &carrier {
                for &y in &carrier {
                    let cxy = q.circ(&x, &y)?;
                    let bxy = q.bullet(&x, &y)?;
                    let p1a = q.bullet(&x, &cxy)?;
                    let p1b = q.circ(&x, &bxy)?;
                    c.observe(q.gap(&p1a, &y), || format!("x•(x∘y) != y at ({x}, {y})"));
                    c.observe(q.gap(&p1b, &y), || format!("x∘(x•y) != y at ({x}, {y})"));
                }
                let cxx = q.circ(&x, &x)?;
                let bxx = q.bullet(&x, &x)?;
                c.observe(q.gap(&cxx, &x), || format!("x∘x != x at {x}"));
                c.observe(q.gap(&bxx, &x), || format!("x•x != x at {x}"));
            }
            Ok(vec![c.finish()])
        }
        "irq-derived" => {
            let mut tuples = Vec::new();
            for &x in &carrier {
                for &u in &carrier {
                    for &v in &carrier {
                        for &w in &carrier {
                            tuples.push((x, u, v, w));
                        }
                    }
                }
            }
            Ok(vec![iterate_irq_laws(q, &tuples, cfg.tol, ctx)])
        }
        other => Err(Error::UnknownSuite(other.into())),
    }
}

/// Run one named suite against a model spec.
pub fn run_check_suite(
    spec: &ModelSpec,
    suite: &str,
    cfg: &SuiteConfig,
) -> Result<Vec<CheckReport>> {
    let handle = ModelHandle::build(spec)?;
    handle.run_suite(&spec.id(), suite, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_are_rejected() {
        let err = run_check_suite(
            &ModelSpec::Euclidean { dim: 1 },
            "does-not-exist",
            &SuiteConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownSuite(_)));
    }

    #[test]
    fn groupoid_suite_on_euclidean_passes() {
        let cfg = SuiteConfig {
            samples: 200,
            ..SuiteConfig::default()
        };
        let reports =
            run_check_suite(&ModelSpec::Euclidean { dim: 2 }, "groupoid-axioms", &cfg).unwrap();
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn deformation_suites_do_not_apply_to_finite_models() {
        let dir = std::env::temp_dir().join("ngdef-test-fixture.json");
        std::fs::write(
            &dir,
            crate::models::FiniteGroupoid::<f64>::demo_json(),
        )
        .unwrap();
        let err = run_check_suite(
            &ModelSpec::Finite { path: dir.clone() },
            "deformation-axioms",
            &SuiteConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
        let _ = std::fs::remove_file(dir);
    }
}
