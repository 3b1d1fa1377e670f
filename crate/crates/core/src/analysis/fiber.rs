//! Tangent extraction: the fiber of a deformation over one object is a
//! metric space under the fiber distance, and the based dilations restrict
//! to a dilation on it. Extraction requires the deformation to pass at
//! least the weak classification on samples.

use crate::constructions::MetricSpace;
use crate::deformation::{dilation, Deformation};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::models::MetricDilation;
use crate::sample::{BoundedSampler, SampleConfig, Sampleable};
use crate::scaling::Scale;

use super::{classify_structure, AffinePoint, CheckCtx, EpsSchedule, Verdict};

type Arr<D> = <<D as Deformation>::G as Groupoid>::Arrow;
type Obj<D> = <<D as Deformation>::G as Groupoid>::Object;
type Sc<D> = <<D as Deformation>::G as Groupoid>::Scalar;

/// The fiber over one object, as a metric space with a dilation. Points are
/// the arrows with that source; the distance is the fiber distance; the
/// dilation is the based dilation of the deformation.
#[derive(Clone, Debug)]
pub struct FiberSpace<D: Deformation> {
    def: D,
    object: Obj<D>,
}

impl<D: Deformation> FiberSpace<D> {
    pub fn object(&self) -> &Obj<D> {
        &self.object
    }

    pub fn deformation(&self) -> &D {
        &self.def
    }
}

impl<D> MetricSpace for FiberSpace<D>
where
    D: Deformation,
    D::G: Sampleable,
{
    type Scalar = Sc<D>;
    type Point = Arr<D>;

    fn distance(&self, a: &Arr<D>, b: &Arr<D>) -> Sc<D> {
        self.def
            .groupoid()
            .fiber_distance(a, b)
            .expect("fiber points share their source")
    }

    fn gap(&self, a: &Arr<D>, b: &Arr<D>) -> Sc<D> {
        self.def.groupoid().arrow_gap(a, b)
    }

    fn tolerance(&self) -> Sc<D> {
        self.def.groupoid().tolerance()
    }

    fn base_point(&self) -> Arr<D> {
        self.def.groupoid().identity(&self.object)
    }

    fn sample_ball(&self, sampler: &BoundedSampler<Arr<D>, Sc<D>>) -> Result<Vec<Arr<D>>> {
        sampler.validate()?;
        let cfg = SampleConfig {
            seed: sampler.seed,
            count: sampler.count,
            radius: sampler.radius,
        };
        let raw = self
            .def
            .groupoid()
            .sample_fiber_arrows(&self.object, &cfg);
        // Keep the samples inside the requested ball around the center.
        Ok(raw
            .into_iter()
            .filter(|a| self.distance(a, &sampler.center) <= sampler.radius)
            .collect())
    }
}

impl<D> MetricDilation for FiberSpace<D>
where
    D: Deformation,
    D::G: Sampleable,
{
    fn dilate(&self, eps: Scale<Sc<D>>, base: &Arr<D>, y: &Arr<D>) -> Arr<D> {
        dilation(&self.def, eps, base, y).expect("fiber dilation within the model domain")
    }
}

/// Extract the fiber dilation structure over `x`, first checking that the
/// deformation classifies at least weak on samples around that fiber.
pub fn fiber_dilation_structure<D>(
    def: D,
    x: &Obj<D>,
    cfg: &SampleConfig<Sc<D>>,
    sched: &EpsSchedule<Sc<D>>,
    tol: f64,
    ctx: &CheckCtx,
) -> Result<FiberSpace<D>>
where
    D: Deformation,
    D::G: Sampleable,
    Arr<D>: AffinePoint<Sc<D>>,
{
    let cls = classify_structure(&def, cfg, sched, tol, ctx)?;
    if cls.verdict == Verdict::Neither {
        let witness = cls
            .reports
            .iter()
            .find(|r| !r.pass)
            .map(|r| format!("{}: {:?}", r.check, r.witnesses))
            .unwrap_or_else(|| "no failing report".into());
        return Err(Error::NotGw(witness));
    }
    Ok(FiberSpace {
        def,
        object: x.clone(),
    })
}
