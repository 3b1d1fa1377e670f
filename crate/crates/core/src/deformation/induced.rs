//! Local structures induced by a deformation at a fixed parameter μ: the
//! composition, inverse, difference, norm and pair distance transported
//! through δ_μ, plus the transported pair deformation. The underlying set of
//! arrows is unchanged; only the operations are conjugated, so everything is
//! defined exactly where the transported preconditions hold.

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::scaling::Scale;

use super::Deformation;

pub struct Induced<'a, D: Deformation> {
    def: &'a D,
    mu: Scale<<D::G as Groupoid>::Scalar>,
}

/// Rescaled local structure at μ. Sources are unchanged; targets move with
/// δ_μ. The transported deformation itself coincides with δ because the
/// scaling group is commutative.
pub fn induce<D: Deformation>(
    def: &D,
    mu: Scale<<D::G as Groupoid>::Scalar>,
) -> Induced<'_, D> {
    Induced { def, mu }
}

impl<'a, D: Deformation> Induced<'a, D> {
    pub fn parameter(&self) -> Scale<<D::G as Groupoid>::Scalar> {
        self.mu
    }

    fn up(&self, g: &<D::G as Groupoid>::Arrow) -> Result<<D::G as Groupoid>::Arrow> {
        self.def.apply(self.mu, g)
    }

    fn down(&self, g: &<D::G as Groupoid>::Arrow) -> Result<<D::G as Groupoid>::Arrow> {
        self.def.apply(self.mu.inverse(), g)
    }

    /// Source map of the local structure; equals the original source.
    pub fn source(&self, g: &<D::G as Groupoid>::Arrow) -> <D::G as Groupoid>::Object {
        self.def.groupoid().source(g)
    }

    /// Target map of the local structure: target ∘ δ_μ.
    pub fn target(
        &self,
        g: &<D::G as Groupoid>::Arrow,
    ) -> Result<<D::G as Groupoid>::Object> {
        Ok(self.def.groupoid().target(&self.up(g)?))
    }

    /// Local composition δ_{μ⁻¹}(δ_μ(g)·δ_μ(h)), defined when the deformed
    /// arrows are composable.
    pub fn compose(
        &self,
        g: &<D::G as Groupoid>::Arrow,
        h: &<D::G as Groupoid>::Arrow,
    ) -> Result<<D::G as Groupoid>::Arrow> {
        let gd = self.def.groupoid();
        let dg = self.up(g)?;
        let dh = self.up(h)?;
        if !gd.composable(&dg, &dh) {
            return Err(Error::NotComposableInduced(format!(
                "target(δ_μ h)={:?} but source(δ_μ g)={:?}",
                gd.target(&dh),
                gd.source(&dg)
            )));
        }
        self.down(&gd.compose(&dg, &dh)?)
    }

    pub fn inverse(
        &self,
        g: &<D::G as Groupoid>::Arrow,
    ) -> Result<<D::G as Groupoid>::Arrow> {
        let gd = self.def.groupoid();
        self.down(&gd.inverse(&self.up(g)?))
    }

    /// Local right difference δ_{μ⁻¹}(δ_μ(g)·(δ_μ(h))⁻¹). This is exactly the
    /// difference function of the local composition.
    pub fn difference(
        &self,
        g: &<D::G as Groupoid>::Arrow,
        h: &<D::G as Groupoid>::Arrow,
    ) -> Result<<D::G as Groupoid>::Arrow> {
        let gd = self.def.groupoid();
        let dg = self.up(g)?;
        let dh = self.up(h)?;
        self.down(&gd.difference(&dg, &dh)?)
    }

    /// Rescaled norm: d(δ_μ g) / |μ|.
    pub fn norm(&self, g: &<D::G as Groupoid>::Arrow) -> Result<<D::G as Groupoid>::Scalar> {
        Ok(self.def.groupoid().norm(&self.up(g)?) / self.mu.modulus())
    }

    /// Rescaled pair distance: d(δ_μ g · (δ_μ h)⁻¹) / |μ|.
    pub fn pair_distance(
        &self,
        g: &<D::G as Groupoid>::Arrow,
        h: &<D::G as Groupoid>::Arrow,
    ) -> Result<<D::G as Groupoid>::Scalar> {
        let gd = self.def.groupoid();
        let dg = self.up(g)?;
        let dh = self.up(h)?;
        Ok(gd.fiber_distance(&dg, &dh)? / self.mu.modulus())
    }

    /// Transported pair deformation at ε: the lead arrow becomes
    /// δ_{μ⁻¹}(δ_ε(δ_μ(g)·(δ_μ(h))⁻¹)·δ_μ(h)), the base is pinned.
    pub fn deform_pair(
        &self,
        eps: Scale<<D::G as Groupoid>::Scalar>,
        g: &<D::G as Groupoid>::Arrow,
        h: &<D::G as Groupoid>::Arrow,
    ) -> Result<(<D::G as Groupoid>::Arrow, <D::G as Groupoid>::Arrow)> {
        let gd = self.def.groupoid();
        let dg = self.up(g)?;
        let dh = self.up(h)?;
        let rel = gd.difference(&dg, &dh)?;
        let lead = self.down(&gd.compose(&self.def.apply(eps, &rel)?, &dh)?)?;
        Ok((lead, h.clone()))
    }
}
