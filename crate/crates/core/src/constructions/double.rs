//! Double groupoid of same-source arrow pairs: (g, h)(h, l) = (g, l), with
//! inverse (g, h)⁻¹ = (h, g) and norm the fiber distance of the underlying
//! groupoid. Its objects are the diagonal pairs (g, g), one per arrow, and
//! the right-difference map (g, h) ↦ g·h⁻¹ is a norm-preserving morphism
//! back to the underlying groupoid.

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::sample::{SampleConfig, SampleSet, Sampleable};

/// Ordered pair of arrows in a common fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberPair<A> {
    pub lead: A,
    pub base: A,
}

impl<A> FiberPair<A> {
    pub fn new(lead: A, base: A) -> Self {
        FiberPair { lead, base }
    }
}

#[derive(Clone, Debug)]
pub struct AlphaDouble<G> {
    pub inner: G,
}

impl<G: NormedGroupoid> AlphaDouble<G> {
    pub fn new(inner: G) -> Self {
        AlphaDouble { inner }
    }

    pub fn pair(&self, lead: G::Arrow, base: G::Arrow) -> Result<FiberPair<G::Arrow>> {
        if !self
            .inner
            .objects_close(&self.inner.source(&lead), &self.inner.source(&base))
        {
            return Err(Error::FiberMismatch(format!(
                "{lead:?} and {base:?} have different sources"
            )));
        }
        Ok(FiberPair::new(lead, base))
    }

    /// The difference morphism (g, h) ↦ g·h⁻¹.
    pub fn project(&self, p: &FiberPair<G::Arrow>) -> Result<G::Arrow> {
        self.inner.difference(&p.lead, &p.base)
    }
}

impl<G: NormedGroupoid> Groupoid for AlphaDouble<G> {
    type Scalar = G::Scalar;
    /// Objects are the diagonal pairs (g, g), identified with arrows of the
    /// underlying groupoid.
    type Object = G::Arrow;
    type Arrow = FiberPair<G::Arrow>;

    fn source(&self, p: &Self::Arrow) -> Self::Object {
        p.base.clone()
    }

    fn target(&self, p: &Self::Arrow) -> Self::Object {
        p.lead.clone()
    }

    fn identity(&self, x: &Self::Object) -> Self::Arrow {
        FiberPair::new(x.clone(), x.clone())
    }

    fn compose(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow> {
        if !self.inner.arrows_close(&g.base, &h.lead) {
            return Err(Error::NotComposable(format!(
                "pair composition needs matching middle arrow: {:?} vs {:?}",
                g.base, h.lead
            )));
        }
        Ok(FiberPair::new(g.lead.clone(), h.base.clone()))
    }

    fn inverse(&self, p: &Self::Arrow) -> Self::Arrow {
        FiberPair::new(p.base.clone(), p.lead.clone())
    }

    fn object_gap(&self, x: &Self::Object, y: &Self::Object) -> Self::Scalar {
        self.inner.arrow_gap(x, y)
    }

    fn arrow_gap(&self, g: &Self::Arrow, h: &Self::Arrow) -> Self::Scalar {
        self.inner.arrow_gap(&g.lead, &h.lead) + self.inner.arrow_gap(&g.base, &h.base)
    }

    fn tolerance(&self) -> Self::Scalar {
        self.inner.tolerance()
    }
}

impl<G: NormedGroupoid> NormedGroupoid for AlphaDouble<G> {
    fn norm(&self, p: &Self::Arrow) -> Self::Scalar {
        self.inner
            .fiber_distance(&p.lead, &p.base)
            .expect("pair invariant: common source")
    }

    fn separable(&self) -> bool {
        self.inner.separable()
    }
}

impl<G> Sampleable for AlphaDouble<G>
where
    G: NormedGroupoid + Sampleable,
{
    fn sample_set(
        &self,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> SampleSet<Self::Object, Self::Arrow> {
        let inner = self.inner.sample_set(cfg);
        let arrows: Vec<_> = inner
            .fiber_pairs
            .iter()
            .map(|(g, h)| FiberPair::new(g.clone(), h.clone()))
            .collect();
        let composable_pairs = inner
            .fiber_triples
            .iter()
            .map(|(g, h, l)| {
                (
                    FiberPair::new(g.clone(), h.clone()),
                    FiberPair::new(h.clone(), l.clone()),
                )
            })
            .collect();
        let composable_triples = inner
            .fiber_quads
            .iter()
            .map(|(g, h, l, m)| {
                (
                    FiberPair::new(g.clone(), h.clone()),
                    FiberPair::new(h.clone(), l.clone()),
                    FiberPair::new(l.clone(), m.clone()),
                )
            })
            .collect();
        let fiber_pairs = inner
            .fiber_triples
            .iter()
            .map(|(g, h, l)| {
                (
                    FiberPair::new(g.clone(), l.clone()),
                    FiberPair::new(h.clone(), l.clone()),
                )
            })
            .collect();
        let fiber_triples = inner
            .fiber_quads
            .iter()
            .map(|(g, h, l, m)| {
                (
                    FiberPair::new(g.clone(), m.clone()),
                    FiberPair::new(h.clone(), m.clone()),
                    FiberPair::new(l.clone(), m.clone()),
                )
            })
            .collect();
        SampleSet {
            objects: inner.arrows.clone(),
            arrows,
            composable_pairs,
            composable_triples,
            fiber_pairs,
            fiber_triples,
            fiber_quads: Vec::new(),
            translation_triples: Vec::new(),
        }
    }

    fn sample_fiber_arrows(
        &self,
        x: &Self::Object,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> Vec<Self::Arrow> {
        self.inner
            .sample_fiber_arrows(&self.inner.source(x), cfg)
            .into_iter()
            .map(|g| FiberPair::new(g, x.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{PairArrow, TrivialGroupoid};
    use crate::models::EuclideanSpace;

    fn setup() -> AlphaDouble<TrivialGroupoid<EuclideanSpace<f64>>> {
        AlphaDouble::new(TrivialGroupoid::new(EuclideanSpace::new(1).unwrap()))
    }

    fn pa(h: f64, t: f64) -> PairArrow<Vec<f64>> {
        PairArrow::new(vec![h], vec![t])
    }

    #[test]
    fn identities_are_diagonal_pairs() {
        let d = setup();
        let g = pa(1.0, 2.0);
        let e = d.identity(&g);
        assert_eq!(e, FiberPair::new(g.clone(), g.clone()));
        assert_eq!(d.norm(&e), 0.0);
    }

    #[test]
    fn composition_cancels_the_middle_arrow() {
        let d = setup();
        let (g, h, l) = (pa(1.0, 0.0), pa(2.0, 0.0), pa(3.0, 0.0));
        let gh = d
            .compose(
                &FiberPair::new(g.clone(), h.clone()),
                &FiberPair::new(h.clone(), l.clone()),
            )
            .unwrap();
        assert_eq!(gh, FiberPair::new(g, l));
    }

    #[test]
    fn norm_over_a_pair_groupoid_sees_only_the_heads() {
        // For a pair-groupoid input the double is the space of triples
        // (x, y, z) with norm d(x, y).
        let d = setup();
        let p = FiberPair::new(pa(4.0, 1.0), pa(-2.0, 1.0));
        assert_eq!(d.norm(&p), 6.0);
        let proj = d.project(&p).unwrap();
        assert_eq!(proj, pa(4.0, -2.0));
        assert_eq!(d.inner.norm(&proj), d.norm(&p));
    }
}
