//! Correspondence between arrow norms and right-invariant families of fiber
//! distances: a norm induces a distance on every fiber through the right
//! difference, and conversely a family of fiber distances that is invariant
//! under right translation induces a norm measuring each arrow against the
//! identity at its source.

use num_traits::{Float, One};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};

/// A family of distances, one per fiber: `fiber_dist(x, g, h)` measures two
/// arrows with source `x`.
pub trait FiberMetric<G: Groupoid> {
    fn fiber_dist(&self, x: &G::Object, g: &G::Arrow, h: &G::Arrow) -> G::Scalar;
}

/// Adapter turning a closure into a [`FiberMetric`].
#[derive(Clone)]
pub struct FiberMetricFn<F>(pub F);

impl<G: Groupoid, F> FiberMetric<G> for FiberMetricFn<F>
where
    F: Fn(&G::Object, &G::Arrow, &G::Arrow) -> G::Scalar,
{
    fn fiber_dist(&self, x: &G::Object, g: &G::Arrow, h: &G::Arrow) -> G::Scalar {
        (self.0)(x, g, h)
    }
}

/// The family read off a norm: d_x(g, h) = norm(g·h⁻¹).
#[derive(Clone, Debug)]
pub struct DerivedFiberMetric<G> {
    pub groupoid: G,
}

impl<G: NormedGroupoid> FiberMetric<G> for DerivedFiberMetric<G> {
    fn fiber_dist(&self, _x: &G::Object, g: &G::Arrow, h: &G::Arrow) -> G::Scalar {
        self.groupoid
            .fiber_distance(g, h)
            .expect("family invariant: common source")
    }
}

/// Groupoid normed through a right-invariant fiber-distance family:
/// norm(g) = d_{source(g)}(g, identity).
#[derive(Clone, Debug)]
pub struct FiberNormed<G, F> {
    pub inner: G,
    pub family: F,
}

impl<G: Groupoid, F: FiberMetric<G>> Groupoid for FiberNormed<G, F> {
    type Scalar = G::Scalar;
    type Object = G::Object;
    type Arrow = G::Arrow;

    fn source(&self, g: &Self::Arrow) -> Self::Object {
        self.inner.source(g)
    }
    fn target(&self, g: &Self::Arrow) -> Self::Object {
        self.inner.target(g)
    }
    fn identity(&self, x: &Self::Object) -> Self::Arrow {
        self.inner.identity(x)
    }
    fn compose(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow> {
        self.inner.compose(g, h)
    }
    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow {
        self.inner.inverse(g)
    }
    fn object_gap(&self, x: &Self::Object, y: &Self::Object) -> Self::Scalar {
        self.inner.object_gap(x, y)
    }
    fn arrow_gap(&self, g: &Self::Arrow, h: &Self::Arrow) -> Self::Scalar {
        self.inner.arrow_gap(g, h)
    }
    fn tolerance(&self) -> Self::Scalar {
        self.inner.tolerance()
    }
}

impl<G: Groupoid, F: FiberMetric<G>> NormedGroupoid for FiberNormed<G, F> {
    fn norm(&self, g: &Self::Arrow) -> Self::Scalar {
        let x = self.inner.source(g);
        let e = self.inner.identity(&x);
        self.family.fiber_dist(&x, g, &e)
    }
}

/// Derive the fiber-distance family of a normed groupoid.
pub fn fiber_distances_from_norm<G: NormedGroupoid>(groupoid: G) -> DerivedFiberMetric<G> {
    DerivedFiberMetric { groupoid }
}

/// Build a normed groupoid from a fiber-distance family, after checking
/// right invariance d_{target(u)}(g, h) = d_{source(u)}(g·u, h·u) on the
/// supplied triples. The precondition is sampled, not proven; a violation
/// beyond `tol` surfaces the witnessing triple.
pub fn norm_from_fiber_distances<G, F>(
    groupoid: G,
    family: F,
    triples: &[(G::Arrow, G::Arrow, G::Arrow)],
    tol: G::Scalar,
) -> Result<FiberNormed<G, F>>
where
    G: Groupoid,
    F: FiberMetric<G>,
{
    for (g, h, u) in triples {
        let lhs = family.fiber_dist(&groupoid.source(g), g, h);
        let gu = groupoid.compose(g, u)?;
        let hu = groupoid.compose(h, u)?;
        let rhs = family.fiber_dist(&groupoid.source(u), &gu, &hu);
        let scale = G::Scalar::one().max(lhs.abs()).max(rhs.abs());
        if (lhs - rhs).abs() > tol * scale {
            return Err(Error::RightInvarianceViolated(format!(
                "g={g:?} h={h:?} u={u:?}: d(g,h)={lhs} but d(gu,hu)={rhs}"
            )));
        }
    }
    Ok(FiberNormed {
        inner: groupoid,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{PairArrow, TrivialGroupoid};
    use crate::models::{EuclideanSpace, FinitePoints};
    use crate::sample::{SampleConfig, Sampleable};

    #[test]
    fn norm_recovered_from_the_derived_family() {
        let g = TrivialGroupoid::new(EuclideanSpace::<f64>::new(1).unwrap());
        let set = g.sample_set(&SampleConfig::new(11, 64, 1.0));
        let fam = fiber_distances_from_norm(g.clone());
        let normed =
            norm_from_fiber_distances(g.clone(), fam, &set.translation_triples, 1e-12).unwrap();
        let a = PairArrow::new(vec![0.75], vec![-0.5]);
        assert!((normed.norm(&a) - 1.25).abs() < 1e-15);
        let e = normed.identity(&vec![0.3]);
        assert_eq!(normed.norm(&e), 0.0);
    }

    #[test]
    fn per_fiber_rescaling_is_rejected() {
        // Scaling the distance by a factor depending on the fiber breaks
        // right invariance; brute force over a finite model finds a witness.
        let space = FinitePoints::new(vec![
            ("a".into(), vec![0.0f64]),
            ("b".into(), vec![1.0]),
            ("c".into(), vec![2.5]),
        ]);
        let g = TrivialGroupoid::new(space.clone());
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let mut triples = Vec::new();
        for p in &names {
            for q in &names {
                for r in &names {
                    for s in &names {
                        triples.push((
                            PairArrow::new(p.clone(), q.clone()),
                            PairArrow::new(r.clone(), q.clone()),
                            PairArrow::new(q.clone(), s.clone()),
                        ));
                    }
                }
            }
        }
        let skew = FiberMetricFn({
            let space = space.clone();
            move |x: &String, g: &PairArrow<String>, h: &PairArrow<String>| {
                let w = if x == "a" { 2.0 } else { 1.0 };
                w * space.coord_distance(&g.head, &h.head)
            }
        });
        match norm_from_fiber_distances(g, skew, &triples, 1e-12) {
            Err(Error::RightInvarianceViolated(_)) => {}
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(_) => panic!("per-fiber rescaling accepted"),
        }
    }
}
