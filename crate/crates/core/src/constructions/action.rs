//! Action groupoid of a group acting on a space: arrows are (point, element)
//! pairs with source the point and target its image. For a free action a
//! norm comes from a point distance via how far the element moves the point;
//! otherwise the model must supply an element norm directly.


use std::fmt::Debug;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::sample::{SampleConfig, SampleSet, Sampleable};
use crate::scalar::Real;

/// A left group action on a space, with a distance on the points.
pub trait GroupAction {
    type Scalar: Real;
    type Point: Clone + Debug;
    type Element: Clone + Debug;

    fn act(&self, g: &Self::Element, x: &Self::Point) -> Self::Point;
    fn combine(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn invert(&self, g: &Self::Element) -> Self::Element;
    fn neutral(&self) -> Self::Element;

    /// Base distance d' on the points.
    fn point_distance(&self, x: &Self::Point, y: &Self::Point) -> Self::Scalar;

    fn element_gap(&self, g: &Self::Element, h: &Self::Element) -> Self::Scalar;

    /// Model-asserted freeness: g(x) = x forces g = e.
    fn is_free(&self) -> bool;

    fn tolerance(&self) -> Self::Scalar {
        Self::Scalar::of(1e-9)
    }

    /// Optional direct norm for arrows, overriding the free-action formula.
    fn arrow_norm(&self, x: &Self::Point, g: &Self::Element) -> Option<Self::Scalar> {
        let _ = (x, g);
        None
    }

    fn sample_points(&self, cfg: &SampleConfig<Self::Scalar>) -> Vec<Self::Point>;
    fn sample_elements(&self, cfg: &SampleConfig<Self::Scalar>) -> Vec<Self::Element>;
}

/// Arrow (x, g): source x, target g(x).
#[derive(Clone, Debug, PartialEq)]
pub struct ActionArrow<P, E> {
    pub point: P,
    pub element: E,
}

impl<P, E> ActionArrow<P, E> {
    pub fn new(point: P, element: E) -> Self {
        ActionArrow { point, element }
    }
}

#[derive(Clone, Debug)]
pub struct ActionGroupoid<A> {
    pub action: A,
}

impl<A: GroupAction> ActionGroupoid<A> {
    /// Normed action groupoid. Without a model-supplied arrow norm the norm
    /// is d'(g(x), x), which vanishes only on identities when the action is
    /// free; a non-free action is refused.
    pub fn normed(action: A) -> Result<Self> {
        let probe = action.sample_points(&SampleConfig {
            seed: 0,
            count: 1,
            radius: A::Scalar::one(),
        });
        let has_custom_norm = probe
            .first()
            .map(|p| action.arrow_norm(p, &action.neutral()).is_some())
            .unwrap_or(false);
        if !has_custom_norm && !action.is_free() {
            return Err(Error::NotFree);
        }
        Ok(ActionGroupoid { action })
    }
}

impl<A: GroupAction> Groupoid for ActionGroupoid<A> {
    type Scalar = A::Scalar;
    type Object = A::Point;
    type Arrow = ActionArrow<A::Point, A::Element>;

    fn source(&self, g: &Self::Arrow) -> Self::Object {
        g.point.clone()
    }

    fn target(&self, g: &Self::Arrow) -> Self::Object {
        self.action.act(&g.element, &g.point)
    }

    fn identity(&self, x: &Self::Object) -> Self::Arrow {
        ActionArrow::new(x.clone(), self.action.neutral())
    }

    fn compose(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow> {
        let through = self.target(h);
        if self.action.point_distance(&through, &g.point) > self.tolerance() {
            return Err(Error::NotComposable(format!(
                "target(h)={through:?} but source(g)={:?}",
                g.point
            )));
        }
        Ok(ActionArrow::new(
            h.point.clone(),
            self.action.combine(&g.element, &h.element),
        ))
    }

    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow {
        ActionArrow::new(self.target(g), self.action.invert(&g.element))
    }

    fn object_gap(&self, x: &Self::Object, y: &Self::Object) -> Self::Scalar {
        self.action.point_distance(x, y)
    }

    fn arrow_gap(&self, g: &Self::Arrow, h: &Self::Arrow) -> Self::Scalar {
        self.action.point_distance(&g.point, &h.point)
            + self.action.element_gap(&g.element, &h.element)
    }

    fn tolerance(&self) -> Self::Scalar {
        self.action.tolerance()
    }
}

impl<A: GroupAction> NormedGroupoid for ActionGroupoid<A> {
    fn norm(&self, g: &Self::Arrow) -> Self::Scalar {
        match self.action.arrow_norm(&g.point, &g.element) {
            Some(n) => n,
            None => self
                .action
                .point_distance(&self.action.act(&g.element, &g.point), &g.point),
        }
    }
}

impl<A: GroupAction> Sampleable for ActionGroupoid<A> {
    fn sample_set(
        &self,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> SampleSet<Self::Object, Self::Arrow> {
        let mut sub = crate::sample::SplitMix64::new(cfg.seed);
        let next = |sub: &mut crate::sample::SplitMix64| SampleConfig {
            seed: sub.next_u64(),
            count: cfg.count,
            radius: cfg.radius,
        };

        let objects = self.action.sample_points(&next(&mut sub));
        let points = self.action.sample_points(&next(&mut sub));
        let e1 = self.action.sample_elements(&next(&mut sub));
        let e2 = self.action.sample_elements(&next(&mut sub));
        let e3 = self.action.sample_elements(&next(&mut sub));

        let n = points.len().min(e1.len()).min(e2.len()).min(e3.len());
        let arrows: Vec<_> = (0..n)
            .map(|i| ActionArrow::new(points[i].clone(), e1[i].clone()))
            .collect();
        // b = (x, g), a = (g(x), h) compose to (x, h·g).
        let composable_pairs: Vec<_> = (0..n)
            .map(|i| {
                let b = ActionArrow::new(points[i].clone(), e1[i].clone());
                let a = ActionArrow::new(self.target(&b), e2[i].clone());
                (a, b)
            })
            .collect();
        let composable_triples: Vec<_> = (0..n)
            .map(|i| {
                let c = ActionArrow::new(points[i].clone(), e1[i].clone());
                let b = ActionArrow::new(self.target(&c), e2[i].clone());
                let a = ActionArrow::new(self.target(&b), e3[i].clone());
                (a, b, c)
            })
            .collect();
        let fiber_pairs: Vec<_> = (0..n)
            .map(|i| {
                (
                    ActionArrow::new(points[i].clone(), e1[i].clone()),
                    ActionArrow::new(points[i].clone(), e2[i].clone()),
                )
            })
            .collect();
        let fiber_triples: Vec<_> = (0..n)
            .map(|i| {
                (
                    ActionArrow::new(points[i].clone(), e1[i].clone()),
                    ActionArrow::new(points[i].clone(), e2[i].clone()),
                    ActionArrow::new(points[i].clone(), e3[i].clone()),
                )
            })
            .collect();
        let fiber_quads: Vec<_> = (0..n.saturating_sub(1))
            .map(|i| {
                (
                    ActionArrow::new(points[i].clone(), e1[i].clone()),
                    ActionArrow::new(points[i].clone(), e2[i].clone()),
                    ActionArrow::new(points[i].clone(), e3[i].clone()),
                    ActionArrow::new(points[i].clone(), e1[i + 1].clone()),
                )
            })
            .collect();
        // u = (y, s) with s(y) = x: pick y, s and set the shared source x = s(y).
        let translation_triples: Vec<_> = (0..n)
            .map(|i| {
                let u = ActionArrow::new(points[i].clone(), e3[i].clone());
                let x = self.target(&u);
                (
                    ActionArrow::new(x.clone(), e1[i].clone()),
                    ActionArrow::new(x, e2[i].clone()),
                    u,
                )
            })
            .collect();

        SampleSet {
            objects,
            arrows,
            composable_pairs,
            composable_triples,
            fiber_pairs,
            fiber_triples,
            fiber_quads,
            translation_triples,
        }
    }

    fn sample_fiber_arrows(
        &self,
        x: &Self::Object,
        cfg: &SampleConfig<Self::Scalar>,
    ) -> Vec<Self::Arrow> {
        self.action
            .sample_elements(cfg)
            .into_iter()
            .map(|e| ActionArrow::new(x.clone(), e))
            .collect()
    }
}
