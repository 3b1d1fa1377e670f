//! Deliberately broken fixture: the Euclidean lift, except that on fibers
//! whose base point has a positive first coordinate the contraction factor
//! is a constant 1/2 instead of the scale parameter. This keeps sources and
//! identities intact but destroys the group action in ε and the uniform
//! contraction, so classification must come back negative with a witness.

use crate::constructions::{PairArrow, TrivialGroupoid};
use crate::deformation::Deformation;
use crate::error::Result;
use crate::scalar::Real;
use crate::scaling::Scale;

use super::EuclideanSpace;

#[derive(Clone, Debug)]
pub struct BrokenDeformation<S> {
    groupoid: TrivialGroupoid<EuclideanSpace<S>>,
}

impl<S: Real> BrokenDeformation<S> {
    pub fn new() -> Result<Self> {
        Ok(BrokenDeformation {
            groupoid: TrivialGroupoid::new(EuclideanSpace::new(1)?),
        })
    }

    fn bad_fiber(tail: &[S]) -> bool {
        tail[0] > S::zero()
    }
}

impl<S: Real> Deformation for BrokenDeformation<S> {
    type G = TrivialGroupoid<EuclideanSpace<S>>;

    fn groupoid(&self) -> &Self::G {
        &self.groupoid
    }

    fn apply(&self, eps: Scale<S>, g: &PairArrow<Vec<S>>) -> Result<PairArrow<Vec<S>>> {
        let factor = if Self::bad_fiber(&g.tail) && !eps.is_one() {
            S::of(0.5)
        } else {
            eps.value()
        };
        let head = g
            .tail
            .iter()
            .zip(&g.head)
            .map(|(q, p)| *q + factor * (*p - *q))
            .collect();
        Ok(PairArrow::new(head, g.tail.clone()))
    }
}
