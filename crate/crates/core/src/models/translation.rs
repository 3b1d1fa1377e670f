//! Translations of Euclidean space acting on themselves: a free action whose
//! groupoid carries the norm "length of the step" and the deformation that
//! rescales the step.

use crate::constructions::{ActionArrow, ActionGroupoid, GroupAction};
use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::sample::{ball_point, SampleConfig};
use crate::scalar::Real;
use crate::scaling::Scale;

#[derive(Clone, Debug)]
pub struct TranslationAction<S> {
    dim: usize,
    tol: S,
}

impl<S: Real> TranslationAction<S> {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModelSpec(
                "translation dimension must be at least 1".into(),
            ));
        }
        Ok(TranslationAction {
            dim,
            tol: S::of(1e-9),
        })
    }
}

impl<S: Real> GroupAction for TranslationAction<S> {
    type Scalar = S;
    type Point = Vec<S>;
    type Element = Vec<S>;

    fn act(&self, g: &Vec<S>, x: &Vec<S>) -> Vec<S> {
        x.iter().zip(g).map(|(a, b)| *a + *b).collect()
    }

    fn combine(&self, g: &Vec<S>, h: &Vec<S>) -> Vec<S> {
        g.iter().zip(h).map(|(a, b)| *a + *b).collect()
    }

    fn invert(&self, g: &Vec<S>) -> Vec<S> {
        g.iter().map(|a| -*a).collect()
    }

    fn neutral(&self) -> Vec<S> {
        vec![S::zero(); self.dim]
    }

    fn point_distance(&self, x: &Vec<S>, y: &Vec<S>) -> S {
        let mut acc = S::zero();
        for (a, b) in x.iter().zip(y) {
            let d = *a - *b;
            acc += d * d;
        }
        acc.sqrt()
    }

    fn element_gap(&self, g: &Vec<S>, h: &Vec<S>) -> S {
        self.point_distance(g, h)
    }

    fn is_free(&self) -> bool {
        true
    }

    fn tolerance(&self) -> S {
        self.tol
    }

    fn sample_points(&self, cfg: &SampleConfig<S>) -> Vec<Vec<S>> {
        let mut rng = crate::sample::SplitMix64::new(cfg.seed);
        let center = vec![S::zero(); self.dim];
        (0..cfg.count)
            .map(|_| ball_point(&mut rng, &center, cfg.radius))
            .collect()
    }

    fn sample_elements(&self, cfg: &SampleConfig<S>) -> Vec<Vec<S>> {
        self.sample_points(&SampleConfig {
            seed: cfg.seed ^ 0x7A7A_5151,
            ..*cfg
        })
    }
}

/// The translation groupoid together with its step-scaling deformation
/// δ_ε(x, t) = (x, εt).
#[derive(Clone, Debug)]
pub struct TranslationModel<S> {
    groupoid: ActionGroupoid<TranslationAction<S>>,
}

impl<S: Real> TranslationModel<S> {
    pub fn new(dim: usize) -> Result<Self> {
        Ok(TranslationModel {
            groupoid: ActionGroupoid::normed(TranslationAction::new(dim)?)?,
        })
    }
}

impl<S: Real> Deformation for TranslationModel<S> {
    type G = ActionGroupoid<TranslationAction<S>>;

    fn groupoid(&self) -> &Self::G {
        &self.groupoid
    }

    fn apply(
        &self,
        eps: Scale<S>,
        g: &ActionArrow<Vec<S>, Vec<S>>,
    ) -> Result<ActionArrow<Vec<S>, Vec<S>>> {
        let e = eps.value();
        Ok(ActionArrow::new(
            g.point.clone(),
            g.element.iter().map(|t| *t * e).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{Groupoid, NormedGroupoid};

    #[test]
    fn norm_is_the_step_length_and_scales_exactly() {
        let m = TranslationModel::<f64>::new(1).unwrap();
        let g = ActionArrow::new(vec![2.0], vec![-3.0]);
        assert_eq!(m.groupoid().norm(&g), 3.0);
        let d = m.apply(Scale::new(0.25).unwrap(), &g).unwrap();
        assert_eq!(m.groupoid().norm(&d), 0.75);
        assert_eq!(d.point, vec![2.0]);
    }

    #[test]
    fn action_norm_axioms() {
        // The action-groupoid norm laws: zero only at the neutral element,
        // invariant under inversion, subadditive along the action.
        let m = TranslationModel::<f64>::new(2).unwrap();
        let gpd = m.groupoid();
        let x = vec![0.5, -1.0];
        let g = vec![1.0, 2.0];
        let h = vec![-0.5, 0.25];
        let a = ActionArrow::new(x.clone(), g.clone());
        assert!(gpd.norm(&a) > 0.0);
        assert_eq!(gpd.norm(&gpd.identity(&x)), 0.0);
        let inv = gpd.inverse(&a);
        assert!((gpd.norm(&inv) - gpd.norm(&a)).abs() < 1e-12);
        let b = ActionArrow::new(m.groupoid.action.act(&g, &x), h.clone());
        let ba = gpd.compose(&b, &a).unwrap();
        assert!(gpd.norm(&ba) <= gpd.norm(&a) + gpd.norm(&b) + 1e-12);
    }
}
