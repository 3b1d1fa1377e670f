//! The pair deformation as a deformation in its own right: it acts on the
//! double groupoid of same-source pairs, pins the base component and moves
//! the lead by the based dilation. The difference map projects it back onto
//! the original deformation.

use crate::constructions::{AlphaDouble, FiberPair};
use crate::error::Result;
use crate::groupoid::Groupoid;
use crate::scaling::Scale;

use super::{deform_pair, Deformation, DomainWitness};

#[derive(Clone, Debug)]
pub struct DoubleDeformation<D: Deformation>
where
    D::G: Clone,
{
    def: D,
    double: AlphaDouble<D::G>,
}

impl<D: Deformation> DoubleDeformation<D>
where
    D::G: Clone,
{
    pub fn new(def: D) -> Self {
        let double = AlphaDouble::new(def.groupoid().clone());
        DoubleDeformation { def, double }
    }

    pub fn inner(&self) -> &D {
        &self.def
    }
}

impl<D: Deformation> Deformation for DoubleDeformation<D>
where
    D::G: Clone,
{
    type G = AlphaDouble<D::G>;

    fn groupoid(&self) -> &Self::G {
        &self.double
    }

    fn apply(
        &self,
        eps: Scale<<Self::G as Groupoid>::Scalar>,
        p: &<Self::G as Groupoid>::Arrow,
    ) -> Result<<Self::G as Groupoid>::Arrow> {
        let (lead, base) = deform_pair(&self.def, eps, &p.lead, &p.base)?;
        Ok(FiberPair::new(lead, base))
    }

    fn in_domain(
        &self,
        eps: Scale<<Self::G as Groupoid>::Scalar>,
        p: &<Self::G as Groupoid>::Arrow,
    ) -> bool {
        match self.def.groupoid().difference(&p.lead, &p.base) {
            Ok(rel) => self.def.in_domain(eps, &rel),
            Err(_) => false,
        }
    }

    fn witness(&self) -> DomainWitness<<Self::G as Groupoid>::Scalar> {
        self.def.witness()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PairArrow;
    use crate::groupoid::NormedGroupoid;
    use crate::models;

    fn pa(h: f64, t: f64) -> PairArrow<Vec<f64>> {
        PairArrow::new(vec![h], vec![t])
    }

    #[test]
    fn fixes_diagonal_pairs() {
        let dd = DoubleDeformation::new(models::euclidean::<f64>(1).unwrap());
        let g = pa(0.6, 0.2);
        let diag = FiberPair::new(g.clone(), g.clone());
        let out = dd.apply(Scale::new(0.5).unwrap(), &diag).unwrap();
        assert_eq!(out, diag);
    }

    #[test]
    fn norm_contracts_like_the_base_deformation() {
        let dd = DoubleDeformation::new(models::euclidean::<f64>(1).unwrap());
        let p = FiberPair::new(pa(1.0, 0.0), pa(-1.0, 0.0));
        let n0 = dd.groupoid().norm(&p);
        let out = dd.apply(Scale::new(0.5).unwrap(), &p).unwrap();
        assert!((dd.groupoid().norm(&out) - 0.5 * n0).abs() < 1e-14);
    }
}
