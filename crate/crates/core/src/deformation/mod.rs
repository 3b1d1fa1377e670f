//! Scaling deformations of a normed groupoid.
//!
//! A deformation assigns to every scaling parameter ε a transformation δ_ε of
//! the arrows that preserves sources, acts as a group in ε, fixes identity
//! arrows and contracts arrow norms to zero as |ε| → 0 uniformly on bounded
//! sets. Domains of definition are model-supplied predicates; the library
//! never invents them. From δ we build the based dilation on each fiber, the
//! lifted deformation of the double groupoid, the rescaled local structures
//! at a parameter μ, and the approximate difference/sum/inverse operations
//! whose ε → 0 limits carry the tangent algebra.

mod double;
mod induced;

pub use double::DoubleDeformation;
pub use induced::{induce, Induced};

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::scalar::Real;
use crate::scaling::Scale;

/// Constants witnessing the domain axiom on a bounded region: sublevel bounds
/// 1 < A < B sandwiching the reachable sets, a pair radius R for difference
/// arrows, and the largest scale ε₀ at which the witness applies.
#[derive(Clone, Copy, Debug)]
pub struct DomainWitness<S> {
    pub inner_bound: S,
    pub outer_bound: S,
    pub pair_radius: S,
    pub eps_ceiling: S,
}

impl<S: Real> DomainWitness<S> {
    pub fn new(inner_bound: S, outer_bound: S, pair_radius: S, eps_ceiling: S) -> Result<Self> {
        if !(S::one() < inner_bound && inner_bound < outer_bound) {
            return Err(Error::InvalidConfig(format!(
                "need 1 < A < B, got A={inner_bound}, B={outer_bound}"
            )));
        }
        if !(pair_radius > S::zero()) {
            return Err(Error::InvalidConfig("pair radius must be positive".into()));
        }
        if !(eps_ceiling > S::zero() && eps_ceiling <= S::one()) {
            return Err(Error::InvalidConfig(
                "eps ceiling must lie in (0, 1]".into(),
            ));
        }
        Ok(DomainWitness {
            inner_bound,
            outer_bound,
            pair_radius,
            eps_ceiling,
        })
    }
}

impl<S: Real> Default for DomainWitness<S> {
    /// A = 2, B = 4, R = 1, ε₀ = 1/2: the witness used by the built-in
    /// models on unit balls.
    fn default() -> Self {
        DomainWitness {
            inner_bound: S::of(2.0),
            outer_bound: S::of(4.0),
            pair_radius: S::one(),
            eps_ceiling: S::of(0.5),
        }
    }
}

pub trait Deformation {
    type G: NormedGroupoid;

    fn groupoid(&self) -> &Self::G;

    /// δ_ε applied to an arrow. Implementations must check the domain and
    /// return [`Error::NotInDomain`] outside it.
    fn apply(
        &self,
        eps: Scale<<Self::G as Groupoid>::Scalar>,
        g: &<Self::G as Groupoid>::Arrow,
    ) -> Result<<Self::G as Groupoid>::Arrow>;

    fn in_domain(
        &self,
        eps: Scale<<Self::G as Groupoid>::Scalar>,
        g: &<Self::G as Groupoid>::Arrow,
    ) -> bool {
        let _ = (eps, g);
        true
    }

    /// Domain-axiom constants for the unit ball around the model base point.
    fn witness(&self) -> DomainWitness<<Self::G as Groupoid>::Scalar> {
        DomainWitness::default()
    }
}

/// Based dilation on the fiber over `source(base)`: δ_ε(g·base⁻¹)·base.
/// Fixes `base`, and for the neutral scale is the identity map.
pub fn dilation<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    base: &<D::G as Groupoid>::Arrow,
    g: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let gd = def.groupoid();
    let rel = gd.difference(g, base)?;
    let contracted = def.apply(eps, &rel)?;
    gd.compose(&contracted, base)
}

/// Deformation of a same-source pair: (g, h) ↦ (δ_ε(g·h⁻¹)·h, h). The second
/// component is pinned; the first is the based dilation of g at h.
pub fn deform_pair<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    g: &<D::G as Groupoid>::Arrow,
    h: &<D::G as Groupoid>::Arrow,
) -> Result<(<D::G as Groupoid>::Arrow, <D::G as Groupoid>::Arrow)> {
    Ok((dilation(def, eps, h, g)?, h.clone()))
}

/// Approximate difference: the rescaled local difference of (g, h) composed
/// with δ_ε h. Keeps the source of its arguments.
pub fn approx_diff<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    g: &<D::G as Groupoid>::Arrow,
    h: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let local = induce(def, eps);
    let d = local.difference(g, h)?;
    def.groupoid().compose(&d, &def.apply(eps, h)?)
}

/// Approximate inverse: the approximate difference of the identity at
/// `source(g)` and g.
pub fn approx_inv<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    g: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let e = def.groupoid().identity(&def.groupoid().source(g));
    approx_diff(def, eps, &e, g)
}

/// Approximate sum: δ_{ε⁻¹}[ δ_ε(g·(δ_ε h)⁻¹) · δ_ε h ].
pub fn approx_sum<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    g: &<D::G as Groupoid>::Arrow,
    h: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let gd = def.groupoid();
    if !gd.objects_close(&gd.source(g), &gd.source(h)) {
        return Err(Error::FiberMismatch(format!(
            "approximate sum needs a common source: {g:?} vs {h:?}"
        )));
    }
    let dh = def.apply(eps, h)?;
    let shifted = gd.compose(g, &gd.inverse(&dh))?;
    let inner = gd.compose(&def.apply(eps, &shifted)?, &dh)?;
    def.apply(eps.inverse(), &inner)
}

/// Based approximate difference: δ^{δ^u_ε g}_{ε⁻¹} (δ^u_ε h).
pub fn based_diff<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    u: &<D::G as Groupoid>::Arrow,
    g: &<D::G as Groupoid>::Arrow,
    h: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let pivot = dilation(def, eps, u, g)?;
    let moved = dilation(def, eps, u, h)?;
    dilation(def, eps.inverse(), &pivot, &moved)
}

/// Based approximate inverse: δ^{δ^u_ε g}_{ε⁻¹} u, equal to the based
/// difference of (g, u).
pub fn based_inv<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    u: &<D::G as Groupoid>::Arrow,
    g: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let pivot = dilation(def, eps, u, g)?;
    dilation(def, eps.inverse(), &pivot, u)
}

/// Based approximate sum: δ^u_{ε⁻¹} δ^{δ^u_ε g}_ε h.
pub fn based_sum<D: Deformation>(
    def: &D,
    eps: Scale<<D::G as Groupoid>::Scalar>,
    u: &<D::G as Groupoid>::Arrow,
    g: &<D::G as Groupoid>::Arrow,
    h: &<D::G as Groupoid>::Arrow,
) -> Result<<D::G as Groupoid>::Arrow> {
    let pivot = dilation(def, eps, u, g)?;
    let inner = dilation(def, eps, &pivot, h)?;
    dilation(def, eps.inverse(), u, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PairArrow;
    use crate::models;
    use crate::scalar::real;

    fn euclid() -> impl Deformation<
        G = crate::constructions::TrivialGroupoid<crate::models::EuclideanSpace<f64>>,
    > + Clone {
        models::euclidean::<f64>(1).unwrap()
    }

    fn pa(h: f64, t: f64) -> PairArrow<Vec<f64>> {
        PairArrow::new(vec![h], vec![t])
    }

    #[test]
    fn neutral_scale_is_identity() {
        let def = euclid();
        let g = pa(0.7, -0.2);
        assert_eq!(def.apply(Scale::one(), &g).unwrap(), g);
    }

    #[test]
    fn identity_arrows_are_fixed() {
        let def = euclid();
        let e = def.groupoid().identity(&vec![0.4]);
        let eps = Scale::new(0.3).unwrap();
        assert_eq!(def.apply(eps, &e).unwrap(), e);
    }

    #[test]
    fn lifted_homothety_formula() {
        // δ_ε((p, q)) = (q + ε(p − q), q).
        let def = euclid();
        let eps = Scale::new(0.25).unwrap();
        let out = def.apply(eps, &pa(2.0, 1.0)).unwrap();
        assert_eq!(out, pa(1.25, 1.0));
    }

    #[test]
    fn dilation_fixes_its_base() {
        let def = euclid();
        let h = pa(0.9, 0.0);
        let eps = Scale::new(0.5).unwrap();
        assert_eq!(dilation(&def, eps, &h, &h).unwrap(), h);
        // Neutral scale leaves everything in place.
        let g = pa(-0.3, 0.0);
        assert_eq!(dilation(&def, Scale::one(), &h, &g).unwrap(), g);
    }

    #[test]
    fn dilation_matches_point_homothety() {
        // On the fiber over 0, arrows are points and the dilation at base q
        // sends p to q + ε(p − q).
        let def = euclid();
        let eps = Scale::new(0.5).unwrap();
        let out = dilation(&def, eps, &pa(4.0, 0.0), &pa(8.0, 0.0)).unwrap();
        assert_eq!(out, pa(6.0, 0.0));
    }

    #[test]
    fn pair_deformation_pins_the_second_component() {
        let def = euclid();
        let eps = Scale::new(0.5).unwrap();
        let (lead, base) = deform_pair(&def, eps, &pa(3.0, 0.0), &pa(1.0, 0.0)).unwrap();
        assert_eq!(base, pa(1.0, 0.0));
        assert_eq!(lead, pa(2.0, 0.0));
        let h = pa(1.0, 0.0);
        let (l2, b2) = deform_pair(&def, eps, &h, &h).unwrap();
        assert_eq!((l2, b2), (h.clone(), h));
    }

    #[test]
    fn pair_deformation_commutes_with_the_difference_map() {
        let def = euclid();
        let gd = def.groupoid();
        for eps in [0.5, 0.25, 0.8] {
            let eps = Scale::new(eps).unwrap();
            let g = pa(1.7, 0.3);
            let h = pa(-0.4, 0.3);
            let (dl, db) = deform_pair(&def, eps, &g, &h).unwrap();
            let lhs = gd.difference(&dl, &db).unwrap();
            let rhs = def.apply(eps, &gd.difference(&g, &h).unwrap()).unwrap();
            assert!(gd.arrow_gap(&lhs, &rhs) < 1e-12);
        }
    }

    #[test]
    fn approx_diff_closed_form() {
        // Fiber over w: Δ_ε((b, w), (a, w)) = (w + ε(a − w) + b − a, w).
        let def = euclid();
        let (w, a, b) = (0.5, 2.0, -1.0);
        let eps = Scale::new(0.25).unwrap();
        let out = approx_diff(&def, eps, &pa(b, w), &pa(a, w)).unwrap();
        let expect = w + 0.25 * (a - w) + b - a;
        assert!((out.head[0] - expect).abs() < 1e-14);
        assert_eq!(out.tail, vec![w]);
    }

    #[test]
    fn approx_diff_of_equal_arguments_is_the_deformed_arrow() {
        let def = euclid();
        let g = pa(0.8, 0.1);
        let eps = Scale::new(0.5).unwrap();
        let lhs = approx_diff(&def, eps, &g, &g).unwrap();
        let rhs = def.apply(eps, &g).unwrap();
        assert!(def.groupoid().arrow_gap(&lhs, &rhs) < 1e-14);
    }

    #[test]
    fn approx_sum_closed_form_and_neutral_case() {
        let def = euclid();
        let eps = Scale::new(0.25).unwrap();
        let (u, v) = (0.6, -0.8);
        let out = approx_sum(&def, eps, &pa(u, 0.0), &pa(v, 0.0)).unwrap();
        // First argument plus second, the second damped by ε.
        assert!((out.head[0] - (u + v - 0.25 * v)).abs() < 1e-14);
        let g = pa(0.9, 0.2);
        let e = def.groupoid().identity(&vec![0.2]);
        let s = approx_sum(&def, eps, &g, &e).unwrap();
        assert!(def.groupoid().arrow_gap(&s, &g) < 1e-14);
    }

    #[test]
    fn approx_inv_point_map() {
        // On the fiber over 0 the approximate inverse sends u to −u + εu.
        let def = euclid();
        let eps = Scale::new(0.125).unwrap();
        let u = 0.7;
        let out = approx_inv(&def, eps, &pa(u, 0.0)).unwrap();
        assert!((out.head[0] - (-u + 0.125 * u)).abs() < 1e-14);
        let e = def.groupoid().identity(&vec![0.3]);
        let oe = approx_inv(&def, eps, &e).unwrap();
        assert!(def.groupoid().arrow_gap(&oe, &e) < 1e-14);
        // Definitional identity against the approximate difference.
        let g = pa(0.4, 0.3);
        let viae = approx_diff(&def, eps, &e, &g).unwrap();
        let direct = approx_inv(&def, eps, &g).unwrap();
        assert!(def.groupoid().arrow_gap(&viae, &direct) < 1e-15);
    }

    #[test]
    fn based_ops_closed_forms() {
        let def = euclid();
        let (x, u, v) = (0.3, 0.9, -0.5);
        for e in [0.5, 0.25, 0.03125] {
            let eps = Scale::new(e).unwrap();
            let bx = pa(x, 0.0);
            let bu = pa(u, 0.0);
            let bv = pa(v, 0.0);
            let d = based_diff(&def, eps, &bx, &bu, &bv).unwrap();
            assert!((d.head[0] - (x + (v - u) + e * (u - x))).abs() < 1e-14);
            let s = based_sum(&def, eps, &bx, &bu, &bv).unwrap();
            assert!((s.head[0] - (x + (1.0 - e) * (u - x) + (v - x))).abs() < 1e-14);
            let i = based_inv(&def, eps, &bx, &bu).unwrap();
            assert!((i.head[0] - (x - (1.0 - e) * (u - x))).abs() < 1e-14);
        }
    }

    #[test]
    fn based_op_fixed_points() {
        let def = euclid();
        let eps = Scale::new(0.5).unwrap();
        let (x, u, h) = (pa(0.2, 0.0), pa(0.8, 0.0), pa(-0.4, 0.0));
        // Difference of an argument with itself is the dilated argument.
        let d = based_diff(&def, eps, &x, &u, &u).unwrap();
        let du = dilation(&def, eps, &x, &u).unwrap();
        assert!(def.groupoid().arrow_gap(&d, &du) < 1e-14);
        // Sum based at x of (x, h) returns h.
        let s = based_sum(&def, eps, &x, &x, &h).unwrap();
        assert!(def.groupoid().arrow_gap(&s, &h) < 1e-14);
        // Inverse of the base is the base.
        let i = based_inv(&def, eps, &x, &x).unwrap();
        assert!(def.groupoid().arrow_gap(&i, &x) < 1e-14);
        // Definitional identity.
        let lhs = based_inv(&def, eps, &x, &u).unwrap();
        let rhs = based_diff(&def, eps, &x, &u, &x).unwrap();
        assert!(def.groupoid().arrow_gap(&lhs, &rhs) < 1e-15);
    }

    #[test]
    fn based_and_global_ops_agree_through_translation() {
        // Δ_ε(h·u⁻¹, g·u⁻¹) = Δ^u_ε(g, h)·u⁻¹ and the same shape for Σ.
        let def = models::euclidean::<f64>(2).unwrap();
        let gd = def.groupoid();
        let u = PairArrow::new(vec![0.3, -0.1], vec![0.05, 0.2]);
        let g = PairArrow::new(vec![0.7, 0.4], vec![0.05, 0.2]);
        let h = PairArrow::new(vec![-0.2, 0.6], vec![0.05, 0.2]);
        for e in [0.5, 0.25, 0.1] {
            let eps = Scale::new(real::<f64>(e)).unwrap();
            let hu = gd.compose(&h, &gd.inverse(&u)).unwrap();
            let gu = gd.compose(&g, &gd.inverse(&u)).unwrap();

            let lhs = approx_diff(&def, eps, &hu, &gu).unwrap();
            let rhs = gd
                .compose(&based_diff(&def, eps, &u, &g, &h).unwrap(), &gd.inverse(&u))
                .unwrap();
            assert!(gd.arrow_gap(&lhs, &rhs) < 1e-12);

            let lhs = approx_sum(&def, eps, &hu, &gu).unwrap();
            let rhs = gd
                .compose(&based_sum(&def, eps, &u, &g, &h).unwrap(), &gd.inverse(&u))
                .unwrap();
            assert!(gd.arrow_gap(&lhs, &rhs) < 1e-12);
        }
    }
}
