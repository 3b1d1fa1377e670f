//! Seminorm families induced by groupoid morphisms: pulling a norm back
//! along each member of a separating family of morphisms yields a family of
//! seminorms, each vanishing on identities, subadditive and inversion
//! invariant.


use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::sample::SampleSet;
use crate::scalar::Real;

/// A groupoid morphism presented as compatible object and arrow maps.
pub struct GroupoidMap<G: Groupoid, H: Groupoid> {
    pub name: String,
    map_object: Box<dyn Fn(&G::Object) -> H::Object + Send + Sync>,
    map_arrow: Box<dyn Fn(&G::Arrow) -> H::Arrow + Send + Sync>,
}

impl<G: Groupoid, H: Groupoid> GroupoidMap<G, H> {
    pub fn new(
        name: impl Into<String>,
        map_object: impl Fn(&G::Object) -> H::Object + Send + Sync + 'static,
        map_arrow: impl Fn(&G::Arrow) -> H::Arrow + Send + Sync + 'static,
    ) -> Self {
        GroupoidMap {
            name: name.into(),
            map_object: Box::new(map_object),
            map_arrow: Box::new(map_arrow),
        }
    }

    pub fn object(&self, x: &G::Object) -> H::Object {
        (self.map_object)(x)
    }

    pub fn arrow(&self, g: &G::Arrow) -> H::Arrow {
        (self.map_arrow)(g)
    }

    /// The identity morphism.
    pub fn identity() -> GroupoidMap<G, G>
    where
        G::Object: 'static,
        G::Arrow: 'static,
    {
        GroupoidMap::<G, G>::new("identity", |x| x.clone(), |g| g.clone())
    }

    /// Check the morphism laws on the sampled data: endpoints, identities,
    /// inverses and products must commute with the maps.
    pub fn validate(
        &self,
        src: &G,
        dst: &H,
        samples: &SampleSet<G::Object, G::Arrow>,
    ) -> Result<()> {
        let fail = |law: &str, witness: String| {
            Err(Error::NotAMorphism(format!(
                "{}: {law} fails on {witness}",
                self.name
            )))
        };
        for g in &samples.arrows {
            let fg = self.arrow(g);
            if !dst.objects_close(&dst.source(&fg), &self.object(&src.source(g))) {
                return fail("source", format!("{g:?}"));
            }
            if !dst.objects_close(&dst.target(&fg), &self.object(&src.target(g))) {
                return fail("target", format!("{g:?}"));
            }
            let inv = self.arrow(&src.inverse(g));
            if !dst.arrows_close(&inv, &dst.inverse(&fg)) {
                return fail("inverse", format!("{g:?}"));
            }
        }
        for x in &samples.objects {
            let fe = self.arrow(&src.identity(x));
            if !dst.arrows_close(&fe, &dst.identity(&self.object(x))) {
                return fail("identity", format!("{x:?}"));
            }
        }
        for (g, h) in &samples.composable_pairs {
            let lhs = self.arrow(&src.compose(g, h)?);
            let rhs = dst.compose(&self.arrow(g), &self.arrow(h))?;
            if !dst.arrows_close(&lhs, &rhs) {
                return fail("product", format!("({g:?}, {h:?})"));
            }
        }
        Ok(())
    }
}

/// A named family of seminorms on the arrows of a groupoid.
pub struct SeminormFamily<A, S> {
    members: Vec<(String, Box<dyn Fn(&A) -> S + Send + Sync>)>,
}

impl<A, S: Real> SeminormFamily<A, S> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.members[i].0
    }

    pub fn eval(&self, i: usize, g: &A) -> S {
        (self.members[i].1)(g)
    }

    pub fn max_over(&self, g: &A) -> S {
        self.members
            .iter()
            .map(|(_, f)| f(g))
            .fold(S::zero(), |a, b| a.max(b))
    }
}

/// Pull the norm of `dst` back along each morphism in `maps`. Each map is
/// validated on the samples; the family must separate the sampled
/// non-identity arrows (some member sees a positive value on each).
pub fn seminorms_from_morphisms<G, H>(
    src: &G,
    dst: &H,
    maps: Vec<GroupoidMap<G, H>>,
    samples: &SampleSet<G::Object, G::Arrow>,
) -> Result<SeminormFamily<G::Arrow, G::Scalar>>
where
    G: Groupoid,
    H: NormedGroupoid<Scalar = G::Scalar> + Clone + Send + Sync + 'static,
    G::Arrow: 'static,
{
    if maps.is_empty() {
        return Err(Error::InvalidConfig("empty morphism family".into()));
    }
    for map in &maps {
        map.validate(src, dst, samples)?;
    }
    // Separation on samples.
    for g in &samples.arrows {
        let e = src.identity(&src.source(g));
        if src.arrows_close(g, &e) {
            continue;
        }
        let seen = maps
            .iter()
            .any(|m| dst.norm(&m.arrow(g)) > dst.tolerance());
        if !seen {
            return Err(Error::InvalidConfig(format!(
                "family does not separate the sampled arrow {g:?}"
            )));
        }
    }
    let members = maps
        .into_iter()
        .map(|m| {
            let GroupoidMap {
                name, map_arrow, ..
            } = m;
            let dst = dst.clone();
            let f: Box<dyn Fn(&G::Arrow) -> G::Scalar + Send + Sync> =
                Box::new(move |g: &G::Arrow| dst.norm(&map_arrow(g)));
            (name, f)
        })
        .collect();
    Ok(SeminormFamily { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{PairArrow, TrivialGroupoid};
    use crate::groupoid::NormedGroupoid;
    use crate::models::EuclideanSpace;
    use crate::sample::{SampleConfig, Sampleable};

    type Plane = TrivialGroupoid<EuclideanSpace<f64>>;
    type Line = TrivialGroupoid<EuclideanSpace<f64>>;

    fn coordinate_projection(i: usize) -> GroupoidMap<Plane, Line> {
        GroupoidMap::new(
            format!("proj{i}"),
            move |x: &Vec<f64>| vec![x[i]],
            move |g: &PairArrow<Vec<f64>>| {
                PairArrow::new(vec![g.head[i]], vec![g.tail[i]])
            },
        )
    }

    #[test]
    fn identity_morphism_returns_the_norm_itself() {
        let g = Plane::new(EuclideanSpace::new(2).unwrap());
        let samples = g.sample_set(&SampleConfig::new(5, 64, 1.0));
        let fam = seminorms_from_morphisms(
            &g,
            &g.clone(),
            vec![GroupoidMap::<Plane, Plane>::identity()],
            &samples,
        )
        .unwrap();
        assert_eq!(fam.len(), 1);
        let a = PairArrow::new(vec![1.0, 1.0], vec![0.0, 0.0]);
        assert!((fam.eval(0, &a) - g.norm(&a)).abs() < 1e-15);
    }

    #[test]
    fn lifted_projections_give_coordinate_seminorms() {
        let plane = Plane::new(EuclideanSpace::new(2).unwrap());
        let line = Line::new(EuclideanSpace::new(1).unwrap());
        let samples = plane.sample_set(&SampleConfig::new(6, 64, 1.0));
        let fam = seminorms_from_morphisms(
            &plane,
            &line,
            vec![coordinate_projection(0), coordinate_projection(1)],
            &samples,
        )
        .unwrap();
        let a = PairArrow::new(vec![3.0, -1.0], vec![1.0, 1.0]);
        assert!((fam.eval(0, &a) - 2.0).abs() < 1e-15);
        assert!((fam.eval(1, &a) - 2.0).abs() < 1e-15);
        // Seminorm laws on a sample: identities vanish, inversion invariant,
        // subadditive.
        for (g, h) in &samples.composable_pairs {
            for i in 0..fam.len() {
                let gh = plane.compose(g, h).unwrap();
                assert!(fam.eval(i, &gh) <= fam.eval(i, g) + fam.eval(i, h) + 1e-12);
                assert!((fam.eval(i, g) - fam.eval(i, &plane.inverse(g))).abs() < 1e-12);
            }
        }
        for x in &samples.objects {
            for i in 0..fam.len() {
                assert_eq!(fam.eval(i, &plane.identity(x)), 0.0);
            }
        }
    }

    #[test]
    fn non_morphisms_are_rejected() {
        let plane = Plane::new(EuclideanSpace::new(2).unwrap());
        let line = Line::new(EuclideanSpace::new(1).unwrap());
        let samples = plane.sample_set(&SampleConfig::new(7, 32, 1.0));
        // Norm of the head point: does not commute with composition.
        let bogus = GroupoidMap::<Plane, Line>::new(
            "bogus",
            |x: &Vec<f64>| vec![x[0]],
            |g: &PairArrow<Vec<f64>>| {
                PairArrow::new(vec![g.head[0] * g.head[0]], vec![g.tail[0]])
            },
        );
        match seminorms_from_morphisms(&plane, &line, vec![bogus], &samples) {
            Err(Error::NotAMorphism(_)) => {}
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(_) => panic!("non-morphism accepted"),
        }
    }
}
