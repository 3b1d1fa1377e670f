//! Finite groupoid models loaded from JSON, and a small labeled metric space
//! used to build finite pair groupoids in tests.
//!
//! Schema:
//! ```json
//! {
//!   "objects": ["a", "b"],
//!   "arrows": [{"id": "e_a", "alpha": "a", "omega": "a", "norm": 0.0}, ...],
//!   "compose": [["g", "h", "gh"], ...],
//!   "inverse": [["g", "g_inv"], ...]
//! }
//! ```
//! A compose entry `[g, h, k]` states g·h = k and requires omega(h) =
//! alpha(g). Loading validates the groupoid laws exhaustively (closure of
//! the table, associativity, inverses, identities) and the norm laws
//! (vanishing exactly on identities, inversion invariance, subadditivity);
//! any violation rejects the document.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::sample::{BoundedSampler, SampleConfig, SampleSet, Sampleable, SplitMix64};
use crate::scalar::Real;

use crate::constructions::MetricSpace;

#[derive(Deserialize)]
struct ArrowDoc {
    id: String,
    alpha: String,
    omega: String,
    norm: f64,
}

#[derive(Deserialize)]
struct GroupoidDoc {
    objects: Vec<String>,
    arrows: Vec<ArrowDoc>,
    compose: Vec<[String; 3]>,
    inverse: Vec<[String; 2]>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroupoid<S> {
    object_names: Vec<String>,
    arrow_names: Vec<String>,
    alpha: Vec<usize>,
    omega: Vec<usize>,
    norms: Vec<S>,
    compose: HashMap<(usize, usize), usize>,
    inverse: Vec<usize>,
    identity_at: Vec<usize>,
}

impl<S: Real> FiniteGroupoid<S> {
    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GroupoidDoc = serde_json::from_str(text)?;
        Self::build(doc)
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_names.iter().position(|n| n == name)
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.object_names[i]
    }

    pub fn arrow_name(&self, i: usize) -> &str {
        &self.arrow_names[i]
    }

    pub fn arrows(&self) -> Vec<usize> {
        (0..self.arrow_names.len()).collect()
    }

    fn build(doc: GroupoidDoc) -> Result<Self> {
        let bad = |msg: String| Error::InvalidModelSpec(msg);

        let mut obj_index = HashMap::new();
        for (i, o) in doc.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(bad(format!("duplicate object {o}")));
            }
        }
        if obj_index.is_empty() {
            return Err(bad("no objects".into()));
        }

        let mut arrow_index = HashMap::new();
        let mut alpha = Vec::new();
        let mut omega = Vec::new();
        let mut norms = Vec::new();
        let mut arrow_names = Vec::new();
        for a in &doc.arrows {
            if arrow_index.insert(a.id.clone(), arrow_names.len()).is_some() {
                return Err(bad(format!("duplicate arrow {}", a.id)));
            }
            let al = *obj_index
                .get(&a.alpha)
                .ok_or_else(|| bad(format!("arrow {} has unknown alpha {}", a.id, a.alpha)))?;
            let om = *obj_index
                .get(&a.omega)
                .ok_or_else(|| bad(format!("arrow {} has unknown omega {}", a.id, a.omega)))?;
            if !(a.norm.is_finite() && a.norm >= 0.0) {
                return Err(bad(format!("arrow {} has invalid norm {}", a.id, a.norm)));
            }
            arrow_names.push(a.id.clone());
            alpha.push(al);
            omega.push(om);
            norms.push(S::of(a.norm));
        }

        let look = |id: &str| -> Result<usize> {
            arrow_index
                .get(id)
                .copied()
                .ok_or_else(|| bad(format!("unknown arrow id {id}")))
        };

        let mut compose = HashMap::new();
        for [g, h, k] in &doc.compose {
            let (g, h, k) = (look(g)?, look(h)?, look(k)?);
            if omega[h] != alpha[g] {
                return Err(bad(format!(
                    "compose entry ({}, {}) is not composable",
                    arrow_names[g], arrow_names[h]
                )));
            }
            if compose.insert((g, h), k).is_some() {
                return Err(bad(format!(
                    "duplicate compose entry ({}, {})",
                    arrow_names[g], arrow_names[h]
                )));
            }
        }

        let mut inverse = vec![usize::MAX; arrow_names.len()];
        for [g, gi] in &doc.inverse {
            let (g, gi) = (look(g)?, look(gi)?);
            inverse[g] = gi;
        }
        for (g, gi) in inverse.iter().enumerate() {
            if *gi == usize::MAX {
                return Err(bad(format!("arrow {} has no inverse", arrow_names[g])));
            }
            if inverse[*gi] != g {
                return Err(bad(format!(
                    "inverse table is not an involution at {}",
                    arrow_names[g]
                )));
            }
            if alpha[*gi] != omega[g] || omega[*gi] != alpha[g] {
                return Err(bad(format!(
                    "inverse of {} does not swap endpoints",
                    arrow_names[g]
                )));
            }
        }

        // The compose table must cover exactly the composable pairs, and the
        // endpoint laws must hold for every product.
        let n = arrow_names.len();
        for g in 0..n {
            for h in 0..n {
                let composable = omega[h] == alpha[g];
                match compose.get(&(g, h)) {
                    Some(&k) if composable => {
                        if alpha[k] != alpha[h] || omega[k] != omega[g] {
                            return Err(bad(format!(
                                "product of ({}, {}) has wrong endpoints",
                                arrow_names[g], arrow_names[h]
                            )));
                        }
                    }
                    Some(_) => {
                        return Err(bad(format!(
                            "compose entry for non-composable pair ({}, {})",
                            arrow_names[g], arrow_names[h]
                        )))
                    }
                    None if composable => {
                        return Err(bad(format!(
                            "missing compose entry for ({}, {})",
                            arrow_names[g], arrow_names[h]
                        )))
                    }
                    None => {}
                }
            }
        }

        // Identities: alpha(g)'s identity is g⁻¹·g; it must be a two-sided
        // unit. Recover one identity per object.
        let mut identity_at = vec![usize::MAX; obj_index.len()];
        for g in 0..n {
            let e = compose[&(inverse[g], g)];
            if alpha[e] != omega[e] || alpha[e] != alpha[g] {
                return Err(bad(format!(
                    "{}⁻¹·{} is not an identity at alpha",
                    arrow_names[g], arrow_names[g]
                )));
            }
            let prev = identity_at[alpha[g]];
            if prev != usize::MAX && prev != e {
                return Err(bad(format!(
                    "two different identities at object {}",
                    doc.objects[alpha[g]]
                )));
            }
            identity_at[alpha[g]] = e;
            let e2 = compose[&(g, inverse[g])];
            let prev = identity_at[omega[g]];
            if prev != usize::MAX && prev != e2 {
                return Err(bad(format!(
                    "two different identities at object {}",
                    doc.objects[omega[g]]
                )));
            }
            identity_at[omega[g]] = e2;
        }
        for (x, e) in identity_at.iter().enumerate() {
            if *e == usize::MAX {
                return Err(bad(format!(
                    "object {} carries no identity arrow",
                    doc.objects[x]
                )));
            }
        }
        // Unit laws.
        for g in 0..n {
            if compose[&(g, identity_at[alpha[g]])] != g
                || compose[&(identity_at[omega[g]], g)] != g
            {
                return Err(bad(format!("identity laws fail at {}", arrow_names[g])));
            }
        }
        // Associativity, exhaustively.
        for g in 0..n {
            for h in 0..n {
                if omega[h] != alpha[g] {
                    continue;
                }
                for k in 0..n {
                    if omega[k] != alpha[h] {
                        continue;
                    }
                    let gh_k = compose[&(compose[&(g, h)], k)];
                    let g_hk = compose[&(g, compose[&(h, k)])];
                    if gh_k != g_hk {
                        return Err(bad(format!(
                            "associativity fails on ({}, {}, {})",
                            arrow_names[g], arrow_names[h], arrow_names[k]
                        )));
                    }
                }
            }
        }
        // Cancellation laws.
        for g in 0..n {
            for h in 0..n {
                if omega[h] != alpha[g] {
                    continue;
                }
                let gh = compose[&(g, h)];
                if compose[&(gh, inverse[h])] != g || compose[&(inverse[g], gh)] != h {
                    return Err(bad(format!(
                        "cancellation fails on ({}, {})",
                        arrow_names[g], arrow_names[h]
                    )));
                }
            }
        }
        // Norm laws.
        for g in 0..n {
            let is_identity = identity_at[alpha[g]] == g;
            if is_identity && norms[g] != S::zero() {
                return Err(bad(format!(
                    "identity {} must have norm 0",
                    arrow_names[g]
                )));
            }
            if !is_identity && norms[g] <= S::zero() {
                return Err(bad(format!(
                    "non-identity {} must have positive norm",
                    arrow_names[g]
                )));
            }
            if norms[inverse[g]] != norms[g] {
                return Err(bad(format!(
                    "norm not inversion-invariant at {}",
                    arrow_names[g]
                )));
            }
        }
        for (&(g, h), &k) in &compose {
            if norms[k] > norms[g] + norms[h] + S::of(1e-12) {
                return Err(bad(format!(
                    "norm subadditivity fails on ({}, {})",
                    arrow_names[g], arrow_names[h]
                )));
            }
        }

        Ok(FiniteGroupoid {
            object_names: doc.objects,
            arrow_names,
            alpha,
            omega,
            norms,
            compose,
            inverse,
            identity_at,
        })
    }
}

impl<S: Real> Groupoid for FiniteGroupoid<S> {
    type Scalar = S;
    type Object = usize;
    type Arrow = usize;

    fn source(&self, g: &usize) -> usize {
        self.alpha[*g]
    }

    fn target(&self, g: &usize) -> usize {
        self.omega[*g]
    }

    fn identity(&self, x: &usize) -> usize {
        self.identity_at[*x]
    }

    fn compose(&self, g: &usize, h: &usize) -> Result<usize> {
        self.compose.get(&(*g, *h)).copied().ok_or_else(|| {
            Error::NotComposable(format!(
                "({}, {})",
                self.arrow_names[*g], self.arrow_names[*h]
            ))
        })
    }

    fn inverse(&self, g: &usize) -> usize {
        self.inverse[*g]
    }

    fn object_gap(&self, x: &usize, y: &usize) -> S {
        if x == y {
            S::zero()
        } else {
            S::one()
        }
    }

    fn arrow_gap(&self, g: &usize, h: &usize) -> S {
        if g == h {
            S::zero()
        } else {
            S::one()
        }
    }

    fn tolerance(&self) -> S {
        S::of(0.5)
    }
}

impl<S: Real> NormedGroupoid for FiniteGroupoid<S> {
    fn norm(&self, g: &usize) -> S {
        self.norms[*g]
    }

    fn object_distance(&self, x: &usize, y: &usize) -> Result<S> {
        let mut best = S::infinity();
        for g in 0..self.arrow_names.len() {
            if self.alpha[g] == *x && self.omega[g] == *y {
                best = best.min(self.norms[g]);
            }
        }
        Ok(best)
    }
}

impl<S: Real> Sampleable for FiniteGroupoid<S> {
    fn sample_set(&self, cfg: &SampleConfig<S>) -> SampleSet<usize, usize> {
        let mut rng = SplitMix64::new(cfg.seed);
        let n = self.arrow_names.len();
        let m = self.object_names.len();
        let mut set = SampleSet::default();
        let by_source: Vec<Vec<usize>> = (0..m)
            .map(|x| (0..n).filter(|g| self.alpha[*g] == x).collect())
            .collect();
        let by_target: Vec<Vec<usize>> = (0..m)
            .map(|x| (0..n).filter(|g| self.omega[*g] == x).collect())
            .collect();
        for _ in 0..cfg.count {
            set.objects.push(rng.next_index(m));
            let g = rng.next_index(n);
            set.arrows.push(g);
            // Composable chains drawn backwards from g.
            let pick = |rng: &mut SplitMix64, v: &Vec<usize>| v[rng.next_index(v.len())];
            let g2 = pick(&mut rng, &by_target[self.alpha[g]]);
            let g3 = pick(&mut rng, &by_target[self.alpha[g2]]);
            set.composable_pairs.push((g, g2));
            set.composable_triples.push((g, g2, g3));
            let x = self.alpha[g];
            let fiber = &by_source[x];
            let (a, b, c, d) = (
                pick(&mut rng, fiber),
                pick(&mut rng, fiber),
                pick(&mut rng, fiber),
                pick(&mut rng, fiber),
            );
            set.fiber_pairs.push((a, b));
            set.fiber_triples.push((a, b, c));
            set.fiber_quads.push((a, b, c, d));
            let u = pick(&mut rng, &by_target[x]);
            set.translation_triples.push((a, b, u));
        }
        set
    }

    fn sample_fiber_arrows(&self, x: &usize, cfg: &SampleConfig<S>) -> Vec<usize> {
        let mut rng = SplitMix64::new(cfg.seed);
        let fiber: Vec<usize> = (0..self.arrow_names.len())
            .filter(|g| self.alpha[*g] == *x)
            .collect();
        if fiber.is_empty() {
            return Vec::new();
        }
        (0..cfg.count)
            .map(|_| fiber[rng.next_index(fiber.len())])
            .collect()
    }
}

/// A finite labeled point set with coordinates; distances are Euclidean on
/// the coordinates. Base space for small pair-groupoid fixtures.
#[derive(Clone, Debug)]
pub struct FinitePoints<S> {
    points: Vec<(String, Vec<S>)>,
}

impl<S: Real> FinitePoints<S> {
    pub fn new(points: Vec<(String, Vec<S>)>) -> Self {
        FinitePoints { points }
    }

    fn coords(&self, label: &str) -> &Vec<S> {
        &self
            .points
            .iter()
            .find(|(l, _)| l == label)
            .expect("known label")
            .1
    }

    pub fn coord_distance(&self, a: &String, b: &String) -> S {
        let (pa, pb) = (self.coords(a), self.coords(b));
        let mut acc = S::zero();
        for (x, y) in pa.iter().zip(pb) {
            let d = *x - *y;
            acc += d * d;
        }
        acc.sqrt()
    }
}

impl<S: Real> MetricSpace for FinitePoints<S> {
    type Scalar = S;
    type Point = String;

    fn distance(&self, a: &String, b: &String) -> S {
        self.coord_distance(a, b)
    }

    fn tolerance(&self) -> S {
        S::of(1e-9)
    }

    fn base_point(&self) -> String {
        self.points[0].0.clone()
    }

    fn sample_ball(&self, sampler: &BoundedSampler<String, S>) -> Result<Vec<String>> {
        sampler.validate()?;
        let mut rng = sampler.stream();
        let inside: Vec<&String> = self
            .points
            .iter()
            .map(|(l, _)| l)
            .filter(|l| self.coord_distance(l, &sampler.center) <= sampler.radius)
            .collect();
        if inside.is_empty() {
            return Err(Error::InvalidSampler("empty ball".into()));
        }
        Ok((0..sampler.count)
            .map(|_| inside[rng.next_index(inside.len())].clone())
            .collect())
    }
}

impl<S: Real> FiniteGroupoid<S> {
    /// Bundled demo document: the pair groupoid over three labeled points
    /// with metric norms.
    pub fn demo_json() -> &'static str {
        include_str!("../../fixtures/pair3.json")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub fn pair3_json() -> String {
        super::FiniteGroupoid::<f64>::demo_json().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_a_valid_pair_groupoid() {
        let g = FiniteGroupoid::<f64>::from_json(&fixtures::pair3_json()).unwrap();
        assert_eq!(g.object_count(), 3);
        assert_eq!(g.arrow_count(), 9);
        let ab = g.arrows().into_iter().find(|a| g.arrow_name(*a) == "ab").unwrap();
        let bc = g.arrows().into_iter().find(|a| g.arrow_name(*a) == "bc").unwrap();
        let ac = g.compose(&ab, &bc).unwrap();
        assert_eq!(g.arrow_name(ac), "ac");
        assert_eq!(g.norm(&ac), 2.5);
    }

    #[test]
    fn rejects_subadditivity_violations() {
        // Inflate the norm of one arrow beyond the triangle bound.
        let mut doc: serde_json::Value =
            serde_json::from_str(&fixtures::pair3_json()).unwrap();
        for arrow in doc["arrows"].as_array_mut().unwrap() {
            if arrow["id"] == "ac" {
                arrow["norm"] = serde_json::json!(100.0);
            }
            if arrow["id"] == "ca" {
                arrow["norm"] = serde_json::json!(100.0);
            }
        }
        let err = FiniteGroupoid::<f64>::from_json(&doc.to_string()).unwrap_err();
        assert!(matches!(err, Error::InvalidModelSpec(_)));
    }

    #[test]
    fn rejects_structural_violations() {
        // Remove one compose entry: the table no longer covers a composable
        // pair.
        let mut doc: serde_json::Value =
            serde_json::from_str(&fixtures::pair3_json()).unwrap();
        doc["compose"].as_array_mut().unwrap().pop();
        assert!(FiniteGroupoid::<f64>::from_json(&doc.to_string()).is_err());
        // Break an inverse pairing.
        let mut doc: serde_json::Value =
            serde_json::from_str(&fixtures::pair3_json()).unwrap();
        doc["inverse"][1] = serde_json::json!(["ab", "ab"]);
        assert!(FiniteGroupoid::<f64>::from_json(&doc.to_string()).is_err());
    }

    #[test]
    fn object_distance_handles_disconnection() {
        // Two components: a pair groupoid over {a, b} next to an isolated
        // object c.
        let doc = serde_json::json!({
            "objects": ["a", "b", "c"],
            "arrows": [
                {"id": "aa", "alpha": "a", "omega": "a", "norm": 0.0},
                {"id": "ab", "alpha": "b", "omega": "a", "norm": 1.0},
                {"id": "ba", "alpha": "a", "omega": "b", "norm": 1.0},
                {"id": "bb", "alpha": "b", "omega": "b", "norm": 0.0},
                {"id": "cc", "alpha": "c", "omega": "c", "norm": 0.0}
            ],
            "compose": [
                ["aa", "aa", "aa"], ["ab", "bb", "ab"], ["aa", "ab", "ab"],
                ["ba", "aa", "ba"], ["bb", "ba", "ba"], ["ba", "ab", "bb"],
                ["ab", "ba", "aa"], ["bb", "bb", "bb"], ["cc", "cc", "cc"]
            ],
            "inverse": [["aa", "aa"], ["ab", "ba"], ["ba", "ab"], ["bb", "bb"], ["cc", "cc"]]
        });
        let g = FiniteGroupoid::<f64>::from_json(&doc.to_string()).unwrap();
        let a = g.object_index("a").unwrap();
        let b = g.object_index("b").unwrap();
        let c = g.object_index("c").unwrap();
        assert_eq!(g.object_distance(&a, &b).unwrap(), 1.0);
        assert_eq!(g.object_distance(&a, &a).unwrap(), 0.0);
        assert!(g.object_distance(&a, &c).unwrap().is_infinite());
    }
}
