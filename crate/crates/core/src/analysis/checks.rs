//! Generic law suites over sampled data. Each check folds its observations
//! into a [`CheckReport`]; violations are measured relative to the scale of
//! the compared quantities so tolerances read as relative errors.

use num_traits::{Float, Zero};
use crate::constructions::{AlphaDouble, FiberPair};
use crate::deformation::{
    approx_diff, approx_sum, based_diff, based_sum, deform_pair, induce, Deformation,
};
use crate::error::Result;
use crate::groupoid::{Groupoid, NormedGroupoid};
use crate::irq::{GammaIrq, Irq, IrqDir};
use crate::sample::{SampleConfig, SampleSet, Sampleable, SplitMix64};
use crate::scalar::Real;
use crate::scaling::Scale;

use super::{Checker, CheckReport, EpsSchedule};

type Sc<D> = <<D as Deformation>::G as Groupoid>::Scalar;

/// Context shared by the suites: model id, seed for the report.
#[derive(Clone, Debug)]
pub struct CheckCtx {
    pub model: String,
    pub seed: u64,
}

impl CheckCtx {
    pub fn new(model: impl Into<String>, seed: u64) -> Self {
        CheckCtx {
            model: model.into(),
            seed,
        }
    }

    fn checker(&self, name: &str, tol: f64) -> Checker {
        Checker::new(name, self.model.clone(), self.seed, tol)
    }
}

fn rel<S: Real>(gap: S, scale: S) -> S {
    gap / S::one().max(scale)
}

/// Groupoid laws on samples: endpoint bookkeeping of products and inverses,
/// associativity, unit and cancellation laws.
pub fn groupoid_axioms<G: Groupoid>(
    g: &G,
    set: &SampleSet<G::Object, G::Arrow>,
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    let mut c = ctx.checker("groupoid-axioms", tol);
    for a in &set.arrows {
        let inv = g.inverse(a);
        c.observe(g.object_gap(&g.source(&inv), &g.target(a)), || {
            format!("source(inv {a:?}) != target")
        });
        c.observe(g.object_gap(&g.target(&inv), &g.source(a)), || {
            format!("target(inv {a:?}) != source")
        });
        c.observe(g.arrow_gap(&g.inverse(&inv), a), || {
            format!("inv inv != id at {a:?}")
        });
        // g⁻¹·g and g·g⁻¹ are the identities at the endpoints.
        match (g.compose(&inv, a), g.compose(a, &inv)) {
            (Ok(l), Ok(r)) => {
                c.observe(g.arrow_gap(&l, &g.identity(&g.source(a))), || {
                    format!("inv(g)·g is not the identity at source, g={a:?}")
                });
                c.observe(g.arrow_gap(&r, &g.identity(&g.target(a))), || {
                    format!("g·inv(g) is not the identity at target, g={a:?}")
                });
            }
            _ => c.fail(format!("inverse pair not composable at {a:?}")),
        }
        // Unit laws.
        let e_src = g.identity(&g.source(a));
        let e_tgt = g.identity(&g.target(a));
        match (g.compose(a, &e_src), g.compose(&e_tgt, a)) {
            (Ok(l), Ok(r)) => {
                c.observe(g.arrow_gap(&l, a), || format!("g·e != g at {a:?}"));
                c.observe(g.arrow_gap(&r, a), || format!("e·g != g at {a:?}"));
            }
            _ => c.fail(format!("identity not composable at {a:?}")),
        }
    }
    for x in &set.objects {
        let e = g.identity(x);
        c.observe(g.object_gap(&g.source(&e), x), || {
            format!("identity at {x:?} has wrong source")
        });
        c.observe(g.object_gap(&g.target(&e), x), || {
            format!("identity at {x:?} has wrong target")
        });
    }
    for (a, b) in &set.composable_pairs {
        match g.compose(a, b) {
            Ok(ab) => {
                c.observe(g.object_gap(&g.source(&ab), &g.source(b)), || {
                    format!("source(g·h) != source(h) on ({a:?}, {b:?})")
                });
                c.observe(g.object_gap(&g.target(&ab), &g.target(a)), || {
                    format!("target(g·h) != target(g) on ({a:?}, {b:?})")
                });
                // Cancellation.
                match (g.compose(&ab, &g.inverse(b)), g.compose(&g.inverse(a), &ab)) {
                    (Ok(l), Ok(r)) => {
                        c.observe(g.arrow_gap(&l, a), || {
                            format!("(g·h)·h⁻¹ != g on ({a:?}, {b:?})")
                        });
                        c.observe(g.arrow_gap(&r, b), || {
                            format!("g⁻¹·(g·h) != h on ({a:?}, {b:?})")
                        });
                    }
                    _ => c.fail(format!("cancellation not composable on ({a:?}, {b:?})")),
                }
            }
            Err(e) => c.fail(format!("composable pair rejected: {e}")),
        }
    }
    for (a, b, d) in &set.composable_triples {
        let lhs = g
            .compose(a, b)
            .and_then(|ab| g.compose(&ab, d));
        let rhs = g
            .compose(b, d)
            .and_then(|bd| g.compose(a, &bd));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => c.observe(g.arrow_gap(&l, &r), || {
                format!("associativity fails on ({a:?}, {b:?}, {d:?})")
            }),
            _ => c.fail(format!("triple not composable: ({a:?}, {b:?}, {d:?})")),
        }
    }
    c.finish()
}

/// Norm laws on samples: nonnegativity, vanishing exactly on identities,
/// inversion invariance, subadditivity; plus a finite-sample separability
/// sanity check when the model asserts separability.
pub fn norm_axioms<G: NormedGroupoid>(
    g: &G,
    set: &SampleSet<G::Object, G::Arrow>,
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    let mut c = ctx.checker("norm-axioms", tol);
    let t = G::Scalar::of(tol);
    for a in &set.arrows {
        let n = g.norm(a);
        c.observe(-n.min(G::Scalar::zero()), || {
            format!("negative norm at {a:?}")
        });
        c.observe(rel((n - g.norm(&g.inverse(a))).abs(), n), || {
            format!("norm(inv g) != norm(g) at {a:?}")
        });
        // Vanishing norm forces an identity (and, with separability, equal
        // endpoints).
        if n <= t {
            let e = g.identity(&g.source(a));
            c.observe(g.arrow_gap(a, &e), || {
                format!("norm ~ 0 but {a:?} is not an identity")
            });
            if g.separable() {
                c.observe(g.object_gap(&g.source(a), &g.target(a)), || {
                    format!("norm ~ 0 across distinct objects at {a:?}")
                });
            }
        }
    }
    for x in &set.objects {
        c.observe(g.norm(&g.identity(x)), || {
            format!("identity at {x:?} has nonzero norm")
        });
    }
    for (a, b) in &set.composable_pairs {
        if let Ok(ab) = g.compose(a, b) {
            let excess = g.norm(&ab) - g.norm(a) - g.norm(b);
            c.observe(rel(excess.max(G::Scalar::zero()), g.norm(&ab)), || {
                format!("subadditivity fails on ({a:?}, {b:?})")
            });
        }
    }
    c.finish()
}

/// Fiber-distance laws: symmetry and the triangle inequality on each fiber,
/// invariance under right translation, and the round trip between norms and
/// fiber-distance families.
pub fn fiber_distance_laws<G: NormedGroupoid>(
    g: &G,
    set: &SampleSet<G::Object, G::Arrow>,
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    let mut c = ctx.checker("fiber-distance", tol);
    for (a, b) in &set.fiber_pairs {
        match (g.fiber_distance(a, b), g.fiber_distance(b, a)) {
            (Ok(d1), Ok(d2)) => {
                c.observe(rel((d1 - d2).abs(), d1), || {
                    format!("fiber distance not symmetric on ({a:?}, {b:?})")
                });
            }
            _ => c.fail(format!("fiber pair rejected: ({a:?}, {b:?})")),
        }
        if let Ok(d) = g.fiber_distance(a, a) {
            c.observe(d, || format!("fiber distance of ({a:?}, itself) nonzero"));
        }
    }
    for (a, b, d3) in &set.fiber_triples {
        if let (Ok(ab), Ok(ad), Ok(db)) = (
            g.fiber_distance(a, b),
            g.fiber_distance(a, d3),
            g.fiber_distance(d3, b),
        ) {
            let excess = ab - ad - db;
            c.observe(rel(excess.max(G::Scalar::zero()), ab), || {
                format!("fiber triangle fails on ({a:?}, {b:?}, {d3:?})")
            });
        }
    }
    // Right invariance and the norm round trip: translating both arrows by u
    // preserves the distance, and the distance of (g, identity) returns the
    // norm.
    for (a, b, u) in &set.translation_triples {
        let lhs = g.fiber_distance(a, b);
        let au = g.compose(a, u);
        let bu = g.compose(b, u);
        match (lhs, au, bu) {
            (Ok(lhs), Ok(au), Ok(bu)) => match g.fiber_distance(&au, &bu) {
                Ok(rhs) => c.observe(rel((lhs - rhs).abs(), lhs), || {
                    format!("right invariance fails on ({a:?}, {b:?}, {u:?})")
                }),
                Err(e) => c.fail(format!("translated pair rejected: {e}")),
            },
            _ => c.fail(format!("translation triple rejected on ({a:?}, {b:?}, {u:?})")),
        }
    }
    for a in &set.arrows {
        let e = g.identity(&g.source(a));
        if let Ok(d) = g.fiber_distance(a, &e) {
            c.observe(rel((d - g.norm(a)).abs(), g.norm(a)), || {
                format!("norm round trip fails at {a:?}")
            });
        }
    }
    c.finish()
}

/// Tolerance floor for scalar-valued limit nets: after extrapolation the
/// estimates are compared absolutely at this level.
pub(crate) const SCALAR_NET_TOL: f64 = 1e-6;

/// Tolerance floor for arrow-valued limit nets. Arrows near a common base
/// point store their offsets in absolute coordinates, so rescaling by the
/// inverse scale amplifies representation noise; the convergence verdict is
/// gated where the decaying net meets that floor.
pub(crate) const ARROW_NET_TOL: f64 = 1e-4;

/// Deformation axioms. Produces four reports: domain bookkeeping, the group
/// action in the scale, identity-fixing, and the uniform contraction net
/// (the contraction is a limit statement and is gated at the scalar-net
/// tolerance).
pub fn deformation_laws<D: Deformation>(
    def: &D,
    set: &SampleSet<<D::G as Groupoid>::Object, <D::G as Groupoid>::Arrow>,
    sched: &EpsSchedule<<D::G as Groupoid>::Scalar>,
    tol: f64,
    ctx: &CheckCtx,
) -> Vec<CheckReport> {
    let gd = def.groupoid();

    // Scale-action laws.
    let mut a1 = ctx.checker("deformation-action", tol);
    let scales: Vec<Scale<Sc<D>>> = sched.iter().take(6).collect();
    for g in &set.arrows {
        match def.apply(Scale::one(), g) {
            Ok(out) => a1.observe(rel(gd.arrow_gap(&out, g), gd.norm(g)), || {
                format!("neutral scale moved {g:?}")
            }),
            Err(e) => a1.fail(format!("neutral scale failed on {g:?}: {e}")),
        }
        for &eps in &scales {
            let Ok(dg) = def.apply(eps, g) else {
                continue;
            };
            a1.observe(
                rel(gd.object_gap(&gd.source(&dg), &gd.source(g)), gd.norm(g)),
                || format!("source not preserved at scale {:?} on {g:?}", eps.value()),
            );
            // Invertibility.
            match def.apply(eps.inverse(), &dg) {
                Ok(back) => a1.observe(rel(gd.arrow_gap(&back, g), gd.norm(g)), || {
                    format!("inverse scale does not undo {:?} on {g:?}", eps.value())
                }),
                Err(e) => a1.fail(format!("inverse scale failed on {g:?}: {e}")),
            }
            // Action law against a second scale.
            for &mu in scales.iter().take(3) {
                let nested = def.apply(mu, &dg);
                let direct = def.apply(eps.compose(mu), g);
                match (nested, direct) {
                    (Ok(n), Ok(d)) => a1.observe(rel(gd.arrow_gap(&n, &d), gd.norm(g)), || {
                        format!(
                            "action law fails at ({:?}, {:?}) on {g:?}",
                            eps.value(),
                            mu.value()
                        )
                    }),
                    _ => a1.fail(format!("action law not evaluable on {g:?}")),
                }
            }
        }
    }

    // Identity-fixing on the bounded sample.
    let mut a2 = ctx.checker("deformation-identities", tol);
    for x in &set.objects {
        let e = gd.identity(x);
        for &eps in &scales {
            match def.apply(eps, &e) {
                Ok(out) => a2.observe(gd.arrow_gap(&out, &e), || {
                    format!("identity at {x:?} moved at scale {:?}", eps.value())
                }),
                Err(e2) => a2.fail(format!("identity not in domain at {x:?}: {e2}")),
            }
        }
    }
    // The net of sup-norms over the sample must decrease to zero along an
    // extended schedule; the residual is its final value plus any
    // monotonicity excess above the tolerance.
    let mut a2c = ctx.checker("deformation-contraction", tol.max(SCALAR_NET_TOL));
    {
        let deep = sched.extended(40);
        let floor = Sc::<D>::of(a2c.tol());
        let mut prev = Sc::<D>::infinity();
        let mut worst_increase = Sc::<D>::zero();
        let mut last = Sc::<D>::zero();
        let mut witness = String::new();
        for eps in deep.iter() {
            let mut sup = Sc::<D>::zero();
            for g in &set.arrows {
                match def.apply(eps, g) {
                    Ok(dg) => {
                        let n = gd.norm(&dg);
                        if n > sup {
                            sup = n;
                            witness = format!("{g:?}");
                        }
                    }
                    Err(_) => {}
                }
            }
            if sup > prev && sup > floor {
                worst_increase = worst_increase.max(sup - prev);
            }
            prev = sup;
            last = sup;
        }
        a2c.observe(last.max(worst_increase), || {
            format!("sup-norm net stalls at {last} (worst arrow {witness})")
        });
    }

    // Domain bookkeeping with the model witness: reachability of small
    // arrows through the inner bound, domain membership of deformed arrows,
    // the outer bound, and domains of difference arrows.
    let mut a0 = ctx.checker("deformation-domain", tol);
    let w = def.witness();
    // Contracted arrows survive in coordinates only while their offsets stay
    // representable; the chain holds for every scale mathematically but is
    // sampled where the representation can witness it.
    let domain_depth = 12.min(sched.len());
    let mut probes: Vec<<D::G as Groupoid>::Arrow> = set.arrows.clone();
    for g in set.arrows.iter().take(64) {
        for eps in sched.iter().take(domain_depth).step_by(3) {
            if let Ok(dg) = def.apply(eps, g) {
                probes.push(dg);
            }
        }
    }
    for g in &probes {
        for eps in sched.iter().take(domain_depth) {
            if eps.modulus() > w.eps_ceiling {
                continue;
            }
            if !def.in_domain(eps, g) || !def.in_domain(eps.inverse(), g) {
                continue;
            }
            let n = gd.norm(g);
            // Arrows no longer than |ε| pull back inside the inner bound.
            if n <= eps.modulus() {
                match def.apply(eps.inverse(), g) {
                    Ok(up) => a0.observe(
                        (gd.norm(&up) - w.inner_bound).max(Sc::<D>::zero()),
                        || format!("small arrow {g:?} pulls back past the inner bound"),
                    ),
                    Err(e) => a0.fail(format!("small arrow not reachable: {e}")),
                }
            }
            // Arrows within the inner bound land in the domain of the
            // inverse scale after deforming.
            if n <= w.inner_bound {
                match def.apply(eps, g) {
                    Ok(dg) => {
                        if !def.in_domain(eps.inverse(), &dg) {
                            a0.fail(format!(
                                "δ_ε g outside dom(ε⁻¹) for {g:?} at {:?}",
                                eps.value()
                            ));
                        }
                    }
                    Err(e) => a0.fail(format!("inner-bound arrow not deformable: {e}")),
                }
            }
            // Arrows of norm up to B·|ε| pull back inside the outer bound.
            if n <= w.outer_bound * eps.modulus() {
                if let Ok(up) = def.apply(eps.inverse(), g) {
                    a0.observe(
                        (gd.norm(&up) - w.outer_bound).max(Sc::<D>::zero()),
                        || format!("arrow {g:?} pulls back past the outer bound"),
                    );
                }
            }
            // Arrows within the outer bound stay inside the domain.
            if n <= w.outer_bound && !def.in_domain(eps, g) {
                a0.fail(format!("outer-bound arrow {g:?} left the domain"));
            }
        }
    }
    // Difference arrows of deformed pairs stay in the inverse domain.
    for (g, h) in &set.fiber_pairs {
        if gd.norm(g) > w.pair_radius || gd.norm(h) > w.pair_radius {
            continue;
        }
        for eps in sched.iter().take(domain_depth) {
            if eps.modulus() > w.eps_ceiling {
                continue;
            }
            let pair = def
                .apply(eps, g)
                .and_then(|dg| def.apply(eps, h).map(|dh| (dg, dh)));
            match pair {
                Ok((dg, dh)) => match gd.difference(&dg, &dh) {
                    Ok(rel_arrow) => {
                        if !def.in_domain(eps.inverse(), &rel_arrow) {
                            a0.fail(format!(
                                "difference of deformed pair ({g:?}, {h:?}) left dom(ε⁻¹)"
                            ));
                        }
                    }
                    Err(e) => a0.fail(format!("deformed pair not differencable: {e}")),
                },
                Err(e) => a0.fail(format!("pair not deformable: {e}")),
            }
        }
    }

    vec![a0.finish(), a1.finish(), a2.finish(), a2c.finish()]
}

/// Laws of the pair deformation on the double groupoid: it is itself a
/// deformation, the difference map is a norm-preserving morphism commuting
/// with the deformations, and the rescaled local structures fit together
/// (the local difference is the difference of the local composition, the
/// rescaled pair distance factors through it, and conjugating the
/// deformation by δ_μ returns the deformation).
pub fn double_groupoid_laws<D: Deformation>(
    def: &D,
    set: &SampleSet<<D::G as Groupoid>::Object, <D::G as Groupoid>::Arrow>,
    sched: &EpsSchedule<<D::G as Groupoid>::Scalar>,
    tol: f64,
    ctx: &CheckCtx,
) -> Vec<CheckReport>
where
    D::G: Clone,
{
    let gd = def.groupoid();
    let double = AlphaDouble::new(gd.clone());
    let scales: Vec<Scale<Sc<D>>> = sched.iter().take(4).collect();

    let mut morph = ctx.checker("double-projection", tol);
    for (g, h) in &set.fiber_pairs {
        let pair = FiberPair::new(g.clone(), h.clone());
        match double.project(&pair) {
            Ok(diff) => {
                // Norm preservation.
                morph.observe(
                    rel((double.norm(&pair) - gd.norm(&diff)).abs(), gd.norm(&diff)),
                    || format!("projection is not norm-preserving on ({g:?}, {h:?})"),
                );
                // Commutation with the deformations.
                for &eps in &scales {
                    let lifted = deform_pair(def, eps, g, h);
                    let moved = def.apply(eps, &diff);
                    match (lifted, moved) {
                        (Ok((dl, db)), Ok(md)) => {
                            let proj = gd.difference(&dl, &db);
                            match proj {
                                Ok(p) => morph.observe(
                                    rel(gd.arrow_gap(&p, &md), gd.norm(&md)),
                                    || {
                                        format!(
                                            "projection does not commute at {:?} on ({g:?}, {h:?})",
                                            eps.value()
                                        )
                                    },
                                ),
                                Err(e) => morph.fail(format!("projection failed: {e}")),
                            }
                        }
                        _ => morph.fail(format!("pair deformation failed on ({g:?}, {h:?})")),
                    }
                }
            }
            Err(e) => morph.fail(format!("pair rejected: {e}")),
        }
    }
    // Composition compatibility of the projection.
    for (g, h, l) in &set.fiber_triples {
        let p1 = FiberPair::new(g.clone(), h.clone());
        let p2 = FiberPair::new(h.clone(), l.clone());
        if let (Ok(d1), Ok(d2), Ok(p12)) = (
            double.project(&p1),
            double.project(&p2),
            double.compose(&p1, &p2),
        ) {
            if let (Ok(prod), Ok(d12)) = (gd.compose(&d1, &d2), double.project(&p12)) {
                morph.observe(rel(gd.arrow_gap(&prod, &d12), gd.norm(&d12)), || {
                    format!("projection not multiplicative on ({g:?}, {h:?}, {l:?})")
                });
            }
        }
    }

    // The pair deformation is a deformation of the double groupoid.
    let pair_set = double_sample_set(&double, set);
    let dd_owned = DoubleDeformationView { def, double: &double };
    let mut reports = deformation_laws(&dd_owned, &pair_set, sched, tol, &CheckCtx {
        model: format!("{}+double", ctx.model),
        seed: ctx.seed,
    });
    for r in reports.iter_mut() {
        r.check = format!("double-{}", r.check);
    }

    // Rescaled local structures.
    let mut local = ctx.checker("induced-structures", tol);
    for &mu in &scales {
        let ind = induce(def, mu);
        for (g, h) in &set.fiber_pairs {
            // Local difference = difference of the local composition.
            let via_ops = ind
                .inverse(h)
                .and_then(|ih| ind.compose(g, &ih));
            let direct = ind.difference(g, h);
            if let (Ok(a), Ok(b)) = (via_ops, direct) {
                local.observe(rel(gd.arrow_gap(&a, &b), gd.norm(&b)), || {
                    format!(
                        "local difference mismatch at {:?} on ({g:?}, {h:?})",
                        mu.value()
                    )
                });
            }
            // Rescaled pair distance factors through the local difference.
            if let (Ok(d1), Ok(diff)) = (ind.pair_distance(g, h), ind.difference(g, h)) {
                if let Ok(d2) = ind.norm(&diff) {
                    local.observe(rel((d1 - d2).abs(), d1), || {
                        format!(
                            "pair distance does not factor at {:?} on ({g:?}, {h:?})",
                            mu.value()
                        )
                    });
                }
            }
            // Projection of the transported pair deformation agrees with the
            // plain deformation of the local difference (the transported
            // deformation is the deformation itself, scales commute).
            for &eps in scales.iter().take(2) {
                if let (Ok((lead, base)), Ok(diff)) =
                    (ind.deform_pair(eps, g, h), ind.difference(g, h))
                {
                    if let (Ok(lhs), Ok(rhs)) =
                        (ind.difference(&lead, &base), def.apply(eps, &diff))
                    {
                        local.observe(rel(gd.arrow_gap(&lhs, &rhs), gd.norm(&rhs)), || {
                            format!(
                                "transported pair deformation incoherent at ({:?}, {:?})",
                                mu.value(),
                                eps.value()
                            )
                        });
                    }
                }
            }
        }
        // Conjugated deformation equals the deformation.
        for g in &set.arrows {
            for &eps in scales.iter().take(2) {
                let conj = def
                    .apply(mu, g)
                    .and_then(|dg| def.apply(eps, &dg))
                    .and_then(|ddg| def.apply(mu.inverse(), &ddg));
                let plain = def.apply(eps, g);
                if let (Ok(a), Ok(b)) = (conj, plain) {
                    local.observe(rel(gd.arrow_gap(&a, &b), gd.norm(&b)), || {
                        format!(
                            "conjugated deformation differs at ({:?}, {:?}) on {g:?}",
                            mu.value(),
                            eps.value()
                        )
                    });
                }
            }
        }
    }
    reports.insert(0, morph.finish());
    reports.push(local.finish());
    reports
}

/// Borrowed view of the pair deformation, avoiding a clone of the model.
struct DoubleDeformationView<'a, D: Deformation> {
    def: &'a D,
    double: &'a AlphaDouble<D::G>,
}

impl<'a, D: Deformation> Deformation for DoubleDeformationView<'a, D> {
    type G = AlphaDouble<D::G>;

    fn groupoid(&self) -> &Self::G {
        self.double
    }

    fn apply(
        &self,
        eps: Scale<<Self::G as Groupoid>::Scalar>,
        p: &<Self::G as Groupoid>::Arrow,
    ) -> Result<<Self::G as Groupoid>::Arrow> {
        let (lead, base) = deform_pair(self.def, eps, &p.lead, &p.base)?;
        Ok(FiberPair::new(lead, base))
    }

    fn in_domain(
        &self,
        eps: Scale<<Self::G as Groupoid>::Scalar>,
        p: &<Self::G as Groupoid>::Arrow,
    ) -> bool {
        match self.def.groupoid().difference(&p.lead, &p.base) {
            Ok(rel_arrow) => self.def.in_domain(eps, &rel_arrow),
            Err(_) => false,
        }
    }

    fn witness(&self) -> crate::deformation::DomainWitness<<Self::G as Groupoid>::Scalar> {
        self.def.witness()
    }
}

fn double_sample_set<G: NormedGroupoid>(
    _double: &AlphaDouble<G>,
    set: &SampleSet<G::Object, G::Arrow>,
) -> SampleSet<G::Arrow, FiberPair<G::Arrow>> {
    SampleSet {
        objects: set.arrows.clone(),
        arrows: set
            .fiber_pairs
            .iter()
            .map(|(g, h)| FiberPair::new(g.clone(), h.clone()))
            .collect(),
        composable_pairs: set
            .fiber_triples
            .iter()
            .map(|(g, h, l)| {
                (
                    FiberPair::new(g.clone(), h.clone()),
                    FiberPair::new(h.clone(), l.clone()),
                )
            })
            .collect(),
        composable_triples: Vec::new(),
        fiber_pairs: set
            .fiber_triples
            .iter()
            .map(|(g, h, l)| {
                (
                    FiberPair::new(g.clone(), l.clone()),
                    FiberPair::new(h.clone(), l.clone()),
                )
            })
            .collect(),
        fiber_triples: Vec::new(),
        fiber_quads: Vec::new(),
        translation_triples: Vec::new(),
    }
}

/// Identities tying the global approximate operations to their based forms:
/// translating both arguments by u⁻¹ turns the based difference and sum at u
/// into the global ones, and the basic fixed-point laws hold.
pub fn approx_op_laws<D: Deformation>(
    def: &D,
    set: &SampleSet<<D::G as Groupoid>::Object, <D::G as Groupoid>::Arrow>,
    sched: &EpsSchedule<<D::G as Groupoid>::Scalar>,
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    let gd = def.groupoid();
    let mut c = ctx.checker("approx-ops", tol);
    let scales: Vec<Scale<Sc<D>>> = sched.iter().take(4).collect();
    for (u, g, h) in &set.fiber_triples {
        for &eps in &scales {
            let hu = gd.compose(h, &gd.inverse(u));
            let gu = gd.compose(g, &gd.inverse(u));
            let (Ok(hu), Ok(gu)) = (hu, gu) else {
                c.fail(format!("translation failed on ({g:?}, {h:?}, {u:?})"));
                continue;
            };
            // Difference identity.
            let lhs = approx_diff(def, eps, &hu, &gu);
            let rhs = based_diff(def, eps, u, g, h)
                .and_then(|b| gd.compose(&b, &gd.inverse(u)));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => c.observe(rel(gd.arrow_gap(&a, &b), gd.norm(&b)), || {
                    format!(
                        "difference translation identity fails at {:?} on ({u:?}, {g:?}, {h:?})",
                        eps.value()
                    )
                }),
                _ => c.fail(format!("difference identity not evaluable on ({u:?}, {g:?}, {h:?})")),
            }
            // Sum identity.
            let lhs = approx_sum(def, eps, &hu, &gu);
            let rhs = based_sum(def, eps, u, g, h)
                .and_then(|b| gd.compose(&b, &gd.inverse(u)));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => c.observe(rel(gd.arrow_gap(&a, &b), gd.norm(&b)), || {
                    format!(
                        "sum translation identity fails at {:?} on ({u:?}, {g:?}, {h:?})",
                        eps.value()
                    )
                }),
                _ => c.fail(format!("sum identity not evaluable on ({u:?}, {g:?}, {h:?})")),
            }
        }
    }
    for g in &set.arrows {
        for &eps in &scales {
            // Approximate difference of equal arguments is the deformed arrow.
            if let (Ok(a), Ok(b)) = (approx_diff(def, eps, g, g), def.apply(eps, g)) {
                c.observe(rel(gd.arrow_gap(&a, &b), gd.norm(&b)), || {
                    format!("Δ(g, g) != δ g at {:?} on {g:?}", eps.value())
                });
            }
            // Source preservation.
            if let Ok(a) = approx_diff(def, eps, g, g) {
                c.observe(
                    rel(gd.object_gap(&gd.source(&a), &gd.source(g)), gd.norm(g)),
                    || format!("Δ moved the source on {g:?}"),
                );
            }
            // Sum against the identity returns the argument.
            let e = gd.identity(&gd.source(g));
            if let Ok(s) = approx_sum(def, eps, g, &e) {
                c.observe(rel(gd.arrow_gap(&s, g), gd.norm(g)), || {
                    format!("Σ(g, e) != g at {:?} on {g:?}", eps.value())
                });
            }
        }
    }
    c.finish()
}

/// Scaled-irq laws: idempotency, the two-sided cancellation between the
/// operation and its inverse, and compatibility of the scale indices.
pub fn gamma_irq_laws<Q: GammaIrq>(
    q: &Q,
    elems: &[Q::Elem],
    scales: &[Scale<Q::Scalar>],
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    let mut c = ctx.checker("irq-laws", tol);
    let size = |x: &Q::Elem, y: &Q::Elem| q.gap(x, y);
    for (i, x) in elems.iter().enumerate() {
        let y = &elems[(i + 1) % elems.len()];
        for &eps in scales {
            let at = q.at(eps);
            match at.circ(x, x) {
                Ok(v) => c.observe(rel(size(&v, x), size(x, y)), || {
                    format!("x∘x != x at {:?} on {x:?}", eps.value())
                }),
                Err(e) => c.fail(format!("∘ failed: {e}")),
            }
            match at.bullet(x, x) {
                Ok(v) => c.observe(rel(size(&v, x), size(x, y)), || {
                    format!("x•x != x at {:?} on {x:?}", eps.value())
                }),
                Err(e) => c.fail(format!("• failed: {e}")),
            }
            let p1a = at.circ(x, y).and_then(|v| at.bullet(x, &v));
            let p1b = at.bullet(x, y).and_then(|v| at.circ(x, &v));
            match (p1a, p1b) {
                (Ok(a), Ok(b)) => {
                    c.observe(rel(size(&a, y), size(x, y)), || {
                        format!("x•(x∘y) != y at {:?}", eps.value())
                    });
                    c.observe(rel(size(&b, y), size(x, y)), || {
                        format!("x∘(x•y) != y at {:?}", eps.value())
                    });
                }
                _ => c.fail("cancellation not evaluable".into()),
            }
            // Scale compatibility.
            for &mu in scales.iter().take(3) {
                let nested = q
                    .circ_at(mu, x, y)
                    .and_then(|v| q.circ_at(eps, x, &v));
                let direct = q.circ_at(eps.compose(mu), x, y);
                if let (Ok(a), Ok(b)) = (nested, direct) {
                    c.observe(rel(size(&a, &b), size(x, y)), || {
                        format!(
                            "scale law fails at ({:?}, {:?})",
                            eps.value(),
                            mu.value()
                        )
                    });
                }
            }
        }
    }
    c.finish()
}

/// Laws of the derived operations of a scaled irq: cancellation between the
/// based sum and difference, base-change for differences, inversion laws,
/// associativity with a moving base, neutrality of the base, and the
/// distributivity of a scaled translation over the based difference.
pub fn irq_derived_laws<Q: GammaIrq>(
    q: &Q,
    tuples: &[(Q::Elem, Q::Elem, Q::Elem, Q::Elem)],
    scale_pairs: &[(Scale<Q::Scalar>, Scale<Q::Scalar>)],
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    let mut c = ctx.checker("irq-derived", tol);
    for (x, u, v, w) in tuples {
        for &(eps, mu) in scale_pairs {
            let at = q.at(eps);
            let scale = q.gap(x, u) + q.gap(x, v) + q.gap(x, w);
            let mut obs = |res: Result<(Q::Elem, Q::Elem)>, law: &str| match res {
                Ok((a, b)) => c.observe(rel(q.gap(&a, &b), scale), || {
                    format!(
                        "{law} fails at eps={:?} mu={:?} on ({x:?}, {u:?}, {v:?}, {w:?})",
                        eps.value(),
                        mu.value()
                    )
                }),
                Err(e) => c.fail(format!("{law} not evaluable: {e}")),
            };
            // (u + v) − u = v.
            obs(
                at.sum(x, u, v).and_then(|s| at.diff(x, u, &s)).map(|r| (r, v.clone())),
                "sum-diff cancellation",
            );
            // u + (v − u) = v.
            obs(
                at.diff(x, u, v).and_then(|d| at.sum(x, u, &d)).map(|r| (r, v.clone())),
                "diff-sum cancellation",
            );
            // v − u computed after moving the base to x∘u.
            obs(
                (|| {
                    let lhs = at.diff(x, u, v)?;
                    let xu = at.circ(x, u)?;
                    let rhs = at.sum(&xu, &at.inv(x, u)?, v)?;
                    Ok((lhs, rhs))
                })(),
                "difference base change",
            );
            // Inverting twice with the moved base returns the element.
            obs(
                (|| {
                    let xu = at.circ(x, u)?;
                    let r = at.inv(&xu, &at.inv(x, u)?)?;
                    Ok((r, u.clone()))
                })(),
                "inverse involution",
            );
            // u + (v [+ at x∘u] w) = (u + v) + w.
            obs(
                (|| {
                    let xu = at.circ(x, u)?;
                    let lhs = at.sum(x, u, &at.sum(&xu, v, w)?)?;
                    let rhs = at.sum(x, &at.sum(x, u, v)?, w)?;
                    Ok((lhs, rhs))
                })(),
                "sum associativity",
            );
            // Inverse as difference toward the base.
            obs(
                (|| Ok((at.inv(x, u)?, at.diff(x, u, x)?)))(),
                "inverse as difference",
            );
            // Base is neutral for the sum.
            obs(
                (|| Ok((at.sum(x, x, u)?, u.clone())))(),
                "base neutrality",
            );
            // Scaled translations distribute over the based difference:
            // (x∘_μ v) −_ε (x∘_μ u), both based at x, equals
            // x ∘_μ (v −_ε u).
            obs(
                (|| {
                    let mu_u = q.circ_at(mu, x, u)?;
                    let mu_v = q.circ_at(mu, x, v)?;
                    let lhs = at.diff(x, &mu_u, &mu_v)?;
                    let rhs = q.circ_at(mu, x, &at.diff(x, u, v)?)?;
                    Ok((lhs, rhs))
                })(),
                "scaled distributivity",
            );
        }
    }
    c.finish()
}

/// The derived-operation laws for a plain irq through its integer iterates
/// (the scaled role is played by iteration counts).
pub fn iterate_irq_laws<Q: Irq>(
    q: &Q,
    tuples: &[(Q::Elem, Q::Elem, Q::Elem, Q::Elem)],
    tol: f64,
    ctx: &CheckCtx,
) -> CheckReport {
    use crate::irq::iterate;
    let mut c = ctx.checker("irq-derived", tol);
    let ks = [1i64, 2, -1, 3];
    for (x, u, v, w) in tuples {
        let scale = q.gap(x, u) + q.gap(x, v) + q.gap(x, w);
        for &k in &ks {
            let at = IterateView { q, k };
            let mut obs = |res: Result<(Q::Elem, Q::Elem)>, law: &str| match res {
                Ok((a, b)) => c.observe(rel(q.gap(&a, &b), scale), || {
                    format!("{law} fails at k={k} on ({x:?}, {u:?}, {v:?}, {w:?})")
                }),
                Err(e) => c.fail(format!("{law} not evaluable: {e}")),
            };
            obs(
                at.sum(x, u, v).and_then(|s| at.diff(x, u, &s)).map(|r| (r, v.clone())),
                "sum-diff cancellation",
            );
            obs(
                at.diff(x, u, v).and_then(|d| at.sum(x, u, &d)).map(|r| (r, v.clone())),
                "diff-sum cancellation",
            );
            obs(
                (|| {
                    let xu = at.circ(x, u)?;
                    let lhs = at.diff(x, u, v)?;
                    let rhs = at.sum(&xu, &at.inv(x, u)?, v)?;
                    Ok((lhs, rhs))
                })(),
                "difference base change",
            );
            obs(
                (|| {
                    let xu = at.circ(x, u)?;
                    Ok((at.inv(&xu, &at.inv(x, u)?)?, u.clone()))
                })(),
                "inverse involution",
            );
            obs(
                (|| {
                    let xu = at.circ(x, u)?;
                    let lhs = at.sum(x, u, &at.sum(&xu, v, w)?)?;
                    let rhs = at.sum(x, &at.sum(x, u, v)?, w)?;
                    Ok((lhs, rhs))
                })(),
                "sum associativity",
            );
            obs((|| Ok((at.inv(x, u)?, at.diff(x, u, x)?)))(), "inverse as difference");
            obs((|| Ok((at.sum(x, x, u)?, u.clone())))(), "base neutrality");
            // Iterated distributivity, the integer form of the scaled law.
            for &m in &ks {
                obs(
                    (|| {
                        let mu_u = iterate(q, m, IrqDir::Circ, x, u)?;
                        let mu_v = iterate(q, m, IrqDir::Circ, x, v)?;
                        let lhs = at.diff(x, &mu_u, &mu_v)?;
                        let rhs = iterate(q, m, IrqDir::Circ, x, &at.diff(x, u, v)?)?;
                        Ok((lhs, rhs))
                    })(),
                    "scaled distributivity",
                );
            }
        }
    }
    c.finish()
}

/// Irq built from the iterates of a plain irq at a fixed count.
struct IterateView<'a, Q: Irq> {
    q: &'a Q,
    k: i64,
}

impl<'a, Q: Irq> Irq for IterateView<'a, Q> {
    type Scalar = Q::Scalar;
    type Elem = Q::Elem;

    fn circ(&self, x: &Q::Elem, y: &Q::Elem) -> Result<Q::Elem> {
        crate::irq::iterate(self.q, self.k, IrqDir::Circ, x, y)
    }

    fn bullet(&self, x: &Q::Elem, y: &Q::Elem) -> Result<Q::Elem> {
        crate::irq::iterate(self.q, self.k, IrqDir::Bullet, x, y)
    }

    fn gap(&self, a: &Q::Elem, b: &Q::Elem) -> Q::Scalar {
        self.q.gap(a, b)
    }
}

/// Deterministic scale pairs for irq law checks: dyadic values mixed with a
/// few non-dyadic ones.
pub(crate) fn scale_pairs<S: Real>(seed: u64, count: usize) -> Vec<(Scale<S>, Scale<S>)> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|i| {
            let pick = |rng: &mut SplitMix64| {
                if rng.next_u64() % 2 == 0 {
                    S::of(0.5).powi(1 + (rng.next_u64() % 6) as i32)
                } else {
                    S::of(0.05) + S::of(0.9) * rng.next_unit::<S>()
                }
            };
            let _ = i;
            (
                Scale::new(pick(&mut rng)).expect("positive"),
                Scale::new(pick(&mut rng)).expect("positive"),
            )
        })
        .collect()
}

/// Fiber tuples (base, u, v, w) for irq checks over a deformation.
pub(crate) fn fiber_tuples<D: Deformation>(
    def: &D,
    cfg: &SampleConfig<<D::G as Groupoid>::Scalar>,
) -> Vec<(
    <D::G as Groupoid>::Arrow,
    <D::G as Groupoid>::Arrow,
    <D::G as Groupoid>::Arrow,
    <D::G as Groupoid>::Arrow,
)>
where
    D::G: Sampleable,
{
    let set = def.groupoid().sample_set(cfg);
    set.fiber_quads
}
