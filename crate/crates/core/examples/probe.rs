use ngdef_core::analysis::*;
use ngdef_core::constructions::PairArrow;
use ngdef_core::models::{self, gauge, invert, product};

fn main() {
    let def = models::heisenberg::<f64>().unwrap();
    let sched = EpsSchedule::default();

    // Tangent sum at identity vs group product.
    let e = [0.0f64; 3];
    let u = [0.4, -0.3, 0.1];
    let v = [-0.2, 0.5, 0.05];
    let base = PairArrow::new(e, e);
    let est = tangent_op(
        &def,
        TangentOp::Sum,
        &base,
        &[PairArrow::new(u, e), PairArrow::new(v, e)],
        &sched,
        1e-6,
    )
    .unwrap();
    let want = product(&u, &v);
    let err = gauge(&product(&invert(&est.value.head), &want));
    let gap = (0..3).map(|i| (est.value.head[i] - want[i]).abs()).fold(0.0f64, f64::max);
    println!("identity-base sum gauge err = {err:e}, gap err = {gap:e}, converged {}", est.converged);

    // General base x.
    let x = [0.15, -0.25, 0.1];
    let basex = PairArrow::new(x, e);
    let est = tangent_op(
        &def,
        TangentOp::Sum,
        &basex,
        &[PairArrow::new(u, e), PairArrow::new(v, e)],
        &sched,
        1e-5,
    )
    .unwrap();
    let want = product(&x, &product(&product(&invert(&x), &u), &product(&invert(&x), &v)));
    let err = gauge(&product(&invert(&est.value.head), &want));
    let gap = (0..3).map(|i| (est.value.head[i] - want[i]).abs()).fold(0.0f64, f64::max);
    println!("general-base sum gauge err = {err:e}, gap err = {gap:e}, converged {}", est.converged);
    for (k, r) in est.residuals.iter().enumerate().step_by(3) {
        println!("k={k} resid={r:e}");
    }

    // Heisenberg cone check.
    let w = PairArrow::new(x, e);
    let rep = check_cone(
        &def,
        &w,
        &PairArrow::new(u, e),
        &PairArrow::new(v, e),
        ngdef_core::scaling::Scale::new(0.5).unwrap(),
        &sched,
        1e-8,
        &CheckCtx::new("heisenberg", 0),
    )
    .unwrap();
    for r in &rep { println!("heis cone {} pass={} viol={:e}", r.check, r.pass, r.max_violation); }

    // Heisenberg classify.
    let cls = classify_structure(
        &def,
        &ngdef_core::sample::SampleConfig::new(3, 24, 1.0),
        &sched,
        1e-9,
        &CheckCtx::new("heisenberg", 3),
    )
    .unwrap();
    println!("heisenberg verdict {:?}", cls.verdict);
    for r in &cls.reports {
        if !r.pass {
            println!("  FAIL {} viol={:e} wit={:?}", r.check, r.max_violation, r.witnesses.first());
        }
    }
}
