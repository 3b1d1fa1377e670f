//! Structured outcome of a property suite. Reports are the unit the
//! command-line front end serializes; the invariant `pass ⇔ max_violation ≤
//! tol` is enforced at construction.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub model: String,
    pub samples: usize,
    pub seed: u64,
    pub max_violation: f64,
    pub tol: f64,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Accumulator for one check: feeds observations in, keeps the worst
/// violations and their witnesses.
pub struct Checker {
    check: String,
    model: String,
    seed: u64,
    tol: f64,
    samples: usize,
    max_violation: f64,
    witnesses: Vec<(f64, String)>,
}

const MAX_WITNESSES: usize = 3;

impl Checker {
    pub fn new(check: impl Into<String>, model: impl Into<String>, seed: u64, tol: f64) -> Self {
        Checker {
            check: check.into(),
            model: model.into(),
            seed,
            tol,
            samples: 0,
            max_violation: 0.0,
            witnesses: Vec::new(),
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Record one observation. The witness closure is only evaluated when
    /// the violation exceeds the tolerance.
    pub fn observe<S: Real>(&mut self, violation: S, witness: impl FnOnce() -> String) {
        self.samples += 1;
        let v = violation.as_f64();
        let v = if v.is_nan() { f64::INFINITY } else { v };
        self.max_violation = self.max_violation.max(v);
        if v > self.tol {
            self.witnesses.push((v, witness()));
            self.witnesses
                .sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
            self.witnesses.truncate(MAX_WITNESSES);
        }
    }

    /// Record a hard failure (an error where a value was expected).
    pub fn fail(&mut self, witness: String) {
        self.samples += 1;
        self.max_violation = f64::INFINITY;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push((f64::INFINITY, witness));
        }
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            pass: self.max_violation <= self.tol,
            check: self.check,
            model: self.model,
            samples: self.samples,
            seed: self.seed,
            max_violation: self.max_violation,
            tol: self.tol,
            witnesses: self.witnesses.into_iter().map(|(_, w)| w).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_below_tolerance() {
        let mut c = Checker::new("demo", "m", 1, 1e-9);
        c.observe(1e-12, || unreachable!("below tolerance"));
        let r = c.finish();
        assert!(r.pass);
        assert!(r.witnesses.is_empty());

        let mut c = Checker::new("demo", "m", 1, 1e-9);
        c.observe(1e-3, || "bad".into());
        let r = c.finish();
        assert!(!r.pass);
        assert_eq!(r.witnesses, vec!["bad".to_string()]);
        assert_eq!(r.samples, 1);
    }

    #[test]
    fn keeps_the_worst_witnesses() {
        let mut c = Checker::new("demo", "m", 1, 0.0);
        for v in [0.1, 0.5, 0.3, 0.9, 0.2] {
            c.observe(v, || format!("{v}"));
        }
        let r = c.finish();
        assert_eq!(r.max_violation, 0.9);
        assert_eq!(r.witnesses, vec!["0.9", "0.5", "0.3"]);
    }

    #[test]
    fn serializes_stably() {
        let r = Checker::new("a", "b", 7, 1e-6).finish();
        let s = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
