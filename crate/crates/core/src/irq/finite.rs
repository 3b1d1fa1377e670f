//! Finite irqs loaded from operation tables.
//!
//! JSON schema: `{ "carrier": [...], "circ": [[...]], "bullet": [[...]] }`
//! with row-major tables whose entries are carrier values; row index is the
//! first operand. Both laws are validated exhaustively at load for carriers
//! of at most 64 elements, on a deterministic sample beyond that.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::sample::SplitMix64;

use super::Irq;

#[derive(Deserialize)]
struct FiniteIrqDoc {
    carrier: Vec<serde_json::Value>,
    circ: Vec<Vec<serde_json::Value>>,
    bullet: Vec<Vec<serde_json::Value>>,
}

#[derive(Clone, Debug)]
pub struct FiniteIrq {
    labels: Vec<String>,
    circ: Vec<Vec<usize>>,
    bullet: Vec<Vec<usize>>,
}

const EXHAUSTIVE_LIMIT: usize = 64;

impl FiniteIrq {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FiniteIrqDoc = serde_json::from_str(text)?;
        let labels: Vec<String> = doc.carrier.iter().map(value_label).collect();
        if labels.is_empty() {
            return Err(Error::InvalidModelSpec("empty carrier".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidModelSpec(format!(
                    "duplicate carrier element {l}"
                )));
            }
        }
        let parse_table = |name: &str, rows: &[Vec<serde_json::Value>]| -> Result<Vec<Vec<usize>>> {
            if rows.len() != labels.len() {
                return Err(Error::InvalidModelSpec(format!(
                    "{name} table must have {} rows, found {}",
                    labels.len(),
                    rows.len()
                )));
            }
            rows.iter()
                .map(|row| {
                    if row.len() != labels.len() {
                        return Err(Error::InvalidModelSpec(format!(
                            "{name} table rows must have {} entries",
                            labels.len()
                        )));
                    }
                    row.iter()
                        .map(|v| {
                            let l = value_label(v);
                            index.get(&l).copied().ok_or_else(|| {
                                Error::InvalidModelSpec(format!(
                                    "{name} table mentions unknown element {l}"
                                ))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let irq = FiniteIrq {
            circ: parse_table("circ", &doc.circ)?,
            bullet: parse_table("bullet", &doc.bullet)?,
            labels,
        };
        irq.validate()?;
        Ok(irq)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn carrier(&self) -> Vec<usize> {
        (0..self.labels.len()).collect()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let check = |x: usize, y: usize| -> Result<()> {
            let c = self.circ[x][y];
            let b = self.bullet[x][y];
            if self.circ[x][b] != y || self.bullet[x][c] != y {
                return Err(Error::InvalidModelSpec(format!(
                    "cancellation law fails at ({}, {})",
                    self.labels[x], self.labels[y]
                )));
            }
            if x == y && (c != x || b != x) {
                return Err(Error::InvalidModelSpec(format!(
                    "idempotency fails at {}",
                    self.labels[x]
                )));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    check(x, y)?;
                }
            }
        } else {
            let mut rng = SplitMix64::new(0xF1D0);
            for _ in 0..(EXHAUSTIVE_LIMIT * EXHAUSTIVE_LIMIT) {
                check(rng.next_index(n), rng.next_index(n))?;
            }
            for x in 0..n {
                check(x, x)?;
            }
        }
        Ok(())
    }
}

fn value_label(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Irq for FiniteIrq {
    type Scalar = f64;
    type Elem = usize;

    fn circ(&self, x: &usize, y: &usize) -> Result<usize> {
        Ok(self.circ[*x][*y])
    }

    fn bullet(&self, x: &usize, y: &usize) -> Result<usize> {
        Ok(self.bullet[*x][*y])
    }

    fn gap(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irq::{iterate, IrqDir};

    /// x ∘ y = 3y − 2x and x • y = 2y + 4x over the integers mod 5; the
    /// affine scaled operation with factor 3 and its inverse.
    pub(crate) fn affine_mod5_json() -> String {
        let n = 5i64;
        let carrier: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table = |f: &dyn Fn(i64, i64) -> i64| -> Vec<Vec<String>> {
            (0..n)
                .map(|x| (0..n).map(|y| (f(x, y).rem_euclid(n)).to_string()).collect())
                .collect()
        };
        serde_json::json!({
            "carrier": carrier,
            "circ": table(&|x, y| 3 * y - 2 * x),
            "bullet": table(&|x, y| 2 * y + 4 * x),
        })
        .to_string()
    }

    #[test]
    fn loads_and_validates_the_affine_table() {
        let q = FiniteIrq::from_json(&affine_mod5_json()).unwrap();
        assert_eq!(q.len(), 5);
        assert_eq!(q.circ(&0, &1).unwrap(), 3);
        assert_eq!(q.bullet(&0, &3).unwrap(), 1);
    }

    #[test]
    fn rejects_broken_tables() {
        // Swap one entry so cancellation fails.
        let mut doc: serde_json::Value =
            serde_json::from_str(&affine_mod5_json()).unwrap();
        doc["circ"][0][1] = serde_json::json!("0");
        let err = FiniteIrq::from_json(&doc.to_string()).unwrap_err();
        assert!(matches!(err, Error::InvalidModelSpec(_)));
        // Unknown element in a table.
        let mut doc: serde_json::Value =
            serde_json::from_str(&affine_mod5_json()).unwrap();
        doc["bullet"][2][2] = serde_json::json!("9");
        assert!(FiniteIrq::from_json(&doc.to_string()).is_err());
    }

    #[test]
    fn iterates_stay_inside_and_invert() {
        let q = FiniteIrq::from_json(&affine_mod5_json()).unwrap();
        for x in q.carrier() {
            for y in q.carrier() {
                let forward = iterate(&q, 3, IrqDir::Circ, &x, &y).unwrap();
                let back = iterate(&q, -3, IrqDir::Circ, &x, &forward).unwrap();
                assert_eq!(back, y);
            }
        }
    }
}
