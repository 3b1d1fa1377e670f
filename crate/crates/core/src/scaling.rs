//! Scaling group: multiplicative parameters ε with a modulus |ε| ∈ (0, ∞).
//!
//! Two groups are built in: the positive reals under multiplication (the
//! modulus is the identity) and the discrete subgroups {λᵏ : k ∈ ℤ} produced
//! by [`PowerScaling`].

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A scaling parameter. Invariant: the stored value is finite and positive.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Scale<S>(S);

impl<S: Real> Scale<S> {
    pub fn new(value: S) -> Result<Self> {
        if value.is_finite() && value > S::zero() {
            Ok(Scale(value))
        } else {
            Err(Error::InvalidConfig(format!(
                "scale must be finite and positive, got {value}"
            )))
        }
    }

    /// Neutral element e with |e| = 1.
    pub fn one() -> Self {
        Scale(S::one())
    }

    pub fn value(self) -> S {
        self.0
    }

    /// Group morphism |·| into (0, ∞); the identity for this realization.
    pub fn modulus(self) -> S {
        self.0
    }

    pub fn compose(self, other: Self) -> Self {
        Scale(self.0 * other.0)
    }

    pub fn inverse(self) -> Self {
        Scale(S::one() / self.0)
    }

    pub fn pow(self, k: i32) -> Self {
        Scale(self.0.powi(k))
    }

    pub fn is_one(self) -> bool {
        self.0 == S::one()
    }
}

/// Discrete scaling subgroup {λᵏ : k ∈ ℤ} for a base λ ∈ (0, 1).
#[derive(Clone, Copy, Debug)]
pub struct PowerScaling<S> {
    base: S,
}

impl<S: Real> PowerScaling<S> {
    pub fn new(base: S) -> Result<Self> {
        if base > S::zero() && base < S::one() {
            Ok(PowerScaling { base })
        } else {
            Err(Error::InvalidConfig(format!(
                "power-scaling base must lie in (0, 1), got {base}"
            )))
        }
    }

    /// The default λ = 1/2 subgroup.
    pub fn dyadic() -> Self {
        PowerScaling {
            base: S::of(0.5),
        }
    }

    pub fn base(&self) -> S {
        self.base
    }

    pub fn element(&self, k: i32) -> Scale<S> {
        Scale(self.base.powi(k))
    }
}
