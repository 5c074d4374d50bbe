use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::element::CyclotomicElement;
use crate::error::{Error, Result};

/// The automorphism zeta_N -> zeta_N^k of Q(zeta_N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisElement {
    order: u32,
    exponent: u32,
}

impl GaloisElement {
    pub fn new(order: u32, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        let k = exponent.rem_euclid(order as i64);
        if (k as u64).gcd(&(order as u64)) != 1 && order != 1 {
            return Err(Error::InvalidExponent { exponent, order });
        }
        Ok(Self {
            order,
            exponent: k as u32,
        })
    }

    pub fn identity(order: u32) -> Self {
        Self {
            order,
            exponent: 1 % order.max(1),
        }
    }

    /// Complex conjugation, k = -1.
    pub fn conjugation(order: u32) -> Self {
        Self::new(order, -1).expect("-1 is always a unit")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 1 % self.order
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let k = (self.exponent as u64 * other.exponent as u64) % self.order as u64;
        Ok(Self {
            order: self.order,
            exponent: k as u32,
        })
    }

    /// The same automorphism's restriction-compatible extension to Q(zeta_M),
    /// picking the smallest exponent that is a unit mod M and agrees mod N.
    pub fn lift_to(&self, target: u32) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::NotASubfield {
                from: self.order,
                to: target,
            });
        }
        let mut k = self.exponent as u64;
        while (k % target as u64).gcd(&(target as u64)) != 1 {
            k += self.order as u64;
        }
        Self::new(target, k as i64)
    }

    pub fn apply(&self, a: &CyclotomicElement) -> Result<CyclotomicElement> {
        a.galois(self)
    }
}

impl<'de> Deserialize<'de> for GaloisElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            exponent: i64,
        }
        let raw = Raw::deserialize(d)?;
        GaloisElement::new(raw.order, raw.exponent).map_err(serde::de::Error::custom)
    }
}

/// Applies `sigma` to the coefficients.
pub fn galois_apply(sigma: &GaloisElement, a: &CyclotomicElement) -> Result<CyclotomicElement> {
    a.galois(sigma)
}

/// All automorphisms of Q(zeta_N), ordered by exponent.
pub fn galois_group(order: u32) -> Vec<GaloisElement> {
    (0..order.max(1))
        .filter_map(|k| GaloisElement::new(order, k as i64).ok())
        .collect()
}
