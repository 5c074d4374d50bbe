//! Exact arithmetic in cyclotomic fields Q(zeta_N).

mod element;
pub mod field;
mod galois;

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use element::{field_op, CyclotomicElement, FieldOp};
pub use field::{cyclotomic_polynomial, lcm, totient};
pub use galois::{galois_apply, galois_group, GaloisElement};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let r = Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("rational {s:?}: {e}")))?;
    Ok(r)
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    order: u32,
    coords: Vec<String>,
}

impl Serialize for CyclotomicElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawElement {
            order: self.order(),
            coords: self.coords().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawElement::deserialize(d)?;
        let coords = raw
            .coords
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CyclotomicElement::from_coords(raw.order, &coords).map_err(serde::de::Error::custom)
    }
}

/// Lifts every element to the least common cyclotomic order.
pub fn lift_all(elems: &[CyclotomicElement]) -> Result<Vec<CyclotomicElement>> {
    let n = elems.iter().fold(1, |acc, e| lcm(acc, e.order()));
    elems.iter().map(|e| e.lift_to(n)).collect()
}
