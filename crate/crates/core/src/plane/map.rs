use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, lcm, parse_rational, CyclotomicElement, GaloisElement};
use crate::linalg::{adjugate3, det3, mat_mul, Matrix};

/// An element of PGL3 over Q(zeta_N), stored with its first nonzero entry
/// (row-major) equal to 1. Points are column vectors and the map sends P to A*P.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMap {
    order: u32,
    entries: Matrix,
}

impl ProjMap {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.len() != 3 || entries.iter().any(|r| r.len() != 3) {
            return Err(Error::Parse("projective map needs a 3x3 matrix".into()));
        }
        let order = entries[0][0].order();
        if let Some(bad) = entries.iter().flatten().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.order(),
            });
        }
        if det3(&entries).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::normalized(order, entries))
    }

    fn normalized(order: u32, mut entries: Matrix) -> Self {
        let lead = entries
            .iter()
            .flatten()
            .find(|e| !e.is_zero())
            .expect("nonsingular")
            .clone();
        if !lead.is_one() {
            let inv = lead.inverse().unwrap();
            for e in entries.iter_mut().flatten() {
                if !e.is_zero() {
                    *e = &*e * &inv;
                }
            }
        }
        Self { order, entries }
    }

    pub fn from_ints(order: u32, rows: [[i64; 3]; 3]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|&v| CyclotomicElement::from_integer(order, v)).collect())
            .collect::<Result<Matrix>>()?;
        Self::new(m)
    }

    pub fn identity(order: u32) -> Self {
        Self::from_ints(order, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    pub fn diagonal(d: [CyclotomicElement; 3]) -> Result<Self> {
        let order = d[0].order();
        let z = || CyclotomicElement::zero(order).unwrap();
        let [a, b, c] = d;
        Self::new(vec![vec![a, z(), z()], vec![z(), b, z()], vec![z(), z(), c]])
    }

    /// The map (x0 : x1 : x2) -> (x_{p[0]} : x_{p[1]} : x_{p[2]}).
    pub fn permutation(order: u32, p: [usize; 3]) -> Result<Self> {
        let mut rows = [[0i64; 3]; 3];
        for (i, &j) in p.iter().enumerate() {
            rows[i][j] = 1;
        }
        Self::from_ints(order, rows)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicElement {
        &self.entries[i][j]
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let e = &self.entries[i][j];
                if i == j { e.is_one() } else { e.is_zero() }
            })
        })
    }

    /// Matrix product `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        Self::normalized(self.order, mat_mul(&self.entries, &other.entries))
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.order, adjugate3(&self.entries))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.order);
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        let m = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.galois(sigma)).collect())
            .collect::<Result<Matrix>>()?;
        Ok(Self::normalized(self.order, m))
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        let m = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.lift_to(target)).collect())
            .collect::<Result<Matrix>>()?;
        Ok(Self {
            order: target,
            entries: m,
        })
    }

    /// `Some(c)` if the representative matrix equals c * I.
    pub fn scalar_value(&self) -> Option<CyclotomicElement> {
        let c = &self.entries[0][0];
        let ok = (0..3).all(|i| {
            (0..3).all(|j| {
                let e = &self.entries[i][j];
                if i == j { e == c } else { e.is_zero() }
            })
        });
        ok.then(|| c.clone())
    }
}

/// Lifts a list of maps to the least common order.
pub fn lift_maps(maps: &[ProjMap], extra: u32) -> Result<(u32, Vec<ProjMap>)> {
    let n = maps.iter().fold(extra.max(1), |acc, m| lcm(acc, m.order()));
    let lifted = maps.iter().map(|m| m.lift_to(n)).collect::<Result<Vec<_>>>()?;
    Ok((n, lifted))
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let row = |r: &Vec<CyclotomicElement>| {
            let parts: Vec<String> = r
                .iter()
                .zip(names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| if c.is_one() { n.to_string() } else { format!("({c}){n}") })
                .collect();
            parts.join(" + ")
        };
        write!(
            f,
            "({} : {} : {})",
            row(&self.entries[0]),
            row(&self.entries[1]),
            row(&self.entries[2])
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    order: u32,
    entries: Vec<Vec<Vec<String>>>,
}

impl Serialize for ProjMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMap {
            order: self.order,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.coords().iter().map(format_rational).collect()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawMap::deserialize(d)?;
        let m = raw
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| {
                        let cs = e.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
                        CyclotomicElement::from_coords(raw.order, &cs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Matrix>>()
            .map_err(D::Error::custom)?;
        ProjMap::new(m).map_err(D::Error::custom)
    }
}
