use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicElement, GaloisElement};

/// Dense univariate polynomial over Q(zeta_N), lowest degree first, without
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    order: u32,
    coeffs: Vec<CyclotomicElement>,
}

impl UniPoly {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: CyclotomicElement) -> Self {
        Self::new(c.order(), vec![c])
    }

    pub fn one(order: u32) -> Result<Self> {
        Ok(Self::constant(CyclotomicElement::one(order)?))
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: CyclotomicElement, k: usize) -> Self {
        let order = c.order();
        let mut coeffs = vec![CyclotomicElement::zero(order).unwrap(); k];
        coeffs.push(c);
        Self::new(order, coeffs)
    }

    pub fn x(order: u32) -> Result<Self> {
        Ok(Self::monomial(CyclotomicElement::one(order)?, 1))
    }

    pub fn new(order: u32, mut coeffs: Vec<CyclotomicElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.order() == order));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { order, coeffs }
    }

    /// Builds from integer coefficients, lowest degree first.
    pub fn from_ints(order: u32, coeffs: &[i64]) -> Result<Self> {
        let cs = coeffs
            .iter()
            .map(|&c| CyclotomicElement::from_integer(order, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(order, cs))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[CyclotomicElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CyclotomicElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CyclotomicElement::zero(self.order).unwrap())
    }

    pub fn leading(&self) -> Option<&CyclotomicElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::new(self.order, cs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let mut cs =
            vec![CyclotomicElement::zero(self.order).unwrap(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    cs[i + j] += &(a * b);
                }
            }
        }
        Self::new(self.order, cs)
    }

    pub fn scale(&self, c: &CyclotomicElement) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order).unwrap();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&BigRational::from_integer((k as i64).into())))
            .collect();
        Self::new(self.order, cs)
    }

    pub fn eval(&self, x: &CyclotomicElement) -> CyclotomicElement {
        let mut acc = CyclotomicElement::zero(self.order).unwrap();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Composition `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Euclidean division; fails when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?;
        let inv = dl.inverse()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.order), self.clone()));
        }
        let mut quot = vec![CyclotomicElement::zero(self.order).unwrap(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &(&c * dj);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.order, quot), Self::new(self.order, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a
    }

    /// f / gcd(f, f'), made monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_exact(&g)?.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_root_count(&self) -> Result<usize> {
        Ok(self.squarefree_part()?.degree().unwrap_or(0))
    }

    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        let cs = self
            .coeffs
            .iter()
            .map(|c| c.galois(sigma))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.order, cs))
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        let cs = self
            .coeffs
            .iter()
            .map(|c| c.lift_to(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, cs))
    }

    /// True if `self = c * other` for some nonzero constant c.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
