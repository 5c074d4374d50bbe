use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{field, FieldData};
use super::galois::GaloisElement;
use crate::error::{Error, Result};

/// An element of Q(zeta_N) written in the power basis 1, zeta, ..., zeta^(phi(N)-1).
///
/// Internally the coordinates share one positive denominator and the
/// representation is kept reduced, so two elements of the same order are
/// equal exactly when their coordinates are.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<FieldData>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// The four field operations accepted by [`field_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation; fails on mismatched orders or a zero divisor.
pub fn field_op(
    a: &CyclotomicElement,
    b: &CyclotomicElement,
    op: FieldOp,
) -> Result<CyclotomicElement> {
    a.check_order(b)?;
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl CyclotomicElement {
    pub fn zero(order: u32) -> Result<Self> {
        let field = field(order)?;
        let num = vec![BigInt::zero(); field.degree];
        Ok(Self {
            field,
            num,
            den: BigInt::one(),
        })
    }

    pub fn one(order: u32) -> Result<Self> {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Result<Self> {
        Self::from_rational(order, &BigRational::from_integer(value.into()))
    }

    pub fn from_rational(order: u32, value: &BigRational) -> Result<Self> {
        let mut z = Self::zero(order)?;
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        Ok(z)
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Result<Self> {
        let mut z = Self::zero(order)?;
        let e = k.rem_euclid(order as i64) as usize;
        z.num = z.field.powers[e].clone();
        Ok(z)
    }

    pub fn zeta(order: u32) -> Result<Self> {
        Self::zeta_pow(order, 1)
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coords(order: u32, coords: &[BigRational]) -> Result<Self> {
        let field = field(order)?;
        if coords.len() != field.degree {
            return Err(Error::Parse(format!(
                "expected {} coordinates for order {order}, got {}",
                field.degree,
                coords.len()
            )));
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut z = Self { field, num, den };
        z.normalize();
        Ok(z)
    }

    /// Element with coordinates given as an arbitrary-length exponent list
    /// sum c_i zeta^i (exponents taken mod N).
    pub fn from_exponent_sum(order: u32, terms: &[(i64, BigRational)]) -> Result<Self> {
        let mut acc = Self::zero(order)?;
        for (e, c) in terms {
            let t = Self::zeta_pow(order, *e)?.scale(c);
            acc += &t;
        }
        Ok(acc)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            self.den /= &g;
            for n in &mut self.num {
                *n /= &g;
            }
        }
    }

    pub(crate) fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut r = Self {
            field: self.field.clone(),
            num: self.num.iter().map(|n| n * c.numer()).collect(),
            den: &self.den * c.denom(),
        };
        r.normalize();
        r
    }

    /// Reduces a coefficient vector indexed by zeta-exponent into the power basis.
    fn reduce(field: &Arc<FieldData>, wide: Vec<BigInt>, den: BigInt) -> Self {
        let d = field.degree;
        let mut num: Vec<BigInt> = Vec::with_capacity(d);
        let mut it = wide.into_iter();
        for _ in 0..d {
            num.push(it.next().unwrap_or_default());
        }
        for (k, c) in it.enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in field.powers[k + d].iter().enumerate() {
                if !p.is_zero() {
                    num[i] += &c * p;
                }
            }
        }
        let mut r = Self {
            field: field.clone(),
            num,
            den,
        };
        r.normalize();
        r
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Self::from_rational(self.order(), &q.recip());
        }
        // a^-1 = (prod of the other conjugates) / norm(a)
        let n = self.order();
        let mut cofactor = Self::one(n)?;
        for &k in self.field.units.iter().filter(|&&k| k != 1 % n) {
            cofactor = &cofactor * &self.galois_unchecked(k);
        }
        let norm = (self * &cofactor)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order()).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    pub(crate) fn galois_unchecked(&self, k: u32) -> Self {
        let n = self.order() as usize;
        let mut wide = vec![BigInt::zero(); n.max(self.degree())];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i * k as usize) % n;
            if e < self.degree() {
                wide[e] += c;
            } else {
                for (j, p) in self.field.powers[e].iter().enumerate() {
                    if !p.is_zero() {
                        wide[j] += c * p;
                    }
                }
            }
        }
        wide.truncate(self.degree());
        let mut r = Self {
            field: self.field.clone(),
            num: wide,
            den: self.den.clone(),
        };
        r.normalize();
        r
    }

    /// Applies zeta -> zeta^k.
    pub fn galois(&self, sigma: &GaloisElement) -> Result<Self> {
        if sigma.order() != self.order() {
            return Err(Error::OrderMismatch {
                left: sigma.order(),
                right: self.order(),
            });
        }
        Ok(self.galois_unchecked(sigma.exponent()))
    }

    /// Complex conjugate, i.e. the automorphism zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let n = self.order();
        self.galois_unchecked((n - 1) % n.max(1))
    }

    /// Re-expresses the element in Q(zeta_M) via zeta_N = zeta_M^(M/N).
    pub fn lift_to(&self, target: u32) -> Result<Self> {
        let n = self.order();
        if target == 0 || !target.is_multiple_of(n) {
            return Err(Error::NotASubfield { from: n, to: target });
        }
        if target == n {
            return Ok(self.clone());
        }
        let f = field(target)?;
        let step = (target / n) as usize;
        let mut wide = vec![BigInt::zero(); (target as usize).max(f.degree)];
        for (i, c) in self.num.iter().enumerate() {
            wide[(i * step) % target as usize] += c;
        }
        Ok(Self::reduce(&f, wide, self.den.clone()))
    }

    /// `|self| == |other|` decided exactly as self * conj(self) == other * conj(other).
    pub fn same_abs(&self, other: &Self) -> bool {
        self * &self.conj() == other * &other.conj()
    }

    /// If the element equals +-zeta_N^j, returns its multiplicative order.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let n = self.order();
        if !self.den.is_one() {
            return None;
        }
        let neg = -self;
        for j in 0..n {
            let z = Self::zeta_pow(n, j as i64).unwrap();
            if z == *self {
                return Some(n / (j as u64).gcd(&(n as u64)) as u32);
            }
            if z == neg {
                // -zeta^j = zeta_{2N}^{N + 2j}
                let m = 2 * n as u64;
                let e = n as u64 + 2 * j as u64;
                return Some((m / e.gcd(&m)) as u32);
            }
        }
        None
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CyclotomicElement {}

impl Hash for CyclotomicElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = if first {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let a = c.abs();
            write!(f, "{sep}")?;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.order())?;
                    } else {
                        write!(f, "z{}^{i}", self.order())?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        let num = if self.den == rhs.den {
            self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect()
        } else {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| a * &rhs.den + b * &self.den)
                .collect()
        };
        let den = if self.den == rhs.den {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        let mut r = CyclotomicElement {
            field: self.field.clone(),
            num,
            den,
        };
        r.normalize();
        r
    }
}

impl<'a> Sub<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        if self.is_zero() || rhs.is_zero() {
            return CyclotomicElement::zero(self.order()).unwrap();
        }
        let d = self.degree();
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        CyclotomicElement::reduce(&self.field, wide, &self.den * &rhs.den)
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            field: self.field.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $m(self, rhs: CyclotomicElement) -> CyclotomicElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $m(self, rhs: &CyclotomicElement) -> CyclotomicElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CyclotomicElement> for CyclotomicElement {
    fn add_assign(&mut self, rhs: &CyclotomicElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CyclotomicElement> for CyclotomicElement {
    fn sub_assign(&mut self, rhs: &CyclotomicElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CyclotomicElement> for CyclotomicElement {
    fn mul_assign(&mut self, rhs: &CyclotomicElement) {
        *self = &*self * rhs;
    }
}
