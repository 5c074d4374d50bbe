use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicElement, GaloisElement};

/// Exponent vector ordered graded-lexicographically (x0 > x1 > ...).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q(zeta_N). No stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    order: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, CyclotomicElement>,
}

pub fn default_variable_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

impl SparsePoly {
    pub fn zero(order: u32, nvars: usize) -> Self {
        Self {
            order,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CyclotomicElement) -> Self {
        let mut p = Self::zero(c.order(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(order: u32, nvars: usize, i: usize) -> Result<Self> {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(order, nvars, vec![(e, CyclotomicElement::one(order)?)])
    }

    pub fn from_terms(
        order: u32,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, CyclotomicElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(order, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableCountMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            if c.order() != order {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: c.order(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(order: u32, nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        let ts = terms
            .iter()
            .map(|(e, c)| Ok((e.to_vec(), CyclotomicElement::from_integer(order, *c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(order, nvars, ts)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: CyclotomicElement) {
        if c.is_zero() {
            return;
        }
        let m = Monomial(exps);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CyclotomicElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> CyclotomicElement {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| CyclotomicElement::zero(self.order).unwrap())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &CyclotomicElement)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other).expect("incompatible polynomials");
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.0.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other).expect("incompatible polynomials");
        let mut r = Self::zero(self.order, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &CyclotomicElement) -> Self {
        let mut r = Self::zero(self.order, self.nvars);
        for (m, a) in &self.terms {
            r.add_term(m.0.clone(), a * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, CyclotomicElement::one(self.order).unwrap());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut r = Self::zero(self.order, self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            r.add_term(e, c.scale(&BigRational::from_integer(k.into())));
        }
        r
    }

    /// Exact division by a polynomial known to divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check(d)?;
        let (dm, dc) = d.leading_term().ok_or(Error::DivisionByZero)?;
        let dinv = dc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.order, self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return Err(Error::InexactDivision);
            }
            let e: Vec<u32> = rm.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect();
            let c = rc * &dinv;
            let t = Self::from_terms(self.order, self.nvars, vec![(e, c)])?;
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[CyclotomicElement]) -> CyclotomicElement {
        let mut acc = CyclotomicElement::zero(self.order).unwrap();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes univariate polynomials for the variables.
    pub fn eval_uni(&self, args: &[UniPoly]) -> UniPoly {
        let mut powers: Vec<Vec<UniPoly>> = args
            .iter()
            .map(|a| vec![UniPoly::one(self.order).unwrap(), a.clone()])
            .collect();
        let mut acc = UniPoly::zero(self.order);
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&args[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Linear change of variables: x_i -> sum_j rows[i][j] * y_j, producing a
    /// polynomial in `rows[0].len()` variables.
    pub fn substitute_linear(&self, rows: &[Vec<CyclotomicElement>]) -> Result<Self> {
        if rows.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: rows.len(),
            });
        }
        let m = rows.first().map_or(0, Vec::len);
        let forms = rows
            .iter()
            .map(|row| {
                let ts = row.iter().enumerate().map(|(j, c)| {
                    let mut e = vec![0; m];
                    e[j] = 1;
                    (e, c.clone())
                });
                Self::from_terms(self.order, m, ts)
            })
            .collect::<Result<Vec<_>>>()?;
        let one = Self::constant(m, CyclotomicElement::one(self.order)?);
        let mut powers: Vec<Vec<Self>> = forms.iter().map(|f| vec![one.clone(), f.clone()]).collect();
        let mut acc = Self::zero(self.order, m);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Coefficients with respect to `var`: entry k is the coefficient of
    /// var^k, as a polynomial in the same variables with var absent.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.order, self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(e, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn map_coefficients(
        &self,
        order: u32,
        f: impl Fn(&CyclotomicElement) -> Result<CyclotomicElement>,
    ) -> Result<Self> {
        let mut r = Self::zero(order, self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.0.clone(), f(c)?);
        }
        Ok(r)
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        self.map_coefficients(target, |c| c.lift_to(target))
    }

    /// Univariate view of a polynomial in one variable.
    pub fn to_uni(&self) -> Result<UniPoly> {
        if self.nvars != 1 {
            return Err(Error::VariableCountMismatch {
                expected: 1,
                found: self.nvars,
            });
        }
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut cs = vec![CyclotomicElement::zero(self.order)?; deg + 1];
        for (m, c) in &self.terms {
            cs[m.0[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(self.order, cs))
    }

    pub fn from_uni(p: &UniPoly) -> Self {
        let mut r = Self::zero(p.order(), 1);
        for (k, c) in p.coeffs().iter().enumerate() {
            r.add_term(vec![k as u32], c.clone());
        }
        r
    }

    /// True if `self = c * other` for a nonzero constant c; returns c.
    pub fn ratio_to(&self, other: &Self) -> Option<CyclotomicElement> {
        if self.nvars != other.nvars || self.order != other.order {
            return None;
        }
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let (m, c) = other.leading_term()?;
        let lambda = &self.terms.get(m)?.clone() * &c.inverse().ok()?;
        for (m, c) in &other.terms {
            if self.terms.get(m)? != &(c * &lambda) {
                return None;
            }
        }
        Some(lambda)
    }
}

/// Applies sigma to every coefficient.
pub fn conjugate_poly(sigma: &GaloisElement, f: &SparsePoly) -> Result<SparsePoly> {
    f.map_coefficients(f.order(), |c| c.galois(sigma))
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = default_variable_names(self.nvars);
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, &e) in names.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> SparsePoly {
        SparsePoly::from_int_terms(4, 3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![2, 0, 0]);
        let b = Monomial(vec![1, 1, 0]);
        let c = Monomial(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn homogeneity_and_degree() {
        let f = fermat();
        assert!(f.is_homogeneous());
        assert_eq!(f.total_degree(), Some(4));
        let g = f.add(&SparsePoly::var(4, 3, 0).unwrap());
        assert!(!g.is_homogeneous());
    }

    #[test]
    fn exact_division() {
        let x = SparsePoly::var(1, 2, 0).unwrap();
        let y = SparsePoly::var(1, 2, 1).unwrap();
        let a = x.add(&y);
        let b = x.sub(&y).pow(2);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.add(&x).div_exact(&a).unwrap_err(), Error::InexactDivision);
    }

    #[test]
    fn derivative_of_fermat() {
        let fx = fermat().derivative(0);
        assert_eq!(fx, SparsePoly::from_int_terms(4, 3, &[(&[3, 0, 0], 4)]).unwrap());
    }

    #[test]
    fn ratio_detection() {
        let f = fermat();
        let two = CyclotomicElement::from_integer(4, 2).unwrap();
        assert_eq!(f.scale(&two).ratio_to(&f), Some(two));
        assert_eq!(f.ratio_to(&f.derivative(0)), None);
    }

    #[test]
    fn coefficients_in_variable() {
        // x^2 y + 3 x + y^2
        let f = SparsePoly::from_int_terms(1, 2, &[(&[2, 1], 1), (&[1, 0], 3), (&[0, 2], 1)]).unwrap();
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], SparsePoly::from_int_terms(1, 2, &[(&[0, 1], 1)]).unwrap());
        assert_eq!(cs[1], SparsePoly::from_int_terms(1, 2, &[(&[0, 0], 3)]).unwrap());
    }
}
