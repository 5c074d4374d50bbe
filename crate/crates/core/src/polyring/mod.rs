//! Polynomials over cyclotomic fields: sparse multivariate forms, dense
//! univariate polynomials with gcd/squarefree machinery, and resultants.

mod sparse;
mod uni;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use sparse::{conjugate_poly, default_variable_names, Monomial, SparsePoly};
pub use uni::UniPoly;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, CyclotomicElement};

/// `F(A * (x, y, z)^t)`: each variable x_i is replaced by row i of `matrix`
/// applied to the variables. With this convention
/// `substitute_projective(F, A*B) == substitute_projective(substitute_projective(F, A), B)`.
pub fn substitute_projective(f: &SparsePoly, matrix: &[Vec<CyclotomicElement>]) -> Result<SparsePoly> {
    if f.nvars() != matrix.len() {
        return Err(Error::VariableCountMismatch {
            expected: f.nvars(),
            found: matrix.len(),
        });
    }
    f.substitute_linear(matrix)
}

/// A nonzero homogeneous polynomial in two variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm(SparsePoly);

impl BinaryForm {
    pub fn new(p: SparsePoly) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::VariableCountMismatch {
                expected: 2,
                found: p.nvars(),
            });
        }
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Self(p))
    }

    pub fn degree(&self) -> u32 {
        self.0.total_degree().unwrap()
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.0
    }

    /// f(x, 1) as a univariate polynomial in x.
    pub fn dehomogenize(&self) -> UniPoly {
        let d = self.degree() as usize;
        let mut cs = vec![CyclotomicElement::zero(self.0.order()).unwrap(); d + 1];
        for (m, c) in self.0.terms() {
            cs[m.0[0] as usize] = c.clone();
        }
        UniPoly::new(self.0.order(), cs)
    }

    /// Number of distinct points of P^1 where the form vanishes.
    pub fn distinct_root_count(&self) -> usize {
        let p = self.dehomogenize();
        let finite = p.distinct_root_count().expect("nonzero form");
        let at_infinity = p.degree().unwrap_or(0) < self.degree() as usize;
        finite + usize::from(at_infinity)
    }
}

pub fn distinct_root_count(f: &SparsePoly) -> Result<usize> {
    Ok(BinaryForm::new(f.clone())?.distinct_root_count())
}

/// Determinant by fraction-free (Bareiss) elimination; entries are
/// polynomials and every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<SparsePoly>>, order: u32, nvars: usize) -> Result<SparsePoly> {
    let n = m.len();
    let one = SparsePoly::constant(nvars, CyclotomicElement::one(order)?);
    if n == 0 {
        return Ok(one);
    }
    let mut prev = one;
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(SparsePoly::zero(order, nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Sylvester resultant of `f` and `g` with respect to variable `var`.
/// The result lives in the same variables with `var` absent.
pub fn resultant(f: &SparsePoly, g: &SparsePoly, var: usize) -> Result<SparsePoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.nvars() != g.nvars() {
        return Err(Error::VariableCountMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    let order = f.order();
    let nvars = f.nvars();
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let zero = SparsePoly::zero(order, nvars);
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of f, then m shifted copies of g; highest degree first
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fc.iter().enumerate() {
            row[i + m - k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gc.iter().enumerate() {
            row[i + n - k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows, order, nvars)
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exponents: Vec<u32>,
    coefficient: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    order: u32,
    variables: Vec<String>,
    terms: Vec<RawTerm>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPoly {
            order: self.order(),
            variables: default_variable_names(self.nvars()),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| RawTerm {
                    exponents: m.0.clone(),
                    coefficient: c.coords().iter().map(format_rational).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawPoly::deserialize(d)?;
        let nvars = raw.variables.len();
        let terms = raw
            .terms
            .iter()
            .map(|t| {
                let coords = t
                    .coefficient
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>>>()?;
                Ok((t.exponents.clone(), CyclotomicElement::from_coords(raw.order, &coords)?))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SparsePoly::from_terms(raw.order, nvars, terms).map_err(D::Error::custom)
    }
}
