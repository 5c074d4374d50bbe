//! Plane curves in P^2, projective maps, automorphism and smoothness checks.

mod map;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use map::{lift_maps, ProjMap};

use crate::error::{Error, Result};
use crate::exactnum::{lcm, CyclotomicElement, GaloisElement};
use crate::linalg::{rank, Matrix};
use crate::polyring::{conjugate_poly, substitute_projective, SparsePoly};

/// A plane curve F(x, y, z) = 0 with F homogeneous of degree at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: SparsePoly,
}

impl PlaneCurve {
    pub fn new(f: SparsePoly) -> Result<Self> {
        if f.nvars() != 3 {
            return Err(Error::VariableCountMismatch {
                expected: 3,
                found: f.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = f.total_degree().unwrap();
        if d < 3 {
            return Err(Error::DegreeTooSmall(d));
        }
        Ok(Self { f })
    }

    pub fn equation(&self) -> &SparsePoly {
        &self.f
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }

    pub fn degree(&self) -> u32 {
        self.f.total_degree().unwrap()
    }

    /// Genus of a smooth plane curve of this degree.
    pub fn genus(&self) -> u32 {
        let d = self.degree();
        (d - 1) * (d - 2) / 2
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        Ok(Self {
            f: self.f.lift_to(target)?,
        })
    }

    pub fn contains(&self, p: &[CyclotomicElement]) -> bool {
        self.f.eval(p).is_zero()
    }
}

impl Serialize for PlaneCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.f.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlaneCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = SparsePoly::deserialize(d)?;
        PlaneCurve::new(f).map_err(serde::de::Error::custom)
    }
}

fn common(x: &PlaneCurve, a: &ProjMap) -> Result<(SparsePoly, ProjMap)> {
    let n = lcm(x.order(), a.order());
    Ok((x.f.lift_to(n)?, a.lift_to(n)?))
}

/// Returns the scalar lambda with F(A v) = lambda F(v), or `None` when A does
/// not preserve the curve. Works in the common cyclotomic order of X and A.
pub fn is_automorphism(x: &PlaneCurve, a: &ProjMap) -> Result<Option<CyclotomicElement>> {
    let (f, a) = common(x, a)?;
    let g = substitute_projective(&f, a.entries())?;
    Ok(g.ratio_to(&f))
}

/// Returns lambda with G(A v) = lambda F(v), i.e. A maps X (given by F) onto Y (given by G).
pub fn is_isomorphism(x: &PlaneCurve, y: &PlaneCurve, a: &ProjMap) -> Result<Option<CyclotomicElement>> {
    let n = lcm(lcm(x.order(), y.order()), a.order());
    let f = x.f.lift_to(n)?;
    let g = y.f.lift_to(n)?;
    let a = a.lift_to(n)?;
    Ok(substitute_projective(&g, a.entries())?.ratio_to(&f))
}

pub fn conjugate_curve(sigma: &GaloisElement, x: &PlaneCurve) -> Result<PlaneCurve> {
    let n = lcm(sigma.order(), x.order());
    let f = x.f.lift_to(n)?;
    let s = sigma.lift_to(n)?;
    PlaneCurve::new(conjugate_poly(&s, &f)?)
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Smoothness through the Macaulay matrix of the partial derivatives: three
/// ternary forms of degree e have no common projective zero exactly when the
/// ideal they generate contains every form of degree 3(e - 1) + 1.
pub fn is_smooth_by_elimination(x: &PlaneCurve) -> bool {
    let f = &x.f;
    let order = f.order();
    let e = x.degree() - 1;
    let target = 3 * (e - 1) + 1;
    let cols = monomials(3, target);
    let col_index: std::collections::HashMap<Vec<u32>, usize> =
        cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let multipliers = monomials(3, target - e);
    let zero = CyclotomicElement::zero(order).unwrap();
    let mut rows: Matrix = Vec::new();
    for var in 0..3 {
        let partial = f.derivative(var);
        if partial.is_zero() {
            continue;
        }
        for m in &multipliers {
            let mut row = vec![zero.clone(); cols.len()];
            for (t, c) in partial.terms() {
                let key: Vec<u32> = t.0.iter().zip(m).map(|(a, b)| a + b).collect();
                row[col_index[&key]] = c.clone();
            }
            rows.push(row);
        }
    }
    !rows.is_empty() && rank(&rows) == cols.len()
}

/// Reads (a, b, c) off F = x^4 + y^4 + z^4 + a x^2y^2 + b x^2z^2 + c y^2z^2.
pub fn xabc_parameters(x: &PlaneCurve) -> Option<[CyclotomicElement; 3]> {
    let f = &x.f;
    let allowed: [&[u32]; 6] = [&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[2, 2, 0], &[2, 0, 2], &[0, 2, 2]];
    if f.terms().any(|(m, _)| !allowed.contains(&m.0.as_slice())) {
        return None;
    }
    if !(0..3).all(|i| {
        let mut e = [0u32; 3];
        e[i] = 4;
        f.coeff(&e).is_one()
    }) {
        return None;
    }
    Some([f.coeff(&[2, 2, 0]), f.coeff(&[2, 0, 2]), f.coeff(&[0, 2, 2])])
}

/// Closed-form smoothness test for X_{a,b,c}: singular iff
/// a^2 + b^2 + c^2 - abc = 4 or one of a^2, b^2, c^2 equals 4.
pub fn xabc_is_smooth(a: &CyclotomicElement, b: &CyclotomicElement, c: &CyclotomicElement) -> bool {
    let n = a.order();
    let four = CyclotomicElement::from_integer(n, 4).unwrap();
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let s = &(&(&a2 + &b2) + &c2) - &(&(a * b) * c);
    s != four && a2 != four && b2 != four && c2 != four
}

/// Smoothness, using the closed form when the curve is in the X_{a,b,c} family.
pub fn is_smooth(x: &PlaneCurve) -> bool {
    match xabc_parameters(x) {
        Some([a, b, c]) => xabc_is_smooth(&a, &b, &c),
        None => is_smooth_by_elimination(x),
    }
}

/// X_{a,b,c}: x^4 + y^4 + z^4 + a x^2y^2 + b x^2z^2 + c y^2z^2.
pub fn xabc_curve(a: &CyclotomicElement, b: &CyclotomicElement, c: &CyclotomicElement) -> Result<PlaneCurve> {
    let n = lcm(lcm(a.order(), b.order()), c.order());
    let one = CyclotomicElement::one(n)?;
    let f = SparsePoly::from_terms(
        n,
        3,
        vec![
            (vec![4, 0, 0], one.clone()),
            (vec![0, 4, 0], one.clone()),
            (vec![0, 0, 4], one),
            (vec![2, 2, 0], a.lift_to(n)?),
            (vec![2, 0, 2], b.lift_to(n)?),
            (vec![0, 2, 2], c.lift_to(n)?),
        ],
    )?;
    PlaneCurve::new(f)
}

/// The family y^4 + y^2 (x - a1 z)(x + z/a1) + (x - a2 z)(x + z/conj(a2))(x - a3 z)(x + z/conj(a3)).
pub fn c2_family_curve(a1: &CyclotomicElement, a2: &CyclotomicElement, a3: &CyclotomicElement) -> Result<PlaneCurve> {
    let n = lcm(lcm(lcm(a1.order(), a2.order()), a3.order()), 1);
    let (a1, a2, a3) = (a1.lift_to(n)?, a2.lift_to(n)?, a3.lift_to(n)?);
    let x = SparsePoly::var(n, 3, 0)?;
    let y = SparsePoly::var(n, 3, 1)?;
    let z = SparsePoly::var(n, 3, 2)?;
    let lin = |s: &CyclotomicElement| x.sub(&z.scale(s));
    let q1 = lin(&a1).mul(&lin(&(-&a1.inverse()?)));
    let q2 = lin(&a2).mul(&lin(&(-&a2.conj().inverse()?)));
    let q3 = lin(&a3).mul(&lin(&(-&a3.conj().inverse()?)));
    let f = y.pow(4).add(&y.pow(2).mul(&q1)).add(&q2.mul(&q3));
    PlaneCurve::new(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: u32, v: i64) -> CyclotomicElement {
        CyclotomicElement::from_integer(n, v).unwrap()
    }

    fn fermat() -> PlaneCurve {
        PlaneCurve::new(
            SparsePoly::from_int_terms(4, 3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]).unwrap(),
        )
        .unwrap()
    }

    fn literal_c2() -> PlaneCurve {
        let i = CyclotomicElement::zeta(4).unwrap();
        let one = int(4, 1);
        let a2 = &one - &i;
        let a3 = &(&i - &one) * &int(4, 2);
        c2_family_curve(&one, &a2, &a3).unwrap()
    }

    #[test]
    fn fermat_automorphisms() {
        let x = fermat();
        let d = ProjMap::diagonal([CyclotomicElement::zeta(4).unwrap(), int(4, 1), int(4, 1)]).unwrap();
        assert_eq!(is_automorphism(&x, &d).unwrap(), Some(int(4, 1)));
        let shear = ProjMap::from_ints(4, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(is_automorphism(&x, &shear).unwrap(), None);
    }

    #[test]
    fn c2_family_has_nu() {
        let x = literal_c2();
        let nu = ProjMap::from_ints(4, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]).unwrap();
        assert!(is_automorphism(&x, &nu).unwrap().is_some());
        assert!(is_smooth(&x));
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_smooth(&fermat()));
        assert!(is_smooth_by_elimination(&fermat()));
        let x125 = xabc_curve(&int(1, 1), &int(1, 2), &int(1, 5)).unwrap();
        assert!(!is_smooth(&x125));
        assert!(!is_smooth_by_elimination(&x125));
        let x135 = xabc_curve(&int(1, 1), &int(1, 3), &int(1, 5)).unwrap();
        assert!(is_smooth(&x135));
        assert!(is_smooth_by_elimination(&x135));
    }

    #[test]
    fn nodal_cubic_is_singular() {
        // y^2 z - x^3 - x^2 z has a node at (0:0:1)
        let f = SparsePoly::from_int_terms(1, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[2, 0, 1], -1)]).unwrap();
        assert!(!is_smooth_by_elimination(&PlaneCurve::new(f).unwrap()));
        // y^2 z - x^3 + x z^2 is smooth
        let g = SparsePoly::from_int_terms(1, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[1, 0, 2], 1)]).unwrap();
        assert!(is_smooth_by_elimination(&PlaneCurve::new(g).unwrap()));
    }

    #[test]
    fn conjugation_of_c2_family() {
        let x = literal_c2();
        let s = GaloisElement::conjugation(4);
        let xb = conjugate_curve(&s, &x).unwrap();
        let i = CyclotomicElement::zeta(4).unwrap();
        let one = int(4, 1);
        let a2 = &one - &i;
        let a3 = &(&i - &one) * &int(4, 2);
        let expected = c2_family_curve(&one, &a2.conj(), &a3.conj()).unwrap();
        assert_eq!(xb, expected);
        assert_eq!(conjugate_curve(&s, &xb).unwrap(), x);
        let rational = xabc_curve(&int(4, 1), &int(4, 3), &int(4, 5)).unwrap();
        assert_eq!(conjugate_curve(&s, &rational).unwrap(), rational);
    }

    #[test]
    fn rejects_low_degree_and_inhomogeneous() {
        let conic = SparsePoly::from_int_terms(1, 3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]).unwrap();
        assert_eq!(PlaneCurve::new(conic).unwrap_err(), Error::DegreeTooSmall(2));
        let bad = SparsePoly::from_int_terms(1, 3, &[(&[4, 0, 0], 1), (&[0, 1, 0], 1)]).unwrap();
        assert_eq!(PlaneCurve::new(bad).unwrap_err(), Error::NotHomogeneous);
    }
}
