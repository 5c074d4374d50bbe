//! Cyclic q-gonal curves y^q = f(x): genus, signatures, the (Möbius,
//! multiplier) map algebra and real descent for the family
//! f(x) = prod (x^n - a_i)(x^n + 1/conj(a_i)).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{lcm, CyclotomicElement, GaloisElement};
use crate::polyring::{SparsePoly, UniPoly};
use crate::ramify::{odd_signature_verdict, OddVerdict, Signature};

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// x -> (a x + b) / (c x + d), normalized so the first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mobius {
    order: u32,
    m: [[CyclotomicElement; 2]; 2],
}

impl Mobius {
    pub fn new(a: CyclotomicElement, b: CyclotomicElement, c: CyclotomicElement, d: CyclotomicElement) -> Result<Self> {
        let order = a.order();
        for e in [&b, &c, &d] {
            a.check_order(e)?;
        }
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::normalized(order, [[a, b], [c, d]]))
    }

    fn normalized(order: u32, mut m: [[CyclotomicElement; 2]; 2]) -> Self {
        let lead = m.iter().flatten().find(|e| !e.is_zero()).expect("nonsingular").clone();
        if !lead.is_one() {
            let inv = lead.inverse().unwrap();
            for e in m.iter_mut().flatten() {
                *e = &*e * &inv;
            }
        }
        Self { order, m }
    }

    pub fn identity(order: u32) -> Self {
        let (o, z) = (CyclotomicElement::one(order).unwrap(), CyclotomicElement::zero(order).unwrap());
        Self::normalized(order, [[o.clone(), z.clone()], [z, o]])
    }

    /// x -> s x.
    pub fn scaling(s: CyclotomicElement) -> Result<Self> {
        let n = s.order();
        Self::new(s, CyclotomicElement::zero(n)?, CyclotomicElement::zero(n)?, CyclotomicElement::one(n)?)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn matrix(&self) -> &[[CyclotomicElement; 2]; 2] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m[0][1].is_zero() && self.m[1][0].is_zero() && self.m[0][0] == self.m[1][1]
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (&self.m, &other.m);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Self::normalized(self.order, [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        let g = |e: &CyclotomicElement| e.galois(sigma);
        Ok(Self::normalized(
            self.order,
            [[g(&self.m[0][0])?, g(&self.m[0][1])?], [g(&self.m[1][0])?, g(&self.m[1][1])?]],
        ))
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        let l = |e: &CyclotomicElement| e.lift_to(target);
        Ok(Self {
            order: target,
            m: [[l(&self.m[0][0])?, l(&self.m[0][1])?], [l(&self.m[1][0])?, l(&self.m[1][1])?]],
        })
    }

    fn numerator(&self) -> UniPoly {
        UniPoly::new(self.order, vec![self.m[0][1].clone(), self.m[0][0].clone()])
    }

    fn denominator(&self) -> UniPoly {
        UniPoly::new(self.order, vec![self.m[1][1].clone(), self.m[1][0].clone()])
    }

    /// sum_k p_k (a x + b)^k (c x + d)^(deg - k): the numerator of p(m(x))
    /// times (c x + d)^deg.
    pub fn pull_back(&self, p: &UniPoly, deg: usize) -> UniPoly {
        let (u, v) = (self.numerator(), self.denominator());
        let mut acc = UniPoly::zero(self.order);
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&u.pow(k as u32).mul(&v.pow((deg - k) as u32)).scale(c));
        }
        acc
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator(), self.denominator())
    }
}

/// A quotient of univariate polynomials in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self {
                den: UniPoly::one(num.order())?,
                num,
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lead = den.leading().unwrap().inverse()?;
        Ok(Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn constant(c: CyclotomicElement) -> Self {
        let n = c.order();
        Self {
            num: UniPoly::constant(c),
            den: UniPoly::one(n).unwrap(),
        }
    }

    /// c * x^k for k of either sign.
    pub fn monomial(c: CyclotomicElement, k: i64) -> Self {
        let n = c.order();
        let one = CyclotomicElement::one(n).unwrap();
        if k >= 0 {
            Self::new(UniPoly::monomial(c, k as usize), UniPoly::one(n).unwrap()).unwrap()
        } else {
            Self::new(UniPoly::constant(c), UniPoly::monomial(one, (-k) as usize)).unwrap()
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.num.pow(e), self.den.pow(e)).unwrap()
    }

    /// r(m(x)).
    pub fn compose_mobius(&self, m: &Mobius) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let v = m.denominator();
        let mut num = m.pull_back(&self.num, dn);
        let mut den = m.pull_back(&self.den, dd);
        if dd > dn {
            num = num.mul(&v.pow((dd - dn) as u32));
        } else {
            den = den.mul(&v.pow((dn - dd) as u32));
        }
        Self::new(num, den).unwrap()
    }

    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        Self::new(self.num.conjugate(sigma)?, self.den.conjugate(sigma)?)
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        Ok(Self {
            num: self.num.lift_to(target)?,
            den: self.den.lift_to(target)?,
        })
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// (x, y) -> (m(x), r(x) y).
#[derive(Clone, PartialEq, Eq)]
pub struct QGonalMap {
    pub mobius: Mobius,
    pub multiplier: RationalFunction,
}

impl QGonalMap {
    pub fn new(mobius: Mobius, multiplier: RationalFunction) -> Result<Self> {
        if mobius.order() != multiplier.num.order() {
            return Err(Error::OrderMismatch {
                left: mobius.order(),
                right: multiplier.num.order(),
            });
        }
        Ok(Self { mobius, multiplier })
    }

    pub fn identity(order: u32) -> Self {
        Self {
            mobius: Mobius::identity(order),
            multiplier: RationalFunction::constant(CyclotomicElement::one(order).unwrap()),
        }
    }

    pub fn order(&self) -> u32 {
        self.mobius.order()
    }

    pub fn is_identity(&self) -> bool {
        self.mobius.is_identity() && self.multiplier.is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.order()), |acc, _| qgonal_compose(self, &acc))
    }

    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        Ok(Self {
            mobius: self.mobius.conjugate(sigma)?,
            multiplier: self.multiplier.conjugate(sigma)?,
        })
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        Ok(Self {
            mobius: self.mobius.lift_to(target)?,
            multiplier: self.multiplier.lift_to(target)?,
        })
    }
}

impl fmt::Debug for QGonalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QGonalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) -> ({}, ({}) y)", self.mobius, self.multiplier)
    }
}

/// phi2 after phi1: (m2(m1(x)), r2(m1(x)) r1(x) y).
pub fn qgonal_compose(phi2: &QGonalMap, phi1: &QGonalMap) -> QGonalMap {
    let n = lcm(phi2.order(), phi1.order());
    let (p2, p1) = (phi2.lift_to(n).unwrap(), phi1.lift_to(n).unwrap());
    QGonalMap {
        mobius: p2.mobius.compose(&p1.mobius),
        multiplier: p2.multiplier.compose_mobius(&p1.mobius).mul(&p1.multiplier),
    }
}

/// The curve y^q = f(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGonalCurve {
    q: u32,
    f: UniPoly,
}

impl QGonalCurve {
    pub fn new(q: u32, f: UniPoly) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::Precondition(format!("q = {q} is not prime")));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(Self { q, f })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }

    pub fn genus(&self) -> Result<u32> {
        genus_qgonal(self.q, &SparsePoly::from_uni(&self.f))
    }

    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        Ok(Self {
            q: self.q,
            f: self.f.conjugate(sigma)?,
        })
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        Ok(Self {
            q: self.q,
            f: self.f.lift_to(target)?,
        })
    }
}

/// Genus of y^q = f(x) for squarefree f of degree d >= 3.
pub fn genus_qgonal(q: u32, f: &SparsePoly) -> Result<u32> {
    let f = f.to_uni()?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let d = f.degree().unwrap_or(0) as i64;
    if d < 3 {
        return Err(Error::DegreeTooSmall(d as u32));
    }
    let q = q as i64;
    let b = if d % q == 0 { d } else { d + 1 };
    let g = (q - 1) * (b - 2) / 2;
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(g as u32)
}

/// Number N of branch points of X -> X/C_q fixed by x -> zeta_n x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    N0,
    N1,
    N2,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "N0" | "0" => Ok(Shape::N0),
            "N1" | "1" => Ok(Shape::N1),
            "N2" | "2" => Ok(Shape::N2),
            _ => Err(Error::Parse(format!("shape {s:?}"))),
        }
    }
}

/// Signature of X -> X/Aut(X) for a normal cyclic q-gonal curve with reduced
/// group C_n. When `t` is given, the divisibility condition of the shape is
/// checked against n t.
pub fn table1_signature(q: u32, n: u32, shape: Shape, g: u32, t: Option<u32>) -> Result<Signature> {
    if !is_prime(q) || n < 2 {
        return Err(Error::ShapeViolation(format!("need q prime and n >= 2, got q = {q}, n = {n}")));
    }
    if let Some(t) = t {
        let nt = n * t;
        let ok = match shape {
            Shape::N0 => nt.is_multiple_of(q),
            Shape::N1 => !nt.is_multiple_of(q),
            Shape::N2 => !(nt + 1).is_multiple_of(q),
        };
        if !ok {
            return Err(Error::ShapeViolation(format!("{shape:?} with q = {q}, n t = {nt}")));
        }
    }
    let (q64, n64, g64) = (q as i64, n as i64, g as i64);
    let numerator = match shape {
        Shape::N0 => 2 * g64 - 2 + 2 * q64,
        Shape::N1 => 2 * g64 - 1 + q64,
        Shape::N2 => 2 * g64,
    };
    let denom = n64 * (q64 - 1);
    if numerator <= 0 || numerator % denom != 0 {
        return Err(Error::NonIntegerCount(format!("{numerator}/{denom}")));
    }
    let k = (numerator / denom) as usize;
    let mut indices = vec![q; k];
    match shape {
        Shape::N0 => indices.extend([n, n]),
        Shape::N1 => indices.extend([n, n * q]),
        Shape::N2 => indices.extend([n * q, n * q]),
    }
    Ok(Signature::new(0, indices))
}

/// r^q f_X = f_Y(m(x)) as rational functions.
pub fn qgonal_is_isomorphism(x: &QGonalCurve, y: &QGonalCurve, phi: &QGonalMap) -> Result<bool> {
    if x.q != y.q {
        return Err(Error::Precondition("curves have different q".into()));
    }
    let n = lcm(lcm(x.order(), y.order()), phi.order());
    let (fx, fy, phi) = (x.f.lift_to(n)?, y.f.lift_to(n)?, phi.lift_to(n)?);
    let dy = fy.degree().unwrap();
    let rq = phi.multiplier.pow(x.q);
    let lhs = rq.num().mul(&fx).mul(&phi.mobius.denominator().pow(dy as u32));
    let rhs = phi.mobius.pull_back(&fy, dy).mul(rq.den());
    Ok(lhs == rhs)
}

/// The data of an instance of the family f(x) = prod (x^n - a_i)(x^n + 1/conj(a_i)).
#[derive(Clone, Debug)]
pub struct Family {
    pub m: u32,
    pub n: u32,
    pub kappa: CyclotomicElement,
    pub roots: Vec<CyclotomicElement>,
    pub f: UniPoly,
}

impl Family {
    pub fn order(&self) -> u32 {
        self.f.order()
    }
}

/// sqrt(3) = zeta_12 + zeta_12^-1.
pub fn sqrt3() -> CyclotomicElement {
    let z = CyclotomicElement::zeta(12).unwrap();
    &z + &z.conj()
}

fn family_poly(n: u32, roots: &[CyclotomicElement]) -> Result<UniPoly> {
    let order = roots[0].order();
    let one = CyclotomicElement::one(order)?;
    let mut f = UniPoly::one(order)?;
    for a in roots {
        let xn = UniPoly::monomial(one.clone(), n as usize);
        f = f
            .mul(&xn.sub(&UniPoly::constant(a.clone())))
            .mul(&xn.add(&UniPoly::constant(a.conj().inverse()?)));
    }
    Ok(f)
}

/// The Möbius map x -> -(x - sqrt3 - 1)/((sqrt3 - 1) x + 1) over Q(zeta_12).
pub fn tau_mobius() -> Mobius {
    let s = sqrt3();
    let one = CyclotomicElement::one(12).unwrap();
    Mobius::new(-&one, &s + &one, &s - &one, one).unwrap()
}

pub fn build_family(m: u32, n: u32) -> Result<Family> {
    if m < 2 || n < 2 {
        return Err(Error::Precondition(format!("need m, n > 1, got m = {m}, n = {n}")));
    }
    let kappa_order = if m % 2 == 1 { m } else { 2 * m };
    let order = if n == 3 { lcm(kappa_order, 12) } else { kappa_order };
    let kappa = CyclotomicElement::zeta(kappa_order)?.lift_to(order)?;
    let int = |v: i64| CyclotomicElement::from_integer(order, v).unwrap();
    let mut roots = Vec::new();
    let first_l = if n == 3 {
        let alpha = -&(&int(2) + &sqrt3().lift_to(order)?);
        roots.push(alpha.pow(3));
        1
    } else {
        0
    };
    for l in (1 + first_l)..=m {
        let idx = l - first_l;
        roots.push(&int(idx as i64 + 1) * &kappa.pow(idx as u64));
    }
    let f = family_poly(n, &roots)?;
    let fam = Family { m, n, kappa, roots, f };
    check_family(&fam)?;
    Ok(fam)
}

/// Verifies the distinctness conditions, f(0) = -1 and, for n = 3, that tau
/// does not preserve the zero set of f.
pub fn check_family(fam: &Family) -> Result<()> {
    let a = &fam.roots;
    let order = fam.order();
    let one = CyclotomicElement::one(order)?;
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i < j && a[i].same_abs(&a[j]) {
                return Err(Error::PropertyViolation(format!("|a_{}| = |a_{}|", i + 1, j + 1)));
            }
            if i < j && a[i].checked_div(&a[i].conj())? == a[j].checked_div(&a[j].conj())? {
                return Err(Error::PropertyViolation(format!(
                    "a_{0}/conj(a_{0}) = a_{1}/conj(a_{1})",
                    i + 1,
                    j + 1
                )));
            }
            let p = &a[i] * &a[j];
            if p.same_abs(&one) {
                return Err(Error::PropertyViolation(format!("|a_{}| = |1/a_{}|", i + 1, j + 1)));
            }
        }
    }
    if fam.f.coeff(0) != -&one {
        return Err(Error::PropertyViolation(format!("f(0) = {} instead of -1", fam.f.coeff(0))));
    }
    if fam.n == 3 {
        let tau = tau_mobius().lift_to(order)?;
        let d = fam.f.degree().unwrap();
        let pulled = tau.pull_back(&fam.f, d).squarefree_part()?;
        if pulled.proportional(&fam.f.monic()) {
            return Err(Error::PropertyViolation("tau preserves the zero set of f".into()));
        }
    }
    Ok(())
}

/// The named maps of the family, over a field containing zeta_{2n} and zeta_{2q}.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyMaps {
    pub order: u32,
    pub curve: QGonalCurve,
    pub conjugate: QGonalCurve,
    pub iota: QGonalMap,
    pub nu: QGonalMap,
    pub mu: QGonalMap,
    pub tau_prime: QGonalMap,
}

fn exact_quotient(a: u32, b: u32, what: &str) -> Result<u32> {
    if !a.is_multiple_of(b) {
        return Err(Error::HypothesisViolation(format!("{what} = {a}/{b} is not an integer")));
    }
    Ok(a / b)
}

pub fn family_maps(q: u32, fam: &Family) -> Result<FamilyMaps> {
    let (m, n) = (fam.m, fam.n);
    let order = lcm(lcm(fam.order(), 2 * n), 2 * q);
    let curve = QGonalCurve::new(q, fam.f.lift_to(order)?)?;
    let conjugate = curve.conjugate(&GaloisElement::conjugation(order))?;
    let z = |k: u32| CyclotomicElement::zeta(k).unwrap().lift_to(order).unwrap();
    let one = CyclotomicElement::one(order)?;
    let zero = CyclotomicElement::zero(order)?;
    let e2 = exact_quotient(2 * m * n, q, "2mn/q")?;
    let e1 = exact_quotient(m * n, q, "mn/q")?;
    let iota = QGonalMap::new(Mobius::identity(order), RationalFunction::constant(z(q)))?;
    let nu = QGonalMap::new(Mobius::scaling(z(n))?, RationalFunction::constant(one.clone()))?;
    // x -> 1/(zeta_2n x), y -> zeta_2q y / x^(2mn/q)
    let mu = QGonalMap::new(
        Mobius::new(zero.clone(), one.clone(), z(2 * n), zero)?,
        RationalFunction::monomial(z(2 * q), -(e2 as i64)),
    )?;
    let tau_prime = QGonalMap::new(Mobius::identity(order), RationalFunction::constant(z(n).pow(e1 as u64)))?;
    Ok(FamilyMaps {
        order,
        curve,
        conjugate,
        iota,
        nu,
        mu,
        tau_prime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QGonalStatus {
    Definable,
    Obstructed,
    DefinableByOddSignature,
}

impl fmt::Display for QGonalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QGonalStatus::Definable => "DEFINABLE",
            QGonalStatus::Obstructed => "OBSTRUCTED",
            QGonalStatus::DefinableByOddSignature => "DEFINABLE-BY-THEOREM-1",
        })
    }
}

/// Cocycle defect of the candidate mu iota^j nu^k.
#[derive(Clone, Debug, Serialize)]
pub struct DefectRow {
    pub j: u32,
    pub k: u32,
    pub candidate: QGonalMap,
    pub defect: QGonalMap,
    /// Whether the defect equals tau'^(2k+1) nu^(2k+1).
    pub matches_closed_form: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QGonalDescent {
    pub status: QGonalStatus,
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub genus: u32,
    pub signature: Signature,
    pub witness: Option<(u32, u32)>,
    pub defects: Vec<DefectRow>,
}

/// Signature of the family from the shape of f: N0 when q | 2mn, else N1.
pub fn family_signature(q: u32, m: u32, n: u32, genus: u32) -> Result<Signature> {
    let shape = if (2 * m * n).is_multiple_of(q) { Shape::N0 } else { Shape::N1 };
    table1_signature(q, n, shape, genus, Some(2 * m))
}

pub fn qgonal_real_descent(q: u32, m: u32, n: u32) -> Result<QGonalDescent> {
    if q == 2 || !is_prime(q) {
        return Err(Error::HypothesisViolation(format!("q = {q} must be an odd prime")));
    }
    let fam = build_family(m, n)?;
    let genus = genus_qgonal(q, &SparsePoly::from_uni(&fam.f))?;
    let signature = family_signature(q, m, n, genus)?;
    if !(m * n).is_multiple_of(q) {
        if (2 * m * n).is_multiple_of(q) {
            return Err(Error::HypothesisViolation(format!("q = {q} divides 2mn but not mn")));
        }
        if odd_signature_verdict(&signature) != OddVerdict::Odd {
            return Err(Error::HypothesisViolation(format!("signature {signature} is not odd")));
        }
        return Ok(QGonalDescent {
            status: QGonalStatus::DefinableByOddSignature,
            q,
            m,
            n,
            genus,
            signature,
            witness: None,
            defects: Vec::new(),
        });
    }

    let maps = family_maps(q, &fam)?;
    let (x, xb) = (&maps.curve, &maps.conjugate);
    for (name, a) in [("iota", &maps.iota), ("nu", &maps.nu)] {
        if !qgonal_is_isomorphism(x, x, a)? {
            return Err(Error::HypothesisViolation(format!("{name} is not an automorphism")));
        }
    }
    if !qgonal_is_isomorphism(x, xb, &maps.mu)? {
        return Err(Error::HypothesisViolation("mu is not an isomorphism onto the conjugate".into()));
    }
    let sigma = GaloisElement::conjugation(maps.order);
    let mut defects = Vec::new();
    let mut witness = None;
    let mut seen = std::collections::HashSet::new();
    for j in 0..q {
        for k in 0..n {
            let aut = qgonal_compose(&maps.iota.pow(j), &maps.nu.pow(k));
            seen.insert(format!("{aut}"));
            let phi = qgonal_compose(&maps.mu, &aut);
            let defect = qgonal_compose(&phi.conjugate(&sigma)?, &phi);
            let closed = qgonal_compose(&maps.tau_prime.pow(2 * k + 1), &maps.nu.pow(2 * k + 1));
            if witness.is_none() && defect.is_identity() {
                witness = Some((j, k));
            }
            defects.push(DefectRow {
                j,
                k,
                candidate: phi,
                matches_closed_form: defect == closed,
                defect,
            });
        }
    }
    if seen.len() != (q * n) as usize {
        return Err(Error::HypothesisViolation("<iota, nu> does not have order qn".into()));
    }
    Ok(QGonalDescent {
        status: if witness.is_some() {
            QGonalStatus::Definable
        } else {
            QGonalStatus::Obstructed
        },
        q,
        m,
        n,
        genus,
        signature,
        witness,
        defects,
    })
}

type CyclotomicElementCoords = Vec<String>;

fn coords(e: &CyclotomicElement) -> CyclotomicElementCoords {
    e.coords().iter().map(crate::exactnum::format_rational).collect()
}

fn from_coords(order: u32, c: &[String]) -> Result<CyclotomicElement> {
    let cs = c.iter().map(|s| crate::exactnum::parse_rational(s)).collect::<Result<Vec<_>>>()?;
    CyclotomicElement::from_coords(order, &cs)
}

#[derive(Serialize, Deserialize)]
struct RawQGonalMap {
    order: u32,
    mobius: Vec<Vec<CyclotomicElementCoords>>,
    numerator: Vec<CyclotomicElementCoords>,
    denominator: Vec<CyclotomicElementCoords>,
}

impl Serialize for QGonalMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawQGonalMap {
            order: self.order(),
            mobius: self.mobius.m.iter().map(|r| r.iter().map(coords).collect()).collect(),
            numerator: self.multiplier.num.coeffs().iter().map(coords).collect(),
            denominator: self.multiplier.den.coeffs().iter().map(coords).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QGonalMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawQGonalMap::deserialize(d)?;
        let build = || -> Result<QGonalMap> {
            let n = raw.order;
            if raw.mobius.len() != 2 || raw.mobius.iter().any(|r| r.len() != 2) {
                return Err(Error::Parse("mobius needs a 2x2 matrix".into()));
            }
            let e = |i: usize, j: usize| from_coords(n, &raw.mobius[i][j]);
            let mobius = Mobius::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?)?;
            let poly = |cs: &[CyclotomicElementCoords]| -> Result<UniPoly> {
                Ok(UniPoly::new(n, cs.iter().map(|c| from_coords(n, c)).collect::<Result<Vec<_>>>()?))
            };
            let r = RationalFunction::new(poly(&raw.numerator)?, poly(&raw.denominator)?)?;
            QGonalMap::new(mobius, r)
        };
        build().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawQGonalCurve {
    q: u32,
    f: SparsePoly,
}

impl Serialize for QGonalCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawQGonalCurve {
            q: self.q,
            f: SparsePoly::from_uni(&self.f),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QGonalCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawQGonalCurve::deserialize(d)?;
        let f = raw.f.to_uni().map_err(D::Error::custom)?;
        QGonalCurve::new(raw.q, f).map_err(D::Error::custom)
    }
}
