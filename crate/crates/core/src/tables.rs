//! Bundled reference tables: automorphism groups of smooth plane quartics with
//! concrete fixtures, and the non-normal q-gonal rows.

use crate::error::{Error, Result};
use crate::exactnum::CyclotomicElement;
use crate::plane::{c2_family_curve, xabc_curve, PlaneCurve, ProjMap};
use crate::polyring::SparsePoly;
use crate::ramify::Signature;

/// One row of the plane quartic table.
#[derive(Clone, Debug)]
pub struct QuarticRow {
    pub label: &'static str,
    pub equation: &'static str,
    pub conditions: &'static str,
    pub group_order: usize,
    pub signature: Signature,
}

/// A concrete curve for a row together with generators of its group.
#[derive(Clone, Debug)]
pub struct QuarticFixture {
    pub row: QuarticRow,
    pub parameters: &'static str,
    pub curve: PlaneCurve,
    pub generators: Vec<ProjMap>,
}

pub const QUARTIC_LABELS: [&str; 12] = [
    "PSL2(7)",
    "S3",
    "C2xC2",
    "D4",
    "S4",
    "C4^2:S3",
    "C4(C2)^2",
    "C4A4",
    "C6",
    "C9",
    "C3",
    "C2",
];

pub fn quartic_rows() -> Vec<QuarticRow> {
    let row = |label, equation, conditions, group_order, g0, idx: &[u32]| QuarticRow {
        label,
        equation,
        conditions,
        group_order,
        signature: Signature::new(g0, idx.to_vec()),
    };
    vec![
        row("PSL2(7)", "z^3*y + y^3*x + x^3*z", "", 168, 0, &[2, 3, 7]),
        row(
            "S3",
            "z^4 + a*z^2*y*x + z*(y^3 + x^3) + b*y^2*x^2",
            "a != b, ab != 0",
            6,
            0,
            &[2, 2, 2, 2, 3],
        ),
        row(
            "C2xC2",
            "x^4 + y^4 + z^4 + a*x^2*y^2 + b*x^2*z^2 + c*y^2*z^2",
            "a, b, c pairwise distinct",
            4,
            0,
            &[2, 2, 2, 2, 2, 2],
        ),
        row(
            "D4",
            "x^4 + y^4 + z^4 + a*z^2*(y^2 + x^2) + b*y^2*x^2",
            "a != b, a != 0",
            8,
            0,
            &[2, 2, 2, 2, 2],
        ),
        row(
            "S4",
            "x^4 + y^4 + z^4 + a*(z^2*y^2 + z^2*x^2 + y^2*x^2)",
            "a != 0, (-1 +- sqrt(-7))/2",
            24,
            0,
            &[2, 2, 2, 3],
        ),
        row("C4^2:S3", "z^4 + y^4 + x^4", "", 96, 0, &[2, 3, 8]),
        row(
            "C4(C2)^2",
            "z^4 + y^4 + x^4 + a*z^2*y^2",
            "a != 0, +-2, +-6, +-2*sqrt(-3)",
            16,
            0,
            &[2, 2, 2, 4],
        ),
        row("C4A4", "x^4 + y^4 + x*z^3", "", 48, 0, &[2, 3, 12]),
        row("C6", "z^4 + a*z^2*y^2 + y^4 + y*x^3", "a != 0", 6, 0, &[2, 3, 3, 6]),
        row("C9", "z^4 + z*y^3 + y*x^3", "", 9, 0, &[3, 9, 9]),
        row("C3", "z^3*L1(y, x) + L4(y, x)", "not above", 3, 0, &[3, 3, 3, 3, 3]),
        row("C2", "z^4 + z^2*L2(y, x) + L4(y, x)", "not above", 2, 1, &[2, 2, 2, 2]),
    ]
}

pub fn quartic_row(label: &str) -> Option<QuarticRow> {
    quartic_rows().into_iter().find(|r| r.label == label)
}

/// Label of the row with the given group order and signature.
pub fn lookup_quartic(group_order: usize, sig: &Signature) -> Option<&'static str> {
    quartic_rows()
        .into_iter()
        .find(|r| r.group_order == group_order && &r.signature == sig)
        .map(|r| r.label)
}

fn poly(order: u32, terms: &[(&[u32], i64)]) -> Result<PlaneCurve> {
    PlaneCurve::new(SparsePoly::from_int_terms(order, 3, terms)?)
}

fn int(order: u32, v: i64) -> CyclotomicElement {
    CyclotomicElement::from_integer(order, v).expect("valid order")
}

fn zeta(order: u32, k: i64) -> CyclotomicElement {
    CyclotomicElement::zeta_pow(order, k).expect("valid order")
}

fn klein_involution() -> Result<ProjMap> {
    let s = |k: i64| &zeta(7, k) - &zeta(7, -k);
    let e = [[1, 4, 2], [4, 2, 1], [2, 1, 4]];
    ProjMap::new(e.iter().map(|r| r.iter().map(|&k| s(k)).collect()).collect())
}

pub fn quartic_fixture(label: &str) -> Result<QuarticFixture> {
    let row = quartic_row(label).ok_or_else(|| Error::Parse(format!("unknown table row {label}")))?;
    let (parameters, curve, generators) = match label {
        "PSL2(7)" => (
            "",
            poly(7, &[(&[0, 1, 3], 1), (&[1, 3, 0], 1), (&[3, 0, 1], 1)])?,
            vec![
                ProjMap::diagonal([zeta(7, 1), zeta(7, 2), zeta(7, 4)])?,
                ProjMap::permutation(7, [1, 2, 0])?,
                klein_involution()?,
            ],
        ),
        "S3" => (
            "a = 1, b = 2",
            poly(
                3,
                &[(&[0, 0, 4], 1), (&[1, 1, 2], 1), (&[0, 3, 1], 1), (&[3, 0, 1], 1), (&[2, 2, 0], 2)],
            )?,
            vec![
                ProjMap::permutation(3, [1, 0, 2])?,
                ProjMap::diagonal([zeta(3, 1), zeta(3, 2), int(3, 1)])?,
            ],
        ),
        "C2xC2" => (
            "a = 1, b = 3, c = 5",
            xabc_curve(&int(1, 1), &int(1, 3), &int(1, 5))?,
            vec![ProjMap::from_ints(1, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])?, ProjMap::from_ints(1, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])?],
        ),
        "D4" => (
            "a = 1, b = 3",
            xabc_curve(&int(1, 3), &int(1, 1), &int(1, 1))?,
            vec![ProjMap::from_ints(1, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])?, ProjMap::permutation(1, [1, 0, 2])?],
        ),
        "S4" => (
            "a = 3",
            xabc_curve(&int(1, 3), &int(1, 3), &int(1, 3))?,
            vec![
                ProjMap::from_ints(1, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])?,
                ProjMap::permutation(1, [1, 2, 0])?,
                ProjMap::permutation(1, [1, 0, 2])?,
            ],
        ),
        "C4^2:S3" => (
            "",
            poly(4, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)])?,
            vec![
                ProjMap::diagonal([zeta(4, 1), int(4, 1), int(4, 1)])?,
                ProjMap::diagonal([int(4, 1), zeta(4, 1), int(4, 1)])?,
                ProjMap::permutation(4, [1, 2, 0])?,
                ProjMap::permutation(4, [1, 0, 2])?,
            ],
        ),
        "C4(C2)^2" => (
            "a = 1",
            poly(4, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1), (&[0, 2, 2], 1)])?,
            vec![
                ProjMap::diagonal([zeta(4, 1), int(4, 1), int(4, 1)])?,
                ProjMap::diagonal([int(4, 1), int(4, -1), int(4, 1)])?,
                ProjMap::permutation(4, [0, 2, 1])?,
            ],
        ),
        "C4A4" => {
            let sqrt3 = &zeta(12, 1) + &zeta(12, -1);
            let z0 = int(12, 0);
            let beta = ProjMap::new(vec![
                vec![int(12, 1), z0.clone(), int(12, 1)],
                vec![z0.clone(), sqrt3, z0.clone()],
                vec![int(12, 2), z0, int(12, -1)],
            ])?;
            (
                "",
                poly(12, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[1, 0, 3], 1)])?,
                vec![
                    ProjMap::diagonal([int(12, 1), zeta(12, 3), int(12, 1)])?,
                    ProjMap::diagonal([int(12, 1), int(12, 1), zeta(12, 4)])?,
                    beta,
                ],
            )
        }
        "C6" => (
            "a = 1",
            poly(3, &[(&[0, 0, 4], 1), (&[0, 2, 2], 1), (&[0, 4, 0], 1), (&[3, 1, 0], 1)])?,
            vec![ProjMap::diagonal([zeta(3, 1), int(3, 1), int(3, -1)])?],
        ),
        "C9" => (
            "",
            poly(9, &[(&[0, 0, 4], 1), (&[0, 3, 1], 1), (&[3, 1, 0], 1)])?,
            vec![ProjMap::diagonal([zeta(9, 2), zeta(9, 3), int(9, 1)])?],
        ),
        "C3" => (
            "L1 = y, L4 = x^4 + x*y^3 + y^4",
            poly(3, &[(&[0, 1, 3], 1), (&[4, 0, 0], 1), (&[1, 3, 0], 1), (&[0, 4, 0], 1)])?,
            vec![ProjMap::diagonal([int(3, 1), int(3, 1), zeta(3, 1)])?],
        ),
        "C2" => {
            let i = zeta(4, 1);
            let one = int(4, 1);
            (
                "y^4 + y^2*(x - a1*z)*(x + z/a1) + (x - a2*z)*(x + z/conj(a2))*(x - a3*z)*(x + z/conj(a3)), a1 = 1, a2 = 1 - i, a3 = 2(i - 1)",
                c2_family_curve(&one, &(&one - &i), &(&(&i - &one) * &int(4, 2)))?,
                vec![ProjMap::from_ints(1, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])?],
            )
        }
        _ => unreachable!(),
    };
    Ok(QuarticFixture { row, parameters, curve, generators })
}

pub fn quartic_fixtures() -> Result<Vec<QuarticFixture>> {
    QUARTIC_LABELS.iter().map(|l| quartic_fixture(l)).collect()
}

/// Admissible primes for a non-normal q-gonal row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeRange {
    Exactly(u32),
    AtLeast(u32),
}

impl PrimeRange {
    pub fn admits(&self, q: u32) -> bool {
        let prime = q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d));
        prime
            && match *self {
                PrimeRange::Exactly(p) => q == p,
                PrimeRange::AtLeast(p) => q >= p,
            }
    }
}

/// One row of the non-normal q-gonal table.
#[derive(Clone, Copy, Debug)]
pub struct NonNormalRow {
    pub q: PrimeRange,
    pub group: &'static str,
    indices: fn(u32) -> Vec<u32>,
    genus: fn(u32) -> u64,
    group_order: fn(u32) -> u64,
}

impl NonNormalRow {
    pub fn signature(&self, q: u32) -> Result<Signature> {
        self.check(q)?;
        Ok(Signature::new(0, (self.indices)(q)))
    }

    pub fn genus(&self, q: u32) -> Result<u64> {
        self.check(q)?;
        Ok((self.genus)(q))
    }

    pub fn group_order(&self, q: u32) -> Result<u64> {
        self.check(q)?;
        Ok((self.group_order)(q))
    }

    fn check(&self, q: u32) -> Result<()> {
        if self.q.admits(q) {
            Ok(())
        } else {
            Err(Error::HypothesisViolation(format!("q = {q} not admitted by row {}", self.group)))
        }
    }
}

pub fn nonnormal_rows() -> Vec<NonNormalRow> {
    vec![
        NonNormalRow { q: PrimeRange::Exactly(3), group: "GL(2,3)", indices: |_| vec![2, 3, 8], genus: |_| 2, group_order: |_| 48 },
        NonNormalRow { q: PrimeRange::Exactly(3), group: "SL(2,3)/CD", indices: |_| vec![2, 3, 12], genus: |_| 3, group_order: |_| 48 },
        NonNormalRow { q: PrimeRange::Exactly(5), group: "S5", indices: |_| vec![2, 4, 5], genus: |_| 4, group_order: |_| 120 },
        NonNormalRow { q: PrimeRange::Exactly(7), group: "PSL(2,7)", indices: |_| vec![2, 3, 7], genus: |_| 3, group_order: |_| 168 },
        NonNormalRow {
            q: PrimeRange::AtLeast(5),
            group: "(Cq x Cq):S3",
            indices: |q| vec![2, 3, 2 * q],
            genus: |q| ((q as u64 - 1) * (q as u64 - 2)) / 2,
            group_order: |q| 6 * (q as u64).pow(2),
        },
        NonNormalRow {
            q: PrimeRange::AtLeast(3),
            group: "(Cq x Cq):V4",
            indices: |q| vec![2, 2, 2, q],
            genus: |q| (q as u64 - 1).pow(2),
            group_order: |q| 4 * (q as u64).pow(2),
        },
        NonNormalRow {
            q: PrimeRange::AtLeast(3),
            group: "(Cq x Cq):D4",
            indices: |q| vec![2, 4, 2 * q],
            genus: |q| (q as u64 - 1).pow(2),
            group_order: |q| 8 * (q as u64).pow(2),
        },
    ]
}
