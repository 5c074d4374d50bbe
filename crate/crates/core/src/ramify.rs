//! Fixed points of automorphisms on plane curves, signatures of X -> X/G and
//! the odd-signature verdict.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{lcm, totient, CyclotomicElement};
use crate::linalg::{kernel, rank, Matrix};
use crate::matgroup::{cyclic_subgroup_classes, ProjGroup};
use crate::plane::{is_automorphism, PlaneCurve, ProjMap};
use crate::polyring::{distinct_root_count, UniPoly};

/// Quotient genus and the multiset of ramification indices, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub g0: u32,
    pub indices: Vec<u32>,
}

impl Signature {
    pub fn new(g0: u32, mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        Self { g0, indices }
    }

    /// Multiplicity of each index value.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &c in &self.indices {
            *m.entry(c).or_insert(0) += 1;
        }
        m
    }

    /// The sum over branch points of (|G|/c)(c - 1).
    pub fn ramification_total(&self, group_order: u64) -> Result<u64> {
        let mut total = 0;
        for &c in &self.indices {
            if c < 2 || !group_order.is_multiple_of(c as u64) {
                return Err(Error::NonIntegerBranchCount {
                    index: c as u64,
                    numerator: group_order as i64,
                    denominator: c as i64,
                });
            }
            total += group_order / c as u64 * (c as u64 - 1);
        }
        Ok(total)
    }

    /// Genus of the source curve forced by Riemann-Hurwitz, when integral.
    pub fn source_genus(&self, group_order: u64) -> Result<u64> {
        let r = self.ramification_total(group_order)? as i64;
        let two_g_minus_2 = group_order as i64 * (2 * self.g0 as i64 - 2) + r;
        if two_g_minus_2 % 2 != 0 {
            return Err(Error::NonIntegerGenus {
                numerator: two_g_minus_2 + 2,
                denominator: 2,
            });
        }
        let g = two_g_minus_2 / 2 + 1;
        if g < 0 {
            return Err(Error::NegativeGenus(g));
        }
        Ok(g as u64)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(u32::to_string).collect();
        write!(f, "({}; {})", self.g0, idx.join(", "))
    }
}

impl std::str::FromStr for Signature {
    type Err = Error;

    /// Parses "(g0; c1, c2, ...)".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("signature {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (g0, rest) = inner.split_once(';').ok_or_else(bad)?;
        let g0 = g0.trim().parse().map_err(|_| bad())?;
        let indices = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<Vec<u32>>>()?;
        Ok(Self::new(g0, indices))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OddVerdict {
    Odd,
    Inconclusive,
}

impl fmt::Display for OddVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OddVerdict::Odd => "ODD",
            OddVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// ODD iff g0 = 0 and some index value occurs an odd number of times.
pub fn odd_signature_verdict(sig: &Signature) -> OddVerdict {
    if sig.g0 == 0 && sig.multiplicities().values().any(|m| m % 2 == 1) {
        OddVerdict::Odd
    } else {
        OddVerdict::Inconclusive
    }
}

/// Index values with odd multiplicity.
pub fn odd_indices(sig: &Signature) -> Vec<u32> {
    sig.multiplicities().into_iter().filter(|(_, m)| m % 2 == 1).map(|(c, _)| c).collect()
}

fn upoly(order: u32, cs: Vec<CyclotomicElement>) -> UniPoly {
    UniPoly::new(order, cs)
}

/// Entries of A - t I as polynomials in t.
fn shifted(a: &Matrix, order: u32) -> Vec<Vec<UniPoly>> {
    let minus_one = CyclotomicElement::from_integer(order, -1).unwrap();
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut cs = vec![a[i][j].clone()];
                    if i == j {
                        cs.push(minus_one.clone());
                    }
                    upoly(order, cs)
                })
                .collect()
        })
        .collect()
}

fn det3_poly(m: &[Vec<UniPoly>]) -> UniPoly {
    let t = |i: usize, j: usize, k: usize| m[0][i].mul(&m[1][j]).mul(&m[2][k]);
    let pos = t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1));
    let neg = t(2, 1, 0).add(&t(0, 2, 1)).add(&t(1, 0, 2));
    pos.sub(&neg)
}

/// Column j of adj(m), as polynomials.
fn adjugate_column(m: &[Vec<UniPoly>], j: usize) -> Vec<UniPoly> {
    let others = |i: usize| match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (r0, r1) = others(j);
    (0..3)
        .map(|i| {
            let (c0, c1) = others(i);
            let v = m[r0][c0].mul(&m[r1][c1]).sub(&m[r0][c1].mul(&m[r1][c0]));
            if (i + j).is_multiple_of(2) { v } else { v.neg() }
        })
        .collect()
}

fn minus_scalar(a: &Matrix, lambda: &CyclotomicElement) -> Matrix {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = &row[i] - lambda;
    }
    m
}

/// Number of points of X fixed by the automorphism A.
///
/// Uses the characteristic polynomial chi of A. With distinct eigenvalues the
/// fixed points of A are the eigenlines, spanned by the nonzero columns of
/// adj(A - t I) at t = lambda; those lying on X are counted by the degree of
/// gcd(chi, F(col_j(t)) mod chi). With a double eigenvalue the eigenplane is a
/// line of fixed points meeting X in the distinct roots of F restricted to it.
pub fn fixed_point_count(x: &PlaneCurve, a: &ProjMap) -> Result<usize> {
    let n = lcm(x.order(), a.order());
    let x = x.lift_to(n)?;
    let a = a.lift_to(n)?;
    if a.scalar_value().is_some() {
        return Err(Error::ScalarMap);
    }
    if is_automorphism(&x, &a)?.is_none() {
        return Err(Error::NotAnAutomorphism);
    }
    let f = x.equation();
    let m = shifted(a.entries(), n);
    let chi = det3_poly(&m);
    let g = chi.gcd(&chi.derivative());
    match g.degree() {
        Some(0) => {
            let mut common = chi.clone();
            for j in 0..3 {
                let col = adjugate_column(&m, j);
                let h = f.eval_uni(&col).rem(&chi)?;
                common = common.gcd(&h);
            }
            Ok(common.degree().unwrap_or(0))
        }
        Some(1) => {
            let g = g.monic();
            let lambda = -&g.coeff(0);
            let trace = &(&a.entry(0, 0).clone() + a.entry(1, 1)) + a.entry(2, 2);
            let mu = &trace - &(&lambda + &lambda);
            let plane = minus_scalar(a.entries(), &lambda);
            if rank(&plane) != 1 {
                return Err(Error::NotFiniteOrder(format!("{a} is not diagonalizable")));
            }
            let basis = kernel(&plane);
            let rows: Matrix = (0..3).map(|i| vec![basis[0][i].clone(), basis[1][i].clone()]).collect();
            let restricted = f.substitute_linear(&rows)?;
            if restricted.is_zero() {
                return Err(Error::Precondition("the curve contains a line of fixed points".into()));
            }
            let on_line = distinct_root_count(&restricted)?;
            let point = kernel(&minus_scalar(a.entries(), &mu));
            let isolated = usize::from(f.eval(&point[0]).is_zero());
            Ok(on_line + isolated)
        }
        _ => Err(Error::NotFiniteOrder(format!("{a} has a single eigenvalue"))),
    }
}

/// Per-class data in a signature computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub order: u32,
    pub representative: ProjMap,
    pub subgroups: usize,
    pub fixed_points: usize,
    pub exact_stabilizer_points: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ledger {
    /// Sum over non-identity g of |Fix(g)|.
    pub fixed_point_total: u64,
    /// Sum over branch points of (|G|/c)(c - 1).
    pub ramification_total: u64,
    pub source_genus: u32,
    pub group_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub signature: Signature,
    pub classes: Vec<ClassReport>,
    pub ledger: Ledger,
}

pub fn signature(x: &PlaneCurve, g: &ProjGroup) -> Result<Signature> {
    Ok(signature_report(x, g)?.signature)
}

pub fn signature_report(x: &PlaneCurve, g: &ProjGroup) -> Result<SignatureReport> {
    let n = lcm(x.order(), g.field_order());
    let x = x.lift_to(n)?;
    let g = if n == g.field_order() { g.clone() } else { g.lift_to(n)? };
    let genus = x.genus();
    let order = g.order() as u64;
    let lattice = cyclic_subgroup_classes(&g);

    let class_fixed: Vec<usize> = lattice
        .classes
        .iter()
        .map(|c| fixed_point_count(&x, g.element(lattice.subgroups[c.representative].generator)))
        .collect::<Result<_>>()?;
    let fixed: Vec<i64> = lattice.subgroups.iter().map(|s| class_fixed[s.class_id] as i64).collect();

    let mut by_order: Vec<usize> = (0..lattice.subgroups.len()).collect();
    by_order.sort_by_key(|&i| std::cmp::Reverse(lattice.subgroups[i].order));
    let mut exact = vec![0i64; lattice.subgroups.len()];
    for &i in &by_order {
        let over: i64 = lattice.overgroups(i).map(|j| exact[j]).sum();
        exact[i] = fixed[i] - over;
        if exact[i] < 0 {
            return Err(Error::NegativeStabilizerCount {
                order: lattice.subgroups[i].order as usize,
            });
        }
    }

    let mut points_by_index: BTreeMap<u32, i64> = BTreeMap::new();
    for (i, s) in lattice.subgroups.iter().enumerate() {
        *points_by_index.entry(s.order).or_insert(0) += exact[i];
    }
    let mut indices = Vec::new();
    for (&c, &points) in &points_by_index {
        let num = points * c as i64;
        if num % order as i64 != 0 {
            return Err(Error::NonIntegerBranchCount {
                index: c as u64,
                numerator: num,
                denominator: order as i64,
            });
        }
        indices.extend(std::iter::repeat_n(c, (num / order as i64) as usize));
    }

    let ramification: u64 = indices.iter().map(|&c| order / c as u64 * (c as u64 - 1)).sum();
    // 2g - 2 = |G|(2 g0 - 2) + R
    let lhs = 2 * genus as i64 - 2 - ramification as i64;
    let denom = 2 * order as i64;
    if lhs % denom != 0 {
        return Err(Error::NonIntegerGenus {
            numerator: lhs + denom,
            denominator: denom,
        });
    }
    let g0 = lhs / denom + 1;
    if g0 < 0 {
        return Err(Error::NegativeGenus(g0));
    }

    let fixed_point_total = lattice
        .subgroups
        .iter()
        .map(|s| totient(s.order) as u64 * class_fixed[s.class_id] as u64)
        .sum();
    let classes = lattice
        .classes
        .iter()
        .map(|c| ClassReport {
            order: c.order,
            representative: g.element(lattice.subgroups[c.representative].generator).clone(),
            subgroups: c.subgroups.len(),
            fixed_points: class_fixed[c.id],
            exact_stabilizer_points: exact[c.representative],
        })
        .collect();
    Ok(SignatureReport {
        signature: Signature::new(g0 as u32, indices),
        classes,
        ledger: Ledger {
            fixed_point_total,
            ramification_total: ramification,
            source_genus: genus,
            group_order: g.order(),
        },
    })
}
