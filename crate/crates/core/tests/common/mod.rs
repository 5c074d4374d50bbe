#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use twofloat::TwoFloat;

use oddsig::exactnum::{lcm, totient, CyclotomicElement};
use oddsig::matgroup::ProjGroup;
use oddsig::plane::{PlaneCurve, ProjMap};
use oddsig::ramify::fixed_point_count;

pub const ORDERS: [u32; 9] = [1, 3, 4, 5, 7, 8, 9, 12, 15];

pub fn int(n: u32, v: i64) -> CyclotomicElement {
    CyclotomicElement::from_integer(n, v).unwrap()
}

pub fn zeta(n: u32, k: i64) -> CyclotomicElement {
    CyclotomicElement::zeta_pow(n, k).unwrap()
}

pub fn gauss(re: i64, im: i64) -> CyclotomicElement {
    &int(4, re) + &(&zeta(4, 1) * &int(4, im))
}

pub fn element_in(order: u32, height: i64) -> impl Strategy<Value = CyclotomicElement> {
    let d = totient(order) as usize;
    prop::collection::vec((-height..=height, 1i64..=6), d).prop_map(move |cs| {
        let cs: Vec<BigRational> = cs.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect();
        CyclotomicElement::from_coords(order, &cs).unwrap()
    })
}

pub fn order_strategy() -> impl Strategy<Value = u32> {
    prop::sample::select(ORDERS.to_vec())
}

pub fn element_triple() -> impl Strategy<Value = (CyclotomicElement, CyclotomicElement, CyclotomicElement)> {
    order_strategy().prop_flat_map(|n| (element_in(n, 20), element_in(n, 20), element_in(n, 20)))
}

/// A unit k mod n.
pub fn galois_exponent(n: u32) -> impl Strategy<Value = i64> {
    let units: Vec<i64> = (1..=n as i64).filter(|k| num_integer::gcd(*k, n as i64) == 1).collect();
    prop::sample::select(units)
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

/// Image of a under zeta_N -> exp(2 pi i k / N).
pub fn embed_at(a: &CyclotomicElement, k: i64) -> Complex64 {
    let n = a.order() as f64;
    a.coords()
        .iter()
        .enumerate()
        .map(|(j, c)| Complex64::from_polar(to_f64(c), 2.0 * PI * (j as f64) * (k as f64) / n))
        .sum()
}

pub fn embed(a: &CyclotomicElement) -> Complex64 {
    embed_at(a, 1)
}

/// |x - y| <= tol * max(|y|, scale).
pub fn close(x: Complex64, y: Complex64, scale: f64, tol: f64) -> bool {
    (x - y).norm() <= tol * y.norm().max(scale)
}

/// Sum over non-identity elements of the fixed point count, element by element.
pub fn fixed_point_total(x: &PlaneCurve, g: &ProjGroup) -> u64 {
    let n = lcm(x.order(), g.field_order());
    let x = x.lift_to(n).unwrap();
    g.elements()
        .iter()
        .filter(|a| !a.is_identity())
        .map(|a| fixed_point_count(&x, &a.lift_to(n).unwrap()).unwrap() as u64)
        .sum()
}

/// Checks the group structure by brute force: products by matrix
/// multiplication and a linear scan, identity, inverses and associativity.
pub fn check_multiplication_table(g: &ProjGroup) -> Result<(), String> {
    let els = g.elements();
    let find = |m: &ProjMap| els.iter().position(|e| e == m);
    let n = els.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = naive_product(&els[i], &els[j]);
            let k = find(&p).ok_or_else(|| format!("product of {i} and {j} not in group"))?;
            if g.product(i, j) != k {
                return Err(format!("table entry ({i}, {j}) is {} but should be {k}", g.product(i, j)));
            }
            table[i][j] = k;
        }
    }
    let e = els.iter().position(|m| m.is_identity()).ok_or("no identity")?;
    for i in 0..n {
        if table[e][i] != i || table[i][e] != i {
            return Err(format!("identity fails on {i}"));
        }
        if !(0..n).any(|j| table[i][j] == e && table[j][i] == e) {
            return Err(format!("{i} has no inverse"));
        }
        let mut row = table[i].clone();
        row.sort_unstable();
        row.dedup();
        if row.len() != n {
            return Err(format!("row {i} is not a permutation"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}

fn naive_product(a: &ProjMap, b: &ProjMap) -> ProjMap {
    let n = lcm(a.order(), b.order());
    let (a, b) = (a.lift_to(n).unwrap(), b.lift_to(n).unwrap());
    let mut m = vec![vec![int(n, 0); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            for k in 0..3 {
                *e += &(a.entry(i, k) * b.entry(k, j));
            }
        }
    }
    ProjMap::new(m).unwrap()
}

type C2 = Complex<TwoFloat>;

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// Number of distinct points of P^1 where sum c_k x^k y^(d-k) vanishes,
/// from numerically computed roots merged when closer than `sep`.
pub fn numeric_distinct_roots(coeffs: &[i64], sep: f64) -> usize {
    let d = coeffs.len() - 1;
    let top = (0..=d).rev().find(|&k| coeffs[k] != 0).expect("nonzero form");
    let at_infinity = usize::from(top < d);
    if top == 0 {
        return at_infinity;
    }
    let lead = tf(coeffs[top] as f64);
    let monic: Vec<C2> = coeffs[..=top].iter().map(|&c| C2::new(tf(c as f64) / lead, tf(0.0))).collect();
    let roots = aberth(&monic);
    let mut reps: Vec<C2> = Vec::new();
    for r in roots {
        let near = reps.iter().any(|s| {
            let dz = r - *s;
            (dz.re * dz.re + dz.im * dz.im).sqrt().hi() < sep
        });
        if !near {
            reps.push(r);
        }
    }
    reps.len() + at_infinity
}

fn eval(p: &[C2], z: C2) -> (C2, C2) {
    let zero = C2::new(tf(0.0), tf(0.0));
    let mut v = zero;
    let mut dv = zero;
    for c in p.iter().rev() {
        dv = dv * z + v;
        v = v * z + *c;
    }
    (v, dv)
}

/// Aberth-Ehrlich iteration in double-double precision.
fn aberth(p: &[C2]) -> Vec<C2> {
    let d = p.len() - 1;
    let bound: f64 = 1.0 + p[..d].iter().map(|c| (c.re * c.re + c.im * c.im).sqrt().hi()).fold(0.0, f64::max);
    let mut z: Vec<C2> = (0..d)
        .map(|k| {
            let t = 2.0 * PI * (k as f64 + 0.25) / d as f64 + 0.4;
            C2::new(tf(bound * 0.7 * t.cos()), tf(bound * 0.7 * t.sin()))
        })
        .collect();
    for _ in 0..4000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(p, z[i]);
            if v.re == tf(0.0) && v.im == tf(0.0) {
                continue;
            }
            let ratio = v / dv;
            let mut s = C2::new(tf(0.0), tf(0.0));
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.re != tf(0.0) || diff.im != tf(0.0) {
                        s += C2::new(tf(1.0), tf(0.0)) / diff;
                    }
                }
            }
            let step = ratio / (C2::new(tf(1.0), tf(0.0)) - ratio * s);
            if step.re.is_valid() && step.im.is_valid() {
                z[i] -= step;
                moved = moved.max((step.re * step.re + step.im * step.im).sqrt().hi());
            }
        }
        if moved < 1e-28 {
            break;
        }
    }
    z
}
