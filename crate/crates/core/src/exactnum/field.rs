//! Per-order data for Q(zeta_N): the cyclotomic polynomial and a table of
//! reduced powers of zeta_N, cached once per order.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Upper bound on supported cyclotomic orders.
pub const MAX_ORDER: u32 = 1 << 12;

#[derive(Debug)]
pub struct FieldData {
    pub order: u32,
    /// phi(N), the degree of Q(zeta_N) over Q.
    pub degree: usize,
    /// Coefficients of Phi_N, lowest degree first; monic, length `degree + 1`.
    pub cyclotomic: Vec<BigInt>,
    /// `powers[k]` is zeta_N^k in the power basis, for `k < max(N, 2 * degree - 1)`.
    pub powers: Vec<Vec<BigInt>>,
    /// Residues coprime to N, ascending.
    pub units: Vec<u32>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Field data for Q(zeta_N), built on first use.
pub fn field(order: u32) -> Result<Arc<FieldData>> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidOrder(order));
    }
    if let Some(f) = cache().read().unwrap().get(&order) {
        return Ok(f.clone());
    }
    let data = Arc::new(build(order));
    let mut w = cache().write().unwrap();
    Ok(w.entry(order).or_insert(data).clone())
}

/// The N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = divide_monic(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    poly_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(p)
        .clone()
}

/// Exact quotient of `num` by the monic `den`; the remainder is assumed zero.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn build(order: u32) -> FieldData {
    let cyclotomic = cyclotomic_polynomial(order).as_ref().clone();
    let degree = cyclotomic.len() - 1;
    let len = (order as usize).max(2 * degree - 1);
    let mut powers = Vec::with_capacity(len);
    let mut cur = vec![BigInt::zero(); degree];
    cur[0] = BigInt::one();
    for _ in 0..len {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient with Phi_N
        let top = cur[degree - 1].clone();
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..degree {
                cur[i] -= &top * &cyclotomic[i];
            }
        }
    }
    let units = (1..=order.max(1))
        .filter(|k| (*k as u64).gcd(&(order as u64)) == 1)
        .map(|k| k % order)
        .collect::<Vec<_>>();
    let mut units = units;
    units.sort_unstable();
    FieldData {
        order,
        degree,
        cyclotomic,
        powers,
        units,
    }
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn lcm(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}
