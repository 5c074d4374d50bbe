//! Dense linear algebra over Q(zeta_N).

use crate::exactnum::CyclotomicElement;

pub type Matrix = Vec<Vec<CyclotomicElement>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if !m[r][j].is_zero() {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a).len()
}

/// Basis of the right kernel {v : m v = 0}.
pub fn kernel(m: &Matrix) -> Vec<Vec<CyclotomicElement>> {
    let cols = m.first().map_or(0, Vec::len);
    let order = m[0][0].order();
    let mut a = m.clone();
    let pivots = row_reduce(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CyclotomicElement::zero(order).unwrap(); cols];
            v[f] = CyclotomicElement::one(order).unwrap();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

pub fn det3(m: &Matrix) -> CyclotomicElement {
    let t = |i: usize, j: usize, k: usize| &(&m[0][i] * &m[1][j]) * &m[2][k];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}

/// Adjugate of a 3x3 matrix, so that `adj(m) * m = det(m) * I`.
pub fn adjugate3(m: &Matrix) -> Matrix {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
    };
    let others = |i: usize| match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut adj = vec![vec![CyclotomicElement::zero(m[0][0].order()).unwrap(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            let v = minor(r0, r1, c0, c1);
            adj[i][j] = if (i + j) % 2 == 0 { v } else { -&v };
        }
    }
    adj
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let order = a[0][0].order();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = CyclotomicElement::zero(order).unwrap();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            acc += &(&a[i][l] * &b[l][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[CyclotomicElement]) -> Vec<CyclotomicElement> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(CyclotomicElement::zero(v[0].order()).unwrap(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}
