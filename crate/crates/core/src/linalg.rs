//! Exact linear algebra over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// The solution set `particular + span(basis)` of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub particular: Vec<Q>,
    /// Linearly independent spanning set of the homogeneous solutions.
    pub basis: Vec<Vec<Q>>,
}

impl AffineSolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `phi(x) = 0` for every `x` in the space.
    pub fn functional_vanishes(&self, phi: &[(usize, i64)]) -> bool {
        eval(phi, &self.particular).is_zero() && self.basis.iter().all(|b| eval(phi, b).is_zero())
    }

    /// `particular + Σ_j t^(j+1) basis_j`.
    pub fn moment_point(&self, t: &BigInt) -> Vec<Q> {
        let mut x = self.particular.clone();
        let mut pow = Q::from_integer(t.clone());
        let tq = pow.clone();
        for b in &self.basis {
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += bi * &pow;
                }
            }
            pow *= &tq;
        }
        x
    }
}

/// Evaluates a sparse integer functional.
pub fn eval(phi: &[(usize, i64)], x: &[Q]) -> Q {
    let mut acc = Q::zero();
    for &(i, c) in phi {
        acc += &x[i] * Q::from_integer(BigInt::from(c));
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(m: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        if !inv.is_one() {
            for x in m[row].iter_mut().skip(col) {
                *x *= &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `a x = b`; `None` if inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q], cols: usize) -> Option<AffineSolutionSpace> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, cols);
    if m[pivots.len()..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][cols].clone();
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let basis = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][free].clone();
            }
            v
        })
        .collect();
    Some(AffineSolutionSpace { particular, basis })
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (all zeros stay zeros).
pub fn primitive_integer(x: &[Q]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| (q * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}
