//! Exact arithmetic and dense linear algebra over a prime field F_p with a
//! runtime modulus. Everything here is elementary row reduction; sizes in
//! this crate are small enough that no care beyond O(n^3) is warranted.

use crate::error::{Error, Result};

/// Arithmetic context for F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

pub type Vector = Vec<u64>;
pub type Matrix = Vec<Vec<u64>>;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Parse { field: "p".into(), message: format!("{p} is not prime") });
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; by convention 0^(-1) = 0.
    pub fn inv(&self, a: u64) -> u64 {
        if a % self.p == 0 {
            0
        } else {
            self.pow(a, self.p - 2)
        }
    }

    /// Some square root of `a`, if one exists. Linear scan; moduli here are tiny.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (0..self.p).find(|&x| self.mul(x, x) == a)
    }

    pub fn vec_add(&self, a: &[u64], b: &[u64]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn vec_scale(&self, c: u64, a: &[u64]) -> Vector {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn mat_vec(&self, m: &Matrix, v: &[u64]) -> Vector {
        m.iter().map(|row| self.dot(row, v)).collect()
    }

    /// Reduced row echelon form. Returns (rref, pivot column per pivot row).
    pub fn rref(&self, m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut a = m.to_vec();
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i][c] % self.p != 0) else { continue };
            a.swap(r, pr);
            let inv = self.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && a[i][c] % self.p != 0 {
                    let factor = a[i][c];
                    for c2 in 0..cols {
                        let s = self.mul(factor, a[r][c2]);
                        a[i][c2] = self.sub(a[i][c2], s);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        self.rref(m).1.len()
    }

    /// Particular solution of `m x = b` with free variables set to zero.
    pub fn solve(&self, m: &Matrix, b: &[u64]) -> Option<Vector> {
        let rows = m.len();
        assert_eq!(rows, b.len());
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut aug: Matrix =
            m.iter().zip(b).map(|(row, &bi)| row.iter().copied().chain([bi]).collect()).collect();
        if rows == 0 {
            return Some(vec![0; cols]);
        }
        let (red, pivots) = self.rref(&aug);
        aug = red;
        // Inconsistent iff a pivot lands in the augmented column.
        if pivots.contains(&cols) {
            return None;
        }
        let mut x = vec![0u64; cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[row][cols];
        }
        Some(x)
    }

    /// Basis of the right nullspace of `m` (columns = variables).
    pub fn nullspace(&self, m: &Matrix, cols: usize) -> Vec<Vector> {
        if m.is_empty() {
            return (0..cols)
                .map(|j| (0..cols).map(|i| u64::from(i == j)).collect())
                .collect();
        }
        let (red, pivots) = self.rref(m);
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.neg(red[row][free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn invert(&self, m: &Matrix) -> Option<Matrix> {
        let n = m.len();
        let mut aug: Matrix = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter().copied().chain((0..n).map(|j| u64::from(i == j))).collect()
            })
            .collect();
        let (red, pivots) = self.rref(&aug);
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        aug = red;
        Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// True iff the rows of `m` are linearly independent.
    pub fn independent(&self, m: &Matrix) -> bool {
        self.rank(m) == m.len()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
