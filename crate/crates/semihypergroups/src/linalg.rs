//! Dense exact-rational matrices.
//!
//! Just enough linear algebra for the rest of the crate: multiplication,
//! exact rank, exact inversion, and a permutation-matrix test. Rank is
//! computed fraction-free (Bareiss) over integers after clearing each row's
//! denominators, so no tolerance is ever involved.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::rational::Rational;

/// A `rows x cols` matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    /// Row `r` as a contiguous slice.
    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Mat::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| self.at(r, k) * rhs.at(k, c)).sum()
        })
    }

    /// `self + c * other`, entrywise.
    pub fn add_scaled(&mut self, scale: &Rational, other: &Mat) {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        for (d, o) in self.data.iter_mut().zip(&other.data) {
            *d += scale * o;
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Exact rank via fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled to integers; row scaling does not change the
    /// rank, and the integer recurrence avoids rational gcd churn.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let lcm = self
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                self.row(r)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();

        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                for cc in c + 1..self.cols {
                    let t = &m[r][cc] * &m[rank][c] - &m[r][c] * &m[rank][cc];
                    m[r][cc] = t / &prev;
                }
                m[r][c] = BigInt::zero();
            }
            prev = m[rank][c].clone();
            rank += 1;
        }
        rank
    }

    /// Exact inverse via Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if p != col {
                for c in 0..n {
                    let (x, y) = (a.at(p, c).clone(), a.at(col, c).clone());
                    a.set(p, c, y);
                    a.set(col, c, x);
                    let (x, y) = (inv.at(p, c).clone(), inv.at(col, c).clone());
                    inv.set(p, c, y);
                    inv.set(col, c, x);
                }
            }
            let piv = a.at(col, col).clone();
            for c in 0..n {
                let v = a.at(col, c) / &piv;
                a.set(col, c, v);
                let v = inv.at(col, c) / &piv;
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let v = a.at(r, c) - &f * a.at(col, c);
                    a.set(r, c, v);
                    let v = inv.at(r, c) - &f * inv.at(col, c);
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }

    /// True when every entry is 0 or 1 with exactly one 1 per row and column.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        let mut row_ones = vec![0usize; n];
        let mut col_ones = vec![0usize; n];
        for r in 0..n {
            for c in 0..n {
                let x = self.at(r, c);
                if x.is_one() {
                    row_ones[r] += 1;
                    col_ones[c] += 1;
                } else if !x.is_zero() {
                    return false;
                }
            }
        }
        row_ones.iter().all(|&k| k == 1) && col_ones.iter().all(|&k| k == 1)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
