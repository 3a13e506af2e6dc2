//! Convolution cubes and their exact structural checks.
//!
//! A convolution cube stores the coefficients `a[i][j](k)` of a binary
//! convolution `e_i * e_j = sum_k a[i][j](k) e_k` on `n` states: every
//! coefficient is nonnegative and each column `a[i][j](.)` sums to exactly 1.
//! The checks in this module (associativity, the distinct-rows/full-rank
//! condition, value-multiset structure) are all decided in exact rational
//! arithmetic; violations come back as data rather than panics so that
//! estimated cubes can be diagnosed too.
//!
//! All in-memory indices are 0-based. File formats (see [`crate::io`]) and
//! error messages use the 1-based `a[i][j](k)` notation.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::Mat;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubeError {
    /// Fields are 0-based; the message uses the 1-based notation.
    #[error("coefficient a[{}][{}]({}) is negative", i + 1, j + 1, k + 1)]
    NegativeCoefficient { i: usize, j: usize, k: usize },
    #[error("column a[{}][{}] sums to {actual_sum}, expected 1", i + 1, j + 1)]
    NotNormalized {
        i: usize,
        j: usize,
        actual_sum: Rational,
    },
    #[error("expected {expected} coefficients in shape n*n*n, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("length {actual} does not match n={expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("weight {k} is negative")]
    NegativeWeight { k: usize },
    #[error("weights sum to {actual_sum}, expected 1")]
    WeightsNotNormalized { actual_sum: Rational },
    #[error("matrix column {col} sums to {actual_sum}, expected 1")]
    ColumnNotNormalized { col: usize, actual_sum: Rational },
    #[error("matrix entry ({row},{col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("n must be positive")]
    EmptyCube,
}

/// A probability vector: nonnegative exact rationals summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    weights: Vec<Rational>,
}

impl Measure {
    pub fn new(weights: Vec<Rational>) -> Result<Self, CubeError> {
        if weights.is_empty() {
            return Err(CubeError::EmptyCube);
        }
        if let Some(k) = weights.iter().position(|w| w.is_negative()) {
            return Err(CubeError::NegativeWeight { k });
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(CubeError::WeightsNotNormalized { actual_sum: sum });
        }
        Ok(Self { weights })
    }

    /// Point mass at index `at`.
    pub fn point(n: usize, at: usize) -> Self {
        assert!(at < n);
        let weights = (0..n)
            .map(|k| {
                if k == at {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Self { weights }
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        let w = Rational::new(1.into(), (n as i64).into());
        Self {
            weights: vec![w; n],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, k: usize) -> &Rational {
        &self.weights[k]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Indices carrying strictly positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| !self.weights[k].is_zero())
            .collect()
    }
}

/// Which regular-representation matrix a [`StochasticMatrix`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `A_i`: columns are `a[i][1], ..., a[i][n]` (0-based index stored).
    Left(usize),
    /// `B_i`: columns are `a[1][i], ..., a[n][i]`.
    Right(usize),
    /// The base matrix `M` representing a measure.
    Base,
}

/// A column-stochastic matrix: nonnegative entries, every column sums to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticMatrix {
    entries: Mat,
    orientation: Orientation,
}

impl StochasticMatrix {
    pub fn new(entries: Mat, orientation: Orientation) -> Result<Self, CubeError> {
        for c in 0..entries.cols() {
            let mut sum = Rational::zero();
            for r in 0..entries.rows() {
                let x = entries.at(r, c);
                if x.is_negative() {
                    return Err(CubeError::NegativeEntry { row: r, col: c });
                }
                sum += x;
            }
            if !sum.is_one() {
                return Err(CubeError::ColumnNotNormalized {
                    col: c,
                    actual_sum: sum,
                });
            }
        }
        Ok(Self {
            entries,
            orientation,
        })
    }

    pub fn entries(&self) -> &Mat {
        &self.entries
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }
}

/// The full coefficient cube `a[i][j](k)`, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionCube {
    n: usize,
    coeffs: Vec<Rational>, // flat, index (i*n + j)*n + k
}

/// One exact failure of the matrix associativity criterion: entry
/// `(row, col)` of `A_i A_j` differs from the same entry of
/// `sum_k a[i][j](k) A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityViolation {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of the distinct-rows/full-rank check ("condition A"): across all
/// left matrices there must be exactly `n` distinct rows, likewise across all
/// right matrices, and every individual matrix must have full exact rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionAReport {
    pub distinct_left_rows: usize,
    pub distinct_right_rows: usize,
    pub left_ranks: Vec<usize>,
    pub right_ranks: Vec<usize>,
    pub holds: bool,
}

/// Value-multiset structure of a cube: the sorted distinct coefficient values
/// with multiplicities, whether rows/columns all carry the same multiset, and
/// whether all diagonals are constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// Sorted ascending, with total multiplicity `n^3`.
    pub distinct_values: Vec<(Rational, usize)>,
    /// The distinct values themselves sum to exactly 1.
    pub values_sum_to_one: bool,
    pub row_multisets_uniform: bool,
    pub column_multisets_uniform: bool,
    pub diagonals_constant: bool,
    /// Exactly `n` distinct values, summing to 1, uniform across rows and
    /// cube columns.
    pub n_value_profile: bool,
}

impl ConvolutionCube {
    /// Validates and stores an `n x n x n` coefficient array,
    /// `coeffs[i][j][k] = a[i][j](k)`.
    pub fn new(n: usize, coeffs: Vec<Vec<Vec<Rational>>>) -> Result<Self, CubeError> {
        if n == 0 {
            return Err(CubeError::EmptyCube);
        }
        let mut flat = Vec::with_capacity(n * n * n);
        if coeffs.len() != n {
            return Err(CubeError::ShapeMismatch {
                expected: n * n * n,
                actual: coeffs.iter().map(|p| p.iter().map(Vec::len).sum::<usize>()).sum(),
            });
        }
        for plane in &coeffs {
            if plane.len() != n || plane.iter().any(|col| col.len() != n) {
                return Err(CubeError::ShapeMismatch {
                    expected: n * n * n,
                    actual: coeffs
                        .iter()
                        .map(|p| p.iter().map(Vec::len).sum::<usize>())
                        .sum(),
                });
            }
        }
        for plane in coeffs {
            for col in plane {
                flat.extend(col);
            }
        }
        Self::from_flat(n, flat)
    }

    /// Builds a cube from a coefficient function, then validates it.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize, usize) -> Rational,
    ) -> Result<Self, CubeError> {
        if n == 0 {
            return Err(CubeError::EmptyCube);
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    flat.push(f(i, j, k));
                }
            }
        }
        Self::from_flat(n, flat)
    }

    fn from_flat(n: usize, coeffs: Vec<Rational>) -> Result<Self, CubeError> {
        if coeffs.len() != n * n * n {
            return Err(CubeError::ShapeMismatch {
                expected: n * n * n,
                actual: coeffs.len(),
            });
        }
        let cube = Self { n, coeffs };
        for i in 0..n {
            for j in 0..n {
                let mut sum = Rational::zero();
                for k in 0..n {
                    let x = cube.coeff(i, j, k);
                    if x.is_negative() {
                        return Err(CubeError::NegativeCoefficient { i, j, k });
                    }
                    sum += x;
                }
                if !sum.is_one() {
                    return Err(CubeError::NotNormalized {
                        i,
                        j,
                        actual_sum: sum,
                    });
                }
            }
        }
        Ok(cube)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.coeffs[(i * self.n + j) * self.n + k]
    }

    /// The column `a[i][j]`, i.e. the distribution of `e_i * e_j`.
    pub fn column(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.n).map(|k| self.coeff(i, j, k).clone()).collect()
    }

    /// Left regular-representation matrix `A_i`, whose `j`-th column is
    /// `a[i][j]`.
    pub fn left_matrix(&self, i: usize) -> Result<StochasticMatrix, CubeError> {
        if i >= self.n {
            return Err(CubeError::IndexOutOfRange { index: i, n: self.n });
        }
        let m = Mat::from_fn(self.n, self.n, |k, j| self.coeff(i, j, k).clone());
        StochasticMatrix::new(m, Orientation::Left(i))
    }

    /// Right regular-representation matrix `B_i`, whose `j`-th column is
    /// `a[j][i]`.
    pub fn right_matrix(&self, i: usize) -> Result<StochasticMatrix, CubeError> {
        if i >= self.n {
            return Err(CubeError::IndexOutOfRange { index: i, n: self.n });
        }
        let m = Mat::from_fn(self.n, self.n, |k, j| self.coeff(j, i, k).clone());
        StochasticMatrix::new(m, Orientation::Right(i))
    }

    /// Bilinear extension of the convolution to measures:
    /// `sum_{i,j} mu_i nu_j a[i][j]`.
    pub fn convolve(&self, mu: &Measure, nu: &Measure) -> Result<Measure, CubeError> {
        if mu.len() != self.n {
            return Err(CubeError::LengthMismatch {
                expected: self.n,
                actual: mu.len(),
            });
        }
        if nu.len() != self.n {
            return Err(CubeError::LengthMismatch {
                expected: self.n,
                actual: nu.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.n];
        for i in 0..self.n {
            if mu.weight(i).is_zero() {
                continue;
            }
            for j in 0..self.n {
                if nu.weight(j).is_zero() {
                    continue;
                }
                let w = mu.weight(i) * nu.weight(j);
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &w * self.coeff(i, j, k);
                }
            }
        }
        Measure::new(out)
    }

    /// Exact matrix associativity criterion: for every pair `(i, j)` the
    /// product `A_i A_j` must equal `sum_k a[i][j](k) A_k` entrywise.
    /// Returns every failing entry; the cube is associative iff the list is
    /// empty.
    pub fn check_associativity(&self) -> Vec<AssociativityViolation> {
        let mats: Vec<Mat> = (0..self.n)
            .map(|i| self.left_matrix(i).expect("valid index").entries.clone())
            .collect();
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let lhs = mats[i].mul(&mats[j]);
                let mut rhs = Mat::zeros(self.n, self.n);
                for k in 0..self.n {
                    rhs.add_scaled(self.coeff(i, j, k), &mats[k]);
                }
                for row in 0..self.n {
                    for col in 0..self.n {
                        if lhs.at(row, col) != rhs.at(row, col) {
                            out.push(AssociativityViolation {
                                i,
                                j,
                                row,
                                col,
                                lhs: lhs.at(row, col).clone(),
                                rhs: rhs.at(row, col).clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        self.check_associativity().is_empty()
    }

    /// Distinct-rows/full-rank check in exact arithmetic. Rows are compared
    /// by exact vector equality; ranks are exact.
    pub fn check_condition_a(&self) -> ConditionAReport {
        let lefts: Vec<Mat> = (0..self.n)
            .map(|i| self.left_matrix(i).expect("valid index").entries.clone())
            .collect();
        let rights: Vec<Mat> = (0..self.n)
            .map(|i| self.right_matrix(i).expect("valid index").entries.clone())
            .collect();
        let distinct_rows = |mats: &[Mat]| {
            let mut rows: Vec<&[Rational]> = mats
                .iter()
                .flat_map(|m| (0..m.rows()).map(move |r| m.row(r)))
                .collect();
            rows.sort();
            rows.dedup();
            rows.len()
        };
        let distinct_left_rows = distinct_rows(&lefts);
        let distinct_right_rows = distinct_rows(&rights);
        let left_ranks: Vec<usize> = lefts.iter().map(Mat::rank).collect();
        let right_ranks: Vec<usize> = rights.iter().map(Mat::rank).collect();
        let holds = distinct_left_rows == self.n
            && distinct_right_rows == self.n
            && left_ranks.iter().all(|&r| r == self.n)
            && right_ranks.iter().all(|&r| r == self.n);
        ConditionAReport {
            distinct_left_rows,
            distinct_right_rows,
            left_ranks,
            right_ranks,
            holds,
        }
    }

    /// Value-multiset structure: distinct values with multiplicities, row and
    /// cube-column multiset uniformity, constant diagonals.
    pub fn structure_report(&self) -> StructureReport {
        let n = self.n;
        let mut counts: BTreeMap<&Rational, usize> = BTreeMap::new();
        for x in &self.coeffs {
            *counts.entry(x).or_insert(0) += 1;
        }
        let distinct_values: Vec<(Rational, usize)> = counts
            .iter()
            .map(|(v, &c)| ((*v).clone(), c))
            .collect();
        let values_sum: Rational = distinct_values.iter().map(|(v, _)| v).sum();
        let values_sum_to_one = values_sum.is_one();

        let multiset = |xs: &mut Vec<Rational>| {
            xs.sort();
        };
        // reference multiset: first row of A_1 (entries a[0][j](0) over j)
        let mut reference: Vec<Rational> = (0..n).map(|j| self.coeff(0, j, 0).clone()).collect();
        multiset(&mut reference);

        let mut row_multisets_uniform = true;
        'rows: for i in 0..n {
            for k in 0..n {
                let mut row: Vec<Rational> = (0..n).map(|j| self.coeff(i, j, k).clone()).collect();
                multiset(&mut row);
                if row != reference {
                    row_multisets_uniform = false;
                    break 'rows;
                }
            }
        }

        let mut column_reference: Vec<Rational> = self.column(0, 0);
        multiset(&mut column_reference);
        let mut column_multisets_uniform = true;
        'cols: for i in 0..n {
            for j in 0..n {
                let mut col = self.column(i, j);
                multiset(&mut col);
                if col != column_reference {
                    column_multisets_uniform = false;
                    break 'cols;
                }
            }
        }

        let mut diagonals_constant = true;
        'diag: for i in 0..n {
            // diag of A_i is a[i][k](k); diag of B_i is a[k][i](k)
            for k in 1..n {
                if self.coeff(i, k, k) != self.coeff(i, 0, 0)
                    || self.coeff(k, i, k) != self.coeff(0, i, 0)
                {
                    diagonals_constant = false;
                    break 'diag;
                }
            }
        }

        let n_value_profile = distinct_values.len() == n
            && values_sum_to_one
            && row_multisets_uniform
            && column_multisets_uniform;
        StructureReport {
            distinct_values,
            values_sum_to_one,
            row_multisets_uniform,
            column_multisets_uniform,
            diagonals_constant,
            n_value_profile,
        }
    }
}
