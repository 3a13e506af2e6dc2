//! Building a convolution cube from a `(group, measure)` pair.
//!
//! The elements of the resulting semihypergroup are the translates `m * g_i`
//! of one measure `m`. Concretely: `M = sum_k m_k G_k` over the left regular
//! representations `G_k`, then `M_i = G_i M`, and cube column `a[i][j]` is
//! column `j` of `M_i`. The output is exactly associative by construction.

use num::Zero;
use thiserror::Error;

use crate::cube::{ConvolutionCube, Measure, Orientation, StochasticMatrix};
use crate::group::{is_uniform_on_subgroup, CayleyTable};
use crate::linalg::Mat;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeriveError {
    #[error("measure length {actual} does not match group order {expected}")]
    LengthMismatch { expected: usize, actual: usize },
}

/// The cube together with the matrices that built it. `degenerate` marks
/// measures that are uniform on a subgroup: the cube is still a valid
/// semihypergroup, but the distinct-rows/full-rank condition is not claimed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationResult {
    pub cube: ConvolutionCube,
    pub base_matrix: StochasticMatrix,
    pub left_matrices: Vec<StochasticMatrix>,
    pub degenerate: bool,
}

fn check_len(g: &CayleyTable, m: &Measure) -> Result<(), DeriveError> {
    if m.len() != g.n() {
        return Err(DeriveError::LengthMismatch {
            expected: g.n(),
            actual: m.len(),
        });
    }
    Ok(())
}

/// `M = sum_k m_k G_k`: entry `(k, j)` is the weight the translate of `e_j`
/// puts on `e_k`, i.e. `m(g_k g_j^{-1})`.
pub fn base_matrix(g: &CayleyTable, m: &Measure) -> Result<StochasticMatrix, DeriveError> {
    check_len(g, m)?;
    let n = g.n();
    let mut entries = Mat::zeros(n, n);
    for k in 0..n {
        if m.weight(k).is_zero() {
            continue;
        }
        let gk = g.left_regular(k);
        for j in 0..n {
            let r = gk.image[j];
            let v = entries.at(r, j) + m.weight(k);
            entries.set(r, j, v);
        }
    }
    Ok(StochasticMatrix::new(entries, Orientation::Base).expect("columns of M sum to 1"))
}

/// Derives the full cube: `a[i][j]` = column `j` of `G_i M`.
pub fn from_group(g: &CayleyTable, m: &Measure) -> Result<DerivationResult, DeriveError> {
    check_len(g, m)?;
    let n = g.n();
    let base = base_matrix(g, m)?;
    let mut left_matrices = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n * n * n);
    for i in 0..n {
        // G_i M permutes the rows of M: (G_i M)[k][j] = M[g_i^{-1} g_k][j]
        let mi = Mat::from_fn(n, n, |k, j| {
            base.entries().at(g.mul(g.inverse(i), k), j).clone()
        });
        for j in 0..n {
            for k in 0..n {
                coeffs.push(mi.at(k, j).clone());
            }
        }
        left_matrices.push(
            StochasticMatrix::new(mi, Orientation::Left(i)).expect("permuted rows of M"),
        );
    }
    let cube = ConvolutionCube::from_fn(n, |i, j, k| {
        left_matrices[i].entries().at(k, j).clone()
    })
    .expect("columns of M_i sum to 1");
    let degenerate = is_uniform_on_subgroup(g, m).expect("length checked");
    Ok(DerivationResult {
        cube,
        base_matrix: base,
        left_matrices,
        degenerate,
    })
}

/// Closed form for one coefficient of the derived cube:
/// `a[i][j](k) = m(g_i^{-1} g_k g_j^{-1})`.
pub fn coefficient(g: &CayleyTable, m: &Measure, i: usize, j: usize, k: usize) -> Rational {
    m.weight(g.mul(g.mul(g.inverse(i), k), g.inverse(j))).clone()
}
