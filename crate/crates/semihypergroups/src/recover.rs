//! The inverse problem: given a convolution cube, decide whether it is
//! derived from a `(group, measure)` pair and, if so, produce one with an
//! exact certificate.
//!
//! Two routes are tried. The slice route reads the positions sharing a single
//! coefficient value as the graph of a binary operation and validates it as a
//! group. The quotient route divides each left matrix by the first one and
//! checks that the quotients form a group of permutation matrices. Either way
//! a candidate is only accepted after `from_group` rebuilds the input cube
//! entry for entry, so a recovery can fail by refusing but never by lying.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::cube::{ConvolutionCube, Measure};
use crate::derive::from_group;
use crate::group::{is_isomorphic, CayleyTable, GroupError};
use crate::linalg::Mat;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecoverError {
    #[error("cube is not associative")]
    NotAssociative,
    #[error("slice at value {value} is not the graph of an operation")]
    SliceNotOperation { value: Rational },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("left matrix 1 is singular, its exact rank is below n")]
    SingularA1,
    #[error("quotient of left matrix {} by left matrix 1 is not a permutation matrix", i + 1)]
    NotPermutation { i: usize },
    #[error("quotient matrices are not closed under product at pair ({}, {})", i + 1, j + 1)]
    NotClosed { i: usize, j: usize },
    #[error("cube is not derived from a group: {diagnostics}")]
    NotDerivable { diagnostics: String },
    #[error("size {actual} does not match cube size {expected}")]
    SizeMismatch { expected: usize, actual: usize },
}

/// The positions `(i, j, k)` at which the cube takes one fixed value, read as
/// a candidate operation `op(i, j) = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceRelation {
    pub n: usize,
    pub value: Rational,
    /// Lexicographically sorted.
    pub triples: Vec<(usize, usize, usize)>,
    /// Exactly one `k` for every pair `(i, j)`.
    pub is_operation: bool,
    /// Every `(i, k)` appears with some `j`.
    pub row_surjective: bool,
    /// Every `(j, k)` appears with some `i`.
    pub col_surjective: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryMethod {
    Slice,
    QuotientFallback,
}

impl fmt::Display for RecoveryMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoveryMethod::Slice => write!(f, "slice"),
            RecoveryMethod::QuotientFallback => write!(f, "quotient-fallback"),
        }
    }
}

/// A certified decomposition: `from_group(group, measure)` rebuilds the
/// input cube exactly. `identity_index` is the cube index acting as the
/// group identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryResult {
    pub group: CayleyTable,
    pub measure: Measure,
    pub identity_index: usize,
    pub method: RecoveryMethod,
    pub certified: bool,
    pub diagnostics: String,
}

/// Groups the cube's entries by value, ascending.
pub fn value_slices(cube: &ConvolutionCube) -> Vec<SliceRelation> {
    let n = cube.n();
    let mut by_value: BTreeMap<Rational, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                by_value
                    .entry(cube.coeff(i, j, k).clone())
                    .or_default()
                    .push((i, j, k));
            }
        }
    }
    by_value
        .into_iter()
        .map(|(value, triples)| {
            let mut pair_counts = vec![0usize; n * n];
            let mut row_hit = vec![false; n * n];
            let mut col_hit = vec![false; n * n];
            for &(i, j, k) in &triples {
                pair_counts[i * n + j] += 1;
                row_hit[i * n + k] = true;
                col_hit[j * n + k] = true;
            }
            SliceRelation {
                n,
                value,
                triples,
                is_operation: pair_counts.iter().all(|&c| c == 1),
                row_surjective: row_hit.iter().all(|&h| h),
                col_surjective: col_hit.iter().all(|&h| h),
            }
        })
        .collect()
}

/// Reads the slice as a table `op(i, j) = k` and validates it as a group.
pub fn slice_to_group(slice: &SliceRelation) -> Result<CayleyTable, RecoverError> {
    if !slice.is_operation {
        return Err(RecoverError::SliceNotOperation {
            value: slice.value.clone(),
        });
    }
    let n = slice.n;
    let mut product = vec![0usize; n * n];
    for &(i, j, k) in &slice.triples {
        product[i * n + j] = k;
    }
    Ok(CayleyTable::new(n, product)?)
}

/// True iff `from_group(g, m)` rebuilds `cube` entry for entry.
pub fn verify_recovery(
    cube: &ConvolutionCube,
    g: &CayleyTable,
    m: &Measure,
) -> Result<bool, RecoverError> {
    if g.n() != cube.n() {
        return Err(RecoverError::SizeMismatch {
            expected: cube.n(),
            actual: g.n(),
        });
    }
    if m.len() != cube.n() {
        return Err(RecoverError::SizeMismatch {
            expected: cube.n(),
            actual: m.len(),
        });
    }
    let rebuilt = from_group(g, m).expect("sizes checked").cube;
    Ok(rebuilt == *cube)
}

fn column_measure(cube: &ConvolutionCube, t: usize) -> Measure {
    Measure::new(cube.column(t, t)).expect("cube column is a distribution")
}

/// Tries every value slice: each slice that validates as a group contributes
/// a candidate `(group, identity, a[identity][identity])`, kept only if the
/// exact reconstruction certificate passes. Among certified candidates the
/// lowest identity index wins. If no slice certifies, falls back to the
/// quotient route. Requires an associative cube.
pub fn recover_group(cube: &ConvolutionCube) -> Result<RecoveryResult, RecoverError> {
    if !cube.is_associative() {
        return Err(RecoverError::NotAssociative);
    }
    let slices = value_slices(cube);
    let mut groups: Vec<(Rational, CayleyTable)> = Vec::new();
    for slice in &slices {
        if !slice.is_operation {
            continue;
        }
        if let Ok(g) = slice_to_group(slice) {
            groups.push((slice.value.clone(), g));
        }
    }
    let mut all_isomorphic = true;
    for a in 0..groups.len() {
        for b in a + 1..groups.len() {
            if is_isomorphic(&groups[a].1, &groups[b].1)
                .expect("same order")
                .is_none()
            {
                all_isomorphic = false;
            }
        }
    }
    let mut certified: Option<(usize, Rational, CayleyTable)> = None;
    for (value, g) in &groups {
        let t = g.identity();
        let m = column_measure(cube, t);
        if verify_recovery(cube, g, &m).expect("same size") {
            let better = match &certified {
                None => true,
                Some((best, _, _)) => t < *best,
            };
            if better {
                certified = Some((t, value.clone(), g.clone()));
            }
        }
    }
    let iso_note = if groups.len() > 1 && !all_isomorphic {
        "; warning: slice groups are not pairwise isomorphic"
    } else {
        ""
    };
    if let Some((t, value, g)) = certified {
        let measure = column_measure(cube, t);
        return Ok(RecoveryResult {
            group: g,
            measure,
            identity_index: t,
            method: RecoveryMethod::Slice,
            certified: true,
            diagnostics: format!(
                "slice at value {value} certified with identity {}; {} of {} slices form groups{iso_note}",
                t + 1,
                groups.len(),
                slices.len(),
            ),
        });
    }
    match recover_fallback(cube) {
        Ok(mut r) => {
            r.diagnostics = format!(
                "no slice certified ({} of {} slices form groups{iso_note}); {}",
                groups.len(),
                slices.len(),
                r.diagnostics,
            );
            Ok(r)
        }
        Err(RecoverError::NotDerivable { diagnostics }) => Err(RecoverError::NotDerivable {
            diagnostics: format!(
                "no slice certified ({} of {} slices form groups{iso_note}); {diagnostics}",
                groups.len(),
                slices.len(),
            ),
        }),
        Err(e) => Err(RecoverError::NotDerivable {
            diagnostics: format!(
                "no slice certified ({} of {} slices form groups{iso_note}); quotient route failed: {e}",
                groups.len(),
                slices.len(),
            ),
        }),
    }
}

/// Quotient route: `P_i = A_i A_1^{-1}` must all be permutation matrices
/// closed under product; their table, re-based at each candidate identity
/// `t` with measure `a[t][t]`, is checked by exact reconstruction. The
/// lowest certifying `t` wins.
pub fn recover_fallback(cube: &ConvolutionCube) -> Result<RecoveryResult, RecoverError> {
    if !cube.is_associative() {
        return Err(RecoverError::NotAssociative);
    }
    let n = cube.n();
    let lefts: Vec<Mat> = (0..n)
        .map(|i| cube.left_matrix(i).expect("valid index").entries().clone())
        .collect();
    let a1_inv = lefts[0].inverse().ok_or(RecoverError::SingularA1)?;
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (i, a) in lefts.iter().enumerate() {
        let p = a.mul(&a1_inv);
        if !p.is_permutation() {
            return Err(RecoverError::NotPermutation { i });
        }
        // image[c] = row of the 1 in column c
        let image = (0..n)
            .map(|c| (0..n).find(|&r| !p.at(r, c).is_zero()).expect("permutation"))
            .collect();
        perms.push(image);
    }
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let composed: Vec<usize> = (0..n).map(|c| perms[i][perms[j][c]]).collect();
            let t = perms
                .iter()
                .position(|p| *p == composed)
                .ok_or(RecoverError::NotClosed { i, j })?;
            table[i * n + j] = t;
        }
    }
    let base = CayleyTable::new(n, table).map_err(|e| RecoverError::NotDerivable {
        diagnostics: format!("quotient table is not a group: {e}"),
    })?;
    for t in 0..n {
        // re-base the quotient group so that index t is its identity
        let tinv = base.inverse(t);
        let candidate = CayleyTable::from_fn(n, |i, j| base.mul(base.mul(i, tinv), j))
            .expect("isotope of a group by a fixed element");
        let m = column_measure(cube, t);
        if verify_recovery(cube, &candidate, &m).expect("same size") {
            return Ok(RecoveryResult {
                group: candidate,
                measure: m,
                identity_index: t,
                method: RecoveryMethod::QuotientFallback,
                certified: true,
                diagnostics: format!(
                    "quotient of left matrices certified with identity {}",
                    t + 1
                ),
            });
        }
    }
    Err(RecoverError::NotDerivable {
        diagnostics: "quotient matrices form a group but no candidate identity reconstructs the cube"
            .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::ConvolutionCube;
    use crate::derive::from_group;
    use crate::group::cyclic;
    use crate::rational::{rat, rat_int};
    use num::{One, Zero};

    fn z2_cube() -> ConvolutionCube {
        let m = Measure::new(vec![rat(2, 3), rat(1, 3)]).unwrap();
        from_group(&cyclic(2), &m).unwrap().cube
    }

    fn left_absorbing(n: usize) -> ConvolutionCube {
        ConvolutionCube::from_fn(n, |_, _, k| {
            if k == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .unwrap()
    }

    fn delta_cube_of(table: impl Fn(usize, usize) -> usize, n: usize) -> ConvolutionCube {
        ConvolutionCube::from_fn(n, |i, j, k| {
            if table(i, j) == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .unwrap()
    }

    #[test]
    fn slices_of_z2_cube() {
        let slices = value_slices(&z2_cube());
        assert_eq!(slices.len(), 2);
        let s13 = &slices[0];
        assert_eq!(s13.value, rat(1, 3));
        assert_eq!(s13.triples, vec![(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]);
        assert!(s13.is_operation && s13.row_surjective && s13.col_surjective);
        let s23 = &slices[1];
        assert_eq!(s23.value, rat(2, 3));
        assert_eq!(s23.triples, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
        assert!(s23.is_operation);
    }

    #[test]
    fn uniform_cube_has_one_non_operation_slice() {
        let c = ConvolutionCube::from_fn(2, |_, _, _| rat(1, 2)).unwrap();
        let slices = value_slices(&c);
        assert_eq!(slices.len(), 1);
        assert_eq!(slices[0].triples.len(), 8);
        assert!(!slices[0].is_operation);
        assert!(slices[0].row_surjective && slices[0].col_surjective);
        assert!(matches!(
            slice_to_group(&slices[0]),
            Err(RecoverError::SliceNotOperation { .. })
        ));
    }

    #[test]
    fn slice_groups_of_z2_cube_have_different_identities() {
        let slices = value_slices(&z2_cube());
        let g13 = slice_to_group(&slices[0]).unwrap();
        assert_eq!(g13.identity(), 1);
        let g23 = slice_to_group(&slices[1]).unwrap();
        assert_eq!(g23.identity(), 0);
        assert!(is_isomorphic(&g13, &g23).unwrap().is_some());
    }

    #[test]
    fn non_latin_and_non_associative_slices_are_rejected() {
        // constant operation: slice(1) of the left-absorbing cube is op(i,j)=1
        let slices = value_slices(&left_absorbing(2));
        let s1 = slices.iter().find(|s| s.value.is_one()).unwrap();
        assert!(s1.is_operation);
        assert!(matches!(
            slice_to_group(s1),
            Err(RecoverError::Group(GroupError::NotLatinSquare { .. }))
        ));
        // op(i,j) = (2i + j) mod 5 is Latin but not associative
        let c = delta_cube_of(|i, j| (2 * i + j) % 5, 5);
        let slices = value_slices(&c);
        let s1 = slices.iter().find(|s| s.value.is_one()).unwrap();
        assert!(matches!(
            slice_to_group(s1),
            Err(RecoverError::Group(GroupError::NotAssociative { .. }))
        ));
    }

    #[test]
    fn recover_z2_cube_by_slices() {
        let r = recover_group(&z2_cube()).unwrap();
        assert!(r.certified);
        assert_eq!(r.method, RecoveryMethod::Slice);
        assert_eq!(r.identity_index, 0);
        assert_eq!(r.measure.weights(), &[rat(2, 3), rat(1, 3)]);
        assert!(is_isomorphic(&r.group, &cyclic(2)).unwrap().is_some());
        assert!(r.diagnostics.contains("2 of 2 slices form groups"));
    }

    #[test]
    fn recover_z3_cube() {
        let m = Measure::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        let cube = from_group(&cyclic(3), &m).unwrap().cube;
        let r = recover_group(&cube).unwrap();
        assert!(r.certified);
        assert_eq!(r.identity_index, 0);
        assert_eq!(r.measure, m);
        assert!(is_isomorphic(&r.group, &cyclic(3)).unwrap().is_some());
    }

    #[test]
    fn recover_rejects_non_associative_cube() {
        let c = delta_cube_of(|i, j| (2 * i + j) % 5, 5);
        assert!(matches!(
            recover_group(&c),
            Err(RecoverError::NotAssociative)
        ));
        assert!(matches!(
            recover_fallback(&c),
            Err(RecoverError::NotAssociative)
        ));
    }

    #[test]
    fn left_absorbing_cube_is_not_derivable() {
        let err = recover_group(&left_absorbing(2)).unwrap_err();
        match err {
            RecoverError::NotDerivable { diagnostics } => {
                assert!(diagnostics.contains("singular"), "{diagnostics}");
            }
            other => panic!("expected NotDerivable, got {other:?}"),
        }
    }

    #[test]
    fn uniform_cube_fallback_reports_singular_a1() {
        let c = ConvolutionCube::from_fn(2, |_, _, _| rat(1, 2)).unwrap();
        assert!(matches!(
            recover_fallback(&c),
            Err(RecoverError::SingularA1)
        ));
        assert!(matches!(
            recover_group(&c),
            Err(RecoverError::NotDerivable { .. })
        ));
    }

    #[test]
    fn fallback_agrees_on_z2_cube() {
        let r = recover_fallback(&z2_cube()).unwrap();
        assert!(r.certified);
        assert_eq!(r.method, RecoveryMethod::QuotientFallback);
        assert_eq!(r.identity_index, 0);
        assert_eq!(r.measure.weights(), &[rat(2, 3), rat(1, 3)]);
    }

    #[test]
    fn cayley_cube_recovered_with_point_measure() {
        let z3 = cyclic(3);
        let cube = delta_cube_of(|i, j| z3.mul(i, j), 3);
        let r = recover_group(&cube).unwrap();
        assert!(r.certified);
        assert_eq!(r.measure, Measure::point(3, r.identity_index));
        assert!(is_isomorphic(&r.group, &z3).unwrap().is_some());
        let f = recover_fallback(&cube).unwrap();
        assert!(f.certified);
        assert!(is_isomorphic(&f.group, &r.group).unwrap().is_some());
        assert_eq!(f.measure, Measure::point(3, f.identity_index));
    }

    #[test]
    fn verify_recovery_examples() {
        let cube = z2_cube();
        let z2 = cyclic(2);
        let good = Measure::new(vec![rat(2, 3), rat(1, 3)]).unwrap();
        let bad = Measure::new(vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert!(verify_recovery(&cube, &z2, &good).unwrap());
        assert!(!verify_recovery(&cube, &z2, &bad).unwrap());
        let one = ConvolutionCube::from_fn(1, |_, _, _| rat_int(1)).unwrap();
        assert!(verify_recovery(&one, &cyclic(1), &Measure::point(1, 0)).unwrap());
        assert!(matches!(
            verify_recovery(&one, &z2, &good),
            Err(RecoverError::SizeMismatch { .. })
        ));
    }
}
