//! Second-order event streams: simulation from a cube, cube estimation from
//! an observed stream, rational snapping, and the tolerance-based analysis
//! pipeline that bridges estimated cubes back to the exact recovery machinery.
//!
//! Randomness comes from `ChaCha8Rng` seeded via `seed_from_u64`; the ChaCha8
//! output stream is fully specified and platform-independent, so a `(cube,
//! start, length, seed)` quadruple always yields the same events. Sampling
//! inverts the exact rational CDF of each column at `u = next_u64() / 2^64`,
//! so no floating-point rounding enters the simulation.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cube::ConvolutionCube;
use crate::linalg::Mat;
use crate::rational::{to_f64, Rational};
use crate::recover::{recover_group, RecoveryResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StreamError {
    #[error("start pair ({}, {}) out of range for n={n}", i + 1, j + 1)]
    BadStart { i: usize, j: usize, n: usize },
    #[error("length {length} is too short, need at least 2")]
    BadLength { length: usize },
    #[error("stream is too short to estimate a cube")]
    EmptyStream,
    /// Fields are 0-based; the message uses 1-based notation.
    #[error("symbol {} at position {} out of range for n={n}", symbol + 1, position + 1)]
    SymbolOutOfRange {
        position: usize,
        symbol: usize,
        n: usize,
    },
    #[error("smoothing must be nonnegative")]
    NegativeSmoothing,
    #[error("denominator bound must be at least 1")]
    ZeroDenominatorBound,
}

/// An observed or simulated sequence of events over the alphabet `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventStream {
    alphabet_size: usize,
    events: Vec<usize>,
    seed: Option<u64>,
}

impl EventStream {
    pub fn new(
        alphabet_size: usize,
        events: Vec<usize>,
        seed: Option<u64>,
    ) -> Result<Self, StreamError> {
        for (position, &symbol) in events.iter().enumerate() {
            if symbol >= alphabet_size {
                return Err(StreamError::SymbolOutOfRange {
                    position,
                    symbol,
                    n: alphabet_size,
                });
            }
        }
        Ok(Self {
            alphabet_size,
            events,
            seed,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn events(&self) -> &[usize] {
        &self.events
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Triple counts from a stream together with the smoothed frequency cube.
/// `pair_support` records which pairs `(i, j)` were actually observed;
/// unobserved pairs get the uniform column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimatedCube {
    n: usize,
    counts: Vec<u64>,      // flat, (i*n + j)*n + k
    pair_support: Vec<bool>, // flat, i*n + j
    cube: ConvolutionCube,
}

impl EstimatedCube {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, i: usize, j: usize, k: usize) -> u64 {
        self.counts[(i * self.n + j) * self.n + k]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn pair_supported(&self, i: usize, j: usize) -> bool {
        self.pair_support[i * self.n + j]
    }

    pub fn pair_support(&self) -> &[bool] {
        &self.pair_support
    }

    pub fn cube(&self) -> &ConvolutionCube {
        &self.cube
    }
}

/// Runs the second-order chain: the start pair is emitted first, then each
/// next symbol is drawn from the column `a[e_{t-1}][e_t]`. `length` counts
/// the start pair, so `length = 2` returns just the start.
pub fn simulate(
    cube: &ConvolutionCube,
    start: (usize, usize),
    length: usize,
    seed: u64,
) -> Result<EventStream, StreamError> {
    let n = cube.n();
    if start.0 >= n || start.1 >= n {
        return Err(StreamError::BadStart {
            i: start.0,
            j: start.1,
            n,
        });
    }
    if length < 2 {
        return Err(StreamError::BadLength { length });
    }
    // cumulative column sums, cdfs[i*n + j][k] = sum of a[i][j](0..=k)
    let mut cdfs: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Rational::zero();
            let cdf = (0..n)
                .map(|k| {
                    acc += cube.coeff(i, j, k);
                    acc.clone()
                })
                .collect();
            cdfs.push(cdf);
        }
    }
    let two_pow_64: BigInt = BigInt::one() << 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::with_capacity(length);
    events.push(start.0);
    events.push(start.1);
    while events.len() < length {
        let i = events[events.len() - 2];
        let j = events[events.len() - 1];
        let u = Rational::new(BigInt::from(rng.next_u64()), two_pow_64.clone());
        let cdf = &cdfs[i * n + j];
        // u < 1 and the cdf ends at exactly 1, so a k is always found
        let k = (0..n).find(|&k| u < cdf[k]).expect("cdf reaches 1");
        events.push(k);
    }
    Ok(EventStream {
        alphabet_size: n,
        events,
        seed: Some(seed),
    })
}

/// Counts consecutive triples and normalizes each column with additive
/// smoothing. A stream of length 2 carries no triples, so it is accepted
/// only with positive smoothing.
pub fn estimate_cube(
    stream: &EventStream,
    smoothing: &Rational,
) -> Result<EstimatedCube, StreamError> {
    if smoothing.is_negative() {
        return Err(StreamError::NegativeSmoothing);
    }
    let n = stream.alphabet_size();
    if n == 0 || stream.len() < 2 || (stream.len() < 3 && smoothing.is_zero()) {
        return Err(StreamError::EmptyStream);
    }
    let mut counts = vec![0u64; n * n * n];
    for w in stream.events().windows(3) {
        counts[(w[0] * n + w[1]) * n + w[2]] += 1;
    }
    let mut pair_support = vec![false; n * n];
    let n_rat = Rational::from_integer(BigInt::from(n as u64));
    let uniform = Rational::new(BigInt::one(), BigInt::from(n as u64));
    let mut columns: Vec<Rational> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let total: u64 = (0..n).map(|k| counts[(i * n + j) * n + k]).sum();
            pair_support[i * n + j] = total > 0;
            if total == 0 && smoothing.is_zero() {
                columns.extend(std::iter::repeat_n(uniform.clone(), n));
                continue;
            }
            let denom = Rational::from_integer(BigInt::from(total)) + smoothing * &n_rat;
            for k in 0..n {
                let c = Rational::from_integer(BigInt::from(counts[(i * n + j) * n + k]));
                columns.push((c + smoothing) / &denom);
            }
        }
    }
    let cube = ConvolutionCube::from_fn(n, |i, j, k| columns[(i * n + j) * n + k].clone())
        .expect("smoothed columns sum to 1");
    Ok(EstimatedCube {
        n,
        counts,
        pair_support,
        cube,
    })
}

/// Best column of the form `(c_1/D, ..., c_n/D)` for one denominator `D`:
/// floor the scaled entries, then hand out the remaining mass by largest
/// remainder (ties to the lowest index).
fn apportion(column: &[Rational], d: u64) -> Vec<Rational> {
    let d_rat = Rational::from_integer(BigInt::from(d));
    let mut cells: Vec<BigInt> = Vec::with_capacity(column.len());
    let mut fracs: Vec<(Rational, usize)> = Vec::with_capacity(column.len());
    let mut given = BigInt::zero();
    for (idx, x) in column.iter().enumerate() {
        let scaled = x * &d_rat;
        let fl = scaled.floor();
        fracs.push((&scaled - &fl, idx));
        let fl = fl.to_integer();
        given += &fl;
        cells.push(fl);
    }
    let remaining = (BigInt::from(d) - given)
        .to_usize()
        .expect("remainder below n");
    fracs.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    for &(_, idx) in fracs.iter().take(remaining) {
        cells[idx] += 1;
    }
    cells
        .into_iter()
        .map(|c| Rational::new(c, BigInt::from(d)))
        .collect()
}

/// Replaces every column with the nearest (max-norm) exactly normalized
/// column whose entries share a denominator `D <= denominator_bound`, trying
/// every `D` and keeping the closest (ties to the smallest `D`). A column
/// already of that form is its own nearest approximation, so snapping is
/// idempotent, and exact low-denominator cubes pass through unchanged.
pub fn snap_cube(cube: &ConvolutionCube, denominator_bound: u64) -> Result<ConvolutionCube, StreamError> {
    if denominator_bound == 0 {
        return Err(StreamError::ZeroDenominatorBound);
    }
    let n = cube.n();
    let mut snapped: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let column = cube.column(i, j);
            let mut best: Option<(Rational, Vec<Rational>)> = None;
            for d in 1..=denominator_bound {
                let candidate = apportion(&column, d);
                let dist = column
                    .iter()
                    .zip(&candidate)
                    .map(|(x, y)| (x - y).abs())
                    .max()
                    .expect("nonempty column");
                let better = match &best {
                    None => true,
                    Some((best_dist, _)) => dist < *best_dist,
                };
                if better {
                    best = Some((dist, candidate));
                }
            }
            snapped.push(best.expect("at least one denominator").1);
        }
    }
    Ok(ConvolutionCube::from_fn(n, |i, j, k| snapped[i * n + j][k].clone())
        .expect("apportioned columns sum to 1"))
}

/// Snaps the smoothed frequency cube of an estimate; see [`snap_cube`].
pub fn snap_to_rational(
    estimated: &EstimatedCube,
    denominator_bound: u64,
) -> Result<ConvolutionCube, StreamError> {
    snap_cube(estimated.cube(), denominator_bound)
}

/// Max-norm residual of the matrix associativity criterion,
/// `max |A_i A_j - sum_k a[i][j](k) A_k|`, computed exactly and reported as
/// a float. Exactly associative cubes give exactly 0.
pub fn associativity_residual(cube: &ConvolutionCube) -> f64 {
    let n = cube.n();
    let mats: Vec<Mat> = (0..n)
        .map(|i| cube.left_matrix(i).expect("valid index").entries().clone())
        .collect();
    let mut worst = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            let lhs = mats[i].mul(&mats[j]);
            let mut rhs = Mat::zeros(n, n);
            for k in 0..n {
                rhs.add_scaled(cube.coeff(i, j, k), &mats[k]);
            }
            for r in 0..n {
                for c in 0..n {
                    let diff = (lhs.at(r, c) - rhs.at(r, c)).abs();
                    if diff > worst {
                        worst = diff;
                    }
                }
            }
        }
    }
    to_f64(&worst)
}

/// The distinct-rows/full-rank condition evaluated numerically: rows closer
/// than `tolerance` in max norm are merged, and matrix ranks use Gaussian
/// elimination with pivots below `tolerance` treated as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceConditionA {
    pub tolerance: f64,
    pub distinct_left_rows: usize,
    pub distinct_right_rows: usize,
    pub left_ranks: Vec<usize>,
    pub right_ranks: Vec<usize>,
    /// Smallest max-norm distance between row clusters, over both sides;
    /// absent when each side collapses to a single cluster.
    pub min_row_gap: Option<f64>,
    pub holds: bool,
}

fn row_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn cluster_rows(rows: &[Vec<f64>], tolerance: f64) -> Vec<Vec<f64>> {
    let mut representatives: Vec<Vec<f64>> = Vec::new();
    for row in rows {
        if !representatives
            .iter()
            .any(|rep| row_distance(rep, row) <= tolerance)
        {
            representatives.push(row.clone());
        }
    }
    representatives
}

fn rank_at_tolerance(mut m: Vec<Vec<f64>>, tolerance: f64) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows)
            .max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).expect("finite"))
            .filter(|&r| m[r][c].abs() > tolerance);
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && m[r][c].abs() > 0.0 {
                let f = m[r][c] / m[rank][c];
                for cc in 0..cols {
                    m[r][cc] -= f * m[rank][cc];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Numeric screen for the distinct-rows/full-rank condition.
pub fn condition_a_at_tolerance(cube: &ConvolutionCube, tolerance: f64) -> ToleranceConditionA {
    let n = cube.n();
    let side = |right: bool| -> (Vec<Vec<f64>>, Vec<usize>) {
        let mut rows = Vec::with_capacity(n * n);
        let mut ranks = Vec::with_capacity(n);
        for i in 0..n {
            let m = if right {
                cube.right_matrix(i)
            } else {
                cube.left_matrix(i)
            }
            .expect("valid index");
            let as_f64: Vec<Vec<f64>> = (0..n)
                .map(|r| m.entries().row(r).iter().map(to_f64).collect())
                .collect();
            ranks.push(rank_at_tolerance(as_f64.clone(), tolerance));
            rows.extend(as_f64);
        }
        (rows, ranks)
    };
    let (left_rows, left_ranks) = side(false);
    let (right_rows, right_ranks) = side(true);
    let left_reps = cluster_rows(&left_rows, tolerance);
    let right_reps = cluster_rows(&right_rows, tolerance);
    let mut min_row_gap: Option<f64> = None;
    for reps in [&left_reps, &right_reps] {
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                let d = row_distance(&reps[a], &reps[b]);
                if min_row_gap.is_none_or(|g| d < g) {
                    min_row_gap = Some(d);
                }
            }
        }
    }
    let holds = left_reps.len() == n
        && right_reps.len() == n
        && left_ranks.iter().all(|&r| r == n)
        && right_ranks.iter().all(|&r| r == n);
    ToleranceConditionA {
        tolerance,
        distinct_left_rows: left_reps.len(),
        distinct_right_rows: right_reps.len(),
        left_ranks,
        right_ranks,
        min_row_gap,
        holds,
    }
}

/// Every stage of the pipeline on one stream: estimation, the numeric
/// associativity residual and condition screen, and the outcome of exact
/// recovery on the snapped cube. Tolerances are echoed so reports are
/// self-describing.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub n: usize,
    pub stream_length: usize,
    pub smoothing: Rational,
    pub assoc_tol: f64,
    pub denominator_bound: u64,
    pub associativity_residual: f64,
    pub associativity_within_tol: bool,
    pub condition_a: ToleranceConditionA,
    pub recovery: Option<RecoveryResult>,
    pub recovery_error: Option<String>,
}

/// Runs estimate, residual, condition screen, snap, and exact recovery on the
/// snapped cube. Recovery failures are recorded in the report rather than
/// propagated; only estimation itself can fail.
pub fn analyze_stream(
    stream: &EventStream,
    smoothing: &Rational,
    assoc_tol: f64,
    denominator_bound: u64,
) -> Result<AnalysisReport, StreamError> {
    if denominator_bound == 0 {
        return Err(StreamError::ZeroDenominatorBound);
    }
    let estimated = estimate_cube(stream, smoothing)?;
    let residual = associativity_residual(estimated.cube());
    let condition_a = condition_a_at_tolerance(estimated.cube(), assoc_tol);
    let snapped = snap_to_rational(&estimated, denominator_bound)?;
    let (recovery, recovery_error) = match recover_group(&snapped) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(AnalysisReport {
        n: estimated.n(),
        stream_length: stream.len(),
        smoothing: smoothing.clone(),
        assoc_tol,
        denominator_bound,
        associativity_residual: residual,
        associativity_within_tol: residual <= assoc_tol,
        condition_a,
        recovery,
        recovery_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Measure;
    use crate::derive::from_group;
    use crate::group::cyclic;
    use crate::rational::{rat, rat_int};

    fn cayley_cube(n: usize) -> ConvolutionCube {
        let g = cyclic(n);
        let d = from_group(&g, &Measure::point(n, g.identity())).unwrap();
        d.cube
    }

    fn z2_cube() -> ConvolutionCube {
        let m = Measure::new(vec![rat(2, 3), rat(1, 3)]).unwrap();
        from_group(&cyclic(2), &m).unwrap().cube
    }

    #[test]
    fn forced_chain_from_point_cube() {
        let c = cayley_cube(2);
        let s = simulate(&c, (0, 0), 10, 7).unwrap();
        assert_eq!(s.events(), &[0; 10]);
        // every next symbol is the group product of the previous two
        let s = simulate(&c, (0, 1), 12, 7).unwrap();
        let e = s.events();
        assert_eq!(&e[..2], &[0, 1]);
        for t in 0..e.len() - 2 {
            assert_eq!(e[t + 2], (e[t] + e[t + 1]) % 2);
        }
    }

    #[test]
    fn simulate_is_deterministic_in_the_seed() {
        let c = z2_cube();
        let a = simulate(&c, (0, 0), 200, 42).unwrap();
        let b = simulate(&c, (0, 0), 200, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed(), Some(42));
        let d = simulate(&c, (0, 0), 200, 43).unwrap();
        assert_ne!(a.events(), d.events());
    }

    #[test]
    fn simulate_rejects_bad_arguments() {
        let c = z2_cube();
        assert_eq!(
            simulate(&c, (0, 2), 10, 0).unwrap_err(),
            StreamError::BadStart { i: 0, j: 2, n: 2 }
        );
        assert_eq!(
            simulate(&c, (0, 0), 1, 0).unwrap_err(),
            StreamError::BadLength { length: 1 }
        );
    }

    #[test]
    fn empirical_frequencies_approach_the_column() {
        let c = z2_cube();
        let s = simulate(&c, (0, 0), 20_000, 42).unwrap();
        let e = s.events();
        let mut after_00 = 0u32;
        let mut hits_0 = 0u32;
        for t in 0..e.len() - 2 {
            if e[t] == 0 && e[t + 1] == 0 {
                after_00 += 1;
                if e[t + 2] == 0 {
                    hits_0 += 1;
                }
            }
        }
        let freq = f64::from(hits_0) / f64::from(after_00);
        assert!((freq - 2.0 / 3.0).abs() < 0.03, "freq={freq}");
    }

    #[test]
    fn estimate_counts_and_columns() {
        // events 1,2,2,1 in file notation, 0-based here
        let s = EventStream::new(2, vec![0, 1, 1, 0], None).unwrap();
        let est = estimate_cube(&s, &Rational::zero()).unwrap();
        assert_eq!(est.count(0, 1, 1), 1);
        assert_eq!(est.count(1, 1, 0), 1);
        assert_eq!(est.counts().iter().sum::<u64>(), 2);
        assert_eq!(est.cube().column(0, 1), vec![rat_int(0), rat_int(1)]);
        assert_eq!(est.cube().column(1, 1), vec![rat_int(1), rat_int(0)]);
        assert!(est.pair_supported(0, 1));
        assert!(est.pair_supported(1, 1));
        assert!(!est.pair_supported(0, 0));
        assert!(!est.pair_supported(1, 0));
        // unobserved pairs fall back to the uniform column
        assert_eq!(est.cube().column(0, 0), vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn estimate_with_smoothing() {
        let s = EventStream::new(2, vec![0, 1, 1, 0], None).unwrap();
        let est = estimate_cube(&s, &rat_int(1)).unwrap();
        // (0 + 1)/(1 + 2), (1 + 1)/(1 + 2)
        assert_eq!(est.cube().column(0, 1), vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(est.cube().column(0, 0), vec![rat(1, 2), rat(1, 2)]);
        assert!(!est.pair_supported(0, 0));
    }

    #[test]
    fn estimate_rejects_too_short_streams() {
        let s = EventStream::new(2, vec![0], None).unwrap();
        assert_eq!(
            estimate_cube(&s, &rat_int(1)).unwrap_err(),
            StreamError::EmptyStream
        );
        let s = EventStream::new(2, vec![0, 1], None).unwrap();
        assert_eq!(
            estimate_cube(&s, &Rational::zero()).unwrap_err(),
            StreamError::EmptyStream
        );
        // length 2 is fine once smoothing covers the unobserved mass
        assert!(estimate_cube(&s, &rat(1, 2)).is_ok());
        assert_eq!(
            estimate_cube(&s, &rat(-1, 2)).unwrap_err(),
            StreamError::NegativeSmoothing
        );
        assert!(EventStream::new(2, vec![0, 2], None).is_err());
    }

    #[test]
    fn snap_examples() {
        let c = ConvolutionCube::from_fn(3, |_, _, k| match k {
            0 => rat(334, 1000),
            1 => rat(333, 1000),
            _ => rat(333, 1000),
        })
        .unwrap();
        let s = snap_cube(&c, 3).unwrap();
        assert_eq!(s.column(0, 0), vec![rat(1, 3), rat(1, 3), rat(1, 3)]);

        let c = ConvolutionCube::from_fn(3, |_, _, k| match k {
            0 => rat(501, 1000),
            1 => rat(332, 1000),
            _ => rat(167, 1000),
        })
        .unwrap();
        let s = snap_cube(&c, 6).unwrap();
        assert_eq!(s.column(0, 0), vec![rat(1, 2), rat(1, 3), rat(1, 6)]);
    }

    #[test]
    fn snap_is_idempotent_and_fixes_exact_cubes() {
        let m = Measure::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        let exact = from_group(&cyclic(3), &m).unwrap().cube;
        assert_eq!(snap_cube(&exact, 6).unwrap(), exact);
        // denominators 2 stay fixed even when the bound is not a multiple
        let c = ConvolutionCube::from_fn(3, |_, _, k| match k {
            0 => rat(1, 2),
            1 => rat(1, 2),
            _ => rat_int(0),
        })
        .unwrap();
        assert_eq!(snap_cube(&c, 5).unwrap(), c);
        // a noisy cube snaps to the same thing twice
        let noisy = ConvolutionCube::from_fn(3, |i, j, k| match k {
            0 => rat(480 + (i + j) as i64, 1000),
            1 => rat(340, 1000),
            _ => rat(180 - (i + j) as i64, 1000),
        })
        .unwrap();
        let once = snap_cube(&noisy, 6).unwrap();
        assert_eq!(snap_cube(&once, 6).unwrap(), once);
        assert!(matches!(
            snap_cube(&noisy, 0),
            Err(StreamError::ZeroDenominatorBound)
        ));
    }

    #[test]
    fn residual_zero_on_exact_cubes() {
        assert_eq!(associativity_residual(&z2_cube()), 0.0);
        let s = EventStream::new(2, vec![0, 1, 1, 0, 0, 1, 0], None).unwrap();
        let est = estimate_cube(&s, &rat_int(1)).unwrap();
        assert!(associativity_residual(est.cube()) > 0.0);
    }

    #[test]
    fn tolerance_screen_matches_exact_on_clean_cubes() {
        let report = condition_a_at_tolerance(&z2_cube(), 1e-9);
        assert!(report.holds);
        assert_eq!(report.distinct_left_rows, 2);
        assert_eq!(report.left_ranks, vec![2, 2]);
        let gap = report.min_row_gap.unwrap();
        assert!((gap - 1.0 / 3.0).abs() < 1e-12);
        let uniform = ConvolutionCube::from_fn(2, |_, _, _| rat(1, 2)).unwrap();
        let report = condition_a_at_tolerance(&uniform, 1e-9);
        assert!(!report.holds);
        assert_eq!(report.distinct_left_rows, 1);
        assert_eq!(report.min_row_gap, None);
    }

    #[test]
    fn analyze_recovers_a_simulated_cyclic_stream() {
        let m = Measure::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        let cube = from_group(&cyclic(3), &m).unwrap().cube;
        let stream = simulate(&cube, (0, 0), 20_000, 42).unwrap();
        let report = analyze_stream(&stream, &Rational::zero(), 0.08, 6).unwrap();
        assert!(
            report.associativity_within_tol,
            "residual {}",
            report.associativity_residual
        );
        assert!(report.condition_a.holds, "{:?}", report.condition_a);
        let recovery = report.recovery.expect("certified recovery");
        assert!(recovery.certified);
        assert_eq!(recovery.measure.weights(), m.weights());
        assert_eq!(report.recovery_error, None);
    }

    #[test]
    fn analyze_flags_non_derivable_streams() {
        // uniform cube: associative but every left matrix is singular
        let uniform = ConvolutionCube::from_fn(3, |_, _, _| rat(1, 3)).unwrap();
        let stream = simulate(&uniform, (0, 1), 4_000, 11).unwrap();
        let report = analyze_stream(&stream, &Rational::zero(), 0.08, 3).unwrap();
        assert!(report.recovery.is_none());
        let err = report.recovery_error.unwrap();
        assert!(err.contains("singular"), "{err}");
        assert!(!report.condition_a.holds);
    }

    #[test]
    fn analyze_is_deterministic() {
        let cube = z2_cube();
        let stream = simulate(&cube, (0, 0), 2_000, 5).unwrap();
        let a = analyze_stream(&stream, &rat(1, 2), 0.05, 3).unwrap();
        let b = analyze_stream(&stream, &rat(1, 2), 0.05, 3).unwrap();
        assert_eq!(a, b);
    }
}
