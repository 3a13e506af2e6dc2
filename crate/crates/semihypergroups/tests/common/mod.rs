//! Shared oracles for the integration suites. Everything here recomputes
//! results by an independent route so library outputs are checked against
//! first principles, not against themselves.

// each suite uses its own subset of these oracles
#![allow(dead_code)]

use num::{Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semihypergroups::rational::{rat, Rational};
use semihypergroups::{CayleyTable, ConvolutionCube, Measure};

/// Brute-force associativity over all n^3 triples:
/// `(e_i * e_j) * e_m == e_i * (e_j * e_m)` expanded coefficientwise.
pub fn brute_force_associative(cube: &ConvolutionCube) -> bool {
    let n = cube.n();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                for l in 0..n {
                    let lhs: Rational = (0..n)
                        .map(|k| cube.coeff(i, j, k) * cube.coeff(k, m, l))
                        .sum();
                    let rhs: Rational = (0..n)
                        .map(|k| cube.coeff(j, m, k) * cube.coeff(i, k, l))
                        .sum();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Closed form for the derived cube, independent of the matrix route:
/// `a[i][j](k) = m(g_i^{-1} g_k g_j^{-1})`.
pub fn closed_form_cube(g: &CayleyTable, m: &Measure) -> ConvolutionCube {
    ConvolutionCube::from_fn(g.n(), |i, j, k| {
        m.weight(g.mul(g.mul(g.inverse(i), k), g.inverse(j))).clone()
    })
    .expect("closed form is a valid cube")
}

/// Full-support measure with pairwise-distinct weights: n distinct integers
/// from a huge range, then normalized. The range matters: the measures that
/// break genericity satisfy small-coefficient linear relations among the
/// weights (vanishing character sums), and drawing numerators up to 10^6
/// makes hitting one vanishingly unlikely instead of a few percent.
pub fn random_distinct_measure(n: usize, rng: &mut ChaCha8Rng) -> Measure {
    let mut nums: Vec<i64> = Vec::with_capacity(n);
    while nums.len() < n {
        let v = (rng.next_u64() % 1_000_000 + 1) as i64;
        if !nums.contains(&v) {
            nums.push(v);
        }
    }
    let total: i64 = nums.iter().sum();
    Measure::new(nums.iter().map(|&w| rat(w, total)).collect()).expect("positive weights")
}

/// Arbitrary valid cube: positive numerators 1..=9 per entry, columns
/// normalized by their sums.
pub fn random_cube(n: usize, rng: &mut ChaCha8Rng) -> ConvolutionCube {
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let nums: Vec<i64> = (0..n).map(|_| (rng.next_u64() % 9 + 1) as i64).collect();
        let total: i64 = nums.iter().sum();
        columns.push(nums.into_iter().map(|p| rat(p, total)).collect());
    }
    ConvolutionCube::from_fn(n, |i, j, k| columns[i * n + j][k].clone())
        .expect("normalized columns")
}

/// Nudges one coefficient by 1/7 and renormalizes its column; the result is
/// a valid cube that is generically no longer associative.
pub fn perturb_cube(cube: &ConvolutionCube, rng: &mut ChaCha8Rng) -> ConvolutionCube {
    let n = cube.n();
    let i = (rng.next_u64() % n as u64) as usize;
    let j = (rng.next_u64() % n as u64) as usize;
    let k = (rng.next_u64() % n as u64) as usize;
    let mut column = cube.column(i, j);
    column[k] += rat(1, 7);
    let total: Rational = column.iter().sum();
    let column: Vec<Rational> = column.into_iter().map(|x| x / &total).collect();
    ConvolutionCube::from_fn(n, |a, b, c| {
        if (a, b) == (i, j) {
            column[c].clone()
        } else {
            cube.coeff(a, b, c).clone()
        }
    })
    .expect("renormalized column")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every group on `{0..n}` found by exhaustive Latin-square enumeration;
/// an independent census to check the catalog against (n <= 4).
pub fn groups_by_enumeration(n: usize) -> Vec<CayleyTable> {
    assert!(n <= 4, "enumeration is exponential");
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; n * n];
    fn fill(pos: usize, n: usize, table: &mut Vec<usize>, out: &mut Vec<CayleyTable>) {
        if pos == n * n {
            if let Ok(g) = CayleyTable::new(n, table.clone()) {
                out.push(g);
            }
            return;
        }
        let (r, c) = (pos / n, pos % n);
        'candidates: for v in 0..n {
            for cc in 0..c {
                if table[r * n + cc] == v {
                    continue 'candidates;
                }
            }
            for rr in 0..r {
                if table[rr * n + c] == v {
                    continue 'candidates;
                }
            }
            table[pos] = v;
            fill(pos + 1, n, table, out);
            table[pos] = usize::MAX;
        }
    }
    fill(0, n, &mut table, &mut out);
    out
}

/// Max-norm distance between two cubes, exact arithmetic, as f64.
pub fn cube_distance(a: &ConvolutionCube, b: &ConvolutionCube) -> f64 {
    assert_eq!(a.n(), b.n());
    let n = a.n();
    let mut worst = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = (a.coeff(i, j, k) - b.coeff(i, j, k)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    semihypergroups::rational::to_f64(&worst)
}
