//! Build a small convolution cube by hand and run every exact check on it.

use semihypergroups::rational::rat;
use semihypergroups::{ConvolutionCube, Measure};

fn main() {
    // The order-2 cube with columns (2/3, 1/3) on matching parities and
    // (1/3, 2/3) otherwise. Validation checks nonnegativity and that every
    // column sums to exactly 1.
    let cube = ConvolutionCube::from_fn(2, |i, j, k| {
        if (i + j + k) % 2 == 0 {
            rat(2, 3)
        } else {
            rat(1, 3)
        }
    })
    .unwrap();

    println!("cube on n = {} states", cube.n());
    for i in 0..2 {
        for j in 0..2 {
            let col: Vec<String> = cube.column(i, j).iter().map(|x| x.to_string()).collect();
            println!("  a[{}][{}] = ({})", i + 1, j + 1, col.join(", "));
        }
    }

    // Associativity is an exact matrix identity: A_i A_j = sum_k a[i][j](k) A_k.
    let violations = cube.check_associativity();
    println!("\nassociative: {}", violations.is_empty());

    // Condition A: n distinct rows on each side, every matrix of full rank.
    let report = cube.check_condition_a();
    println!(
        "distinct rows: left {}, right {}; ranks: left {:?}, right {:?}; holds: {}",
        report.distinct_left_rows,
        report.distinct_right_rows,
        report.left_ranks,
        report.right_ranks,
        report.holds
    );

    // Value structure: distinct coefficients, their multiplicities, and the
    // uniformity that characterizes group-derived cubes.
    let s = cube.structure_report();
    println!("\ndistinct values:");
    for (value, count) in &s.distinct_values {
        println!("  {value} appears {count} times");
    }
    println!("values sum to one: {}", s.values_sum_to_one);
    println!("row multisets uniform: {}", s.row_multisets_uniform);
    println!("column multisets uniform: {}", s.column_multisets_uniform);
    println!("diagonals constant: {}", s.diagonals_constant);
    println!("n-value profile: {}", s.n_value_profile);

    // Convolving point masses reads off a column; convolving anything else
    // mixes columns bilinearly.
    let u = Measure::uniform(2);
    let d = Measure::point(2, 0);
    let mixed = cube.convolve(&d, &u).unwrap();
    let w: Vec<String> = mixed.weights().iter().map(|x| x.to_string()).collect();
    println!("\ndelta_1 * uniform = ({})", w.join(", "));

    // Constructive rejection: a column that sums to 5/6 is refused.
    let bad = ConvolutionCube::new(
        1,
        vec![vec![vec![rat(5, 6)]]],
    );
    println!("bad cube rejected: {}", bad.unwrap_err());
}
