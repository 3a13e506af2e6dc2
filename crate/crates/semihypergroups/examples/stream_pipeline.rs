//! The full event-stream pipeline: simulate a second-order chain from a
//! cube, estimate a cube back from the events, snap it to small rationals,
//! and recover the generating group and measure exactly.

use num::Zero;
use semihypergroups::io::{analysis_to_json, stream_to_text};
use semihypergroups::rational::{rat, Rational};
use semihypergroups::{
    analyze_stream, cyclic, estimate_cube, from_group, simulate, snap_to_rational, Measure,
};

fn main() {
    let m = Measure::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
    let cube = from_group(&cyclic(3), &m).unwrap().cube;

    // ChaCha8 with a fixed seed: the same stream on every platform.
    let stream = simulate(&cube, (0, 0), 100_000, 42).unwrap();
    let text = stream_to_text(&stream);
    println!(
        "simulated {} events, file starts:\n{}",
        stream.len(),
        text.lines().take(2).collect::<Vec<_>>().join("\n")
    );

    let est = estimate_cube(&stream, &Rational::zero()).unwrap();
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let err = semihypergroups::rational::to_f64(
                    &(est.cube().coeff(i, j, k) - cube.coeff(i, j, k)),
                )
                .abs();
                worst = worst.max(err);
            }
        }
    }
    println!("\nmax estimation error: {worst:.5}");

    // Snapping replaces each column with the nearest one whose entries share
    // a denominator at most 6; here that recovers the exact cube.
    let snapped = snap_to_rational(&est, 6).unwrap();
    println!("snapped cube equals the generator: {}", snapped == cube);

    // The analysis report bundles every stage.
    let report = analyze_stream(&stream, &Rational::zero(), 0.05, 6).unwrap();
    println!(
        "residual {:.5} (tolerance {}), condition A at tolerance holds: {}",
        report.associativity_residual, report.assoc_tol, report.condition_a.holds
    );
    match &report.recovery {
        Some(r) => {
            let w: Vec<String> = r.measure.weights().iter().map(|x| x.to_string()).collect();
            println!(
                "recovered via {}: measure ({}), identity {}",
                r.method,
                w.join(", "),
                r.identity_index + 1
            );
        }
        None => println!("recovery failed: {:?}", report.recovery_error),
    }

    println!("\nfull report JSON:\n{}", analysis_to_json(&report));
}
