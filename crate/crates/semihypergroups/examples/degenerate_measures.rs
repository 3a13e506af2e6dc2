//! What goes wrong when the measure is uniform on a subgroup: the derived
//! cube stays associative but collapses, and recovery refuses it.

use semihypergroups::rational::rat;
use semihypergroups::{
    cyclic, from_group, is_uniform_on_subgroup, recover_fallback, recover_group, Measure,
    RecoverError,
};

fn main() {
    let z4 = cyclic(4);

    // Uniform on the subgroup {e, g^2} of Z4.
    let m = Measure::new(vec![rat(1, 2), rat(0, 1), rat(1, 2), rat(0, 1)]).unwrap();
    println!(
        "measure uniform on a subgroup: {}",
        is_uniform_on_subgroup(&z4, &m).unwrap()
    );

    let d = from_group(&z4, &m).unwrap();
    println!("degenerate: {}", d.degenerate);
    println!("associative: {}", d.cube.is_associative());
    let report = d.cube.check_condition_a();
    println!(
        "condition A: distinct left rows {} of {}, ranks {:?}, holds {}",
        report.distinct_left_rows,
        d.cube.n(),
        report.left_ranks,
        report.holds
    );

    // The quotient route needs an invertible A_1; rank 2 kills it.
    match recover_fallback(&d.cube) {
        Err(RecoverError::SingularA1) => println!("fallback: left matrix 1 is singular"),
        other => println!("fallback: {other:?}"),
    }
    match recover_group(&d.cube) {
        Err(RecoverError::NotDerivable { diagnostics }) => {
            println!("recovery refused: {diagnostics}")
        }
        other => println!("recovery: {other:?}"),
    }

    // The fully uniform measure is the extreme case: every column equals it.
    let uniform = Measure::uniform(4);
    let d = from_group(&z4, &uniform).unwrap();
    println!(
        "\nuniform measure: degenerate {}, distinct left rows {}",
        d.degenerate,
        d.cube.check_condition_a().distinct_left_rows
    );

    // A generic measure on the same group sails through.
    let generic = Measure::new(vec![rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)]).unwrap();
    println!(
        "\ngeneric measure (1/2, 1/4, 1/8, 1/8): uniform-on-subgroup {}, condition A {}",
        is_uniform_on_subgroup(&z4, &generic).unwrap(),
        from_group(&z4, &generic)
            .unwrap()
            .cube
            .check_condition_a()
            .holds
    );
    println!(
        "recovered: {}",
        recover_group(&from_group(&z4, &generic).unwrap().cube).is_ok()
    );
}
