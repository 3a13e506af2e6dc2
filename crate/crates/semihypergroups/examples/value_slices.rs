//! Anatomy of the slice method: the positions sharing one coefficient value
//! form the graph of a group operation when the cube is group-derived.

use semihypergroups::rational::rat;
use semihypergroups::{cyclic, from_group, slice_to_group, value_slices, Measure};

fn main() {
    let m = Measure::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
    let cube = from_group(&cyclic(3), &m).unwrap().cube;

    // One slice per distinct coefficient value, ascending.
    for slice in value_slices(&cube) {
        println!(
            "value {}: {} triples, operation: {}, surjective rows/cols: {}/{}",
            slice.value,
            slice.triples.len(),
            slice.is_operation,
            slice.row_surjective,
            slice.col_surjective
        );
        match slice_to_group(&slice) {
            Ok(g) => {
                // each slice is the same group wearing a different identity
                println!(
                    "  group of order {} with identity at index {}",
                    g.n(),
                    g.identity() + 1
                );
            }
            Err(e) => println!("  not a group: {e}"),
        }
    }

    // A cube that is not group-derived tells it on its slices: the constant
    // column cube has two slices and neither is a Latin square.
    use num::{One, Zero};
    use semihypergroups::{ConvolutionCube, Rational};
    let absorbing = ConvolutionCube::from_fn(3, |_, _, k| {
        if k == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
    .unwrap();
    println!("\nleft-absorbing cube (every product is e_1):");
    println!("  associative: {}", absorbing.is_associative());
    for slice in value_slices(&absorbing) {
        let verdict = match slice_to_group(&slice) {
            Ok(_) => "a group".to_string(),
            Err(e) => e.to_string(),
        };
        println!("  value {}: {}", slice.value, verdict);
    }
}
