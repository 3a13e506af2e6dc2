//! Walk the group catalog: every isomorphism class up to order 8, regular
//! representations, subgroups, and isomorphism testing.

use semihypergroups::{by_name, catalog, cyclic, direct_product, is_isomorphic};

fn main() {
    for order in 1..=8 {
        let groups = catalog(order).unwrap();
        let names: Vec<&str> = groups.iter().map(|(n, _)| n.as_str()).collect();
        println!("order {order}: {}", names.join(", "));
    }

    // Z6 and Z2xZ3 are the same group in different clothes; Z4 and Z2xZ2
    // are not isomorphic.
    let z6 = cyclic(6);
    let z2xz3 = direct_product(&cyclic(2), &cyclic(3));
    let iso = is_isomorphic(&z6, &z2xz3).unwrap();
    println!("\nZ6 ~ Z2xZ3: {}", iso.is_some());
    if let Some(iso) = iso {
        println!("  witness map: {:?}", iso.map);
    }
    let iso = is_isomorphic(&cyclic(4), &by_name("Z2xZ2").unwrap()).unwrap();
    println!("Z4 ~ Z2xZ2: {}", iso.is_some());

    // Subgroups are enumerated by closure; Q8 famously has every subgroup
    // normal, with exactly six of them.
    let q8 = by_name("Q8").unwrap();
    println!("\nsubgroups of Q8 (1-based element sets):");
    for sub in q8.subgroups() {
        let members: Vec<String> = sub.iter().map(|&x| (x + 1).to_string()).collect();
        println!("  {{{}}}", members.join(", "));
    }

    // The left regular representation turns elements into permutation
    // matrices; the product of matrices tracks the product of elements.
    let s3 = by_name("S3").unwrap();
    let a = 1;
    let b = 3;
    let ga = s3.left_regular(a).to_mat();
    let gb = s3.left_regular(b).to_mat();
    let gab = s3.left_regular(s3.mul(a, b)).to_mat();
    println!(
        "\nS3: G_{} . G_{} == G_({}.{}): {}",
        a + 1,
        b + 1,
        a + 1,
        b + 1,
        ga.mul(&gb) == gab
    );

    // Element orders distinguish D4 from Q8 at a glance.
    let d4 = by_name("D4").unwrap();
    let orders = |g: &semihypergroups::CayleyTable| {
        let mut o: Vec<usize> = (0..g.n()).map(|i| g.element_order(i)).collect();
        o.sort_unstable();
        o
    };
    println!("element orders D4: {:?}", orders(&d4));
    println!("element orders Q8: {:?}", orders(&q8));
}
