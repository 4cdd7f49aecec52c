//! Conjugation and similarity testing, including the effect of the group
//! choice: at degree 8 with divisor 4 the cyclic and the non-cyclic
//! regular group give minimal semigroups that are not similar.
//!
//! Run with: cargo run --example similarity

use semitransitive::constructors::{consecutive_partition, cyclic_group, regular_group, type1, type3};
use semitransitive::pperm::PartialPerm;
use semitransitive::semigroup::are_similar;

fn main() {
    let partition = consecutive_partition(6, 2);
    let group = cyclic_group(6, partition[0]).unwrap();
    let a = type1(6, 2, &group, &partition).unwrap();

    // a relabeled copy is recognized, with the witness returned
    let sigma = PartialPerm::parse("(1,6)(2,5)(3,4)", 6).unwrap();
    let b = a.conjugate(&sigma).unwrap();
    match are_similar(&a, &b) {
        Some(w) => println!("family 1 and its relabeling: similar via {w}"),
        None => println!("family 1 and its relabeling: NOT similar (unexpected)"),
    }

    // different families of the same size are told apart
    let c = type3(6, 2, &group, &partition).unwrap();
    println!(
        "family 1 vs family 3 at degree 6: {}",
        match are_similar(&a, &c) {
            Some(w) => format!("similar via {w}"),
            None => "not similar".to_string(),
        }
    );

    // two regular groups exist on four points; both give minimal
    // semigroups at degree 8, and they are genuinely different
    let partition = consecutive_partition(8, 4);
    let cyclic4 = cyclic_group(8, partition[0]).unwrap();
    let klein = regular_group(&[
        PartialPerm::parse("(1,2)(3,4)", 8).unwrap(),
        PartialPerm::parse("(1,3)(2,4)", 8).unwrap(),
    ])
    .unwrap();
    let with_cyclic = type1(8, 4, &cyclic4, &partition).unwrap();
    let with_klein = type1(8, 4, &klein, &partition).unwrap();
    println!(
        "degree 8, divisor 4: cyclic-group instance vs klein-group instance: {}",
        match are_similar(&with_cyclic, &with_klein) {
            Some(w) => format!("similar via {w}"),
            None => "not similar (the group is a real parameter)".to_string(),
        }
    );
}
