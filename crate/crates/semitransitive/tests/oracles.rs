//! Independent oracles: a pruning-free similarity check by enumeration of
//! all n! relabelings, run against the library's pruned search, plus the
//! empirical answers to the questions the classification leaves open
//! (degenerate two-block families, and the effect of the group choice at
//! composite divisor).

use semitransitive::constructors::{
    consecutive_partition, cyclic_group, regular_group, type1, type2, type3, bound,
};
use semitransitive::pperm::PartialPerm;
use semitransitive::search::{classify, classify_with, ClassifyOptions};
use semitransitive::semigroup::{are_similar, Semigroup};
use semitransitive::semitrans::audit_all;

/// Tries every permutation of the points, no pruning at all.
fn brute_force_similar(s1: &Semigroup, s2: &Semigroup) -> Option<PartialPerm> {
    if s1.degree() != s2.degree() || s1.len() != s2.len() {
        return None;
    }
    let n = s1.degree();
    let mut images: Vec<u8> = Vec::new();
    fn rec(
        s1: &Semigroup,
        s2: &Semigroup,
        n: u8,
        used: u64,
        images: &mut Vec<u8>,
    ) -> Option<PartialPerm> {
        if images.len() == n as usize {
            let pairs: Vec<(u8, u8)> = images
                .iter()
                .enumerate()
                .map(|(i, &y)| (i as u8 + 1, y))
                .collect();
            let sigma = PartialPerm::from_pairs(n, &pairs).expect("bijection");
            let ok = s1.elements().iter().all(|e| s2.contains(&e.relabel(&sigma)));
            return ok.then_some(sigma);
        }
        for y in 1..=n {
            if used & (1 << y) == 0 {
                images.push(y);
                if let Some(found) = rec(s1, s2, n, used | (1 << y), images) {
                    return Some(found);
                }
                images.pop();
            }
        }
        None
    }
    rec(s1, s2, n, 0, &mut images)
}

#[test]
fn first_and_third_families_differ_at_degree_six() {
    let partition = consecutive_partition(6, 2);
    let group = cyclic_group(6, partition[0]).unwrap();
    let a = type1(6, 2, &group, &partition).unwrap();
    let c = type3(6, 2, &group, &partition).unwrap();
    assert!(brute_force_similar(&a, &c).is_none());
    assert!(are_similar(&a, &c).is_none());
}

#[test]
fn pruned_similarity_agrees_with_brute_force_on_conjugates() {
    let partition = consecutive_partition(6, 3);
    let group = cyclic_group(6, partition[0]).unwrap();
    let a = type1(6, 3, &group, &partition).unwrap();
    let sigma = PartialPerm::parse("(1,4)(2,5)(3,6)", 6).unwrap();
    let b = a.conjugate(&sigma).unwrap();
    let brute = brute_force_similar(&a, &b).expect("conjugates are similar");
    let fast = are_similar(&a, &b).expect("conjugates are similar");
    assert_eq!(a.conjugate(&brute).unwrap(), b);
    assert_eq!(a.conjugate(&fast).unwrap(), b);
}

/// With two blocks the first and second family coincide up to relabeling:
/// inverting a two-block instance is the same as swapping the blocks.
#[test]
fn first_and_second_families_coincide_for_two_blocks() {
    let partition = consecutive_partition(4, 2);
    let group = cyclic_group(4, partition[0]).unwrap();
    let a = type1(4, 2, &group, &partition).unwrap();
    let b = type2(4, 2, &group, &partition).unwrap();
    let sigma = are_similar(&a, &b).expect("two-block inverse is a relabeling");
    assert_eq!(a.conjugate(&sigma).unwrap(), b);
    assert!(brute_force_similar(&a, &b).is_some());
}

/// Beyond two blocks they do not coincide: the inverse moves the
/// one-block idempotent domain to the bottom of the block order.
#[test]
fn first_and_second_families_differ_beyond_two_blocks() {
    let partition = consecutive_partition(6, 2);
    let group = cyclic_group(6, partition[0]).unwrap();
    let a = type1(6, 2, &group, &partition).unwrap();
    let b = type2(6, 2, &group, &partition).unwrap();
    assert!(brute_force_similar(&a, &b).is_none());
    assert!(are_similar(&a, &b).is_none());
}

/// At n = 8 the greatest proper divisor is 4, where two regular groups
/// exist. They give minimal instances that are not similar, so the group
/// is a genuine classification parameter; classification succeeds once
/// the second group is registered.
#[test]
fn klein_group_gives_a_second_minimal_class_at_degree_eight() {
    let partition = consecutive_partition(8, 4);
    let cyclic = cyclic_group(8, partition[0]).unwrap();
    let klein_gens = vec![
        PartialPerm::parse("(1,2)(3,4)", 8).unwrap(),
        PartialPerm::parse("(1,3)(2,4)", 8).unwrap(),
    ];
    let klein = regular_group(&klein_gens).unwrap();

    let with_cyclic = type1(8, 4, &cyclic, &partition).unwrap();
    let with_klein = type1(8, 4, &klein, &partition).unwrap();
    assert_eq!(with_cyclic.len(), bound(8));
    assert_eq!(with_klein.len(), bound(8));
    for s in [&with_cyclic, &with_klein] {
        for report in audit_all(s).unwrap() {
            assert!(report.ok(), "{}: {:?}", report.name, report.witnesses);
        }
    }
    assert!(are_similar(&with_cyclic, &with_klein).is_none());

    // cyclic-only classification misses the second class ...
    assert!(classify(&with_cyclic).iter().any(|m| m.group == "cyclic"));
    assert!(classify(&with_klein).is_empty());
    // ... and finds it once the group is registered
    let options = ClassifyOptions {
        extra_top_groups: vec![("klein".to_string(), klein_gens)],
        extra_second_groups: Vec::new(),
    };
    let found = classify_with(&with_klein, &options);
    assert!(found.iter().any(|m| m.group == "klein"));
}
