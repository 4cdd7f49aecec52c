//! Fixtures shared by the unit tests.

use crate::pperm::{PartialPerm, PointSet};
use crate::semigroup::Semigroup;

/// Every partial injective map of degree `n`, by direct enumeration.
pub(crate) fn all_partial_perms(n: u8) -> Vec<PartialPerm> {
    fn rec(n: u8, pos: u8, used: &mut PointSet, img: &mut Vec<u8>, out: &mut Vec<PartialPerm>) {
        if pos > n {
            out.push(
                PartialPerm::from_pairs(
                    n,
                    &img.iter()
                        .enumerate()
                        .filter(|&(_, &y)| y != 0)
                        .map(|(i, &y)| (i as u8 + 1, y))
                        .collect::<Vec<_>>(),
                )
                .unwrap(),
            );
            return;
        }
        img.push(0);
        rec(n, pos + 1, used, img, out);
        img.pop();
        for y in 1..=n {
            if !used.contains(y) {
                used.insert(y);
                img.push(y);
                rec(n, pos + 1, used, img, out);
                img.pop();
                used.remove(y);
            }
        }
    }
    let mut out = Vec::new();
    let mut used = PointSet::EMPTY;
    rec(n, 1, &mut used, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The unique (up to relabeling) minimal semitransitive subsemigroup of
/// the singular part at degree 2.
pub(crate) fn minimal_n2() -> Semigroup {
    Semigroup::from_elements(&[
        PartialPerm::parse("0", 2).unwrap(),
        PartialPerm::parse("(1)(2]", 2).unwrap(),
        PartialPerm::parse("(1](2)", 2).unwrap(),
        PartialPerm::parse("(1,2]", 2).unwrap(),
    ])
    .unwrap()
}

/// The corrected 15-element listing of the first worked instance
/// (n = 8, p = 2, four blocks of two).
pub(crate) fn example_one() -> Semigroup {
    let strings = [
        "0",
        "(1)(2)(3](4](5](6](7](8]",
        "(1,2)(3](4](5](6](7](8]",
        "(1](2](3)(4)(5)(6)(7)(8)",
        "(1](2](3,5,7](4,6,8]",
        "(1](2](3,7](4,8](5](6]",
        "(1](2](3,4)(5,6)(7,8)",
        "(1](2](3,6,7](4,5,8]",
        "(1](2](3,8](4,7](5](6]",
        "(1,3](2,4](5](6](7](8]",
        "(1,5](2,6](3](4](7](8]",
        "(1,7](2,8](3](4](5](6]",
        "(1,4](2,3](5](6](7](8]",
        "(1,6](2,5](3](4](7](8]",
        "(1,8](2,7](3](4](5](6]",
    ];
    let elems: Vec<PartialPerm> = strings
        .iter()
        .map(|s| PartialPerm::parse(s, 8).unwrap())
        .collect();
    Semigroup::from_elements(&elems).unwrap()
}
