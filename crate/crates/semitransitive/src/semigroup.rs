//! Finite semigroups of partial permutations on a common degree.
//!
//! A [`Semigroup`] is a composition-closed, deduplicated element set,
//! checked on construction. Elements are kept sorted, so reports and
//! iteration order are deterministic.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::pperm::{PartialPerm, PointSet};

#[derive(Debug, Error)]
pub enum SemigroupError {
    #[error("empty generating set")]
    EmptyGenerators,
    #[error("elements of mixed degrees {0} and {1}")]
    MixedDegrees(u8, u8),
    #[error("set is not closed: {0} . {1} = {2} is missing")]
    NotClosed(PartialPerm, PartialPerm, PartialPerm),
    #[error("{0} is not an idempotent of the semigroup")]
    NotAnIdempotent(PartialPerm),
    #[error("{0} is not a full permutation")]
    NotAPermutation(PartialPerm),
}

/// A closed set of partial permutations of one degree.
#[derive(Clone)]
pub struct Semigroup {
    deg: u8,
    elems: Vec<PartialPerm>,
    index: HashMap<PartialPerm, usize>,
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        self.deg == other.deg && self.elems == other.elems
    }
}

impl Eq for Semigroup {}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup[n={}, {} elements]", self.deg, self.elems.len())
    }
}

/// The idempotents of a semigroup, with the zero split off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentProfile {
    pub nonzero: Vec<PartialPerm>,
    pub has_zero: bool,
}

/// The classification of `e S e` without the zero: elements of the group
/// of units, nilpotents, and anything satisfying neither (empty for the
/// semigroups of interest, reported rather than rejected).
#[derive(Clone, Debug)]
pub struct LocalDichotomy {
    pub group: Vec<PartialPerm>,
    pub nilpotent: Vec<PartialPerm>,
    pub unclassified: Vec<PartialPerm>,
}

impl Semigroup {
    /// Closure of a generating set under composition (product saturation).
    pub fn closure(generators: &[PartialPerm]) -> Result<Semigroup, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        let deg = generators[0].degree();
        for g in generators {
            if g.degree() != deg {
                return Err(SemigroupError::MixedDegrees(deg, g.degree()));
            }
        }
        let mut list: Vec<PartialPerm> = Vec::new();
        let mut seen: HashMap<PartialPerm, usize> = HashMap::new();
        for g in generators {
            if !seen.contains_key(g) {
                seen.insert(g.clone(), list.len());
                list.push(g.clone());
            }
        }
        let mut next = 0usize;
        while next < list.len() {
            let a = list[next].clone();
            for i in 0..list.len() {
                for prod in [a.compose(&list[i]), list[i].compose(&a)] {
                    if !seen.contains_key(&prod) {
                        seen.insert(prod.clone(), list.len());
                        list.push(prod);
                    }
                }
            }
            next += 1;
        }
        Ok(Self::from_sorted(deg, list))
    }

    /// Wraps an element list after verifying closure. Duplicates are merged.
    pub fn from_elements(elements: &[PartialPerm]) -> Result<Semigroup, SemigroupError> {
        if elements.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        let deg = elements[0].degree();
        for e in elements {
            if e.degree() != deg {
                return Err(SemigroupError::MixedDegrees(deg, e.degree()));
            }
        }
        let set: BTreeSet<PartialPerm> = elements.iter().cloned().collect();
        for a in &set {
            for b in &set {
                let prod = a.compose(b);
                if !set.contains(&prod) {
                    return Err(SemigroupError::NotClosed(a.clone(), b.clone(), prod));
                }
            }
        }
        Ok(Self::from_sorted(deg, set.into_iter().collect()))
    }

    fn from_sorted(deg: u8, mut elems: Vec<PartialPerm>) -> Semigroup {
        elems.sort();
        elems.dedup();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Semigroup { deg, elems, index }
    }

    /// True when every pairwise product stays inside the set.
    pub fn is_closed(elements: &[PartialPerm]) -> bool {
        let set: BTreeSet<&PartialPerm> = elements.iter().collect();
        elements.iter().all(|a| {
            elements
                .iter()
                .all(|b| set.contains(&a.compose(b)))
        })
    }

    pub fn degree(&self) -> u8 {
        self.deg
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements in ascending canonical order.
    pub fn elements(&self) -> &[PartialPerm] {
        &self.elems
    }

    pub fn contains(&self, p: &PartialPerm) -> bool {
        self.index.contains_key(p)
    }

    pub fn has_zero(&self) -> bool {
        self.elems.first().is_some_and(|e| e.is_zero())
    }

    /// True when every element is non-invertible (rank below the degree).
    pub fn is_singular(&self) -> bool {
        self.elems.iter().all(|e| !e.is_permutation())
    }

    pub fn idempotent_profile(&self) -> IdempotentProfile {
        let mut nonzero = Vec::new();
        let mut has_zero = false;
        for e in &self.elems {
            if e.is_idempotent() {
                if e.is_zero() {
                    has_zero = true;
                } else {
                    nonzero.push(e.clone());
                }
            }
        }
        IdempotentProfile { nonzero, has_zero }
    }

    /// The set `e S f` for idempotents `e, f` of the semigroup.
    pub fn local(
        &self,
        e: &PartialPerm,
        f: &PartialPerm,
    ) -> Result<Vec<PartialPerm>, SemigroupError> {
        for x in [e, f] {
            if !self.contains(x) || !x.is_idempotent() {
                return Err(SemigroupError::NotAnIdempotent(x.clone()));
            }
        }
        let set: BTreeSet<PartialPerm> = self
            .elems
            .iter()
            .map(|s| e.compose(s).compose(f))
            .collect();
        Ok(set.into_iter().collect())
    }

    /// The subsemigroup `e1 S e1 + e1 S e2 + e2 S e1 + e2 S e2`.
    pub fn local_union(
        &self,
        e1: &PartialPerm,
        e2: &PartialPerm,
    ) -> Result<Semigroup, SemigroupError> {
        let mut all = Vec::new();
        for (a, b) in [(e1, e1), (e1, e2), (e2, e1), (e2, e2)] {
            all.extend(self.local(a, b)?);
        }
        Semigroup::from_elements(&all)
    }

    /// Relabels the whole semigroup through a full permutation.
    pub fn conjugate(&self, sigma: &PartialPerm) -> Result<Semigroup, SemigroupError> {
        if !sigma.is_permutation() || sigma.degree() != self.deg {
            return Err(SemigroupError::NotAPermutation(sigma.clone()));
        }
        let elems: Vec<PartialPerm> = self.elems.iter().map(|s| s.relabel(sigma)).collect();
        Ok(Self::from_sorted(self.deg, elems))
    }

    /// The set of elementwise inverses, closed because inversion reverses
    /// products.
    pub fn elementwise_inverse(&self) -> Semigroup {
        let elems: Vec<PartialPerm> = self.elems.iter().map(|s| s.inverse()).collect();
        Self::from_sorted(self.deg, elems)
    }

    /// Splits `e S e` minus the zero into the group of units of `e S e`
    /// (idempotent power `e`), the nilpotents (idempotent power zero), and
    /// a third class for anything else.
    pub fn units_and_nilpotents(
        &self,
        e: &PartialPerm,
    ) -> Result<LocalDichotomy, SemigroupError> {
        if !self.contains(e) || !e.is_idempotent() || e.is_zero() {
            return Err(SemigroupError::NotAnIdempotent(e.clone()));
        }
        let mut out = LocalDichotomy {
            group: Vec::new(),
            nilpotent: Vec::new(),
            unclassified: Vec::new(),
        };
        for s in self.local(e, e)? {
            if s.is_zero() {
                continue;
            }
            let ip = s.idempotent_power();
            if &ip == e {
                out.group.push(s);
            } else if ip.is_zero() {
                out.nilpotent.push(s);
            } else {
                out.unclassified.push(s);
            }
        }
        Ok(out)
    }

    /// Multiset of element ranks, ascending.
    pub fn rank_multiset(&self) -> Vec<usize> {
        let mut ranks: Vec<usize> = self.elems.iter().map(|e| e.rank()).collect();
        ranks.sort_unstable();
        ranks
    }

    /// The union of all domains and images, as a quick support check.
    pub fn support(&self) -> PointSet {
        self.elems
            .iter()
            .fold(PointSet::EMPTY, |acc, e| acc.union(&e.domain()).union(&e.image()))
    }
}

/// Searches for a relabeling carrying `s1` onto `s2`.
///
/// Invariant pruning (cardinality, rank multiset, idempotent count, block
/// size sequence) runs first; surviving candidates are checked by direct
/// enumeration. When both inputs are semitransitive the conjugator must
/// match blocks to blocks in order, which cuts the search to per-block
/// bijections; otherwise all `n!` permutations are tried, which is meant
/// for desk-scale degrees (n <= 10).
pub fn are_similar(s1: &Semigroup, s2: &Semigroup) -> Option<PartialPerm> {
    if s1.degree() != s2.degree() || s1.len() != s2.len() {
        return None;
    }
    if s1.rank_multiset() != s2.rank_multiset() {
        return None;
    }
    let p1 = s1.idempotent_profile();
    let p2 = s2.idempotent_profile();
    if p1.nonzero.len() != p2.nonzero.len() || p1.has_zero != p2.has_zero {
        return None;
    }
    let n = s1.degree();
    let b1 = crate::semitrans::blocks(s1);
    let b2 = crate::semitrans::blocks(s2);
    let groups: Vec<(Vec<u8>, Vec<u8>)> = match (b1, b2) {
        (Ok(x), Ok(y)) => {
            if x.sizes() != y.sizes() {
                return None;
            }
            x.blocks
                .iter()
                .zip(y.blocks.iter())
                .map(|(a, b)| (a.iter().collect(), b.iter().collect()))
                .collect()
        }
        (Err(_), Err(_)) => {
            assert!(n <= 10, "full similarity enumeration is limited to degree 10");
            vec![((1..=n).collect(), (1..=n).collect())]
        }
        _ => return None,
    };
    let matcher = BlockMatcher { s1, s2, groups };
    let mut image = vec![0u8; n as usize];
    matcher.search(0, 0, &mut image)
}

struct BlockMatcher<'a> {
    s1: &'a Semigroup,
    s2: &'a Semigroup,
    groups: Vec<(Vec<u8>, Vec<u8>)>,
}

impl BlockMatcher<'_> {
    /// Extends the partial relabeling over block `at` from position `pos`.
    fn search(&self, at: usize, pos: usize, image: &mut [u8]) -> Option<PartialPerm> {
        if at == self.groups.len() {
            let pairs: Vec<(u8, u8)> = image
                .iter()
                .enumerate()
                .map(|(i, &y)| (i as u8 + 1, y))
                .collect();
            let sigma =
                PartialPerm::from_pairs(self.s1.degree(), &pairs).expect("built a bijection");
            let ok = self
                .s1
                .elements()
                .iter()
                .all(|e| self.s2.contains(&e.relabel(&sigma)));
            return if ok { Some(sigma) } else { None };
        }
        let (src, dst) = &self.groups[at];
        if pos == src.len() {
            return self.search(at + 1, 0, image);
        }
        for &candidate in dst {
            if src[..pos]
                .iter()
                .all(|&placed| image[(placed - 1) as usize] != candidate)
            {
                image[(src[pos] - 1) as usize] = candidate;
                if let Some(found) = self.search(at, pos + 1, image) {
                    return Some(found);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pperm::PartialPerm;
    use crate::testutil::minimal_n2;

    fn pp(s: &str, n: u8) -> PartialPerm {
        PartialPerm::parse(s, n).unwrap()
    }

    #[test]
    fn closure_of_single_chain() {
        let s = Semigroup::closure(&[pp("(1,2]", 2)]).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.has_zero());
        assert!(s.contains(&pp("(1,2]", 2)));
    }

    #[test]
    fn closure_of_disjoint_idempotents() {
        let s = Semigroup::closure(&[pp("(1)(2]", 2), pp("(1](2)", 2)]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.has_zero());
    }

    #[test]
    fn closure_rejects_bad_inputs() {
        assert!(matches!(
            Semigroup::closure(&[]),
            Err(SemigroupError::EmptyGenerators)
        ));
        assert!(matches!(
            Semigroup::closure(&[pp("(1,2]", 2), pp("(1,2](3]", 3)]),
            Err(SemigroupError::MixedDegrees(2, 3))
        ));
    }

    #[test]
    fn from_elements_requires_closure() {
        assert!(Semigroup::from_elements(&[pp("(1,2]", 2)]).is_err());
        assert!(Semigroup::from_elements(&[pp("(1,2]", 2), pp("0", 2)]).is_ok());
        assert!(!Semigroup::is_closed(&[pp("(1,2]", 2)]));
    }

    #[test]
    fn singular_detection() {
        let id = PartialPerm::identity(3);
        let s = Semigroup::from_elements(&[id]).unwrap();
        assert!(!s.is_singular());
        let t = Semigroup::closure(&[pp("(1,2](3]", 3)]).unwrap();
        assert!(t.is_singular());
    }

    #[test]
    fn idempotent_profile_of_full_singular_part_degree_2() {
        // direct enumeration of the 4 non-invertible maps plus zero
        let elems = vec![
            pp("0", 2),
            pp("(1)(2]", 2),
            pp("(1](2)", 2),
            pp("(1,2]", 2),
            pp("(2,1]", 2),
        ];
        let s = Semigroup::from_elements(&elems).unwrap();
        assert_eq!(s.len(), 5);
        let profile = s.idempotent_profile();
        assert!(profile.has_zero);
        assert_eq!(profile.nonzero, vec![pp("(1](2)", 2), pp("(1)(2]", 2)]);
    }

    #[test]
    fn local_set_always_catches_zero() {
        let s = minimal_n2();
        let g = pp("(1)(2]", 2);
        let gsg = s.local(&g, &g).unwrap();
        assert!(gsg.iter().any(|e| e.is_zero()));
    }

    #[test]
    fn local_rejects_non_idempotent() {
        let s = minimal_n2();
        assert!(s.local(&pp("(1,2]", 2), &pp("(1)(2]", 2)).is_err());
    }

    #[test]
    fn local_union_is_a_subsemigroup() {
        let s = minimal_n2();
        let g = pp("(1)(2]", 2);
        let h = pp("(1](2)", 2);
        let sp = s.local_union(&g, &h).unwrap();
        assert!(sp.elements().iter().all(|e| s.contains(e)));
        assert_eq!(sp, s);
    }

    #[test]
    fn conjugation_by_identity_and_swap() {
        let s = minimal_n2();
        let id = PartialPerm::identity(2);
        assert_eq!(s.conjugate(&id).unwrap(), s);
        let swap = pp("(1,2)", 2);
        let c = s.conjugate(&swap).unwrap();
        assert_eq!(c.len(), s.len());
        assert!(c.contains(&pp("(2,1]", 2)));
        assert!(c.contains(&pp("(1)(2]", 2)));
        assert!(s.conjugate(&pp("(1)(2]", 2)).is_err());
    }

    #[test]
    fn conjugation_is_an_action() {
        let s = minimal_n2();
        let a = pp("(1,2)", 2);
        let b = PartialPerm::identity(2);
        let lhs = s.conjugate(&a).unwrap().conjugate(&b).unwrap();
        let rhs = s.conjugate(&a.compose(&b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn similarity_finds_the_swap() {
        let s1 = minimal_n2();
        let s2 = Semigroup::from_elements(&[
            pp("0", 2),
            pp("(1)(2]", 2),
            pp("(1](2)", 2),
            pp("(2,1]", 2),
        ])
        .unwrap();
        let sigma = are_similar(&s1, &s2).expect("conjugate by the swap");
        assert_eq!(sigma, pp("(1,2)", 2));
        assert_eq!(s1.conjugate(&sigma).unwrap(), s2);
    }

    #[test]
    fn similarity_is_an_equivalence_on_samples() {
        let s = minimal_n2();
        let swapped = s.conjugate(&pp("(1,2)", 2)).unwrap();
        // reflexive
        assert!(are_similar(&s, &s).is_some());
        // symmetric
        let fwd = are_similar(&s, &swapped).unwrap();
        let back = are_similar(&swapped, &s).unwrap();
        assert_eq!(swapped.conjugate(&back).unwrap(), s);
        assert_eq!(s.conjugate(&fwd).unwrap(), swapped);
    }

    #[test]
    fn units_and_nilpotents_trivial_local() {
        let s = minimal_n2();
        let g = pp("(1)(2]", 2);
        let d = s.units_and_nilpotents(&g).unwrap();
        assert_eq!(d.group, vec![g.clone()]);
        assert!(d.nilpotent.is_empty());
        assert!(d.unclassified.is_empty());
    }

    #[test]
    fn closure_of_singular_elements_stays_singular() {
        for gens in [
            vec![pp("(1,2](3]", 3), pp("(1](2,3]", 3)],
            vec![pp("(1,2)(3]", 3), pp("(1](2)(3)", 3)],
            vec![pp("(1,2,3](4]", 4), pp("(1)(2)(3)(4]", 4)],
        ] {
            assert!(Semigroup::closure(&gens).unwrap().is_singular());
        }
    }

    #[test]
    fn disjoint_idempotents_multiply_to_zero() {
        let s = minimal_n2();
        let g = pp("(1)(2]", 2);
        let h = pp("(1](2)", 2);
        assert!(g.compose(&h).is_zero());
        assert!(h.compose(&g).is_zero());
        assert!(s.contains(&g.compose(&h)));
    }

    #[test]
    fn elementwise_inverse_is_closed_and_involutive() {
        let s = minimal_n2();
        let inv = s.elementwise_inverse();
        assert_eq!(inv.len(), s.len());
        assert!(inv.contains(&pp("(2,1]", 2)));
        assert_eq!(inv.elementwise_inverse(), s);
    }
}
