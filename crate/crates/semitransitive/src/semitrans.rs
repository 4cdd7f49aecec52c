//! Semitransitivity analysis: the reachability preorder, transitivity
//! blocks, nilpotent structure, and an executable audit suite.
//!
//! For a closed set `S`, write `x >= y` when some element maps `x` to `y`.
//! `S` is semitransitive when every ordered pair is covered in one
//! direction or the other; the mutual-reachability classes are then
//! linearly ordered and called transitivity blocks. The audits check, on a
//! concrete semigroup, each structural fact that forces the minimal
//! cardinality `2n - p + 1`: every audit evaluates its hypothesis (for most
//! of them `|S| <= 2n`) and its conclusion separately, so oversized input
//! yields vacuous passes instead of spurious failures.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::constructors::{bound, gpd};
use crate::pperm::{PartialPerm, Point, PointSet};
use crate::semigroup::Semigroup;

#[derive(Debug, Error)]
pub enum SemitransError {
    #[error("not semitransitive: neither {0} -> {1} nor {1} -> {0} is realized")]
    NotSemitransitive(Point, Point),
    #[error("not singular: contains the full permutation {0}")]
    NotSingular(PartialPerm),
    #[error("block {0} is split between the idempotent domains")]
    SplitBlock(PointSet),
    #[error("expected exactly two nonzero idempotents, found {0}")]
    NotTwoIdempotents(usize),
}

/// The full reachability table: `reach[x][y]` iff some element maps `x` to `y`.
#[derive(Clone, PartialEq, Eq)]
pub struct ReachMatrix {
    n: u8,
    rows: Vec<u64>,
}

impl ReachMatrix {
    pub fn degree(&self) -> u8 {
        self.n
    }

    pub fn get(&self, x: Point, y: Point) -> bool {
        self.rows[(x - 1) as usize] & (1u64 << (y - 1)) != 0
    }

    /// Both directions missing for some ordered pair, if any.
    pub fn uncovered_pair(&self) -> Option<(Point, Point)> {
        for x in 1..=self.n {
            for y in x..=self.n {
                if !self.get(x, y) && !self.get(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_total(&self) -> bool {
        self.uncovered_pair().is_none()
    }

    pub fn is_complete(&self) -> bool {
        let full = PointSet::full(self.n).bits();
        self.rows.iter().all(|&r| r == full)
    }

    /// Closed sets have transitive reach; exposed for property checks.
    pub fn is_transitive_relation(&self) -> bool {
        for x in 0..self.n as usize {
            for y in 0..self.n as usize {
                if self.rows[x] & (1u64 << y) != 0 && self.rows[y] & !self.rows[x] != 0 {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for ReachMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ReachMatrix[n={}]", self.n)?;
        for x in 1..=self.n {
            for y in 1..=self.n {
                write!(f, "{}", if self.get(x, y) { '1' } else { '.' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn reach_matrix(s: &Semigroup) -> ReachMatrix {
    let n = s.degree();
    let mut rows = vec![0u64; n as usize];
    for e in s.elements() {
        for (x, y) in e.arrows() {
            rows[(x - 1) as usize] |= 1u64 << (y - 1);
        }
    }
    ReachMatrix { n, rows }
}

/// Every ordered pair of points is realized in at least one direction.
pub fn is_semitransitive(s: &Semigroup) -> bool {
    reach_matrix(s).is_total()
}

/// Every ordered pair of points is realized in both directions.
pub fn is_transitive(s: &Semigroup) -> bool {
    reach_matrix(s).is_complete()
}

/// The ordered transitivity blocks `X_1 >= X_2 >= ... >= X_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: Vec<PointSet>,
}

impl BlockStructure {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// The least block size, `t`.
    pub fn min_size(&self) -> usize {
        self.sizes().into_iter().min().unwrap_or(0)
    }

    /// 1-based index of the block containing `p`.
    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(p)).map(|i| i + 1)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Mutual-reachability classes in their linear order, top block first.
pub fn blocks(s: &Semigroup) -> Result<BlockStructure, SemitransError> {
    let reach = reach_matrix(s);
    if let Some((x, y)) = reach.uncovered_pair() {
        return Err(SemitransError::NotSemitransitive(x, y));
    }
    let n = s.degree();
    let mut assigned = vec![false; n as usize];
    let mut blocks: Vec<PointSet> = Vec::new();
    for x in 1..=n {
        if assigned[(x - 1) as usize] {
            continue;
        }
        let class: PointSet = (1..=n)
            .filter(|&y| reach.get(x, y) && reach.get(y, x))
            .collect();
        for y in class.iter() {
            assigned[(y - 1) as usize] = true;
        }
        blocks.push(class);
    }
    // linear order: earlier blocks reach later ones, never conversely
    blocks.sort_by(|a, b| {
        let (x, y) = (a.min_point().unwrap(), b.min_point().unwrap());
        if reach.get(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Ok(BlockStructure { blocks })
}

/// Which blocks sit inside which idempotent domain, plus the offset sets
/// `{ j - i : j in b_blocks }` for each `i` in `a_blocks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAssignment {
    pub a_blocks: Vec<usize>,
    pub b_blocks: Vec<usize>,
    pub offsets: BTreeMap<usize, Vec<i64>>,
}

impl BlockAssignment {
    /// The union of all offset sets.
    pub fn offset_union(&self) -> Vec<i64> {
        let mut all: Vec<i64> = self.offsets.values().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Assigns each block to the domain of `e1` or of `e2`. Fails when some
/// block is split between the two domains or left uncovered.
pub fn block_assignment(
    blocks: &BlockStructure,
    e1: &PartialPerm,
    e2: &PartialPerm,
) -> Result<BlockAssignment, SemitransError> {
    let d1 = e1.domain();
    let d2 = e2.domain();
    let mut a_blocks = Vec::new();
    let mut b_blocks = Vec::new();
    for (i, blk) in blocks.blocks.iter().enumerate() {
        if blk.is_subset(&d1) && blk.is_disjoint(&d2) {
            a_blocks.push(i + 1);
        } else if blk.is_subset(&d2) && blk.is_disjoint(&d1) {
            b_blocks.push(i + 1);
        } else {
            return Err(SemitransError::SplitBlock(*blk));
        }
    }
    let offsets = a_blocks
        .iter()
        .map(|&i| {
            let offs: Vec<i64> = b_blocks.iter().map(|&j| j as i64 - i as i64).collect();
            (i, offs)
        })
        .collect();
    Ok(BlockAssignment {
        a_blocks,
        b_blocks,
        offsets,
    })
}

/// Block-jump data for one element: the least jump over its arrows and
/// whether every arrow makes the same jump.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpLevel {
    pub level: i64,
    pub uniform: bool,
}

/// The nilpotent part of the two-idempotent structure: the cross sets
/// `e1 S e2` and `e2 S e1` without zero, their union, jump levels for them
/// and for the nilpotents of `e1 S e1` and `e2 S e2`, and any cross
/// element that fails to be nilpotent (a structural defect, reported).
#[derive(Clone, Debug)]
pub struct NilpotentPartition {
    pub a_to_b: Vec<PartialPerm>,
    pub b_to_a: Vec<PartialPerm>,
    pub nilpotents: Vec<PartialPerm>,
    pub levels: BTreeMap<PartialPerm, JumpLevel>,
    pub non_nilpotent: Vec<PartialPerm>,
}

fn jump_level(e: &PartialPerm, blocks: &BlockStructure) -> Option<JumpLevel> {
    let mut jumps = e.arrows().into_iter().map(|(x, y)| {
        blocks.index_of(y).unwrap_or(0) as i64 - blocks.index_of(x).unwrap_or(0) as i64
    });
    let first = jumps.next()?;
    let mut level = first;
    let mut uniform = true;
    for j in jumps {
        level = level.min(j);
        uniform &= j == first;
    }
    Some(JumpLevel { level, uniform })
}

pub fn nilpotent_partition(
    s: &Semigroup,
    e1: &PartialPerm,
    e2: &PartialPerm,
    blocks: &BlockStructure,
) -> Result<NilpotentPartition, crate::semigroup::SemigroupError> {
    let strip_zero = |v: Vec<PartialPerm>| -> Vec<PartialPerm> {
        v.into_iter().filter(|e| !e.is_zero()).collect()
    };
    let a_to_b = strip_zero(s.local(e1, e2)?);
    let b_to_a = strip_zero(s.local(e2, e1)?);
    let mut nilpotents: Vec<PartialPerm> = a_to_b.iter().chain(b_to_a.iter()).cloned().collect();
    nilpotents.sort();
    nilpotents.dedup();
    let non_nilpotent = nilpotents
        .iter()
        .filter(|e| !e.is_nilpotent())
        .cloned()
        .collect();
    let mut levels = BTreeMap::new();
    for e in &nilpotents {
        if let Some(j) = jump_level(e, blocks) {
            levels.insert(e.clone(), j);
        }
    }
    for idem in [e1, e2] {
        for e in s.units_and_nilpotents(idem)?.nilpotent {
            if let Some(j) = jump_level(&e, blocks) {
                levels.insert(e, j);
            }
        }
    }
    Ok(NilpotentPartition {
        a_to_b,
        b_to_a,
        nilpotents,
        levels,
        non_nilpotent,
    })
}

/// Outcome of one audit: hypothesis and conclusion are reported
/// independently, and a failing conclusion always carries witnesses.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub name: &'static str,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditStatus {
    Pass,
    Vacuous,
    Fail,
}

impl AuditReport {
    pub fn status(&self) -> AuditStatus {
        match (self.hypothesis_holds, self.conclusion_holds) {
            (true, true) => AuditStatus::Pass,
            (false, _) => AuditStatus::Vacuous,
            (true, false) => AuditStatus::Fail,
        }
    }

    pub fn ok(&self) -> bool {
        self.status() != AuditStatus::Fail
    }
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuditStatus::Pass => "pass",
            AuditStatus::Vacuous => "vacuous",
            AuditStatus::Fail => "fail",
        };
        write!(f, "{s}")
    }
}

fn small_enough(s: &Semigroup) -> bool {
    s.len() <= 2 * s.degree() as usize
}

/// Picks the two nonzero idempotents with the one containing the top
/// block's least point first. `None` unless there are exactly two.
pub fn oriented_idempotents(
    s: &Semigroup,
    blocks: &BlockStructure,
) -> Option<(PartialPerm, PartialPerm)> {
    let profile = s.idempotent_profile();
    if profile.nonzero.len() != 2 {
        return None;
    }
    let top = blocks.blocks.first()?.min_point()?;
    let (first, second) = (profile.nonzero[0].clone(), profile.nonzero[1].clone());
    if first.domain().contains(top) {
        Some((first, second))
    } else {
        Some((second, first))
    }
}

/// A semigroup of at most `2n` elements has exactly two nonzero
/// idempotents, with disjoint domains whose union is the whole point set.
pub fn audit_two_idempotents(s: &Semigroup) -> AuditReport {
    let profile = s.idempotent_profile();
    let mut witnesses = Vec::new();
    let mut ok = profile.nonzero.len() == 2;
    if !ok {
        witnesses.push(format!(
            "found {} nonzero idempotents: {}",
            profile.nonzero.len(),
            join(&profile.nonzero)
        ));
    } else {
        let (g, h) = (&profile.nonzero[0], &profile.nonzero[1]);
        if !g.domain().is_disjoint(&h.domain()) {
            ok = false;
            witnesses.push(format!("domains of {g} and {h} overlap"));
        }
        let union = g.domain().union(&h.domain());
        if union != PointSet::full(s.degree()) {
            ok = false;
            witnesses.push(format!("domains cover only {union}"));
        }
    }
    AuditReport {
        name: "two_idempotents",
        hypothesis_holds: small_enough(s),
        conclusion_holds: ok,
        witnesses,
    }
}

/// Each idempotent domain meets every block in nothing or in the whole block.
pub fn audit_block_domains(s: &Semigroup, blocks: &BlockStructure) -> AuditReport {
    let mut witnesses = Vec::new();
    for e in s.idempotent_profile().nonzero {
        let dom = e.domain();
        for blk in &blocks.blocks {
            let cut = dom.intersection(blk);
            if !cut.is_empty() && cut != *blk {
                witnesses.push(format!("dom({e}) cuts block {blk} to {cut}"));
            }
        }
    }
    AuditReport {
        name: "block_domains",
        hypothesis_holds: small_enough(s),
        conclusion_holds: witnesses.is_empty(),
        witnesses,
    }
}

/// For points `x, y` of one block some element realizes `x -> y` without
/// any arrow between two different blocks.
pub fn audit_aux_arrows(s: &Semigroup, blocks: &BlockStructure) -> AuditReport {
    let mut witnesses = Vec::new();
    for blk in &blocks.blocks {
        for x in blk.iter() {
            for y in blk.iter() {
                let found = s.elements().iter().any(|e| {
                    e.apply(x) == Some(y)
                        && e.arrows().iter().all(|&(u, v)| {
                            blocks.index_of(u) == blocks.index_of(v)
                        })
                });
                if !found {
                    witnesses.push(format!(
                        "no block-local element realizes {x} -> {y} inside {blk}"
                    ));
                }
            }
        }
    }
    AuditReport {
        name: "aux_arrows",
        hypothesis_holds: small_enough(s),
        conclusion_holds: witnesses.is_empty(),
        witnesses,
    }
}

/// Every element of `e S e` lies in the group of units of `e S e` or is
/// nilpotent, for each nonzero idempotent `e`.
pub fn audit_group_or_nilpotent(s: &Semigroup) -> AuditReport {
    let profile = s.idempotent_profile();
    let two = profile.nonzero.len() == 2;
    let mut witnesses = Vec::new();
    for e in &profile.nonzero {
        if let Ok(d) = s.units_and_nilpotents(e) {
            for w in d.unclassified {
                witnesses.push(format!("{w} in local semigroup of {e} is neither"));
            }
        }
    }
    AuditReport {
        name: "group_or_nilpotent",
        hypothesis_holds: small_enough(s) && two,
        conclusion_holds: witnesses.is_empty(),
        witnesses,
    }
}

/// Nilpotents of the union of the four local sets have no arrow from a
/// block to itself; arrows strictly descend the block order.
pub fn audit_nilpotent_no_selfblock(s: &Semigroup, blocks: &BlockStructure) -> AuditReport {
    let mut witnesses = Vec::new();
    let pair = oriented_idempotents(s, blocks);
    if let Some((g, h)) = &pair {
        if let Ok(sp) = s.local_union(g, h) {
            for e in sp.elements() {
                if e.is_nilpotent() && !e.is_zero() {
                    for (x, y) in e.arrows() {
                        let (bx, by) = (
                            blocks.index_of(x).unwrap_or(0),
                            blocks.index_of(y).unwrap_or(0),
                        );
                        if by <= bx {
                            witnesses.push(format!(
                                "nilpotent {e} has arrow {x} -> {y} from block {bx} to {by}"
                            ));
                        }
                    }
                }
            }
        }
    }
    AuditReport {
        name: "nilpotent_no_selfblock",
        hypothesis_holds: small_enough(s) && pair.is_some(),
        conclusion_holds: witnesses.is_empty(),
        witnesses,
    }
}

/// The cross nilpotent set has at least `n - t` elements, `t` the least
/// block size.
pub fn audit_nilpotent_count(s: &Semigroup, blocks: &BlockStructure) -> AuditReport {
    let pair = oriented_idempotents(s, blocks);
    let mut witnesses = Vec::new();
    let mut conclusion = true;
    let mut applicable = false;
    if let Some((g, h)) = &pair {
        if let Ok(part) = nilpotent_partition(s, g, h, blocks) {
            applicable = true;
            let need = s.degree() as usize - blocks.min_size();
            if part.nilpotents.len() < need {
                conclusion = false;
                witnesses.push(format!(
                    "only {} cross nilpotents, need at least {}",
                    part.nilpotents.len(),
                    need
                ));
            }
            for w in &part.non_nilpotent {
                conclusion = false;
                witnesses.push(format!("cross element {w} is not nilpotent"));
            }
        }
    }
    AuditReport {
        name: "nilpotent_count",
        hypothesis_holds: small_enough(s) && applicable,
        conclusion_holds: conclusion,
        witnesses,
    }
}

/// Every block size is divisible by the least block size.
pub fn audit_divisibility(s: &Semigroup, blocks: &BlockStructure) -> AuditReport {
    let t = blocks.min_size();
    let mut witnesses = Vec::new();
    if t > 0 {
        for (i, size) in blocks.sizes().iter().enumerate() {
            if size % t != 0 {
                witnesses.push(format!("block {} has size {}, not divisible by {}", i + 1, size, t));
            }
        }
    }
    AuditReport {
        name: "divisibility",
        hypothesis_holds: small_enough(s),
        conclusion_holds: witnesses.is_empty(),
        witnesses,
    }
}

/// Cardinality at least `2n - p + 1`, `p` the greatest proper divisor of `n`.
pub fn audit_lower_bound(s: &Semigroup) -> AuditReport {
    let n = s.degree();
    let least = bound(n);
    let ok = s.len() >= least;
    let witnesses = if ok {
        Vec::new()
    } else {
        vec![format!(
            "|S| = {} below 2n - p + 1 = {} (p = {})",
            s.len(),
            least,
            gpd(n)
        )]
    };
    AuditReport {
        name: "lower_bound",
        hypothesis_holds: true,
        conclusion_holds: ok,
        witnesses,
    }
}

/// Runs the full audit battery on a closed, semitransitive, singular
/// semigroup, in a fixed deterministic order.
pub fn audit_all(s: &Semigroup) -> Result<Vec<AuditReport>, SemitransError> {
    if let Some(full) = s.elements().iter().find(|e| e.is_permutation()) {
        return Err(SemitransError::NotSingular(full.clone()));
    }
    let blocks = blocks(s)?;
    Ok(vec![
        audit_two_idempotents(s),
        audit_block_domains(s, &blocks),
        audit_aux_arrows(s, &blocks),
        audit_group_or_nilpotent(s),
        audit_nilpotent_no_selfblock(s, &blocks),
        audit_nilpotent_count(s, &blocks),
        audit_divisibility(s, &blocks),
        audit_lower_bound(s),
    ])
}

fn join(elems: &[PartialPerm]) -> String {
    elems
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Semigroup;
    use crate::testutil::{all_partial_perms, example_one, minimal_n2};

    fn pp(s: &str, n: u8) -> PartialPerm {
        PartialPerm::parse(s, n).unwrap()
    }

    #[test]
    fn reach_of_small_semigroup() {
        let s = minimal_n2();
        let r = reach_matrix(&s);
        assert!(r.get(1, 1) && r.get(2, 2) && r.get(1, 2) && !r.get(2, 1));
    }

    #[test]
    fn reach_of_zero_only() {
        let s = Semigroup::from_elements(&[PartialPerm::zero(3)]).unwrap();
        let r = reach_matrix(&s);
        for x in 1..=3 {
            for y in 1..=3 {
                assert!(!r.get(x, y));
            }
        }
        assert!(!is_semitransitive(&s));
    }

    #[test]
    fn example_one_reach_is_the_block_order_ideal() {
        let s = example_one();
        let r = reach_matrix(&s);
        let block_of = |p: Point| (p - 1) / 2;
        for x in 1..=8 {
            for y in 1..=8 {
                assert_eq!(r.get(x, y), block_of(x) <= block_of(y), "pair {x},{y}");
            }
        }
        assert!(r.is_transitive_relation());
    }

    #[test]
    fn example_one_is_semitransitive_not_transitive() {
        let s = example_one();
        assert!(is_semitransitive(&s));
        assert!(!is_transitive(&s));
    }

    #[test]
    fn uncovered_pair_detected() {
        let s = Semigroup::from_elements(&[pp("0", 2), pp("(1)(2]", 2), pp("(1](2)", 2)]).unwrap();
        assert!(!is_semitransitive(&s));
        assert_eq!(reach_matrix(&s).uncovered_pair(), Some((1, 2)));
    }

    #[test]
    fn full_singular_part_is_semitransitive() {
        let elems = all_partial_perms(3)
            .into_iter()
            .filter(|e| !e.is_permutation())
            .collect::<Vec<_>>();
        let s = Semigroup::from_elements(&elems).unwrap();
        assert!(is_semitransitive(&s));
        assert!(is_transitive(&s));
    }

    #[test]
    fn blocks_of_example_one() {
        let b = blocks(&example_one()).unwrap();
        let expect: Vec<PointSet> = vec![
            [1, 2].into_iter().collect(),
            [3, 4].into_iter().collect(),
            [5, 6].into_iter().collect(),
            [7, 8].into_iter().collect(),
        ];
        assert_eq!(b.blocks, expect);
        assert_eq!(b.sizes(), vec![2, 2, 2, 2]);
        assert_eq!(b.min_size(), 2);
    }

    #[test]
    fn blocks_of_minimal_n2() {
        let b = blocks(&minimal_n2()).unwrap();
        assert_eq!(b.sizes(), vec![1, 1]);
        assert!(b.blocks[0].contains(1));
    }

    #[test]
    fn blocks_error_when_not_semitransitive() {
        let s = Semigroup::from_elements(&[pp("0", 2), pp("(1)(2]", 2)]).unwrap();
        assert!(matches!(
            blocks(&s),
            Err(SemitransError::NotSemitransitive(..))
        ));
    }

    #[test]
    fn assignment_for_example_one() {
        let s = example_one();
        let b = blocks(&s).unwrap();
        let (g, h) = oriented_idempotents(&s, &b).unwrap();
        assert_eq!(g, pp("(1)(2)(3](4](5](6](7](8]", 8));
        let asg = block_assignment(&b, &g, &h).unwrap();
        assert_eq!(asg.a_blocks, vec![1]);
        assert_eq!(asg.b_blocks, vec![2, 3, 4]);
        assert_eq!(asg.offsets[&1], vec![1, 2, 3]);
        assert_eq!(asg.offset_union(), vec![1, 2, 3]);
    }

    #[test]
    fn assignment_rejects_split_blocks() {
        let b = BlockStructure {
            blocks: vec![[1, 2].into_iter().collect(), [3, 4].into_iter().collect()],
        };
        let g = PartialPerm::identity_on(4, [1, 3].into_iter().collect());
        let h = PartialPerm::identity_on(4, [2, 4].into_iter().collect());
        assert!(matches!(
            block_assignment(&b, &g, &h),
            Err(SemitransError::SplitBlock(_))
        ));
    }

    #[test]
    fn nilpotent_partition_of_example_one() {
        let s = example_one();
        let b = blocks(&s).unwrap();
        let (g, h) = oriented_idempotents(&s, &b).unwrap();
        let part = nilpotent_partition(&s, &g, &h, &b).unwrap();
        assert_eq!(part.a_to_b.len(), 6);
        assert!(part.b_to_a.is_empty());
        assert_eq!(part.nilpotents.len(), 6); // n - t = 8 - 2
        assert!(part.non_nilpotent.is_empty());
        for e in &part.a_to_b {
            let j = part.levels[e];
            assert!(j.uniform && j.level >= 1);
        }
    }

    #[test]
    fn local_dichotomy_on_example_one_h_side() {
        let s = example_one();
        let h = pp("(1](2](3)(4)(5)(6)(7)(8)", 8);
        let d = s.units_and_nilpotents(&h).unwrap();
        assert_eq!(d.group.len(), 2);
        assert_eq!(d.nilpotent.len(), 4);
        assert!(d.unclassified.is_empty());
    }

    #[test]
    fn local_dichotomy_on_example_one_g_side() {
        let s = example_one();
        let g = pp("(1)(2)(3](4](5](6](7](8]", 8);
        let d = s.units_and_nilpotents(&g).unwrap();
        assert_eq!(d.group, vec![g.clone(), pp("(1,2)(3](4](5](6](7](8]", 8)]);
        assert!(d.nilpotent.is_empty());
        assert!(d.unclassified.is_empty());
    }

    #[test]
    fn audits_pass_on_example_one() {
        let reports = audit_all(&example_one()).unwrap();
        assert_eq!(reports.len(), 8);
        for r in &reports {
            assert_eq!(r.status(), AuditStatus::Pass, "{} {:?}", r.name, r.witnesses);
        }
    }

    #[test]
    fn lower_bound_on_example_one_is_slack() {
        // built with p = 2 while gpd(8) = 4, so 15 >= 13 without equality
        let s = example_one();
        let r = audit_lower_bound(&s);
        assert!(r.conclusion_holds);
        assert_eq!(s.len(), 15);
        assert_eq!(bound(8), 13);
    }

    #[test]
    fn two_idempotent_audit_fails_with_witness_on_corrupt_input() {
        let gens = [
            PartialPerm::identity_on(3, PointSet::singleton(1)),
            PartialPerm::identity_on(3, PointSet::singleton(2)),
            PartialPerm::identity_on(3, PointSet::singleton(3)),
        ];
        let s = Semigroup::closure(&gens).unwrap();
        let r = audit_two_idempotents(&s);
        assert!(r.hypothesis_holds);
        assert_eq!(r.status(), AuditStatus::Fail);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn selfblock_audit_fails_on_corrupt_blocks() {
        // collapsing the true blocks into one makes the cross nilpotent
        // (1,2] look like an in-block arrow
        let s = minimal_n2();
        let fake = BlockStructure {
            blocks: vec![[1, 2].into_iter().collect()],
        };
        let r = audit_nilpotent_no_selfblock(&s, &fake);
        assert_eq!(r.status(), AuditStatus::Fail);
        assert!(r.witnesses[0].contains("(1,2]"));
    }

    #[test]
    fn lower_bound_audit_fails_with_witness_on_small_set() {
        let s = Semigroup::from_elements(&[pp("0", 2), pp("(1)(2]", 2)]).unwrap();
        let r = audit_lower_bound(&s);
        assert_eq!(r.status(), AuditStatus::Fail);
        assert!(r.witnesses[0].contains("below"));
    }

    #[test]
    fn oversized_semigroup_audits_are_vacuous() {
        let elems = all_partial_perms(3)
            .into_iter()
            .filter(|e| !e.is_permutation())
            .collect::<Vec<_>>();
        let s = Semigroup::from_elements(&elems).unwrap();
        let reports = audit_all(&s).unwrap();
        let two = reports.iter().find(|r| r.name == "two_idempotents").unwrap();
        assert_eq!(two.status(), AuditStatus::Vacuous);
        assert!(!two.conclusion_holds); // seven nonzero idempotents
        let lb = reports.iter().find(|r| r.name == "lower_bound").unwrap();
        assert_eq!(lb.status(), AuditStatus::Pass);
    }

    #[test]
    fn audit_all_rejects_non_singular_input() {
        let s = Semigroup::from_elements(&[PartialPerm::identity(2)]).unwrap();
        assert!(matches!(audit_all(&s), Err(SemitransError::NotSingular(_))));
    }

    #[test]
    fn s_prime_of_example_one_is_itself() {
        let s = example_one();
        let b = blocks(&s).unwrap();
        let (g, h) = oriented_idempotents(&s, &b).unwrap();
        let sp = s.local_union(&g, &h).unwrap();
        assert_eq!(sp, s);
        assert_eq!(blocks(&sp).unwrap(), b);
    }
}
