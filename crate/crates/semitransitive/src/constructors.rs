//! Builders for the minimal semitransitive families.
//!
//! The common engine is a product action: a regular permutation group `G`
//! on a set `Z` and a subsemigroup `T` of the inverse semigroup on
//! `{1..l}` act together on `l` disjoint copies of `Z` by
//! `(alpha, beta) . (z, i) = (alpha z, beta i)`. Collapsing the pairs with
//! zero second coordinate gives a faithful semigroup of partial
//! permutations of size `|G| (|T| - 1) + 1`.
//!
//! Five choices of `T` (and for two of them a finer, imprimitivity-based
//! action) give subsemigroups of the singular part of size exactly
//! `2n - p + 1` for every proper divisor `p` of `n`. With `p` the greatest
//! proper divisor this is the least possible size, and every minimal
//! example is similar to one of the five families.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::pperm::{PPermError, PartialPerm, Point, PointSet};
use crate::semigroup::{Semigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("degree {0} out of supported range")]
    BadDegree(u8),
    #[error("{p} is not a proper divisor of {n}")]
    NotProperDivisor { n: u8, p: u8 },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("group is not transitive on its carrier")]
    NotTransitive,
    #[error("group of order {order} on {carrier} points is not regular")]
    NotRegular { order: usize, carrier: usize },
    #[error("generator {0} does not act on the carrier {1}")]
    BadGenerator(PartialPerm, PointSet),
    #[error("sub-blocks are not an imprimitivity system: {0}")]
    Imprimitivity(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what}: expected {expected} elements, got {got}")]
    CardinalityMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    PPerm(#[from] PPermError),
}

/// Greatest proper divisor of `n`: `n` over its least prime factor,
/// so 1 exactly when `n` is prime.
pub fn gpd(n: u8) -> u8 {
    assert!(n >= 2, "gpd requires n >= 2");
    let mut f = 2u8;
    while (f as u16) * (f as u16) <= n as u16 {
        if n.is_multiple_of(f) {
            return n / f;
        }
        f += 1;
    }
    1
}

/// The minimal cardinality `2n - p + 1` with `p` the greatest proper divisor.
pub fn bound(n: u8) -> usize {
    2 * n as usize - gpd(n) as usize + 1
}

/// All proper divisors of `n` (including 1), ascending.
pub fn proper_divisors(n: u8) -> Vec<u8> {
    (1..n).filter(|p| n.is_multiple_of(*p)).collect()
}

/// A transitive permutation group whose order equals its carrier size,
/// held as partial permutations fixing nothing outside the carrier.
#[derive(Clone, Debug)]
pub struct RegularGroup {
    degree: u8,
    carrier: PointSet,
    elements: Vec<PartialPerm>,
}

impl RegularGroup {
    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn carrier(&self) -> PointSet {
        self.carrier
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }
}

/// The group generated by the full cycle on the sorted carrier.
pub fn cyclic_group(degree: u8, carrier: PointSet) -> Result<RegularGroup, ConstructError> {
    if carrier.is_empty() || !carrier.is_subset(&PointSet::full(degree)) {
        return Err(ConstructError::BadPartition(format!(
            "carrier {carrier} does not fit degree {degree}"
        )));
    }
    let pts: Vec<Point> = carrier.iter().collect();
    let pairs: Vec<(Point, Point)> = pts
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, pts[(i + 1) % pts.len()]))
        .collect();
    regular_group(&[PartialPerm::from_pairs(degree, &pairs)?])
}

/// Closes the generators and verifies transitivity and regularity.
pub fn regular_group(generators: &[PartialPerm]) -> Result<RegularGroup, ConstructError> {
    if generators.is_empty() {
        return Err(ConstructError::InvalidParams("no group generators".into()));
    }
    let degree = generators[0].degree();
    let carrier = generators[0].domain();
    for g in generators {
        if g.degree() != degree || g.domain() != carrier || g.image() != carrier {
            return Err(ConstructError::BadGenerator(g.clone(), carrier));
        }
    }
    let closed = Semigroup::closure(generators)?;
    let elements: Vec<PartialPerm> = closed.elements().to_vec();
    // orbit of the least carrier point
    let start = carrier.min_point().expect("nonempty carrier");
    let orbit: PointSet = elements
        .iter()
        .filter_map(|g| g.apply(start))
        .collect();
    if orbit != carrier {
        return Err(ConstructError::NotTransitive);
    }
    if elements.len() != carrier.len() {
        return Err(ConstructError::NotRegular {
            order: elements.len(),
            carrier: carrier.len(),
        });
    }
    Ok(RegularGroup {
        degree,
        carrier,
        elements,
    })
}

/// Splits `{1..n}` into consecutive runs of `part` points.
pub fn consecutive_partition(n: u8, part: u8) -> Vec<PointSet> {
    assert!(part >= 1 && n.is_multiple_of(part));
    (0..n / part)
        .map(|i| ((i * part + 1)..=(i * part + part)).collect())
        .collect()
}

fn check_partition(n: u8, partition: &[PointSet], size: usize) -> Result<(), ConstructError> {
    let mut seen = PointSet::EMPTY;
    for blk in partition {
        if blk.len() != size {
            return Err(ConstructError::BadPartition(format!(
                "block {blk} has size {}, expected {size}",
                blk.len()
            )));
        }
        if !seen.is_disjoint(blk) {
            return Err(ConstructError::BadPartition(format!(
                "block {blk} overlaps earlier blocks"
            )));
        }
        seen = seen.union(blk);
    }
    if seen != PointSet::full(n) {
        return Err(ConstructError::BadPartition(format!(
            "blocks cover {seen}, expected all of 1..{n}"
        )));
    }
    Ok(())
}

/// The product action of `group` and `t` on `partition.len()` disjoint
/// copies of the carrier, one per point of the degree of `t`. Copy `i` is
/// identified with the carrier through the order-preserving bijection.
pub fn product_action(
    group: &RegularGroup,
    t: &Semigroup,
    partition: &[PointSet],
) -> Result<Semigroup, ConstructError> {
    let l = partition.len();
    if l < 2 {
        return Err(ConstructError::InvalidParams("need at least 2 copies".into()));
    }
    if t.degree() as usize != l {
        return Err(ConstructError::InvalidParams(format!(
            "index semigroup has degree {}, partition has {} blocks",
            t.degree(),
            l
        )));
    }
    if !t.has_zero() {
        return Err(ConstructError::InvalidParams(
            "index semigroup must contain the zero".into(),
        ));
    }
    let p = group.carrier().len();
    let n_usize = l * p;
    if n_usize > crate::pperm::MAX_DEGREE as usize {
        return Err(ConstructError::BadDegree(n_usize.min(255) as u8));
    }
    let n = n_usize as u8;
    check_partition(n, partition, p)?;
    let copies: Vec<Vec<Point>> = partition.iter().map(|b| b.iter().collect()).collect();
    let carrier_pts: Vec<Point> = group.carrier().iter().collect();
    let mut label = vec![usize::MAX; group.degree() as usize + 1];
    for (i, &pt) in carrier_pts.iter().enumerate() {
        label[pt as usize] = i;
    }

    let mut elems: Vec<PartialPerm> = vec![PartialPerm::zero(n)];
    for alpha in group.elements() {
        for beta in t.elements() {
            if beta.is_zero() {
                continue;
            }
            let mut pairs = Vec::with_capacity(p * l);
            for i in 1..=l as u8 {
                if let Some(j) = beta.apply(i) {
                    for (z, &src_pt) in copies[(i - 1) as usize].iter().enumerate() {
                        let moved = alpha.apply(carrier_pts[z]).expect("carrier point");
                        let tgt_pt = copies[(j - 1) as usize][label[moved as usize]];
                        pairs.push((src_pt, tgt_pt));
                    }
                }
            }
            elems.push(PartialPerm::from_pairs(n, &pairs)?);
        }
    }
    let result = Semigroup::from_elements(&elems)?;
    let expected = group.order() * (t.len() - 1) + 1;
    if result.len() != expected {
        return Err(ConstructError::CardinalityMismatch {
            what: "product action",
            expected,
            got: result.len(),
        });
    }
    Ok(result)
}

fn closure_of(gens: &[PartialPerm], expected: usize, what: &'static str) -> Result<Semigroup, ConstructError> {
    let t = Semigroup::closure(gens)?;
    if t.len() != expected {
        return Err(ConstructError::CardinalityMismatch {
            what,
            expected,
            got: t.len(),
        });
    }
    Ok(t)
}

/// The semitransitive, non-transitive subsemigroup of size `n + 1`: the
/// product action of `group` with the semigroup generated by the full
/// chain on `{1..l}` together with an adjoined identity. The identity pairs
/// act as full permutations, so the result is not inside the singular part;
/// it is the structural model for the local semigroups `e S e`.
pub fn reference_chain(
    n: u8,
    group: &RegularGroup,
    partition: &[PointSet],
) -> Result<Semigroup, ConstructError> {
    let l = partition.len() as u8;
    if l < 2 || n as usize != partition.len() * group.carrier().len() {
        return Err(ConstructError::InvalidParams(format!(
            "need n = l * p, got n = {n}, l = {l}, p = {}",
            group.carrier().len()
        )));
    }
    let chain: Vec<(Point, Point)> = (1..l).map(|i| (i, i + 1)).collect();
    let mut gens = vec![PartialPerm::from_pairs(l, &chain)?, PartialPerm::identity(l)];
    gens.dedup();
    let t = closure_of(&gens, l as usize + 1, "chain index semigroup")?;
    let s = product_action(group, &t, partition)?;
    debug_assert_eq!(s.len(), n as usize + 1);
    Ok(s)
}

fn validate_divisor(n: u8, p: u8) -> Result<u8, ConstructError> {
    if !(2..=crate::pperm::MAX_DEGREE).contains(&n) {
        return Err(ConstructError::BadDegree(n));
    }
    if p == 0 || p >= n || !n.is_multiple_of(p) {
        return Err(ConstructError::NotProperDivisor { n, p });
    }
    Ok(n / p)
}

fn check_group_on(
    group: &RegularGroup,
    n: u8,
    carrier: PointSet,
    order: usize,
) -> Result<(), ConstructError> {
    if group.degree() != n || group.carrier() != carrier {
        return Err(ConstructError::InvalidParams(format!(
            "group acts on {} at degree {}, expected {carrier} at degree {n}",
            group.carrier(),
            group.degree()
        )));
    }
    if group.order() != order {
        return Err(ConstructError::NotRegular {
            order: group.order(),
            carrier: order,
        });
    }
    Ok(())
}

/// First family: the index semigroup is generated by the step `1 -> 2`,
/// the shift `i -> i + 1` on `{2..m-1}`, and the identities on `{1}` and
/// on `{2..m}`. Size `2n - p + 1` on `m = n / p` blocks of size `p`.
pub fn type1(
    n: u8,
    p: u8,
    group: &RegularGroup,
    partition: &[PointSet],
) -> Result<Semigroup, ConstructError> {
    let m = validate_divisor(n, p)?;
    check_group_on(group, n, partition.first().copied().unwrap_or(PointSet::EMPTY), p as usize)?;
    let step = PartialPerm::from_pairs(m, &[(1, 2)])?;
    let shift_pairs: Vec<(Point, Point)> = (2..m).map(|i| (i, i + 1)).collect();
    let shift = PartialPerm::from_pairs(m, &shift_pairs)?;
    let id_top = PartialPerm::identity_on(m, PointSet::singleton(1));
    let id_rest = PartialPerm::identity_on(m, (2..=m).collect());
    let t = closure_of(&[step, shift, id_top, id_rest], 2 * m as usize, "index semigroup")?;
    let s = product_action(group, &t, partition)?;
    expect_minimal_size(&s, n, p)
}

/// Second family: the elementwise inverse of the first. Arrows run up the
/// block order instead of down it.
pub fn type2(
    n: u8,
    p: u8,
    group: &RegularGroup,
    partition: &[PointSet],
) -> Result<Semigroup, ConstructError> {
    Ok(type1(n, p, group, partition)?.elementwise_inverse())
}

/// Third family: the idempotent domains alternate between odd and even
/// blocks. Generated by the two parity pairings `2k-1 -> 2k` and
/// `2k -> 2k+1` plus the identities on the odd and on the even indices.
pub fn type3(
    n: u8,
    p: u8,
    group: &RegularGroup,
    partition: &[PointSet],
) -> Result<Semigroup, ConstructError> {
    let m = validate_divisor(n, p)?;
    check_group_on(group, n, partition.first().copied().unwrap_or(PointSet::EMPTY), p as usize)?;
    let odd_pairs: Vec<(Point, Point)> = (1..=m / 2).map(|k| (2 * k - 1, 2 * k)).collect();
    let even_pairs: Vec<(Point, Point)> = (1..=(m - 1) / 2).map(|k| (2 * k, 2 * k + 1)).collect();
    let pair_odd = PartialPerm::from_pairs(m, &odd_pairs)?;
    let pair_even = PartialPerm::from_pairs(m, &even_pairs)?;
    let id_odd = PartialPerm::identity_on(m, (1..=m).step_by(2).collect());
    let id_even = PartialPerm::identity_on(m, (2..=m).step_by(2).collect());
    let t = closure_of(&[pair_odd, pair_even, id_odd, id_even], 2 * m as usize, "index semigroup")?;
    let s = product_action(group, &t, partition)?;
    expect_minimal_size(&s, n, p)
}

fn expect_minimal_size(s: &Semigroup, n: u8, p: u8) -> Result<Semigroup, ConstructError> {
    let expected = 2 * n as usize - p as usize + 1;
    if s.len() != expected {
        return Err(ConstructError::CardinalityMismatch {
            what: "minimal family",
            expected,
            got: s.len(),
        });
    }
    Ok(s.clone())
}

/// Parameters of the fourth family: one top block of size `p` and `m - 1`
/// lower blocks of size `l p`, each split into `l` sub-blocks of size `p`.
/// The group acts regularly on the second block with the sub-blocks as an
/// imprimitivity system; its sub-block stabilizer (of order `p`) plays the
/// role of the top-block group.
#[derive(Clone, Debug)]
pub struct Type4Params {
    pub p: u8,
    pub l: u8,
    pub m: u8,
    pub top_block: PointSet,
    /// `sub_blocks[a - 2][b - 1]` is the `b`-th sub-block of block `a`.
    pub sub_blocks: Vec<Vec<PointSet>>,
    pub group: RegularGroup,
}

impl Type4Params {
    pub fn degree(&self) -> u8 {
        self.l * self.p * (self.m - 1) + self.p
    }

    /// Second block, the carrier of the group.
    pub fn second_block(&self) -> PointSet {
        self.sub_blocks[0]
            .iter()
            .fold(PointSet::EMPTY, |acc, b| acc.union(b))
    }

    /// Consecutive layout with the canonical sub-block-rotating cyclic group.
    pub fn canonical(p: u8, l: u8, m: u8) -> Result<Type4Params, ConstructError> {
        let layout = Self::canonical_layout(p, l, m)?;
        let group = Self::canonical_group(p, l, m)?;
        Ok(Type4Params { group, ..layout })
    }

    /// Consecutive layout with a caller-supplied group on the second block.
    pub fn with_group(p: u8, l: u8, m: u8, group: RegularGroup) -> Result<Type4Params, ConstructError> {
        let layout = Self::canonical_layout(p, l, m)?;
        Ok(Type4Params { group, ..layout })
    }

    fn canonical_layout(p: u8, l: u8, m: u8) -> Result<Type4Params, ConstructError> {
        if p < 1 || l < 2 || m < 2 {
            return Err(ConstructError::InvalidParams(format!(
                "need p >= 1, l >= 2, m >= 2; got p = {p}, l = {l}, m = {m}"
            )));
        }
        let n = l as usize * p as usize * (m as usize - 1) + p as usize;
        if n > crate::pperm::MAX_DEGREE as usize {
            return Err(ConstructError::BadDegree(n.min(255) as u8));
        }
        let top_block: PointSet = (1..=p).collect();
        let mut next = p + 1;
        let mut sub_blocks = Vec::new();
        for _a in 2..=m {
            let mut row = Vec::new();
            for _b in 1..=l {
                row.push((next..next + p).collect());
                next += p;
            }
            sub_blocks.push(row);
        }
        Ok(Type4Params {
            p,
            l,
            m,
            top_block,
            sub_blocks,
            // placeholder; callers overwrite
            group: cyclic_group(n as u8, (p + 1..=2 * p).collect())?,
        })
    }

    /// The cycle sending sub-block `b` to `b + 1` and stepping the label
    /// once per full round; it has order `l p` and keeps the sub-blocks as
    /// imprimitivity blocks.
    pub fn canonical_group(p: u8, l: u8, m: u8) -> Result<RegularGroup, ConstructError> {
        let layout = Self::canonical_layout(p, l, m)?;
        let n = layout.degree();
        let row = &layout.sub_blocks[0];
        let cols: Vec<Vec<Point>> = row.iter().map(|b| b.iter().collect()).collect();
        let mut pairs = Vec::new();
        for b in 0..l as usize {
            for x in 0..p as usize {
                let src = cols[b][x];
                let tgt = if b + 1 < l as usize {
                    cols[b + 1][x]
                } else {
                    cols[0][(x + 1) % p as usize]
                };
                pairs.push((src, tgt));
            }
        }
        regular_group(&[PartialPerm::from_pairs(n, &pairs)?])
    }
}

/// Fourth family. The index set has one point for the top block and one
/// per sub-block; the index semigroup is generated the same way as in the
/// first family, columnwise. A pair `(alpha, beta)` moves the index by
/// `beta`, then transports `alpha` through the order-preserving bijections
/// at the target sub-block; pairs whose index part is the top identity act
/// only for `alpha` in the sub-block stabilizer.
pub fn type4(params: &Type4Params) -> Result<Semigroup, ConstructError> {
    let (p, l, m) = (params.p, params.l, params.m);
    let n = params.degree();
    // layout checks
    let mut all_blocks = vec![params.top_block];
    if params.top_block.len() != p as usize {
        return Err(ConstructError::BadPartition("top block size".into()));
    }
    if params.sub_blocks.len() != (m - 1) as usize
        || params.sub_blocks.iter().any(|row| row.len() != l as usize)
    {
        return Err(ConstructError::BadPartition("sub-block grid shape".into()));
    }
    for row in &params.sub_blocks {
        for blk in row {
            all_blocks.push(*blk);
        }
    }
    check_partition(n, &all_blocks, p as usize)?;
    let second = params.second_block();
    check_group_on(&params.group, n, second, l as usize * p as usize)?;

    // imprimitivity of the sub-blocks of the second block
    let row2 = &params.sub_blocks[0];
    let block_of = |alpha: &PartialPerm, b: usize| -> Result<usize, ConstructError> {
        let image: PointSet = row2[b].iter().map(|x| alpha.apply(x).unwrap()).collect();
        row2.iter()
            .position(|u| *u == image)
            .ok_or_else(|| ConstructError::Imprimitivity(format!("{alpha} maps {} to {image}", row2[b])))
    };
    let mut stabilizer = Vec::new();
    for alpha in params.group.elements() {
        for b in 0..l as usize {
            block_of(alpha, b)?;
        }
        if block_of(alpha, 0)? == 0 {
            stabilizer.push(alpha.clone());
        }
    }
    if stabilizer.len() != p as usize {
        return Err(ConstructError::NotRegular {
            order: stabilizer.len(),
            carrier: p as usize,
        });
    }
    let u1_min = row2[0].min_point().expect("nonempty sub-block");
    let orbit: PointSet = stabilizer.iter().map(|a| a.apply(u1_min).unwrap()).collect();
    if orbit != row2[0] {
        return Err(ConstructError::NotTransitive);
    }

    // index semigroup on 1 + l (m - 1) points, columnwise chains
    let zsize = 1 + l as usize * (m as usize - 1);
    let z_id = |a: u8, b: u8| -> Point {
        if a == 1 {
            1
        } else {
            (1 + (a - 2) as usize * l as usize + b as usize) as Point
        }
    };
    let step = PartialPerm::from_pairs(zsize as u8, &[(z_id(1, 1), z_id(2, 1))])?;
    let mut shift_pairs = Vec::new();
    for a in 2..m {
        for b in 1..=l {
            shift_pairs.push((z_id(a, b), z_id(a + 1, b)));
        }
    }
    let shift = PartialPerm::from_pairs(zsize as u8, &shift_pairs)?;
    let id_top = PartialPerm::identity_on(zsize as u8, PointSet::singleton(1));
    let id_rest = PartialPerm::identity_on(zsize as u8, (2..=zsize as u8).collect());
    let t = closure_of(
        &[step, shift, id_top.clone(), id_rest],
        2 * m as usize,
        "index semigroup",
    )?;

    // transport tables
    let kappa = |a: u8, b: u8| -> Vec<Point> {
        if a == 1 {
            params.top_block.iter().collect()
        } else {
            params.sub_blocks[(a - 2) as usize][(b - 1) as usize].iter().collect()
        }
    };
    let decode_z = |z: Point| -> (u8, u8) {
        if z == 1 {
            (1, 1)
        } else {
            let off = (z - 2) as usize;
            ((off / l as usize) as u8 + 2, (off % l as usize) as u8 + 1)
        }
    };
    // position of each second-block point: (label, sub-block)
    let mut locate = vec![(0usize, 0u8); n as usize + 1];
    for b in 1..=l {
        for (x, pt) in kappa(2, b).iter().enumerate() {
            locate[*pt as usize] = (x, b);
        }
    }

    let mut elems: Vec<PartialPerm> = vec![PartialPerm::zero(n)];
    for alpha in params.group.elements() {
        let in_stabilizer = stabilizer.contains(alpha);
        for beta in t.elements() {
            if beta.is_zero() {
                continue;
            }
            if *beta == id_top && !in_stabilizer {
                continue;
            }
            let mut pairs = Vec::new();
            for z in 1..=zsize as u8 {
                if let Some(zt) = beta.apply(z) {
                    let (a, b) = decode_z(z);
                    let (a_t, b_t) = decode_z(zt);
                    let src_col = kappa(a, b);
                    if a_t == 1 {
                        // only the top identity maps into the top index
                        let avatar = kappa(2, 1);
                        for x in 0..p as usize {
                            let moved = alpha.apply(avatar[x]).unwrap();
                            let (x2, _) = locate[moved as usize];
                            pairs.push((src_col[x], kappa(1, 1)[x2]));
                        }
                    } else {
                        let avatar = kappa(2, b_t);
                        for x in 0..p as usize {
                            let moved = alpha.apply(avatar[x]).unwrap();
                            let (x2, b2) = locate[moved as usize];
                            pairs.push((src_col[x], kappa(a_t, b2)[x2]));
                        }
                    }
                }
            }
            elems.push(PartialPerm::from_pairs(n, &pairs)?);
        }
    }
    let s = Semigroup::from_elements(&elems)?;
    expect_minimal_size(&s, n, p)
}

/// Fifth family: the elementwise inverse of the fourth.
pub fn type5(params: &Type4Params) -> Result<Semigroup, ConstructError> {
    Ok(type4(params)?.elementwise_inverse())
}

/// Which construction a builder call refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Type1,
    Type2,
    Type3,
    Type4,
    Type5,
    Reference,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Type1 => "type1",
            Family::Type2 => "type2",
            Family::Type3 => "type3",
            Family::Type4 => "type4",
            Family::Type5 => "type5",
            Family::Reference => "ref",
        }
    }

    pub fn from_label(s: &str) -> Option<Family> {
        match s {
            "1" | "type1" => Some(Family::Type1),
            "2" | "type2" => Some(Family::Type2),
            "3" | "type3" => Some(Family::Type3),
            "4" | "type4" => Some(Family::Type4),
            "5" | "type5" => Some(Family::Type5),
            "ref" | "reference" => Some(Family::Reference),
            _ => None,
        }
    }
}

/// One builder call: family, degree, divisor, optional fourth-family shape
/// `(l, m)`, optional custom group and partition.
#[derive(Clone, Debug, Default)]
pub struct BuildSpec {
    pub family: Option<Family>,
    pub n: u8,
    pub p: u8,
    pub l: Option<u8>,
    pub m: Option<u8>,
    pub group: Option<Vec<PartialPerm>>,
    pub partition: Option<Vec<PointSet>>,
}

/// Builds any family from a parameter record, filling in the canonical
/// partition and group when absent.
pub fn build(spec: &BuildSpec) -> Result<Semigroup, ConstructError> {
    let family = spec
        .family
        .ok_or_else(|| ConstructError::InvalidParams("family not set".into()))?;
    let (n, p) = (spec.n, spec.p);
    match family {
        Family::Type1 | Family::Type2 | Family::Type3 => {
            validate_divisor(n, p)?;
            let partition = match &spec.partition {
                Some(part) => part.clone(),
                None => consecutive_partition(n, p),
            };
            let carrier = *partition
                .first()
                .ok_or_else(|| ConstructError::BadPartition("empty partition".into()))?;
            let group = match &spec.group {
                Some(gens) => regular_group(gens)?,
                None => cyclic_group(n, carrier)?,
            };
            match family {
                Family::Type1 => type1(n, p, &group, &partition),
                Family::Type2 => type2(n, p, &group, &partition),
                _ => type3(n, p, &group, &partition),
            }
        }
        Family::Type4 | Family::Type5 => {
            let l = spec
                .l
                .ok_or_else(|| ConstructError::InvalidParams("fourth family needs l".into()))?;
            let m = match spec.m {
                Some(m) => m,
                None => {
                    let span = n as usize - p as usize;
                    let per = l as usize * p as usize;
                    if per == 0 || !span.is_multiple_of(per) {
                        return Err(ConstructError::InvalidParams(format!(
                            "no m with n = l p (m - 1) + p for n = {n}, p = {p}, l = {l}"
                        )));
                    }
                    (span / per + 1) as u8
                }
            };
            let mut params = match &spec.partition {
                Some(part) => {
                    // expect X_1 then the sub-blocks in row-major order
                    if part.len() != 1 + l as usize * (m as usize - 1) {
                        return Err(ConstructError::BadPartition(format!(
                            "expected {} blocks of size {p}",
                            1 + l as usize * (m as usize - 1)
                        )));
                    }
                    let mut layout = Type4Params::canonical_layout(p, l, m)?;
                    layout.top_block = part[0];
                    let mut it = part[1..].iter();
                    for row in layout.sub_blocks.iter_mut() {
                        for blk in row.iter_mut() {
                            *blk = *it.next().unwrap();
                        }
                    }
                    layout
                }
                None => Type4Params::canonical_layout(p, l, m)?,
            };
            params.group = match &spec.group {
                Some(gens) => regular_group(gens)?,
                None => {
                    if spec.partition.is_some() {
                        // cycle through the supplied sub-blocks
                        let mut canon = Type4Params::canonical_layout(p, l, m)?;
                        canon.sub_blocks = params.sub_blocks.clone();
                        canon.top_block = params.top_block;
                        custom_column_group(&canon)?
                    } else {
                        Type4Params::canonical_group(p, l, m)?
                    }
                }
            };
            if params.degree() != n {
                return Err(ConstructError::InvalidParams(format!(
                    "l p (m - 1) + p = {} does not match n = {n}",
                    params.degree()
                )));
            }
            match family {
                Family::Type4 => type4(&params),
                _ => type5(&params),
            }
        }
        Family::Reference => {
            validate_divisor(n, p)?;
            let l = n / p;
            let partition = match &spec.partition {
                Some(part) => part.clone(),
                None => consecutive_partition(n, p),
            };
            let carrier = *partition
                .first()
                .ok_or_else(|| ConstructError::BadPartition("empty partition".into()))?;
            let group = match &spec.group {
                Some(gens) => regular_group(gens)?,
                None => cyclic_group(n, carrier)?,
            };
            let _ = l;
            reference_chain(n, &group, &partition)
        }
    }
}

fn custom_column_group(params: &Type4Params) -> Result<RegularGroup, ConstructError> {
    let cols: Vec<Vec<Point>> = params.sub_blocks[0].iter().map(|b| b.iter().collect()).collect();
    let (p, l) = (params.p as usize, params.l as usize);
    let mut pairs = Vec::new();
    for b in 0..l {
        for x in 0..p {
            let src = cols[b][x];
            let tgt = if b + 1 < l { cols[b + 1][x] } else { cols[0][(x + 1) % p] };
            pairs.push((src, tgt));
        }
    }
    regular_group(&[PartialPerm::from_pairs(params.degree(), &pairs)?])
}

/// Verbatim transcriptions of the three worked instances, in the on-disk
/// semigroup file format. Two of them carry malformed lines; the diffs in
/// [`build_example`] are expected to flag exactly those.
pub const EXAMPLE_LISTINGS: [&str; 3] = [
    "n=8\n\
     # worked instance of the first family, n = 8, p = 2\n\
     (1)(2)(3](4](5](6](7](8]\n\
     (1,2)(3](4](5](6](7](8]\n\
     (1](2](3)(4)(5)(6)(7)(8)\n\
     (1](2](3,5,7](4,6,8]\n\
     (1](2](3,7](4,8](5](6]\n\
     (1](2](3,4)(5,6)(7,8)\n\
     (1](2](3,6,7](4,5,8]\n\
     (1](2](3,8](4,7](5](6]\n\
     (1,3](2,4](5](6](7](8]\n\
     (1,5](2,6](3](4](7](8]\n\
     (1,7](2,8](3](4](5](6]\n\
     (1,4](2,3](5](6](7](8]\n\
     (1,6](2,7](3](4](7](8]\n\
     (1,8](2,7](3](4](5](6]\n\
     0\n",
    "n=10\n\
     # worked instance of the fourth family, n = 10, p = 2, l = 2\n\
     (1)(2)(3](4](5](6](7](8](9](10]\n\
     (1,2)(3](4](5](6](7](8](9](10]\n\
     (1](2](3)(4)(5)(6)(7)(8)(9)(10)\n\
     (1](2](3,5,4,6)(7,9,8,10)\n\
     (1](2](3,4)(5,6)(7,8)(9,10)\n\
     (1](2](3,6,4,5)(7,10,8,9)\n\
     (1](2](3,7](4,8](5,9](6,10]\n\
     (1](2](3,9](4,10](5,8](6,7]\n\
     (1](2](3,8](4,7](5,10](6,9]\n\
     (1](2](3,10](4,9](5,7](6,8]\n\
     (1,3](2,4](5](6](7](8](9](10]\n\
     (1,4](2,3](5](6](7](8](9](10]\n\
     (1,5](2,6](3](4](7](8](9](10]\n\
     (1,6](2,5](3](4](7](8](9](10]\n\
     (1,7](2,8](3](4](5](6](9](10]\n\
     (1,8](2,7](3](4](5](6](9](10]\n\
     (1,9](2,10](3](4](5](6](7](8]\n\
     (1,10](2,9](3](4](5](6](7](8]\n\
     0\n",
    "n=8\n\
     # worked instance of the third family, n = 8, p = 2\n\
     (1)(2)(5)(6)(3](4](7](8]\n\
     (1,2)(5,6)(3](4](7](8]\n\
     (1,5](2,6](3](4](7](8]\n\
     (1,6](2,5](3](4](7](8]\n\
     (3)(4)(7)(8)(1](2](5](6]\n\
     (3,4)(7,8)(1](2](5](6]\n\
     (3,7](4,8](1](2](5](6]\n\
     (3,8](4,7](1](2](5](6]\n\
     (1,3](2,4](5,7](6,8]\n\
     (1,4](2,3](5,8](6,7]\n\
     (1,7](2,8](2](3](4](5]\n\
     (1,8](2,7](2](3](4](5]\n\
     (3,5](4,6](1](2](7](8]\n\
     (3,6](4,5](1](2](7](8]\n\
     0\n",
];

/// How a regenerated instance compares against its transcription.
#[derive(Clone, Debug, Default)]
pub struct ExampleDiff {
    /// Transcription lines that do not parse, with the parse error.
    pub malformed_lines: Vec<(String, String)>,
    /// Constructed elements absent from the transcription.
    pub missing_from_transcription: Vec<PartialPerm>,
    /// Transcription elements absent from the construction.
    pub extra_in_transcription: Vec<PartialPerm>,
}

impl ExampleDiff {
    pub fn is_clean(&self) -> bool {
        self.malformed_lines.is_empty()
            && self.missing_from_transcription.is_empty()
            && self.extra_in_transcription.is_empty()
    }
}

/// The malformed transcription lines each instance is known to carry.
pub fn documented_malformed_lines(k: u8) -> Vec<&'static str> {
    match k {
        1 => vec!["(1,6](2,7](3](4](7](8]"],
        3 => vec![
            "(1,7](2,8](2](3](4](5]",
            "(1,8](2,7](2](3](4](5]",
        ],
        _ => vec![],
    }
}

/// Rebuilds worked instance `k` (1, 2 or 3) with its published parameters
/// and diffs the result against the embedded transcription.
pub fn build_example(k: u8) -> Result<(Semigroup, ExampleDiff), ConstructError> {
    let s = match k {
        1 => {
            let partition = consecutive_partition(8, 2);
            let group = cyclic_group(8, partition[0])?;
            type1(8, 2, &group, &partition)?
        }
        2 => type4(&Type4Params::canonical(2, 2, 3)?)?,
        3 => {
            let partition = consecutive_partition(8, 2);
            let group = cyclic_group(8, partition[0])?;
            type3(8, 2, &group, &partition)?
        }
        _ => return Err(ConstructError::InvalidParams(format!("no instance {k}"))),
    };
    let listing = EXAMPLE_LISTINGS[(k - 1) as usize];
    let mut diff = ExampleDiff::default();
    let mut transcribed: BTreeSet<PartialPerm> = BTreeSet::new();
    for line in listing.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("n=") {
            continue;
        }
        match PartialPerm::parse(line, s.degree()) {
            Ok(e) => {
                transcribed.insert(e);
            }
            Err(err) => diff.malformed_lines.push((line.to_string(), err.to_string())),
        }
    }
    for e in s.elements() {
        if !transcribed.contains(e) {
            diff.missing_from_transcription.push(e.clone());
        }
    }
    for e in transcribed {
        if !s.contains(&e) {
            diff.extra_in_transcription.push(e);
        }
    }
    Ok((s, diff))
}
