//! Partial injective maps on `{1..n}` and their chain-cycle notation.
//!
//! A [`PartialPerm`] is an injective map from a subset of `{1..n}` into
//! `{1..n}`, the element type of the symmetric inverse semigroup on `n`
//! points. Composition acts on the right: `x` under `a.compose(&b)` is
//! `(x a) b`. The degree is capped at 64 so that domains and images fit
//! in one machine word ([`PointSet`]).
//!
//! Elements print in chain-cycle notation: `(a,b,c)` is a cycle, `(a,b,c]`
//! is a chain whose last point leaves the domain, `(a]` is a point in
//! neither domain nor image, and the nowhere-defined map prints as `0`.

use std::fmt;

use thiserror::Error;

/// A 1-based point of the underlying set `{1..n}`.
pub type Point = u8;

/// Largest supported degree; domains and images are stored as `u64` masks.
pub const MAX_DEGREE: u8 = 64;

/// A set of points of `{1..n}` backed by a single machine word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// All points `1..=n`.
    pub fn full(n: u8) -> Self {
        debug_assert!(n <= MAX_DEGREE);
        if n == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: Point) -> Self {
        PointSet(1u64 << (p - 1))
    }

    pub fn contains(&self, p: Point) -> bool {
        p >= 1 && self.0 & (1u64 << (p - 1)) != 0
    }

    pub fn insert(&mut self, p: Point) {
        self.0 |= 1u64 << (p - 1);
    }

    pub fn remove(&mut self, p: Point) {
        self.0 &= !(1u64 << (p - 1));
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Points in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        let bits = self.0;
        (1..=64u8).filter(move |p| bits & (1u64 << (p - 1)) != 0)
    }

    pub fn min_point(&self) -> Option<Point> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as u8 + 1)
        }
    }

    pub fn bits(&self) -> u64 {
        self.0
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Errors from building or parsing partial permutations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PPermError {
    #[error("degree {0} out of range 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("point {0} out of range 1..={1}")]
    OutOfRange(u64, u8),
    #[error("point {0} repeated")]
    RepeatedPoint(Point),
    #[error("target {0} repeated (map not injective)")]
    RepeatedTarget(Point),
    #[error("malformed chain-cycle expression at byte {0}: {1}")]
    Malformed(usize, String),
}

/// An injective partial self-map of `{1..n}`.
///
/// Stored as the target of each point, with 0 marking points outside the
/// domain. Ordering is lexicographic on `(degree, targets)`, which puts the
/// zero map first among elements of one degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialPerm {
    deg: u8,
    img: Vec<u8>,
}

impl PartialPerm {
    /// The nowhere-defined map (the zero of the inverse semigroup).
    pub fn zero(deg: u8) -> Self {
        assert!((1..=MAX_DEGREE).contains(&deg), "degree out of range");
        PartialPerm {
            deg,
            img: vec![0; deg as usize],
        }
    }

    /// The identity on all of `{1..deg}`.
    pub fn identity(deg: u8) -> Self {
        Self::identity_on(deg, PointSet::full(deg))
    }

    /// The idempotent acting as the identity on `dom` and undefined elsewhere.
    pub fn identity_on(deg: u8, dom: PointSet) -> Self {
        let mut p = Self::zero(deg);
        for x in dom.iter() {
            assert!(x <= deg, "domain point out of range");
            p.img[(x - 1) as usize] = x;
        }
        p
    }

    /// Builds from explicit `(source, target)` arrows.
    pub fn from_pairs(deg: u8, pairs: &[(Point, Point)]) -> Result<Self, PPermError> {
        if !(1..=MAX_DEGREE).contains(&deg) {
            return Err(PPermError::BadDegree(deg as usize));
        }
        let mut p = Self::zero(deg);
        let mut seen_target = PointSet::EMPTY;
        for &(x, y) in pairs {
            if x < 1 || x > deg {
                return Err(PPermError::OutOfRange(x as u64, deg));
            }
            if y < 1 || y > deg {
                return Err(PPermError::OutOfRange(y as u64, deg));
            }
            if p.img[(x - 1) as usize] != 0 {
                return Err(PPermError::RepeatedPoint(x));
            }
            if seen_target.contains(y) {
                return Err(PPermError::RepeatedTarget(y));
            }
            seen_target.insert(y);
            p.img[(x - 1) as usize] = y;
        }
        Ok(p)
    }

    pub fn degree(&self) -> u8 {
        self.deg
    }

    /// The image of `x`, or `None` when `x` is outside the domain.
    pub fn apply(&self, x: Point) -> Option<Point> {
        match self.img.get((x - 1) as usize) {
            Some(&0) | None => None,
            Some(&y) => Some(y),
        }
    }

    pub fn domain(&self) -> PointSet {
        (1..=self.deg).filter(|&x| self.img[(x - 1) as usize] != 0).collect()
    }

    pub fn image(&self) -> PointSet {
        self.img.iter().filter(|&&y| y != 0).copied().collect()
    }

    pub fn rank(&self) -> usize {
        self.img.iter().filter(|&&y| y != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.img.iter().all(|&y| y == 0)
    }

    /// True when the map is a full permutation of `{1..n}`.
    pub fn is_permutation(&self) -> bool {
        self.rank() == self.deg as usize
    }

    /// Right-action composition: `x (a b) = (x a) b`.
    pub fn compose(&self, other: &PartialPerm) -> PartialPerm {
        assert_eq!(self.deg, other.deg, "degree mismatch in composition");
        let img = self
            .img
            .iter()
            .map(|&y| if y == 0 { 0 } else { other.img[(y - 1) as usize] })
            .collect();
        PartialPerm { deg: self.deg, img }
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut inv = Self::zero(self.deg);
        for (i, &y) in self.img.iter().enumerate() {
            if y != 0 {
                inv.img[(y - 1) as usize] = i as u8 + 1;
            }
        }
        inv
    }

    /// `k`-fold composition with itself, `k >= 1`.
    pub fn power(&self, k: u32) -> PartialPerm {
        assert!(k >= 1, "power requires k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// The unique idempotent among the positive powers of the map.
    pub fn idempotent_power(&self) -> PartialPerm {
        let mut p = self.clone();
        loop {
            if p.is_idempotent() {
                return p;
            }
            p = p.compose(self);
        }
    }

    pub fn is_idempotent(&self) -> bool {
        // idempotents are exactly the partial identities
        self.img
            .iter()
            .enumerate()
            .all(|(i, &y)| y == 0 || y == i as u8 + 1)
    }

    /// True when some power is the zero map; the zero map itself counts.
    pub fn is_nilpotent(&self) -> bool {
        self.power(self.deg as u32 + 1).is_zero()
    }

    /// All arrows `(x, x a)` in ascending source order.
    pub fn arrows(&self) -> Vec<(Point, Point)> {
        self.img
            .iter()
            .enumerate()
            .filter(|&(_, &y)| y != 0)
            .map(|(i, &y)| (i as u8 + 1, y))
            .collect()
    }

    /// Relabels every point through the full permutation `sigma`:
    /// an arrow `x -> y` becomes `x sigma -> y sigma`. Equals
    /// `sigma^{-1} . self . sigma` under composition.
    pub fn relabel(&self, sigma: &PartialPerm) -> PartialPerm {
        assert_eq!(self.deg, sigma.deg, "degree mismatch in relabel");
        debug_assert!(sigma.is_permutation());
        let mut out = Self::zero(self.deg);
        for (i, &y) in self.img.iter().enumerate() {
            if y != 0 {
                let sx = sigma.img[i] as usize;
                out.img[sx - 1] = sigma.img[(y - 1) as usize];
            }
        }
        out
    }

    /// Packs the target sequence into one word, base `deg + 1`.
    /// Only valid for degrees up to 15.
    pub fn key_u64(&self) -> u64 {
        debug_assert!(self.deg <= 15);
        let base = self.deg as u64 + 1;
        self.img.iter().rev().fold(0u64, |acc, &y| acc * base + y as u64)
    }

    /// The canonical chain-cycle decomposition covering every point,
    /// terms sorted by their least point.
    pub fn terms(&self) -> Vec<Term> {
        let n = self.deg;
        let dom = self.domain();
        let im = self.image();
        let mut seen = PointSet::EMPTY;
        let mut terms = Vec::new();
        // chains start at sources (in the domain, not in the image)
        for start in 1..=n {
            if dom.contains(start) && !im.contains(start) {
                let mut pts = vec![start];
                seen.insert(start);
                let mut cur = start;
                while let Some(next) = self.apply(cur) {
                    pts.push(next);
                    seen.insert(next);
                    cur = next;
                }
                terms.push(Term::chain(pts));
            }
        }
        // isolated points are singleton chains
        for p in 1..=n {
            if !dom.contains(p) && !im.contains(p) {
                seen.insert(p);
                terms.push(Term::chain(vec![p]));
            }
        }
        // what remains is a disjoint union of cycles
        for start in 1..=n {
            if !seen.contains(start) {
                let mut pts = vec![start];
                seen.insert(start);
                let mut cur = self.apply(start).expect("cycle point has an image");
                while cur != start {
                    pts.push(cur);
                    seen.insert(cur);
                    cur = self.apply(cur).expect("cycle point has an image");
                }
                terms.push(Term::cycle(pts));
            }
        }
        terms.sort_by_key(|t| t.min_point());
        terms
    }

    /// Parses a chain-cycle expression over `{1..deg}`, or the literal `0`.
    /// Points omitted from the expression are singleton chains.
    pub fn parse(text: &str, deg: u8) -> Result<Self, PPermError> {
        if !(1..=MAX_DEGREE).contains(&deg) {
            return Err(PPermError::BadDegree(deg as usize));
        }
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'0' {
            pos += 1;
            skip_ws(&mut pos);
            if pos != bytes.len() {
                return Err(PPermError::Malformed(pos, "trailing input after 0".into()));
            }
            return Ok(Self::zero(deg));
        }
        let mut used = PointSet::EMPTY;
        let mut perm = Self::zero(deg);
        let mut any_term = false;
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(PPermError::Malformed(pos, "expected '('".into()));
            }
            pos += 1;
            let mut pts: Vec<Point> = Vec::new();
            let closer = loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(PPermError::Malformed(pos, "expected a point".into()));
                }
                let value: u64 = text[start..pos].parse().map_err(|_| {
                    PPermError::Malformed(start, "unreadable point".into())
                })?;
                if value < 1 || value > deg as u64 {
                    return Err(PPermError::OutOfRange(value, deg));
                }
                let p = value as Point;
                if used.contains(p) {
                    return Err(PPermError::RepeatedPoint(p));
                }
                used.insert(p);
                pts.push(p);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => {
                        pos += 1;
                    }
                    Some(b')') => {
                        pos += 1;
                        break b')';
                    }
                    Some(b']') => {
                        pos += 1;
                        break b']';
                    }
                    _ => {
                        return Err(PPermError::Malformed(
                            pos,
                            "expected ',', ')' or ']'".into(),
                        ))
                    }
                }
            };
            any_term = true;
            match closer {
                b')' => {
                    for w in pts.windows(2) {
                        perm.img[(w[0] - 1) as usize] = w[1];
                    }
                    perm.img[(pts[pts.len() - 1] - 1) as usize] = pts[0];
                }
                _ => {
                    for w in pts.windows(2) {
                        perm.img[(w[0] - 1) as usize] = w[1];
                    }
                }
            }
            skip_ws(&mut pos);
        }
        if !any_term {
            return Err(PPermError::Malformed(0, "empty expression".into()));
        }
        Ok(perm)
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for term in self.terms() {
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [n={}]", self.deg)
    }
}

/// One term of a chain-cycle expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub points: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    Cycle,
    Chain,
}

impl Term {
    fn chain(points: Vec<Point>) -> Self {
        Term {
            kind: TermKind::Chain,
            points,
        }
    }

    fn cycle(points: Vec<Point>) -> Self {
        // canonical rotation starts at the least point
        let least = points
            .iter()
            .enumerate()
            .min_by_key(|&(_, p)| p)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut rotated = points[least..].to_vec();
        rotated.extend_from_slice(&points[..least]);
        Term {
            kind: TermKind::Cycle,
            points: rotated,
        }
    }

    fn min_point(&self) -> Point {
        *self.points.iter().min().expect("terms are nonempty")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        match self.kind {
            TermKind::Cycle => write!(f, ")"),
            TermKind::Chain => write!(f, "]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str, n: u8) -> PartialPerm {
        PartialPerm::parse(s, n).unwrap()
    }

    #[test]
    fn compose_chains() {
        // 1 -> 2 -> 3 forced by the definition of right action
        let a = pp("(1,2](3]", 3);
        let b = pp("(1](2,3]", 3);
        assert_eq!(a.compose(&b), pp("(1,3](2]", 3));
    }

    #[test]
    fn compose_with_zero() {
        let z = PartialPerm::zero(4);
        let a = pp("(1,2,3,4)", 4);
        assert_eq!(z.compose(&a), z);
        assert_eq!(a.compose(&z), z);
    }

    #[test]
    fn cycle_squaring() {
        let c = pp("(1,2,3)", 3);
        assert_eq!(c.compose(&c), pp("(1,3,2)", 3));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pp("(1,2](3]", 3).inverse(), pp("(2,1](3]", 3));
        assert_eq!(pp("(1,2,3)", 3).inverse(), pp("(1,3,2)", 3));
        assert_eq!(PartialPerm::zero(3).inverse(), PartialPerm::zero(3));
    }

    #[test]
    fn rank_domain_image() {
        let a = pp("(1,2](3]", 3);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.domain(), PointSet::from_iter([1]));
        assert_eq!(a.image(), PointSet::from_iter([2]));
        assert_eq!(PartialPerm::identity(2).rank(), 2);
        assert_eq!(PartialPerm::zero(5).rank(), 0);
    }

    #[test]
    fn chain_power_exhausts() {
        // (1](2,3,4]^3 = 0
        let a = pp("(1](2,3,4]", 4);
        assert!(!a.power(2).is_zero());
        assert!(a.power(3).is_zero());
    }

    #[test]
    fn power_of_mixed_element() {
        let a = pp("(1,2)(3]", 3);
        assert_eq!(a.power(2), pp("(1)(2)(3]", 3));
        assert_eq!(a.power(1), a);
    }

    #[test]
    fn idempotent_power_examples() {
        assert!(pp("(1,2](3]", 3).idempotent_power().is_zero());
        assert_eq!(pp("(1,2)(3]", 3).idempotent_power(), pp("(1)(2)(3]", 3));
        let e = PartialPerm::identity_on(8, (3..=8).collect());
        assert_eq!(e.idempotent_power(), e);
    }

    #[test]
    fn nilpotent_and_idempotent_flags() {
        assert!(pp("(1,2](3]", 3).is_nilpotent());
        assert!(!pp("(1)(2]", 2).is_nilpotent());
        assert!(PartialPerm::zero(2).is_nilpotent());
        assert!(pp("(1](2)(3)(4)", 4).is_idempotent());
        assert!(!pp("(1,2](3](4]", 4).is_idempotent());
    }

    #[test]
    fn arrows_examples() {
        let a = pp("(1,3](2,4](5](6](7](8]", 8);
        assert_eq!(a.arrows(), vec![(1, 3), (2, 4)]);
        assert_eq!(PartialPerm::zero(3).arrows(), vec![]);
        assert_eq!(pp("(1,2)", 2).arrows(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn parse_example_listing_entry() {
        let a = pp("(1](2](3,5,7](4,6,8]", 8);
        let expected =
            PartialPerm::from_pairs(8, &[(3, 5), (5, 7), (4, 6), (6, 8)]).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn parse_rejects_repeated_point() {
        let err = PartialPerm::parse("(1,6](2,7](3](4](7](8]", 8).unwrap_err();
        assert_eq!(err, PPermError::RepeatedPoint(7));
    }

    #[test]
    fn parse_rejects_out_of_range_and_garbage() {
        assert!(matches!(
            PartialPerm::parse("(1,9]", 8),
            Err(PPermError::OutOfRange(9, 8))
        ));
        assert!(matches!(
            PartialPerm::parse("(1,2", 8),
            Err(PPermError::Malformed(..))
        ));
        assert!(matches!(
            PartialPerm::parse("", 8),
            Err(PPermError::Malformed(..))
        ));
        assert!(matches!(
            PartialPerm::parse("()", 8),
            Err(PPermError::Malformed(..))
        ));
    }

    #[test]
    fn print_is_canonical() {
        // omitted points come back as singleton chains, terms sorted by least point
        let a = pp("(4,6,8] (3,5,7] (1] (2]", 8);
        assert_eq!(a.to_string(), "(1](2](3,5,7](4,6,8]");
        assert_eq!(PartialPerm::zero(4).to_string(), "0");
        // a chain is printed from its source even when a later point is least
        let b = PartialPerm::from_pairs(4, &[(4, 2)]).unwrap();
        assert_eq!(b.to_string(), "(1](4,2](3]");
        // cycles rotate to their least point
        let c = pp("(3,1,2)", 3);
        assert_eq!(c.to_string(), "(1,2,3)");
    }

    #[test]
    fn parse_print_round_trip_small_exhaustive() {
        // all 34 elements of degree 3
        let n = 3u8;
        let mut count = 0;
        for a in crate::testutil::all_partial_perms(n) {
            assert_eq!(PartialPerm::parse(&a.to_string(), n).unwrap(), a);
            count += 1;
        }
        assert_eq!(count, 34);
    }

    #[test]
    fn relabel_matches_conjugation() {
        let a = pp("(1,2](3]", 3);
        let sigma = pp("(1,2,3)", 3);
        let conj = sigma.inverse().compose(&a).compose(&sigma);
        assert_eq!(a.relabel(&sigma), conj);
    }

    #[test]
    fn rank_of_products_never_grows() {
        let all = crate::testutil::all_partial_perms(3);
        for a in &all {
            for b in &all {
                assert!(a.compose(b).rank() <= a.rank().min(b.rank()));
            }
        }
    }

    #[test]
    fn idempotent_power_exhaustive_degree_four() {
        for a in crate::testutil::all_partial_perms(4) {
            let e = a.idempotent_power();
            assert!(e.is_idempotent());
            let mut power = a.clone();
            let mut found = power == e;
            for _ in 0..24 {
                power = power.compose(&a);
                found |= power == e;
            }
            assert!(found, "{e} is not a power of {a}");
            assert_eq!(a.is_nilpotent(), e.is_zero());
        }
    }
}
