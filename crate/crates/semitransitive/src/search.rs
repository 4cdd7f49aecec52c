//! Exhaustive enumeration of semitransitive subsemigroups at small degree.
//!
//! The ground set is the singular part of the inverse semigroup on `n`
//! points. The search walks closed sets: it starts from every singleton
//! closure and repeatedly adds one element and re-closes. Without symmetry
//! breaking each closed set is visited exactly once, through the chain
//! that always adds the least missing element; with symmetry breaking the
//! frontier restriction is dropped and whole branches are rejected when a
//! relabeled copy of the node was already expanded, which keeps every
//! similarity class reachable.
//!
//! Subtrees die when they exceed the size cap, when the uncovered point
//! pairs can no longer be realized by the remaining element budget (one
//! singular element contributes at most `n - 1` arrows), and optionally
//! when a third nonzero idempotent appears while the cap is at most `2n`
//! (no semitransitive completion that small can contain it).

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::constructors::{
    bound, cyclic_group, gpd, proper_divisors, regular_group, type1, type2, type3, type4, type5,
    consecutive_partition, ConstructError, Family, RegularGroup, Type4Params,
};
use crate::pperm::PartialPerm;
use crate::semigroup::{are_similar, Semigroup};
use crate::semitrans::{self, audit_all};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("exhaustive search supports degrees 2 through 6, not {0}")]
    UnsupportedDegree(u8),
    #[error("degree {0} needs an explicit node budget (SearchConfig::node_budget)")]
    NeedsBudget(u8),
    #[error("node budget exhausted after {nodes} nodes (best size so far: {partial_minimum:?})")]
    ResourceLimit {
        nodes: u64,
        partial_minimum: Option<usize>,
    },
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneMode {
    None,
    Lemmas,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: u8,
    /// Size cap; defaults to the minimal-cardinality bound.
    pub max_size: Option<usize>,
    pub prune: PruneMode,
    pub symmetry_breaking: bool,
    /// 0 uses all available threads; 1 runs single-threaded.
    pub threads: usize,
    pub classify: bool,
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: u8) -> Self {
        SearchConfig {
            n,
            max_size: None,
            prune: PruneMode::Lemmas,
            symmetry_breaking: true,
            threads: 0,
            classify: false,
            node_budget: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub semitransitive_nodes: u64,
    pub pruned_size: u64,
    pub pruned_pairs: u64,
    pub pruned_idempotents: u64,
    pub pruned_symmetry: u64,
}

/// Periodic progress sink, fed every few thousand nodes.
pub trait SearchProgress: Sync {
    fn report(&self, stats: &SearchStats);
}

/// A matched construction: family, parameters, and the conjugator that
/// carries the searched semigroup onto the built one.
#[derive(Clone, Debug)]
pub struct TypeMatch {
    pub family: Family,
    pub p: u8,
    pub m: u8,
    pub l: Option<u8>,
    pub group: String,
    pub conjugator: PartialPerm,
}

#[derive(Debug)]
pub struct SearchResult {
    pub minimal_cardinality: Option<usize>,
    /// Minimal semigroups, one per similarity class, canonically ordered.
    pub representatives: Vec<Semigroup>,
    /// Per-representative matches, parallel to `representatives`; filled
    /// when the configuration asks for classification.
    pub classifications: Vec<Vec<TypeMatch>>,
    pub stats: SearchStats,
}

/// All partial injective maps of degree `n` of rank below `n`, ascending.
pub fn enumerate_singular(n: u8) -> Result<Vec<PartialPerm>, SearchError> {
    if !(2..=6).contains(&n) {
        return Err(SearchError::UnsupportedDegree(n));
    }
    let mut out = Vec::new();
    let mut img = Vec::with_capacity(n as usize);
    fn rec(n: u8, used: u64, img: &mut Vec<u8>, out: &mut Vec<PartialPerm>) {
        if img.len() == n as usize {
            if img.contains(&0) {
                let pairs: Vec<(u8, u8)> = img
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| y != 0)
                    .map(|(i, &y)| (i as u8 + 1, y))
                    .collect();
                out.push(PartialPerm::from_pairs(n, &pairs).expect("valid by construction"));
            }
            return;
        }
        img.push(0);
        rec(n, used, img, out);
        img.pop();
        for y in 1..=n {
            if used & (1 << y) == 0 {
                img.push(y);
                rec(n, used | (1 << y), img, out);
                img.pop();
            }
        }
    }
    rec(n, 0, &mut img, &mut out);
    out.sort();
    Ok(out)
}

fn all_permutations(n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    fn rec(n: u8, used: u64, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n as usize {
            out.push(cur.clone());
            return;
        }
        for y in 1..=n {
            if used & (1 << y) == 0 {
                cur.push(y);
                rec(n, used | (1 << y), cur, out);
                cur.pop();
            }
        }
    }
    rec(n, 0, &mut cur, &mut out);
    out
}

fn relabeled_key(e: &PartialPerm, sigma: &[u8], n: u8) -> u64 {
    let mut img = [0u8; 8];
    for x in 1..=n {
        if let Some(y) = e.apply(x) {
            img[(sigma[(x - 1) as usize] - 1) as usize] = sigma[(y - 1) as usize];
        }
    }
    let base = n as u64 + 1;
    img[..n as usize]
        .iter()
        .rev()
        .fold(0u64, |acc, &y| acc * base + y as u64)
}

/// Lexicographically least sorted key vector over all relabelings; equal
/// exactly for similar element sets.
pub fn canonical_key(elems: &[PartialPerm], n: u8) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for sigma in all_permutations(n) {
        let mut keys: Vec<u64> = elems.iter().map(|e| relabeled_key(e, &sigma, n)).collect();
        keys.sort_unstable();
        if best.as_ref().is_none_or(|b| keys < *b) {
            best = Some(keys);
        }
    }
    best.unwrap_or_default()
}

fn fingerprint(elems: &[PartialPerm]) -> u64 {
    let mut ranks: Vec<usize> = elems.iter().map(|e| e.rank()).collect();
    ranks.sort_unstable();
    let idems = elems.iter().filter(|e| e.is_idempotent()).count();
    let nils = elems.iter().filter(|e| e.is_nilpotent()).count();
    let mut hasher = DefaultHasher::new();
    (elems.len(), ranks, idems, nils).hash(&mut hasher);
    hasher.finish()
}

struct Node {
    bits: Vec<u64>,
    members: Vec<u32>,
    last: u32,
}

/// Fingerprint-bucketed store of expanded sets; canonical forms are
/// computed only when a bucket collision forces the comparison.
type VisitedSets = HashMap<u64, Vec<(Vec<PartialPerm>, Option<Vec<u64>>)>>;

struct Shared<'a> {
    nodes: AtomicU64,
    semitransitive_nodes: AtomicU64,
    pruned_size: AtomicU64,
    pruned_pairs: AtomicU64,
    pruned_idempotents: AtomicU64,
    pruned_symmetry: AtomicU64,
    abort: AtomicBool,
    results: Mutex<Vec<Vec<u32>>>,
    visited: Mutex<VisitedSets>,
    progress: Option<&'a dyn SearchProgress>,
}

impl Shared<'_> {
    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            semitransitive_nodes: self.semitransitive_nodes.load(Ordering::Relaxed),
            pruned_size: self.pruned_size.load(Ordering::Relaxed),
            pruned_pairs: self.pruned_pairs.load(Ordering::Relaxed),
            pruned_idempotents: self.pruned_idempotents.load(Ordering::Relaxed),
            pruned_symmetry: self.pruned_symmetry.load(Ordering::Relaxed),
        }
    }
}

struct Engine {
    n: u8,
    ground: Vec<PartialPerm>,
    dense: Option<Vec<u32>>,
    by_key: HashMap<u64, u32>,
    arrows: Vec<Vec<(u8, u8)>>,
    idem_nonzero: Vec<bool>,
    perms: Vec<Vec<u8>>,
    max_size: usize,
    symmetry: bool,
    idem_prune: bool,
    node_budget: Option<u64>,
}

fn bit_get(bits: &[u64], i: u32) -> bool {
    bits[(i >> 6) as usize] & (1u64 << (i & 63)) != 0
}

fn bit_set(bits: &mut [u64], i: u32) -> bool {
    let w = &mut bits[(i >> 6) as usize];
    let mask = 1u64 << (i & 63);
    if *w & mask != 0 {
        false
    } else {
        *w |= mask;
        true
    }
}

impl Engine {
    fn new(config: &SearchConfig) -> Result<Engine, SearchError> {
        let n = config.n;
        let ground = enumerate_singular(n)?;
        let by_key: HashMap<u64, u32> = ground
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key_u64(), i as u32))
            .collect();
        let dense = if ground.len() <= 2048 {
            let g = ground.len();
            let mut table = vec![0u32; g * g];
            for (i, a) in ground.iter().enumerate() {
                for (j, b) in ground.iter().enumerate() {
                    table[i * g + j] = by_key[&a.compose(b).key_u64()];
                }
            }
            Some(table)
        } else {
            None
        };
        let arrows = ground.iter().map(|e| e.arrows()).collect();
        let idem_nonzero = ground
            .iter()
            .map(|e| e.is_idempotent() && !e.is_zero())
            .collect();
        let max_size = config.max_size.unwrap_or_else(|| bound(n));
        Ok(Engine {
            n,
            perms: all_permutations(n),
            dense,
            by_key,
            arrows,
            idem_nonzero,
            ground,
            max_size,
            symmetry: config.symmetry_breaking,
            idem_prune: matches!(config.prune, PruneMode::Lemmas)
                && config.max_size.unwrap_or_else(|| bound(n)) <= 2 * n as usize,
            node_budget: config.node_budget,
        })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.dense {
            Some(t) => t[a as usize * self.ground.len() + b as usize],
            None => {
                let prod = self.ground[a as usize].compose(&self.ground[b as usize]);
                self.by_key[&prod.key_u64()]
            }
        }
    }

    /// Adds `seed` and re-closes; false when the closure exceeds the cap.
    fn close(&self, bits: &mut [u64], members: &mut Vec<u32>, seed: u32) -> bool {
        if !bit_set(bits, seed) {
            return true;
        }
        members.push(seed);
        if members.len() > self.max_size {
            return false;
        }
        let mut qi = members.len() - 1;
        while qi < members.len() {
            let a = members[qi];
            let snapshot = members.len();
            for idx in 0..snapshot {
                let b = members[idx];
                for prod in [self.mul(a, b), self.mul(b, a)] {
                    if bit_set(bits, prod) {
                        members.push(prod);
                        if members.len() > self.max_size {
                            return false;
                        }
                    }
                }
            }
            qi += 1;
        }
        true
    }

    fn uncovered_pairs(&self, members: &[u32]) -> usize {
        let mut rows = [0u64; 8];
        for &m in members {
            for &(x, y) in &self.arrows[m as usize] {
                rows[(x - 1) as usize] |= 1u64 << (y - 1);
            }
        }
        let n = self.n;
        let mut count = 0;
        for x in 0..n {
            for y in x..n {
                if rows[x as usize] & (1 << y) == 0 && rows[y as usize] & (1 << x) == 0 {
                    count += 1;
                }
            }
        }
        count
    }

    fn check_and_insert(&self, shared: &Shared, members: &[u32]) -> bool {
        let elems: Vec<PartialPerm> = members
            .iter()
            .map(|&m| self.ground[m as usize].clone())
            .collect();
        let fp = fingerprint(&elems);
        let mut map = shared.visited.lock().expect("visited lock");
        let bucket = map.entry(fp).or_default();
        if bucket.is_empty() {
            bucket.push((elems, None));
            return true;
        }
        let mine = self.canonical_of(&elems);
        for (other, canon) in bucket.iter_mut() {
            if canon.is_none() {
                *canon = Some(self.canonical_of(other));
            }
            if canon.as_ref() == Some(&mine) {
                return false;
            }
        }
        bucket.push((elems, Some(mine)));
        true
    }

    fn canonical_of(&self, elems: &[PartialPerm]) -> Vec<u64> {
        let mut best: Option<Vec<u64>> = None;
        for sigma in &self.perms {
            let mut keys: Vec<u64> = elems
                .iter()
                .map(|e| relabeled_key(e, sigma, self.n))
                .collect();
            keys.sort_unstable();
            if best.as_ref().is_none_or(|b| keys < *b) {
                best = Some(keys);
            }
        }
        best.unwrap_or_default()
    }

    /// Counts the node, records or prunes it; true means descend.
    fn enter(&self, node: &Node, shared: &Shared) -> bool {
        let nodes = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.node_budget {
            if nodes > budget {
                shared.abort.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if nodes.is_multiple_of(16384) {
            if let Some(sink) = shared.progress {
                sink.report(&shared.stats());
            }
        }
        if self.symmetry && !self.check_and_insert(shared, &node.members) {
            shared.pruned_symmetry.fetch_add(1, Ordering::Relaxed);
            return false;
        }
        let uncovered = self.uncovered_pairs(&node.members);
        if uncovered == 0 {
            shared.semitransitive_nodes.fetch_add(1, Ordering::Relaxed);
            shared
                .results
                .lock()
                .expect("results lock")
                .push(node.members.clone());
            return false;
        }
        if node.members.len() >= self.max_size {
            return false;
        }
        if self.idem_prune {
            let idems = node
                .members
                .iter()
                .filter(|&&m| self.idem_nonzero[m as usize])
                .count();
            if idems > 2 {
                shared.pruned_idempotents.fetch_add(1, Ordering::Relaxed);
                return false;
            }
        }
        let budget = (self.max_size - node.members.len()) * (self.n as usize - 1);
        if uncovered > budget {
            shared.pruned_pairs.fetch_add(1, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn children(&self, node: &Node, shared: &Shared) -> Vec<Node> {
        let ground_len = self.ground.len() as u32;
        let start = if self.symmetry { 0 } else { node.last + 1 };
        let mut out = Vec::new();
        for x in start..ground_len {
            if shared.abort.load(Ordering::Relaxed) {
                break;
            }
            if bit_get(&node.bits, x) {
                continue;
            }
            let mut bits = node.bits.clone();
            let mut members = node.members.clone();
            let base_len = members.len();
            if !self.close(&mut bits, &mut members, x) {
                shared.pruned_size.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            if !self.symmetry && members[base_len..].iter().min() != Some(&x) {
                // this set's canonical chain adds a smaller element first
                continue;
            }
            let child = Node {
                bits,
                members,
                last: x,
            };
            if self.enter(&child, shared) {
                out.push(child);
            }
        }
        out
    }

    fn roots(&self, shared: &Shared) -> Vec<Node> {
        let words = self.ground.len().div_ceil(64);
        let mut out = Vec::new();
        for x in 0..self.ground.len() as u32 {
            let mut bits = vec![0u64; words];
            let mut members = Vec::new();
            if !self.close(&mut bits, &mut members, x) {
                shared.pruned_size.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            if !self.symmetry && members.iter().min() != Some(&x) {
                continue;
            }
            let node = Node {
                bits,
                members,
                last: x,
            };
            if self.enter(&node, shared) {
                out.push(node);
            }
        }
        out
    }

    fn dfs(&self, node: Node, shared: &Shared) {
        for child in self.children(&node, shared) {
            self.dfs(child, shared);
        }
    }

    fn expand(&self, node: Node, shared: &Shared, depth: usize, frontier: &mut Vec<Node>) {
        if depth == 0 {
            frontier.push(node);
            return;
        }
        for child in self.children(&node, shared) {
            self.expand(child, shared, depth - 1, frontier);
        }
    }
}

pub fn minimal_search(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    minimal_search_with_progress(config, None)
}

pub fn minimal_search_with_progress(
    config: &SearchConfig,
    progress: Option<&dyn SearchProgress>,
) -> Result<SearchResult, SearchError> {
    if !(2..=6).contains(&config.n) {
        return Err(SearchError::UnsupportedDegree(config.n));
    }
    if config.n >= 5 && config.node_budget.is_none() {
        return Err(SearchError::NeedsBudget(config.n));
    }
    let engine = Engine::new(config)?;
    let shared = Shared {
        nodes: AtomicU64::new(0),
        semitransitive_nodes: AtomicU64::new(0),
        pruned_size: AtomicU64::new(0),
        pruned_pairs: AtomicU64::new(0),
        pruned_idempotents: AtomicU64::new(0),
        pruned_symmetry: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        results: Mutex::new(Vec::new()),
        visited: Mutex::new(HashMap::new()),
        progress,
    };

    let roots = engine.roots(&shared);
    if config.threads == 1 {
        for root in roots {
            engine.dfs(root, &shared);
        }
    } else {
        let mut frontier = Vec::new();
        for root in roots {
            engine.expand(root, &shared, 1, &mut frontier);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            frontier
                .into_par_iter()
                .for_each(|node| engine.dfs(node, &shared));
        });
    }

    let stats = shared.stats();
    let raw = shared.results.into_inner().expect("results lock");
    let partial_minimum = raw.iter().map(|r| r.len()).min();
    if shared.abort.load(Ordering::Relaxed) {
        return Err(SearchError::ResourceLimit {
            nodes: stats.nodes,
            partial_minimum,
        });
    }

    let minimal_cardinality = partial_minimum;
    let mut by_canon: BTreeMap<Vec<u64>, Vec<PartialPerm>> = BTreeMap::new();
    if let Some(min) = minimal_cardinality {
        for members in raw.iter().filter(|r| r.len() == min) {
            let mut elems: Vec<PartialPerm> = members
                .iter()
                .map(|&m| engine.ground[m as usize].clone())
                .collect();
            elems.sort();
            let canon = engine.canonical_of(&elems);
            by_canon
                .entry(canon)
                .and_modify(|cur| {
                    if elems < *cur {
                        *cur = elems.clone();
                    }
                })
                .or_insert(elems);
        }
    }
    let representatives: Vec<Semigroup> = by_canon
        .values()
        .map(|elems| Semigroup::from_elements(elems).expect("closed by construction"))
        .collect();
    let classifications = if config.classify {
        representatives.iter().map(classify).collect()
    } else {
        Vec::new()
    };
    Ok(SearchResult {
        minimal_cardinality,
        representatives,
        classifications,
        stats,
    })
}

/// Extra regular groups to try during classification, as generator lists
/// at the degree of the semigroup under test. Top groups act on `{1..p}`;
/// second-block groups act on the second block of the fourth family's
/// canonical layout.
#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub extra_top_groups: Vec<(String, Vec<PartialPerm>)>,
    pub extra_second_groups: Vec<(String, Vec<PartialPerm>)>,
}

/// All constructions of matching cardinality similar to `s`, using the
/// greatest proper divisor, canonical layouts, and cyclic groups plus any
/// registered alternatives. Empty means unclassified.
pub fn classify(s: &Semigroup) -> Vec<TypeMatch> {
    classify_with(s, &ClassifyOptions::default())
}

pub fn classify_with(s: &Semigroup, options: &ClassifyOptions) -> Vec<TypeMatch> {
    let n = s.degree();
    if n < 2 || s.len() != bound(n) {
        return Vec::new();
    }
    let p = gpd(n);
    let m = n / p;
    let mut matches = Vec::new();

    let partition = consecutive_partition(n, p);
    let mut top_groups: Vec<(String, RegularGroup)> = Vec::new();
    if let Ok(g) = cyclic_group(n, partition[0]) {
        top_groups.push(("cyclic".into(), g));
    }
    for (name, gens) in &options.extra_top_groups {
        if let Ok(g) = regular_group(gens) {
            top_groups.push((name.clone(), g));
        }
    }
    for (name, group) in &top_groups {
        let built = [
            (Family::Type1, type1(n, p, group, &partition)),
            (Family::Type2, type2(n, p, group, &partition)),
            (Family::Type3, type3(n, p, group, &partition)),
        ];
        for (family, candidate) in built {
            if let Ok(candidate) = candidate {
                if let Some(sigma) = are_similar(&candidate, s) {
                    matches.push(TypeMatch {
                        family,
                        p,
                        m,
                        l: None,
                        group: name.clone(),
                        conjugator: sigma,
                    });
                }
            }
        }
    }

    // fourth/fifth family shapes: n = l p (m4 - 1) + p with l, m4 >= 2
    let span = (n - p) as usize;
    for l in 2..=span / p as usize {
        if !span.is_multiple_of(l * p as usize) {
            continue;
        }
        let m4 = span / (l * p as usize) + 1;
        if m4 < 2 || m4 > u8::MAX as usize {
            continue;
        }
        let (l, m4) = (l as u8, m4 as u8);
        let mut second_groups: Vec<(String, RegularGroup)> = Vec::new();
        if let Ok(g) = Type4Params::canonical_group(p, l, m4) {
            second_groups.push(("cyclic".into(), g));
        }
        for (name, gens) in &options.extra_second_groups {
            if let Ok(g) = regular_group(gens) {
                second_groups.push((name.clone(), g));
            }
        }
        for (name, group) in second_groups {
            let params = match Type4Params::with_group(p, l, m4, group) {
                Ok(params) => params,
                Err(_) => continue,
            };
            let built = [(Family::Type4, type4(&params)), (Family::Type5, type5(&params))];
            for (family, candidate) in built {
                if let Ok(candidate) = candidate {
                    if let Some(sigma) = are_similar(&candidate, s) {
                        matches.push(TypeMatch {
                            family,
                            p,
                            m: m4,
                            l: Some(l),
                            group: name.clone(),
                            conjugator: sigma,
                        });
                    }
                }
            }
        }
    }
    matches
}

type BuiltRow = (Family, Option<u8>, u8, Result<Semigroup, ConstructError>);

/// One constructed row of the cardinality sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: u8,
    pub p: u8,
    pub family: Family,
    pub l: Option<u8>,
    pub m: u8,
    pub size: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds every applicable family for every proper divisor of every `n` in
/// the range, checking size `2n - p + 1`, singularity, semitransitivity
/// without transitivity, and the full audit battery; finally checks that
/// the least size over the divisors equals the bound.
pub fn verify_bound_sweep(ns: impl IntoIterator<Item = u8>) -> SweepReport {
    let mut report = SweepReport::default();
    for n in ns {
        if n < 2 {
            report.failures.push(format!("degree {n} below 2"));
            continue;
        }
        let mut min_size = usize::MAX;
        for p in proper_divisors(n) {
            let partition = consecutive_partition(n, p);
            let group = match cyclic_group(n, partition[0]) {
                Ok(g) => g,
                Err(e) => {
                    report.failures.push(format!("n={n} p={p}: {e}"));
                    continue;
                }
            };
            let mut built: Vec<BuiltRow> = vec![
                (Family::Type1, None, n / p, type1(n, p, &group, &partition)),
                (Family::Type2, None, n / p, type2(n, p, &group, &partition)),
                (Family::Type3, None, n / p, type3(n, p, &group, &partition)),
            ];
            let span = (n - p) as usize;
            for l in 2..=span / p as usize {
                if !span.is_multiple_of(l * p as usize) {
                    continue;
                }
                let m4 = (span / (l * p as usize) + 1) as u8;
                if m4 < 2 {
                    continue;
                }
                match Type4Params::canonical(p, l as u8, m4) {
                    Ok(params) => {
                        built.push((Family::Type4, Some(l as u8), m4, type4(&params)));
                        built.push((Family::Type5, Some(l as u8), m4, type5(&params)));
                    }
                    Err(e) => report.failures.push(format!("n={n} p={p} l={l}: {e}")),
                }
            }
            for (family, l, m, outcome) in built {
                let tag = format!("n={n} p={p} {}", family.label());
                let s = match outcome {
                    Ok(s) => s,
                    Err(e) => {
                        report.failures.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let expected = 2 * n as usize - p as usize + 1;
                if s.len() != expected {
                    report
                        .failures
                        .push(format!("{tag}: size {} instead of {expected}", s.len()));
                }
                min_size = min_size.min(s.len());
                if !s.is_singular() {
                    report.failures.push(format!("{tag}: not singular"));
                }
                if !semitrans::is_semitransitive(&s) {
                    report.failures.push(format!("{tag}: not semitransitive"));
                }
                if semitrans::is_transitive(&s) {
                    report.failures.push(format!("{tag}: transitive"));
                }
                match audit_all(&s) {
                    Ok(reports) => {
                        for r in reports.iter().filter(|r| !r.ok()) {
                            report
                                .failures
                                .push(format!("{tag}: audit {} failed: {:?}", r.name, r.witnesses));
                        }
                    }
                    Err(e) => report.failures.push(format!("{tag}: audits aborted: {e}")),
                }
                report.rows.push(SweepRow {
                    n,
                    p,
                    family,
                    l,
                    m,
                    size: s.len(),
                });
            }
        }
        if min_size != bound(n) {
            report.failures.push(format!(
                "n={n}: least constructed size {min_size} differs from bound {}",
                bound(n)
            ));
        }
    }
    report
}
