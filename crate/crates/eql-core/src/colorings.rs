//! Matchings, 1-factorizations and proper 10-edge-colorings of complete
//! graphs, the telephone-number recurrence, the counting injection from
//! (factorization, matching) pairs into proper colorings, and the exact
//! counting chain they support.

use crate::xvec::{AesSet, XLabel};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex count {0} too large for exhaustive enumeration")]
    TooLarge(usize),
    #[error("vertex count must be even, got {0}")]
    OddVertexCount(usize),
    #[error("label {0:?} is not a v1 label")]
    NotInX1(XLabel),
    #[error("edges are not pairwise disjoint")]
    NotAMatching,
    #[error("classes are not pairwise disjoint")]
    OverlappingClasses,
    #[error("expected {expected} classes, got {got}")]
    ClassCount { expected: usize, got: usize },
    #[error("not a 1-factorization: {0}")]
    NotAFactorization(String),
}

/// Undirected edge with endpoints in `1..=2n`, stored with the smaller
/// endpoint first.
pub type Edge = (u8, u8);

pub fn edge(a: u8, b: u8) -> Edge {
    assert_ne!(a, b, "loops are not edges");
    (a.min(b), a.max(b))
}

/// A set of pairwise disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Edge>", into = "Vec<Edge>")]
pub struct Matching {
    edges: BTreeSet<Edge>,
}

impl From<Matching> for Vec<Edge> {
    fn from(m: Matching) -> Vec<Edge> {
        m.edges.into_iter().collect()
    }
}

impl TryFrom<Vec<Edge>> for Matching {
    type Error = ColoringError;

    fn try_from(edges: Vec<Edge>) -> Result<Matching, ColoringError> {
        Matching::new(edges.into_iter().map(|(a, b)| edge(a, b)))
    }
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Matching, ColoringError> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if !seen.insert(a) || !seen.insert(b) {
                return Err(ColoringError::NotAMatching);
            }
        }
        Ok(Matching { edges })
    }

    pub fn empty() -> Matching {
        Matching {
            edges: BTreeSet::new(),
        }
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn is_disjoint(&self, other: &Matching) -> bool {
        self.edges.is_disjoint(&other.edges)
    }

    /// Set difference of edge sets (always a matching).
    pub fn minus(&self, other: &Matching) -> Matching {
        Matching {
            edges: self.edges.difference(&other.edges).copied().collect(),
        }
    }

    /// True iff every vertex of `1..=v` is covered.
    pub fn is_perfect_on(&self, v: usize) -> bool {
        self.edges.len() * 2 == v
    }

    pub fn map_vertices(&self, f: impl Fn(u8) -> u8) -> Matching {
        Matching::new(self.edges.iter().map(|&(a, b)| edge(f(a), f(b))))
            .expect("bijective vertex map preserves matchings")
    }
}

/// An ordered tuple of `2n - 1` perfect matchings of `K_{2n}` partitioning
/// its edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Matching>", into = "Vec<Matching>")]
pub struct OneFactorization {
    factors: Vec<Matching>,
}

impl From<OneFactorization> for Vec<Matching> {
    fn from(f: OneFactorization) -> Vec<Matching> {
        f.factors
    }
}

impl TryFrom<Vec<Matching>> for OneFactorization {
    type Error = ColoringError;

    fn try_from(factors: Vec<Matching>) -> Result<OneFactorization, ColoringError> {
        OneFactorization::new(factors)
    }
}

impl OneFactorization {
    pub fn new(factors: Vec<Matching>) -> Result<OneFactorization, ColoringError> {
        let k = factors.len();
        let v = k + 1;
        if v % 2 != 0 {
            return Err(ColoringError::NotAFactorization(format!(
                "{k} factors do not fit any complete graph"
            )));
        }
        let mut covered = BTreeSet::new();
        for f in &factors {
            if !f.is_perfect_on(v) {
                return Err(ColoringError::NotAFactorization(
                    "factor is not a perfect matching".into(),
                ));
            }
            for e in f.edges() {
                if !covered.insert(*e) {
                    return Err(ColoringError::NotAFactorization(format!(
                        "edge {e:?} covered twice"
                    )));
                }
            }
        }
        if covered.len() != v * (v - 1) / 2 {
            return Err(ColoringError::NotAFactorization(
                "factors do not cover the edge set".into(),
            ));
        }
        Ok(OneFactorization { factors })
    }

    pub fn vertex_count(&self) -> usize {
        self.factors.len() + 1
    }

    pub fn factors(&self) -> &[Matching] {
        &self.factors
    }

    /// The factor set, order forgotten.
    pub fn factor_set(&self) -> BTreeSet<Matching> {
        self.factors.iter().cloned().collect()
    }
}

/// An ordered `2n`-tuple of pairwise disjoint matchings (classes may be
/// empty). Complete colorings additionally cover every edge of `K_{2n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Matching>", into = "Vec<Matching>")]
pub struct ProperColoring {
    classes: Vec<Matching>,
}

impl From<ProperColoring> for Vec<Matching> {
    fn from(c: ProperColoring) -> Vec<Matching> {
        c.classes
    }
}

impl TryFrom<Vec<Matching>> for ProperColoring {
    type Error = ColoringError;

    fn try_from(classes: Vec<Matching>) -> Result<ProperColoring, ColoringError> {
        ProperColoring::new(classes)
    }
}

impl ProperColoring {
    pub fn new(classes: Vec<Matching>) -> Result<ProperColoring, ColoringError> {
        if classes.len() % 2 != 0 {
            return Err(ColoringError::ClassCount {
                expected: classes.len() + 1,
                got: classes.len(),
            });
        }
        let mut covered = BTreeSet::new();
        for c in &classes {
            for e in c.edges() {
                if !covered.insert(*e) {
                    return Err(ColoringError::OverlappingClasses);
                }
            }
        }
        Ok(ProperColoring { classes })
    }

    pub fn classes(&self) -> &[Matching] {
        &self.classes
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.classes.iter().map(Matching::len).sum()
    }

    /// True iff the classes cover every edge of the complete graph.
    pub fn is_complete(&self) -> bool {
        let v = self.vertex_count();
        self.edge_count() == v * (v - 1) / 2
    }
}

/// Involution numbers by the recurrence `T(n) = T(n-1) + (n-1) T(n-2)`.
pub fn telephone(n: usize) -> BigInt {
    let mut prev = BigInt::one();
    let mut cur = BigInt::one();
    for k in 2..=n {
        let next = &cur + BigInt::from(k - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Count of all matchings of `K_v` (including the empty one) by brute-force
/// enumeration; must equal `telephone(v)`.
pub fn count_matchings(v: usize) -> Result<BigInt, ColoringError> {
    if v > 12 {
        return Err(ColoringError::TooLarge(v));
    }
    fn rec(unmatched: &[u8]) -> BigInt {
        if unmatched.is_empty() {
            return BigInt::one();
        }
        // leave the lowest vertex single, or match it to any later vertex
        let rest = &unmatched[1..];
        let mut total = rec(rest);
        for t in 0..rest.len() {
            let remaining: Vec<u8> = rest
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != t)
                .map(|(_, &x)| x)
                .collect();
            total += rec(&remaining);
        }
        total
    }
    let vertices: Vec<u8> = (1..=v as u8).collect();
    Ok(rec(&vertices))
}

/// Circle-method 1-factorization of `K_{2n}`: factor `k` joins `2n` to `k`
/// and pairs `k - i` with `k + i` modulo `2n - 1` (residues in `1..=2n-1`).
pub fn round_robin(n: usize) -> OneFactorization {
    assert!(n >= 1);
    let v = 2 * n;
    let modulus = (v - 1) as i64;
    let reduce = |x: i64| -> u8 {
        let r = x.rem_euclid(modulus);
        (if r == 0 { modulus } else { r }) as u8
    };
    let factors: Vec<Matching> = (1..=modulus)
        .map(|k| {
            let mut edges = vec![edge(v as u8, k as u8)];
            for i in 1..n as i64 {
                edges.push(edge(reduce(k - i), reduce(k + i)));
            }
            Matching::new(edges).expect("circle factor is a matching")
        })
        .collect();
    OneFactorization::new(factors).expect("circle method yields a factorization")
}

/// The injection from (ordered 1-factorization, matching) pairs into proper
/// colorings: `(M_1 \ M, ..., M_{2n-1} \ M, M)`.
pub fn inject_f(f: &OneFactorization, m: &Matching) -> ProperColoring {
    let mut classes: Vec<Matching> = f.factors().iter().map(|fi| fi.minus(m)).collect();
    classes.push(m.clone());
    ProperColoring::new(classes).expect("inject always yields disjoint classes")
}

fn all_edges(v: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for a in 1..=v as u8 {
        for b in a + 1..=v as u8 {
            out.push((a, b));
        }
    }
    out
}

/// All perfect matchings of the edge set `avail` on `1..=v` that contain the
/// forced lowest uncovered vertex chain.
fn perfect_matchings(v: usize, avail: &BTreeSet<Edge>) -> Vec<Matching> {
    fn rec(
        v: usize,
        avail: &BTreeSet<Edge>,
        used: &mut BTreeSet<u8>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Matching>,
    ) {
        let Some(a) = (1..=v as u8).find(|x| !used.contains(x)) else {
            out.push(Matching::new(cur.iter().copied()).unwrap());
            return;
        };
        for b in a + 1..=v as u8 {
            if used.contains(&b) || !avail.contains(&(a, b)) {
                continue;
            }
            used.insert(a);
            used.insert(b);
            cur.push((a, b));
            rec(v, avail, used, cur, out);
            cur.pop();
            used.remove(&a);
            used.remove(&b);
        }
    }
    let mut out = Vec::new();
    rec(v, avail, &mut BTreeSet::new(), &mut Vec::new(), &mut out);
    out
}

fn count_factorizations_rec(v: usize, remaining: &mut BTreeSet<Edge>) -> BigInt {
    let Some(&first) = remaining.iter().next() else {
        return BigInt::one();
    };
    // every factor is canonically keyed by the smallest edge it covers, so
    // counting ordered-by-first-edge sequences counts unordered sets
    let candidates: Vec<Matching> = perfect_matchings(v, remaining)
        .into_iter()
        .filter(|m| m.contains(&first))
        .collect();
    let mut total = BigInt::zero();
    for m in &candidates {
        for e in m.edges() {
            remaining.remove(e);
        }
        total += count_factorizations_rec(v, remaining);
        for e in m.edges() {
            remaining.insert(*e);
        }
    }
    total
}

/// Number of (unordered, labeled) 1-factorizations of `K_v` by backtracking.
/// Bounded at `v <= 8`; the `K_10` census takes hours and is exposed
/// separately.
pub fn count_factorizations(v: usize) -> Result<BigInt, ColoringError> {
    if v % 2 != 0 {
        return Err(ColoringError::OddVertexCount(v));
    }
    if v > 8 {
        return Err(ColoringError::TooLarge(v));
    }
    if v == 0 {
        return Ok(BigInt::one());
    }
    let mut remaining: BTreeSet<Edge> = all_edges(v).into_iter().collect();
    Ok(count_factorizations_rec(v, &mut remaining))
}

/// Edge bitmask tables for the fast factorization counter.
struct EdgeTable {
    v: usize,
    bit: [[u64; 11]; 11],
    partners: [Vec<u8>; 11],
}

impl EdgeTable {
    fn new(v: usize) -> EdgeTable {
        let mut bit = [[0u64; 11]; 11];
        let mut partners: [Vec<u8>; 11] = Default::default();
        let mut next = 0u32;
        for a in 1..=v {
            for b in a + 1..=v {
                bit[a][b] = 1 << next;
                bit[b][a] = 1 << next;
                next += 1;
            }
        }
        for a in 1..=v {
            partners[a] = (1..=v as u8).filter(|&b| b as usize != a).collect();
        }
        EdgeTable { v, bit, partners }
    }

    fn full_mask(&self) -> u64 {
        (1u64 << (self.v * (self.v - 1) / 2)) - 1
    }
}

/// Extend the current factor; `used` marks vertices already covered by it.
/// Each fresh factor is anchored at the smallest remaining edge of vertex 1,
/// so unordered factor sets are counted exactly once.
fn count_fast(table: &EdgeTable, remaining: u64, used: u16) -> u64 {
    if used == 0 && remaining == 0 {
        return 1;
    }
    let Some(a) = (1..=table.v).find(|&x| used & (1 << x) == 0) else {
        // factor complete; start the next one (or finish)
        return count_fast(table, remaining, 0);
    };
    let fresh = used == 0;
    let mut total = 0;
    for &b in &table.partners[a] {
        if used & (1 << b) != 0 {
            continue;
        }
        let e = table.bit[a][b as usize];
        if remaining & e == 0 {
            continue;
        }
        total += count_fast(table, remaining & !e, used | 1 << a | 1 << b);
        if fresh {
            // the anchor edge is forced: only the smallest remaining
            // partner of vertex 1 starts a factor
            break;
        }
    }
    total
}

/// Unbounded factorization count, parallel over the first-level branches
/// (the perfect matchings through the anchor edge of vertex 1), with a
/// progress callback receiving (finished, total) branch counts.
pub fn count_factorizations_slow(
    v: usize,
    progress: impl Fn(usize, usize) + Sync,
) -> Result<BigInt, ColoringError> {
    use rayon::prelude::*;
    if v % 2 != 0 {
        return Err(ColoringError::OddVertexCount(v));
    }
    if v == 0 {
        return Ok(BigInt::one());
    }
    if v > 10 {
        return Err(ColoringError::TooLarge(v));
    }
    let table = EdgeTable::new(v);
    let full = table.full_mask();
    let branches: Vec<Matching> = perfect_matchings(v, &all_edges(v).into_iter().collect())
        .into_iter()
        .filter(|m| m.contains(&(1, 2)))
        .collect();
    let total_branches = branches.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let total: u64 = branches
        .par_iter()
        .map(|m| {
            let mask = m.edges().iter().fold(0u64, |acc, &(a, b)| {
                acc | table.bit[a as usize][b as usize]
            });
            let count = count_fast(&table, full & !mask, 0);
            let finished = done.fetch_add(1, std::sync::atomic::Ordering::SeqCst) + 1;
            progress(finished, total_branches);
            count
        })
        .sum();
    Ok(BigInt::from(total))
}

/// All unordered 1-factorizations of `K_v` (small `v` only), each as the
/// canonically ordered factor list produced by the counting recursion.
pub fn enum_factorizations(v: usize) -> Result<Vec<Vec<Matching>>, ColoringError> {
    if v % 2 != 0 {
        return Err(ColoringError::OddVertexCount(v));
    }
    if v > 8 {
        return Err(ColoringError::TooLarge(v));
    }
    fn rec(v: usize, remaining: &mut BTreeSet<Edge>, cur: &mut Vec<Matching>, out: &mut Vec<Vec<Matching>>) {
        let Some(&first) = remaining.iter().next() else {
            out.push(cur.clone());
            return;
        };
        let candidates: Vec<Matching> = perfect_matchings(v, remaining)
            .into_iter()
            .filter(|m| m.contains(&first))
            .collect();
        for m in candidates {
            for e in m.edges() {
                remaining.remove(e);
            }
            cur.push(m.clone());
            rec(v, remaining, cur, out);
            cur.pop();
            for e in m.edges() {
                remaining.insert(*e);
            }
        }
    }
    let mut remaining: BTreeSet<Edge> = all_edges(v).into_iter().collect();
    let mut out = Vec::new();
    rec(v, &mut remaining, &mut Vec::new(), &mut out);
    Ok(out)
}

/// All ordered 1-factorizations of `K_v` (small `v` only): every
/// permutation of every unordered factorization.
pub fn enum_ordered_factorizations(v: usize) -> Result<Vec<OneFactorization>, ColoringError> {
    if v > 6 {
        return Err(ColoringError::TooLarge(v));
    }
    fn orderings(rest: &mut Vec<Matching>, cur: &mut Vec<Matching>, out: &mut Vec<OneFactorization>) {
        if rest.is_empty() {
            out.push(OneFactorization::new(cur.clone()).expect("permuted factorization"));
            return;
        }
        for t in 0..rest.len() {
            let item = rest.remove(t);
            cur.push(item.clone());
            orderings(rest, cur, out);
            cur.pop();
            rest.insert(t, item);
        }
    }
    let mut out = Vec::new();
    for factors in enum_factorizations(v)? {
        orderings(&mut factors.clone(), &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// All matchings of `K_v` (small `v` only).
pub fn enum_matchings(v: usize) -> Result<Vec<Matching>, ColoringError> {
    if v > 12 {
        return Err(ColoringError::TooLarge(v));
    }
    fn rec(unmatched: &[u8], cur: &mut Vec<Edge>, out: &mut Vec<Matching>) {
        let Some((&first, rest)) = unmatched.split_first() else {
            out.push(Matching::new(cur.iter().copied()).unwrap());
            return;
        };
        rec(rest, cur, out);
        for (t, &b) in rest.iter().enumerate() {
            let remaining: Vec<u8> = rest
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != t)
                .map(|(_, &x)| x)
                .collect();
            cur.push(edge(first, b));
            rec(&remaining, cur, out);
            cur.pop();
        }
    }
    let vertices: Vec<u8> = (1..=v as u8).collect();
    let mut out = Vec::new();
    rec(&vertices, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The set `{v1(i, {j,k}) : {j,k} in Y_i}` induced by a coloring of `K10`.
pub fn coloring_to_aes(y: &ProperColoring) -> AesSet {
    assert_eq!(y.vertex_count(), 10, "colorings of K10 only");
    AesSet::new(y.classes().iter().enumerate().flat_map(|(idx, class)| {
        class
            .edges()
            .iter()
            .map(move |&(j, k)| XLabel::v1(idx as u8 + 1, j, k))
    }))
}

/// Inverse of [`coloring_to_aes`]: group the `v1` labels by color index.
pub fn aes_to_coloring(s: &AesSet) -> Result<ProperColoring, ColoringError> {
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); 10];
    for label in s.iter() {
        match label {
            XLabel::V1 { i, j, k } => classes[(i - 1) as usize].push((*j, *k)),
            other => return Err(ColoringError::NotInX1(*other)),
        }
    }
    let classes = classes
        .into_iter()
        .map(Matching::new)
        .collect::<Result<Vec<_>, _>>()?;
    ProperColoring::new(classes)
}

/// The exact counting chain from the coloring bound to the isometry bound.
#[derive(Debug, Clone, Serialize)]
pub struct CountChain {
    /// `T(10)`, brute-force cross-checked.
    #[serde(with = "crate::exact::bigint_string")]
    pub matchings_k10: BigInt,
    /// The factorization count entering the product.
    #[serde(with = "crate::exact::bigint_string")]
    pub factorizations: BigInt,
    /// `9! * T(10) * 6240`.
    #[serde(with = "crate::exact::bigint_string")]
    pub colorings_lower: BigInt,
    /// `151200 *` the above: max sets in `X` up to switching.
    #[serde(with = "crate::exact::bigint_string")]
    pub switching_lower: BigInt,
    /// `(10!)^2`.
    #[serde(with = "crate::exact::bigint_string")]
    pub stabilizer_bound: BigInt,
    /// Floor of `switching_lower / stabilizer_bound`.
    #[serde(with = "crate::exact::bigint_string")]
    pub isometry_quotient: BigInt,
    /// The published lower bound the quotient must reach.
    #[serde(with = "crate::exact::bigint_string")]
    pub isometry_target: BigInt,
    pub isometry_ok: bool,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Evaluates `9! * T(10) * 6240 = 21502468915200`, multiplies by the 151200
/// clique classes, and floors by `(10!)^2`, checking the result reaches
/// 246896.
pub fn counting_chain() -> CountChain {
    let matchings_k10 = telephone(10);
    let factorizations = BigInt::from(6240);
    let colorings_lower = factorial(9) * &matchings_k10 * &factorizations;
    let switching_lower = BigInt::from(151200) * &colorings_lower;
    let ten_fact = factorial(10);
    let stabilizer_bound = &ten_fact * &ten_fact;
    let isometry_quotient = num_integer::Integer::div_floor(&switching_lower, &stabilizer_bound);
    let isometry_target = BigInt::from(246896);
    let isometry_ok = isometry_quotient >= isometry_target;
    CountChain {
        matchings_k10,
        factorizations,
        colorings_lower,
        switching_lower,
        stabilizer_bound,
        isometry_quotient,
        isometry_target,
        isometry_ok,
    }
}
