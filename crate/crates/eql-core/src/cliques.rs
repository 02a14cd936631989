//! The 126-vertex switching-class graph on the `v5` family, exhaustive
//! enumeration of its 151200 maximum cliques, the distinguished 12-clique,
//! the `S10` orbit of a clique, and root-system identification for the
//! sublattices such cliques generate.

use crate::exact::{
    gram_matrix, hnf, scaled_dot, short_vectors, IntMatrix, Rational, ScaledVector,
};
use crate::xvec::{complement, AesSet, XLabel};
use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("root component of rank {rank} has {count} roots; not an A_k system")]
    UnrecognizedComponent { rank: usize, count: usize },
    #[error("generators are linearly dependent")]
    DependentGenerators,
}

/// A switching class `{v5(I), v5(complement I)}`, canonically represented
/// by the 5-subset containing 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassVertex {
    pub rep: [u8; 5],
}

impl ClassVertex {
    pub fn from_subset(set: [u8; 5]) -> ClassVertex {
        let canonical = if set.contains(&1) { set } else { complement(&set) };
        let mut rep = canonical;
        rep.sort_unstable();
        ClassVertex { rep }
    }

    pub fn label(&self) -> XLabel {
        XLabel::v5(self.rep)
    }
}

/// The graph on the 126 vertex classes; two classes are adjacent iff every
/// representative pair has inner product 0 or 1, equivalently the index
/// sets meet in 2 or 3 elements.
pub struct ClassGraph {
    pub vertices: Vec<ClassVertex>,
    adj: Vec<u128>,
    index: HashMap<[u8; 5], u8>,
}

impl ClassGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] & (1u128 << b) != 0
    }

    pub fn neighbors(&self, v: usize) -> u128 {
        self.adj[v]
    }

    pub fn index_of(&self, vertex: &ClassVertex) -> u8 {
        self.index[&vertex.rep]
    }
}

pub fn adjacency(a: &[u8; 5], b: &[u8; 5]) -> bool {
    let meet = a.iter().filter(|x| b.contains(x)).count();
    meet == 2 || meet == 3
}

pub fn build_class_graph() -> ClassGraph {
    let vertices: Vec<ClassVertex> = (2..=10u8)
        .combinations(4)
        .map(|tail| {
            let mut set = [0u8; 5];
            set[0] = 1;
            set[1..].copy_from_slice(&tail);
            ClassVertex { rep: set }
        })
        .sorted()
        .collect();
    debug_assert_eq!(vertices.len(), 126);
    let mut adj = vec![0u128; vertices.len()];
    for (a, va) in vertices.iter().enumerate() {
        for (b, vb) in vertices.iter().enumerate().skip(a + 1) {
            if adjacency(&va.rep, &vb.rep) {
                adj[a] |= 1u128 << b;
                adj[b] |= 1u128 << a;
            }
        }
    }
    let index = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.rep, i as u8))
        .collect();
    ClassGraph {
        vertices,
        adj,
        index,
    }
}

/// A clique in the class graph, held as sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CliqueSet {
    pub vertices: Vec<u8>,
}

impl CliqueSet {
    pub fn new(mut vertices: Vec<u8>) -> CliqueSet {
        vertices.sort_unstable();
        CliqueSet { vertices }
    }

    pub fn class_vertices<'g>(&self, g: &'g ClassGraph) -> Vec<&'g ClassVertex> {
        self.vertices.iter().map(|&v| &g.vertices[v as usize]).collect()
    }

    /// The equiangular set of canonical representatives.
    pub fn to_aes(&self, g: &ClassGraph) -> AesSet {
        AesSet::new(self.vertices.iter().map(|&v| g.vertices[v as usize].label()))
    }
}

const TARGET: usize = 12;

fn greedy_color_bound(g: &ClassGraph, mut uncolored: u128) -> usize {
    let mut colors = 0;
    while uncolored != 0 {
        colors += 1;
        let mut candidates = uncolored;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            let bit = 1u128 << v;
            uncolored &= !bit;
            candidates &= !(g.adj[v] | bit);
        }
    }
    colors
}

fn extend_cliques(
    g: &ClassGraph,
    current: &mut Vec<u8>,
    candidates: u128,
    common: u128,
    out: &mut Vec<CliqueSet>,
) {
    if current.len() == TARGET {
        assert_eq!(common, 0, "clique of size 13 found");
        out.push(CliqueSet::new(current.clone()));
        return;
    }
    let need = TARGET - current.len();
    if (candidates.count_ones() as usize) < need {
        return;
    }
    if greedy_color_bound(g, common) < need {
        return;
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (rest.count_ones() as usize) + 1 < need {
            break;
        }
        current.push(v as u8);
        extend_cliques(g, current, rest & g.adj[v], common & g.adj[v], out);
        current.pop();
    }
}

/// All cliques of maximum size 12, sorted canonically. Panics if any clique
/// of size 13 exists (every emitted 12-clique is certified to have empty
/// common neighborhood).
pub fn enum_max_cliques(g: &ClassGraph) -> Vec<CliqueSet> {
    let n = g.vertex_count();
    let mut per_root: Vec<Vec<CliqueSet>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut out = Vec::new();
            let mut current = vec![v as u8];
            let later = if v + 1 >= 128 { 0 } else { !0u128 << (v + 1) };
            extend_cliques(g, &mut current, g.adj[v] & later, g.adj[v], &mut out);
            out
        })
        .collect();
    let mut all: Vec<CliqueSet> = per_root.drain(..).flatten().collect();
    all.sort();
    all
}

/// The distinguished 12 index sets: each is three elements of `[4]` plus
/// the two of `{5..10}` whose associated 4-cycle maps `i` to `j`.
pub fn psi0_index_sets() -> Vec<[u8; 5]> {
    // the six conjugates of (1,2,3,4), in the fixed reference order
    let cycles: [[u8; 4]; 6] = [
        [1, 2, 3, 4],
        [1, 3, 2, 4],
        [1, 2, 4, 3],
        [1, 3, 4, 2],
        [1, 4, 2, 3],
        [1, 4, 3, 2],
    ];
    let image = |cycle: &[u8; 4], x: u8| -> u8 {
        match cycle.iter().position(|&c| c == x) {
            Some(p) => cycle[(p + 1) % 4],
            None => x,
        }
    };
    let mut out = Vec::with_capacity(12);
    for i in 1..=4u8 {
        for j in 1..=4u8 {
            if i == j {
                continue;
            }
            let mut set = Vec::with_capacity(5);
            set.extend((1..=4u8).filter(|&x| x != i));
            for (t, cycle) in cycles.iter().enumerate() {
                if image(cycle, i) == j {
                    set.push(t as u8 + 5);
                }
            }
            let arr: [u8; 5] = set.try_into().expect("each (i, j) picks two cycles");
            out.push(arr);
        }
    }
    out
}

/// The distinguished maximum equiangular set inside the `v5` family.
pub fn psi0() -> AesSet {
    AesSet::new(psi0_index_sets().into_iter().map(XLabel::v5))
}

/// The 24 permutations of `[10]` induced by `S4`: natural action on `[4]`,
/// conjugation action on the six reference 4-cycles for `{5..10}`. These
/// all preserve the distinguished index family.
pub fn s4_action_embedding() -> Vec<[u8; 10]> {
    let cycles: [[u8; 4]; 6] = [
        [1, 2, 3, 4],
        [1, 3, 2, 4],
        [1, 2, 4, 3],
        [1, 3, 4, 2],
        [1, 4, 2, 3],
        [1, 4, 3, 2],
    ];
    // canonical key of a 4-cycle: rotate so the cycle starts at 1
    let key = |c: &[u8; 4]| -> [u8; 4] {
        let p = c.iter().position(|&x| x == 1).unwrap();
        std::array::from_fn(|t| c[(p + t) % 4])
    };
    let keys: Vec<[u8; 4]> = cycles.iter().map(key).collect();
    let mut out = Vec::with_capacity(24);
    let mut perm4 = [1u8, 2, 3, 4];
    heap_permutations(&mut perm4, 4, &mut |sigma: &[u8; 4]| {
        let mut image = [0u8; 10];
        for (t, slot) in image.iter_mut().take(4).enumerate() {
            *slot = sigma[t];
        }
        for (t, cycle) in cycles.iter().enumerate() {
            // conjugate: sigma . cycle . sigma^{-1}
            let conj: [u8; 4] = std::array::from_fn(|s| sigma[(cycle[s] - 1) as usize]);
            let target = keys
                .iter()
                .position(|k| *k == key(&conj))
                .expect("conjugate of a 4-cycle is a reference 4-cycle");
            image[t + 4] = target as u8 + 5;
        }
        out.push(image);
    });
    out
}

fn heap_permutations(arr: &mut [u8; 4], k: usize, emit: &mut impl FnMut(&[u8; 4])) {
    if k == 1 {
        emit(arr);
        return;
    }
    for i in 0..k {
        heap_permutations(arr, k - 1, emit);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

/// The clique of switching classes underlying [`psi0`].
pub fn psi0_clique(g: &ClassGraph) -> CliqueSet {
    CliqueSet::new(
        psi0_index_sets()
            .into_iter()
            .map(|set| g.index_of(&ClassVertex::from_subset(set)))
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitInfo {
    pub orbit_size: usize,
    pub stabilizer_order: u64,
}

/// Breadth-first orbit of a clique under `S10` acting on index sets,
/// generated by the transposition (1 2) and the 10-cycle. Returns the orbit
/// (sorted) and the stabilizer order by orbit-stabilizer.
pub fn s10_orbit(g: &ClassGraph, start: &CliqueSet) -> (OrbitInfo, Vec<CliqueSet>) {
    let transposition = |x: u8| -> u8 {
        match x {
            1 => 2,
            2 => 1,
            other => other,
        }
    };
    let cycle = |x: u8| -> u8 { x % 10 + 1 };
    let apply = |c: &CliqueSet, f: &dyn Fn(u8) -> u8| -> CliqueSet {
        CliqueSet::new(
            c.vertices
                .iter()
                .map(|&v| {
                    let rep = g.vertices[v as usize].rep;
                    let image: Vec<u8> = rep.iter().map(|&x| f(x)).collect();
                    g.index_of(&ClassVertex::from_subset(image.try_into().unwrap()))
                })
                .collect(),
        )
    };
    let mut seen: HashSet<CliqueSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(c) = queue.pop_front() {
        for image in [apply(&c, &transposition), apply(&c, &cycle)] {
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut orbit: Vec<CliqueSet> = seen.into_iter().collect();
    orbit.sort();
    let factorial_10: u64 = (1..=10).product();
    assert_eq!(
        factorial_10 % orbit.len() as u64,
        0,
        "orbit size must divide the group order"
    );
    (
        OrbitInfo {
            orbit_size: orbit.len(),
            stabilizer_order: factorial_10 / orbit.len() as u64,
        },
        orbit,
    )
}

/// Decomposition of the root system of a lattice into `A_k` components,
/// ranks sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDecomposition {
    pub component_ranks: Vec<usize>,
    pub total_roots: usize,
}

impl std::fmt::Display for RootDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .component_ranks
            .iter()
            .map(|k| format!("A{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Enumerates the norm-2 vectors of the lattice generated by `gens`,
/// partitions them into connected components under non-orthogonality, and
/// identifies each component as `A_k` by rank `k` and root count `k(k+1)`.
pub fn root_sublattice_type(gens: &[ScaledVector]) -> Result<RootDecomposition, CliqueError> {
    let basis = hnf(&IntMatrix::from_scaled_vectors(gens));
    let basis_vectors = basis.to_scaled_vectors();
    let gram = gram_matrix(&basis_vectors);
    let two = Rational::from(BigInt::from(2));
    let coeff_vectors = short_vectors(&gram, &two);
    let roots: Vec<ScaledVector> = coeff_vectors
        .iter()
        .map(|x| {
            let mut acc = ScaledVector::zero();
            for (c, b) in x.iter().zip(&basis_vectors) {
                acc = acc + *b * *c;
            }
            acc
        })
        .filter(|v| v.scaled_norm() == 200)
        .collect();

    // connected components under non-orthogonality
    let n = roots.len();
    let mut component = vec![usize::MAX; n];
    let mut next_component = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = next_component;
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if component[b] == usize::MAX
                    && scaled_dot(roots[a].coords(), roots[b].coords()) != 0
                {
                    component[b] = next_component;
                    stack.push(b);
                }
            }
        }
        next_component += 1;
    }

    let mut ranks = Vec::new();
    for c in 0..next_component {
        let members: Vec<ScaledVector> = roots
            .iter()
            .zip(&component)
            .filter(|&(_, comp)| *comp == c)
            .map(|(v, _)| *v)
            .collect();
        let rank = IntMatrix::from_scaled_vectors(&members).rank();
        if members.len() != rank * (rank + 1) {
            return Err(CliqueError::UnrecognizedComponent {
                rank,
                count: members.len(),
            });
        }
        ranks.push(rank);
    }
    ranks.sort_unstable();
    Ok(RootDecomposition {
        component_ranks: ranks,
        total_roots: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::switching_root;
    use crate::xvec::pair_value;

    #[test]
    fn psi0_sets_match_reference_list() {
        let expected: Vec<[u8; 5]> = vec![
            [2, 3, 4, 5, 7],
            [2, 3, 4, 6, 8],
            [2, 3, 4, 9, 10],
            [1, 3, 4, 8, 10],
            [1, 3, 4, 5, 9],
            [1, 3, 4, 6, 7],
            [1, 2, 4, 7, 9],
            [1, 2, 4, 6, 10],
            [1, 2, 4, 5, 8],
            [1, 2, 3, 5, 6],
            [1, 2, 3, 8, 9],
            [1, 2, 3, 7, 10],
        ];
        assert_eq!(psi0_index_sets(), expected);
        let s = psi0();
        assert_eq!(s.len(), 12);
        assert!(s.is_aes());
    }

    #[test]
    fn graph_shape() {
        let g = build_class_graph();
        assert_eq!(g.vertex_count(), 126);
        assert_eq!(g.edge_count(), 6300);
        for v in 0..126 {
            assert_eq!(g.neighbors(v).count_ones(), 100, "graph must be 100-regular");
        }
        // |I meet J| = 4 is not an edge
        let a = g.index_of(&ClassVertex::from_subset([1, 2, 3, 4, 5])) as usize;
        let b = g.index_of(&ClassVertex::from_subset([1, 2, 3, 4, 6])) as usize;
        assert!(!g.adjacent(a, b));
    }

    #[test]
    fn adjacency_agrees_with_pair_values_on_all_representatives() {
        let g = build_class_graph();
        for (a, va) in g.vertices.iter().enumerate() {
            for (b, vb) in g.vertices.iter().enumerate().skip(a + 1) {
                let all_ok = [va.rep, complement(&va.rep)].iter().all(|ia| {
                    [vb.rep, complement(&vb.rep)].iter().all(|ib| {
                        matches!(pair_value(&XLabel::v5(*ia), &XLabel::v5(*ib)), 0 | 1)
                    })
                });
                assert_eq!(g.adjacent(a, b), all_ok, "{va:?} vs {vb:?}");
            }
        }
    }

    #[test]
    fn psi0_clique_is_a_clique() {
        let g = build_class_graph();
        let c = psi0_clique(&g);
        assert_eq!(c.vertices.len(), 12);
        for (s, &a) in c.vertices.iter().enumerate() {
            for &b in &c.vertices[s + 1..] {
                assert!(g.adjacent(a as usize, b as usize));
            }
        }
        assert_eq!(c.to_aes(&g).canonical_switch_form(), psi0().canonical_switch_form());
    }

    #[test]
    fn psi0_has_expected_root_system() {
        let mut gens = psi0().realizations();
        gens.push(switching_root());
        let d = root_sublattice_type(&gens).unwrap();
        assert_eq!(d.component_ranks, vec![1, 3, 5]);
        assert_eq!(d.total_roots, 44);
        assert_eq!(d.to_string(), "A1 + A3 + A5");
    }

    #[test]
    fn switching_root_alone_is_a1() {
        let d = root_sublattice_type(&[switching_root()]).unwrap();
        assert_eq!(d.component_ranks, vec![1]);
        assert_eq!(d.total_roots, 2);
    }

    #[test]
    fn s4_embedding_preserves_the_index_family() {
        let perms = s4_action_embedding();
        assert_eq!(perms.len(), 24);
        let family: std::collections::BTreeSet<[u8; 5]> =
            psi0_index_sets().into_iter().collect();
        let distinct: std::collections::BTreeSet<[u8; 10]> = perms.iter().copied().collect();
        assert_eq!(distinct.len(), 24);
        for p in &perms {
            for set in &family {
                let mut image: Vec<u8> = set.iter().map(|&v| p[(v - 1) as usize]).collect();
                image.sort_unstable();
                let arr: [u8; 5] = image.try_into().unwrap();
                assert!(family.contains(&arr), "{p:?} moves {set:?} outside");
            }
        }
        // the known order-2 element appears
        assert!(perms.contains(&[2, 1, 3, 4, 8, 9, 10, 5, 6, 7]));
    }

    // each clique stays equiangular for every choice of representatives,
    // checked on ten images of the distinguished clique
    #[test]
    fn all_representative_choices_stay_equiangular() {
        let g = build_class_graph();
        let base = psi0_clique(&g);
        let shift = |c: &CliqueSet, offset: u8| -> CliqueSet {
            CliqueSet::new(
                c.vertices
                    .iter()
                    .map(|&v| {
                        let rep = g.vertices[v as usize].rep;
                        let image: Vec<u8> =
                            rep.iter().map(|&x| (x + offset - 1) % 10 + 1).collect();
                        g.index_of(&ClassVertex::from_subset(image.try_into().unwrap()))
                    })
                    .collect(),
            )
        };
        for offset in 0..10u8 {
            let clique = shift(&base, offset);
            let reps: Vec<[u8; 5]> = clique
                .vertices
                .iter()
                .map(|&v| g.vertices[v as usize].rep)
                .collect();
            for mask in 0..(1u32 << 12) {
                let labels = AesSet::new(reps.iter().enumerate().map(|(t, rep)| {
                    if mask & (1 << t) != 0 {
                        XLabel::v5(complement(rep))
                    } else {
                        XLabel::v5(*rep)
                    }
                }));
                assert!(labels.is_aes(), "offset {offset} mask {mask:b}");
            }
        }
    }
}
