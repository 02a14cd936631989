//! The automorphism group fixing the switching root: pairs of coordinate
//! permutations with an optional global flip of the two big blocks. Label
//! level actions, stabilizer membership checks, and brute-force
//! automorphism groups of 1-factorizations and of the distinguished index
//! family.

use crate::colorings::{Matching, OneFactorization};
use crate::exact::ScaledVector;
use crate::xvec::{realize, recognize, AesSet, XLabel};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

/// A permutation of `1..=10`; entry `t` is the image of `t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Perm10(pub [u8; 10]);

impl Perm10 {
    pub fn identity() -> Perm10 {
        Perm10(std::array::from_fn(|t| t as u8 + 1))
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.0[(x - 1) as usize]
    }

    /// `self` after `other`: the composite sends `x` to `self(other(x))`.
    pub fn compose(&self, other: &Perm10) -> Perm10 {
        Perm10(std::array::from_fn(|t| self.apply(other.0[t])))
    }

    pub fn inverse(&self) -> Perm10 {
        let mut inv = [0u8; 10];
        for (t, &img) in self.0.iter().enumerate() {
            inv[(img - 1) as usize] = t as u8 + 1;
        }
        Perm10(inv)
    }

    /// Parse disjoint cycle notation such as `(1,2)(5,8)(6,9)(7,10)`.
    /// The identity is written `()` or an empty string.
    pub fn from_cycles(text: &str) -> Result<Perm10, String> {
        let mut map = Perm10::identity();
        let cleaned = text.trim();
        if cleaned.is_empty() || cleaned == "()" {
            return Ok(map);
        }
        if !cleaned.starts_with('(') || !cleaned.ends_with(')') {
            return Err(format!("malformed cycle notation {text:?}"));
        }
        let mut seen = HashSet::new();
        for cycle in cleaned[1..cleaned.len() - 1].split(")(") {
            let elems: Vec<u8> = cycle
                .split(',')
                .map(|s| s.trim().parse::<u8>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            if elems.iter().any(|&x| !(1..=10).contains(&x)) {
                return Err(format!("cycle entry outside 1..=10 in {text:?}"));
            }
            for &x in &elems {
                if !seen.insert(x) {
                    return Err(format!("element {x} repeated in {text:?}"));
                }
            }
            for (t, &x) in elems.iter().enumerate() {
                map.0[(x - 1) as usize] = elems[(t + 1) % elems.len()];
            }
        }
        Ok(map)
    }

    pub fn cycle_string(&self) -> String {
        let mut done = [false; 10];
        let mut out = String::new();
        for start in 1..=10u8 {
            if done[(start - 1) as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            done[(start - 1) as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                done[(x - 1) as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push('(');
            out.push_str(
                &cycle
                    .iter()
                    .map(u8::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// An element of the root-fixing automorphism group: block permutations
/// `(sigma1, sigma2, id)`, negated variants flip the sign of both big
/// blocks while keeping the root block. The group has order `2 * (10!)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AutElement {
    pub sigma1: Perm10,
    pub sigma2: Perm10,
    pub negated: bool,
}

impl AutElement {
    pub fn identity() -> AutElement {
        AutElement {
            sigma1: Perm10::identity(),
            sigma2: Perm10::identity(),
            negated: false,
        }
    }

    pub fn new(sigma1: Perm10, sigma2: Perm10, negated: bool) -> AutElement {
        AutElement {
            sigma1,
            sigma2,
            negated,
        }
    }

    /// The central element negating both big blocks; it maps every member
    /// of `X` to its switch partner.
    pub fn mu() -> AutElement {
        AutElement {
            sigma1: Perm10::identity(),
            sigma2: Perm10::identity(),
            negated: true,
        }
    }

    pub fn compose(&self, other: &AutElement) -> AutElement {
        AutElement {
            sigma1: self.sigma1.compose(&other.sigma1),
            sigma2: self.sigma2.compose(&other.sigma2),
            negated: self.negated ^ other.negated,
        }
    }

    pub fn inverse(&self) -> AutElement {
        AutElement {
            sigma1: self.sigma1.inverse(),
            sigma2: self.sigma2.inverse(),
            negated: self.negated,
        }
    }

    /// Coordinate-level action on a scaled vector: permute within each big
    /// block, negate both big blocks if `negated`, fix the root block.
    pub fn apply_vector(&self, v: &ScaledVector) -> ScaledVector {
        let sign = if self.negated { -1 } else { 1 };
        let mut b1 = [0i64; 10];
        let mut b2 = [0i64; 10];
        for t in 0..10 {
            b1[(self.sigma1.0[t] - 1) as usize] = sign * v.block(0)[t];
            b2[(self.sigma2.0[t] - 1) as usize] = sign * v.block(1)[t];
        }
        ScaledVector::from_blocks(&b1, &b2, v.block(2))
    }
}

/// Label-level action. Consistent with realizing, transforming coordinates
/// blockwise, and re-recognizing (checked in debug builds).
pub fn apply(g: &AutElement, x: &XLabel) -> XLabel {
    let permuted = match *x {
        XLabel::V1 { i, j, k } => {
            XLabel::v1(g.sigma1.apply(i), g.sigma2.apply(j), g.sigma2.apply(k))
        }
        XLabel::Vm1 { i, j, k } => {
            XLabel::vm1(g.sigma1.apply(i), g.sigma2.apply(j), g.sigma2.apply(k))
        }
        XLabel::V5 { set } => {
            let image: Vec<u8> = set.iter().map(|&v| g.sigma1.apply(v)).collect();
            XLabel::v5(image.try_into().unwrap())
        }
    };
    let out = if g.negated { permuted.partner() } else { permuted };
    debug_assert_eq!(
        recognize(&g.apply_vector(&realize(x))),
        Some(out),
        "label action disagrees with coordinate action"
    );
    out
}

/// Elementwise action on an equiangular set; isometries preserve the
/// property.
pub fn act_on_aes(g: &AutElement, s: &AesSet) -> AesSet {
    AesSet::new(s.iter().map(|x| apply(g, x)))
}

/// Does `g` fix the set, either exactly or as a switching class?
pub fn stabilizes(g: &AutElement, s: &AesSet, up_to_switching: bool) -> bool {
    let image = act_on_aes(g, s);
    if up_to_switching {
        image.switching_equivalent(s)
    } else {
        image == *s
    }
}

/// A subgroup of `S10` discovered by brute force, with a membership oracle.
pub struct PermGroup {
    elements: HashSet<[u8; 10]>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm10) -> bool {
        self.elements.contains(&p.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Perm10> + '_ {
        self.elements.iter().map(|arr| Perm10(*arr))
    }
}

/// Scan all of `S10`, keeping the permutations accepted by `keep`.
fn scan_s10(keep: impl Fn(&Perm10) -> bool + Sync) -> PermGroup {
    let elements: HashSet<[u8; 10]> = (1..=10u8)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut perm = [0u8; 10];
            perm[0] = first;
            let mut used = [false; 11];
            used[first as usize] = true;
            fill(&mut perm, 1, &mut used, &keep, &mut found);
            found
        })
        .collect();
    PermGroup { elements }
}

fn fill(
    perm: &mut [u8; 10],
    pos: usize,
    used: &mut [bool; 11],
    keep: &(impl Fn(&Perm10) -> bool + Sync),
    found: &mut Vec<[u8; 10]>,
) {
    if pos == 10 {
        let p = Perm10(*perm);
        if keep(&p) {
            found.push(*perm);
        }
        return;
    }
    for x in 1..=10u8 {
        if used[x as usize] {
            continue;
        }
        used[x as usize] = true;
        perm[pos] = x;
        fill(perm, pos + 1, used, keep, found);
        used[x as usize] = false;
    }
}

fn matching_mask(m: &Matching, edge_index: &[[u8; 11]; 11]) -> u64 {
    m.edges()
        .iter()
        .fold(0u64, |acc, &(a, b)| acc | 1 << edge_index[a as usize][b as usize])
}

/// Brute-force automorphism group of a `K10` 1-factorization: the vertex
/// permutations that permute the factor set.
pub fn aut_of_factorization(f: &OneFactorization) -> PermGroup {
    assert_eq!(f.vertex_count(), 10, "K10 factorizations only");
    let mut edge_index = [[0u8; 11]; 11];
    let mut next = 0u8;
    for a in 1..=10usize {
        for b in a + 1..=10 {
            edge_index[a][b] = next;
            edge_index[b][a] = next;
            next += 1;
        }
    }
    let factor_masks: Vec<u64> = f
        .factors()
        .iter()
        .map(|m| matching_mask(m, &edge_index))
        .collect();
    let factor_edges: Vec<Vec<(u8, u8)>> = f
        .factors()
        .iter()
        .map(|m| m.edges().iter().copied().collect())
        .collect();
    scan_s10(move |p| {
        factor_edges.iter().all(|edges| {
            let image = edges.iter().fold(0u64, |acc, &(a, b)| {
                acc | 1 << edge_index[p.apply(a) as usize][p.apply(b) as usize]
            });
            factor_masks.contains(&image)
        })
    })
}

/// Brute-force automorphism group of the distinguished index family: the
/// permutations mapping each of the 12 five-sets to one of them.
pub fn aut_of_i0() -> PermGroup {
    let masks: Vec<u16> = crate::cliques::psi0_index_sets()
        .iter()
        .map(|set| set.iter().fold(0u16, |acc, &v| acc | 1 << (v - 1)))
        .collect();
    scan_s10(move |p| {
        masks.iter().all(|&mask| {
            let mut image = 0u16;
            for v in 1..=10u8 {
                if mask & (1 << (v - 1)) != 0 {
                    image |= 1 << (p.apply(v) - 1);
                }
            }
            masks.contains(&image)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::round_robin;
    use crate::lattice::switching_root;

    #[test]
    fn cycle_parsing_roundtrip() {
        let p = Perm10::from_cycles("(1,2)(5,8)(6,9)(7,10)").unwrap();
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(5), 8);
        assert_eq!(p.apply(3), 3);
        assert_eq!(Perm10::from_cycles(&p.cycle_string()).unwrap(), p);
        assert_eq!(Perm10::from_cycles("()").unwrap(), Perm10::identity());
        assert!(Perm10::from_cycles("(1,1)").is_err());
        assert!(Perm10::from_cycles("(0,2)").is_err());
        let q = Perm10::from_cycles("(1,2,3,4,5,6,7,8,9,10)").unwrap();
        assert_eq!(q.compose(&q.inverse()), Perm10::identity());
    }

    #[test]
    fn mu_sends_labels_to_partners() {
        let mu = AutElement::mu();
        assert_eq!(apply(&mu, &XLabel::v1(1, 2, 3)), XLabel::vm1(1, 2, 3));
        assert_eq!(
            apply(&mu, &XLabel::v5([1, 2, 3, 4, 5])),
            XLabel::v5([6, 7, 8, 9, 10])
        );
        assert_eq!(apply(&AutElement::identity(), &XLabel::v1(4, 5, 6)), XLabel::v1(4, 5, 6));
    }

    #[test]
    fn both_branches_fix_the_root() {
        let r = switching_root();
        let g = AutElement::new(
            Perm10::from_cycles("(1,2,3)").unwrap(),
            Perm10::from_cycles("(4,5)").unwrap(),
            false,
        );
        assert_eq!(g.apply_vector(&r), r);
        assert_eq!(AutElement::mu().apply_vector(&r), r);
    }

    #[test]
    fn sigma_permutes_v5_first_block() {
        let g = AutElement::new(Perm10::from_cycles("(1,2)").unwrap(), Perm10::identity(), false);
        assert_eq!(
            apply(&g, &XLabel::v5([1, 3, 5, 7, 9])),
            XLabel::v5([2, 3, 5, 7, 9])
        );
    }

    #[test]
    fn action_is_homomorphism_on_samples() {
        let g = AutElement::new(
            Perm10::from_cycles("(1,4,7)(2,9)").unwrap(),
            Perm10::from_cycles("(3,6,9,2)").unwrap(),
            true,
        );
        let h = AutElement::new(
            Perm10::from_cycles("(5,10)").unwrap(),
            Perm10::from_cycles("(1,8)(2,7)(3,6)(4,5)").unwrap(),
            false,
        );
        let gh = g.compose(&h);
        for x in [
            XLabel::v1(1, 2, 3),
            XLabel::vm1(10, 4, 9),
            XLabel::v5([2, 4, 6, 8, 10]),
        ] {
            assert_eq!(apply(&g, &apply(&h, &x)), apply(&gh, &x));
        }
    }

    #[test]
    fn mu_stabilizes_up_to_switching_only() {
        let s = crate::cliques::psi0();
        assert!(stabilizes(&AutElement::mu(), &s, true));
        assert!(!stabilizes(&AutElement::mu(), &s, false));
        assert!(stabilizes(&AutElement::identity(), &s, false));
    }

    #[test]
    fn factorization_automorphisms_have_order_54() {
        let group = aut_of_factorization(&round_robin(5));
        assert_eq!(group.order(), 54);
        assert!(group.contains(&Perm10::from_cycles("(1,8)(2,7)(3,6)(4,5)").unwrap()));
        assert!(group.contains(&Perm10::from_cycles("(1,2,3,4,5,6,7,8,9)").unwrap()));
        assert!(group.contains(&Perm10::identity()));
    }

    #[test]
    fn i0_automorphisms_have_order_24() {
        let group = aut_of_i0();
        assert_eq!(group.order(), 24);
        assert!(group.contains(&Perm10::from_cycles("(1,2)(5,8)(6,9)(7,10)").unwrap()));
        assert!(group.contains(&Perm10::identity()));
        // exactly the embedded S4 action, nothing more
        let embedded: HashSet<[u8; 10]> =
            crate::cliques::s4_action_embedding().into_iter().collect();
        assert_eq!(embedded, group.elements);
    }

    #[test]
    fn discovered_stabilizer_elements_are_closed() {
        // the reference stabilizer element of the shuffled coloring set
        let f = round_robin(5);
        let order = [0usize, 7, 8, usize::MAX, 1, 2, 3, 6, 5, 4];
        let classes: Vec<Matching> = order
            .iter()
            .map(|&idx| {
                if idx == usize::MAX {
                    Matching::empty()
                } else {
                    f.factors()[idx].clone()
                }
            })
            .collect();
        let coloring = crate::colorings::ProperColoring::new(classes).unwrap();
        let s = crate::cliques::psi0().union(&crate::colorings::coloring_to_aes(&coloring));
        let sigma = AutElement::new(
            Perm10::from_cycles("(1,2)(5,8)(6,9)(7,10)").unwrap(),
            Perm10::from_cycles("(1,8)(2,7)(3,6)(4,5)").unwrap(),
            false,
        );
        let mu = AutElement::mu();
        assert!(stabilizes(&sigma, &s, false));
        // closure under composition and inverse, up to switching
        for g in [
            sigma,
            mu,
            sigma.compose(&mu),
            sigma.compose(&sigma),
            sigma.inverse(),
            sigma.compose(&mu).inverse(),
        ] {
            assert!(stabilizes(&g, &s, true), "{g:?}");
        }
    }
}
