//! The candidate set `X` of norm-3 vectors pairing to 1 with the switching
//! root, its combinatorial inner-product rules, affine equiangular sets,
//! switching classes, and strong-maximality certificates.
//!
//! `X` splits into three families indexed by small combinatorial data:
//! `v1(i, {j,k})` and its switch partner `vm1(i, {j,k})` for `i` in `[10]`
//! and an edge `{j,k}` of `K10`, and `v5(I)` for a 5-subset `I` of `[10]`.
//! All inner products between members reduce to intersection sizes, which
//! is what makes exhaustive certification cheap.

use crate::exact::{
    coords_in_hnf_basis, gram_matrix, hnf, inverse, lattice_equal, short_vectors,
    IntMatrix, Rational, ScaledVector,
};
use crate::lattice::{enum_dual_short_with_r, lambda_bases, switching_root};
use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Symbolic label of a member of `X`. Ordering sorts the `v5` family first
/// (by index set), then `v1` by `(i, j, k)`, then `vm1`; Seidel matrices
/// and JSON output follow this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "WireLabel", into = "WireLabel")]
pub enum XLabel {
    V5 { set: [u8; 5] },
    V1 { i: u8, j: u8, k: u8 },
    Vm1 { i: u8, j: u8, k: u8 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WireLabel {
    V5 { set: Vec<u8> },
    V1 { i: u8, j: u8, k: u8 },
    Vm1 { i: u8, j: u8, k: u8 },
}

impl From<XLabel> for WireLabel {
    fn from(x: XLabel) -> WireLabel {
        match x {
            XLabel::V5 { set } => WireLabel::V5 { set: set.to_vec() },
            XLabel::V1 { i, j, k } => WireLabel::V1 { i, j, k },
            XLabel::Vm1 { i, j, k } => WireLabel::Vm1 { i, j, k },
        }
    }
}

impl TryFrom<WireLabel> for XLabel {
    type Error = String;

    fn try_from(w: WireLabel) -> Result<XLabel, String> {
        match w {
            WireLabel::V5 { set } => {
                let arr: [u8; 5] = set
                    .as_slice()
                    .try_into()
                    .map_err(|_| format!("v5 set must have 5 elements, got {}", set.len()))?;
                XLabel::try_v5(arr)
            }
            WireLabel::V1 { i, j, k } => XLabel::try_v1(i, j, k),
            WireLabel::Vm1 { i, j, k } => XLabel::try_vm1(i, j, k),
        }
    }
}

fn check_vertex(v: u8) -> Result<(), String> {
    if (1..=10).contains(&v) {
        Ok(())
    } else {
        Err(format!("vertex {v} outside 1..=10"))
    }
}

impl XLabel {
    pub fn try_v1(i: u8, j: u8, k: u8) -> Result<XLabel, String> {
        check_vertex(i)?;
        check_vertex(j)?;
        check_vertex(k)?;
        if j == k {
            return Err(format!("edge endpoints coincide: {j}"));
        }
        Ok(XLabel::V1 {
            i,
            j: j.min(k),
            k: j.max(k),
        })
    }

    pub fn try_vm1(i: u8, j: u8, k: u8) -> Result<XLabel, String> {
        Ok(XLabel::try_v1(i, j, k)?.partner_kind())
    }

    pub fn try_v5(mut set: [u8; 5]) -> Result<XLabel, String> {
        set.sort_unstable();
        for v in set {
            check_vertex(v)?;
        }
        if set.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("v5 set has repeated elements: {set:?}"));
        }
        Ok(XLabel::V5 { set })
    }

    pub fn v1(i: u8, j: u8, k: u8) -> XLabel {
        XLabel::try_v1(i, j, k).unwrap()
    }

    pub fn vm1(i: u8, j: u8, k: u8) -> XLabel {
        XLabel::try_vm1(i, j, k).unwrap()
    }

    pub fn v5(set: [u8; 5]) -> XLabel {
        XLabel::try_v5(set).unwrap()
    }

    fn partner_kind(self) -> XLabel {
        match self {
            XLabel::V1 { i, j, k } => XLabel::Vm1 { i, j, k },
            XLabel::Vm1 { i, j, k } => XLabel::V1 { i, j, k },
            XLabel::V5 { set } => XLabel::V5 {
                set: complement(&set),
            },
        }
    }

    /// The switch partner `r - u`.
    pub fn partner(&self) -> XLabel {
        self.partner_kind()
    }

    /// Class of the realized vector in `Lambda / L`.
    pub fn lambda_coset(&self) -> u8 {
        match self {
            XLabel::V1 { .. } => 1,
            XLabel::Vm1 { .. } => 9,
            XLabel::V5 { .. } => 5,
        }
    }
}

pub fn complement(set: &[u8; 5]) -> [u8; 5] {
    let mut out = [0u8; 5];
    let mut idx = 0;
    for v in 1..=10u8 {
        if !set.contains(&v) {
            out[idx] = v;
            idx += 1;
        }
    }
    out
}

/// Scaled coordinates of the label's vector.
pub fn realize(x: &XLabel) -> ScaledVector {
    match *x {
        XLabel::V1 { i, j, k } => {
            let mut b1 = [1i64; 10];
            b1[(i - 1) as usize] = -9;
            let mut b2 = [2i64; 10];
            b2[(j - 1) as usize] = -8;
            b2[(k - 1) as usize] = -8;
            ScaledVector::from_blocks(&b1, &b2, &[5, -5])
        }
        XLabel::Vm1 { i, j, k } => switching_root() - realize(&XLabel::V1 { i, j, k }),
        XLabel::V5 { set } => {
            let mut b1 = [5i64; 10];
            for v in set {
                b1[(v - 1) as usize] = -5;
            }
            ScaledVector::from_blocks(&b1, &[0; 10], &[5, -5])
        }
    }
}

/// Recognize a scaled vector as a label of `X`, if it is one.
pub fn recognize(v: &ScaledVector) -> Option<XLabel> {
    if v.block(2) != [5, -5] {
        return None;
    }
    let b1 = v.block(0);
    let b2 = v.block(1);
    if b2.iter().all(|&x| x == 0) {
        let set: Vec<u8> = (0..10).filter(|&t| b1[t] == -5).map(|t| t as u8 + 1).collect();
        if set.len() == 5 && b1.iter().all(|&x| x == 5 || x == -5) {
            return XLabel::try_v5(set.try_into().unwrap()).ok();
        }
        return None;
    }
    let pattern = |block: &[i64], common: i64, special: i64, count: usize| -> Option<Vec<u8>> {
        let hits: Vec<u8> = (0..block.len())
            .filter(|&t| block[t] == special)
            .map(|t| t as u8 + 1)
            .collect();
        if hits.len() == count && block.iter().all(|&x| x == common || x == special) {
            Some(hits)
        } else {
            None
        }
    };
    if let (Some(is), Some(jks)) = (pattern(b1, 1, -9, 1), pattern(b2, 2, -8, 2)) {
        return XLabel::try_v1(is[0], jks[0], jks[1]).ok();
    }
    if let (Some(is), Some(jks)) = (pattern(b1, -1, 9, 1), pattern(b2, -2, 8, 2)) {
        return XLabel::try_vm1(is[0], jks[0], jks[1]).ok();
    }
    None
}

fn overlap(a: &[u8], b: &[u8]) -> i64 {
    a.iter().filter(|x| b.contains(x)).count() as i64
}

/// Exact inner product of two members of `X` from the intersection rules;
/// mixed-sign pairs go through the identity `(r - u, v) = 1 - (u, v)`.
pub fn pair_value(a: &XLabel, b: &XLabel) -> i64 {
    use XLabel::*;
    match (*a, *b) {
        (V1 { i, j, k }, V1 { i: i2, j: j2, k: k2 })
        | (Vm1 { i, j, k }, Vm1 { i: i2, j: j2, k: k2 }) => {
            overlap(&[i], &[i2]) + overlap(&[j, k], &[j2, k2])
        }
        (V5 { set: a }, V5 { set: b }) => overlap(&a, &b) - 2,
        (V1 { i, .. }, V5 { set }) | (V5 { set }, V1 { i, .. }) => overlap(&[i], &set),
        (V1 { .. }, Vm1 { .. }) => 1 - pair_value(a, &b.partner()),
        (Vm1 { .. }, V1 { .. }) => 1 - pair_value(&a.partner(), b),
        (Vm1 { i, .. }, V5 { set }) | (V5 { set }, Vm1 { i, .. }) => 1 - overlap(&[i], &set),
    }
}

/// All 1152 labels: 450 + 450 + 252, sorted canonically.
pub fn enumerate_x() -> Vec<XLabel> {
    let mut out = Vec::with_capacity(1152);
    for set in (1..=10u8).combinations(5) {
        out.push(XLabel::v5(set.try_into().unwrap()));
    }
    for i in 1..=10u8 {
        for j in 1..=9u8 {
            for k in j + 1..=10u8 {
                out.push(XLabel::v1(i, j, k));
                out.push(XLabel::vm1(i, j, k));
            }
        }
    }
    out.sort();
    out
}

/// A candidate or verified affine equiangular set with respect to the fixed
/// switching root. JSON form: `{"root":"r","vectors":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WireAes", into = "WireAes")]
pub struct AesSet {
    labels: BTreeSet<XLabel>,
}

#[derive(Serialize, Deserialize)]
struct WireAes {
    root: String,
    vectors: Vec<XLabel>,
}

impl From<AesSet> for WireAes {
    fn from(s: AesSet) -> WireAes {
        WireAes {
            root: "r".to_owned(),
            vectors: s.labels.into_iter().collect(),
        }
    }
}

impl TryFrom<WireAes> for AesSet {
    type Error = String;

    fn try_from(w: WireAes) -> Result<AesSet, String> {
        if w.root != "r" {
            return Err(format!("unsupported switching root {:?}", w.root));
        }
        Ok(AesSet::new(w.vectors))
    }
}

impl AesSet {
    pub fn new(labels: impl IntoIterator<Item = XLabel>) -> AesSet {
        AesSet {
            labels: labels.into_iter().collect(),
        }
    }

    pub fn empty() -> AesSet {
        AesSet::new([])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, x: &XLabel) -> bool {
        self.labels.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &XLabel> {
        self.labels.iter()
    }

    pub fn labels(&self) -> &BTreeSet<XLabel> {
        &self.labels
    }

    pub fn union(&self, other: &AesSet) -> AesSet {
        AesSet {
            labels: self.labels.union(&other.labels).copied().collect(),
        }
    }

    pub fn realizations(&self) -> Vec<ScaledVector> {
        self.labels.iter().map(realize).collect()
    }

    /// True iff all pairwise inner products lie in {0, 1}.
    pub fn is_aes(&self) -> bool {
        let labels: Vec<&XLabel> = self.labels.iter().collect();
        for (t, a) in labels.iter().enumerate() {
            for b in &labels[t + 1..] {
                if !matches!(pair_value(a, b), 0 | 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Replace each member whose switch class meets `subset` by its partner
    /// `r - u`. Toggling by class makes switching an involution.
    pub fn switch(&self, subset: &BTreeSet<XLabel>) -> AesSet {
        assert!(
            subset
                .iter()
                .all(|u| self.labels.contains(u) || self.labels.contains(&u.partner())),
            "switch subset not contained in the set"
        );
        AesSet::new(self.labels.iter().map(|u| {
            if subset.contains(u) || subset.contains(&u.partner()) {
                u.partner()
            } else {
                *u
            }
        }))
    }

    /// Canonical switching representative: every `vm1` switched to `v1`,
    /// every `v5(I)` switched so that `1` is in `I`. Two sets are switching
    /// equivalent iff their canonical forms are equal.
    pub fn canonical_switch_form(&self) -> AesSet {
        AesSet::new(self.labels.iter().map(|u| match u {
            XLabel::Vm1 { .. } => u.partner(),
            XLabel::V5 { set } if !set.contains(&1) => u.partner(),
            _ => *u,
        }))
    }

    pub fn switching_equivalent(&self, other: &AesSet) -> bool {
        self.canonical_switch_form() == other.canonical_switch_form()
    }
}

/// True iff the set together with the switching root generates the whole
/// overlattice.
pub fn verify_generates_lambda(s: &AesSet) -> bool {
    let mut gens = s.realizations();
    gens.push(switching_root());
    lattice_equal(&gens, &lambda_bases().lambda_basis)
}

/// Extension vector exhibited when a set is not strongly maximal.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ExtensionWitness {
    /// A member of `X` compatible with the whole set.
    Label { label: XLabel },
    /// A dual vector of the proper sublattice spanned by the set, given by
    /// its coefficients over the dual basis of that span.
    DualCoefficients { coefficients: Vec<i64>, norm: String },
}

/// Outcome of the strong-maximality check.
#[derive(Debug, Clone, Serialize)]
pub struct MaximalityCertificate {
    pub generates_lambda: bool,
    pub dual_shorts_examined: usize,
    pub extension_candidates_examined: usize,
    pub verdict: bool,
    pub offending_extension: Option<ExtensionWitness>,
}

/// Certify that no vector `v` of the dual of the span of `s` and `r`
/// satisfies `(v,v) <= 3`, `(v,r) = 1` and `(v,u)` in {0,1} for all members.
///
/// When the set generates the overlattice, the dual is its dual lattice and
/// the candidate pool is exactly the bounded dual enumeration; otherwise the
/// dual of the actual span is enumerated through its Gram matrix and the
/// certificate is flagged via `generates_lambda = false`.
pub fn verify_strong_maximality(s: &AesSet) -> MaximalityCertificate {
    assert!(s.is_aes(), "strong maximality requires an equiangular set");
    if verify_generates_lambda(s) {
        let three = Rational::from(BigInt::from(3));
        let pool = enum_dual_short_with_r(&three);
        let dual_shorts_examined = pool.len();
        let mut extension_candidates_examined = 0;
        let mut offending = None;
        for v in &pool {
            let label = recognize(v).expect("norm-3 dual vector must carry an X label");
            if s.contains(&label) {
                continue;
            }
            extension_candidates_examined += 1;
            if s.iter().all(|w| matches!(pair_value(&label, w), 0 | 1)) {
                offending.get_or_insert(ExtensionWitness::Label { label });
            }
        }
        MaximalityCertificate {
            generates_lambda: true,
            dual_shorts_examined,
            extension_candidates_examined,
            verdict: offending.is_none(),
            offending_extension: offending,
        }
    } else {
        verify_strong_maximality_in_span(s)
    }
}

fn verify_strong_maximality_in_span(s: &AesSet) -> MaximalityCertificate {
    let mut gens = s.realizations();
    gens.push(switching_root());
    let basis = hnf(&IntMatrix::from_scaled_vectors(&gens));
    let basis_vectors = basis.to_scaled_vectors();
    let gram = gram_matrix(&basis_vectors);
    let gram_inv = inverse(&gram).expect("basis Gram is invertible");

    let coords = |v: &ScaledVector| -> Vec<i64> {
        let entries: Vec<BigInt> = v.coords().iter().map(|&x| BigInt::from(x)).collect();
        coords_in_hnf_basis(&basis, &entries)
            .expect("generator lies in its own span")
            .iter()
            .map(|c| i64::try_from(c).expect("coordinate fits i64"))
            .collect()
    };
    let y_r = coords(&switching_root());
    let y_members: Vec<Vec<i64>> = s.realizations().iter().map(&coords).collect();

    let three = Rational::from(BigInt::from(3));
    // dual vectors are x over the dual basis; (v, w) = x . y_w for lattice
    // members w, and (v, v) = x^T G^{-1} x
    let pool = short_vectors(&gram_inv, &three);
    let dot_i64 = |x: &[i64], y: &[i64]| -> i64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    let mut dual_shorts_examined = 0;
    let mut extension_candidates_examined = 0;
    let mut offending = None;
    for x in &pool {
        if dot_i64(x, &y_r) != 1 {
            continue;
        }
        dual_shorts_examined += 1;
        if y_members.iter().any(|y| y == x) {
            continue;
        }
        extension_candidates_examined += 1;
        if y_members.iter().all(|y| matches!(dot_i64(x, y), 0 | 1)) && offending.is_none() {
            let norm: Rational = (0..x.len())
                .flat_map(|i| (0..x.len()).map(move |j| (i, j)))
                .map(|(i, j)| {
                    &gram_inv[i][j] * Rational::from(BigInt::from(x[i] * x[j]))
                })
                .sum();
            offending = Some(ExtensionWitness::DualCoefficients {
                coefficients: x.clone(),
                norm: norm.to_string(),
            });
        }
    }
    MaximalityCertificate {
        generates_lambda: false,
        dual_shorts_examined,
        extension_candidates_examined,
        verdict: offending.is_none(),
        offending_extension: offending,
    }
}
