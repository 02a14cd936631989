//! The root lattice `L = A9 + A9 + A1`, its overlattice `Lambda = L + Z a`
//! glued by `a = (a9, 2 a9, a1)`, the dual `Lambda* = Lambda + Z b` with
//! `b = (2 a9, -a9, 0)`, coset minimum representatives, and bounded
//! enumeration of coset vectors.
//!
//! `A_n` lives in the `n+1` coordinates summing to zero; the glue vector
//! `a_n = (1/(n+1), ..., 1/(n+1), -n/(n+1))` generates the dual quotient
//! `A_n*/A_n` of order `n+1`. All vectors are carried as 10x-scaled integer
//! coordinates, so the supported ranks are those with `n+1` dividing 10.

use crate::exact::{gram_det, hnf, scaled_dot, IntMatrix, Rational, ScaledVector};
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rank {0} not supported: scale 10 must be divisible by n+1")]
    UnsupportedRank(u32),
    #[error("coset index {m} out of range for A{n}")]
    CosetOutOfRange { n: u32, m: u32 },
}

/// Coset `m * a_n + A_n` of the dual quotient `A_n*/A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetLabel {
    pub n: u32,
    pub m: u32,
}

impl CosetLabel {
    pub fn new(n: u32, m: u32) -> Result<Self, LatticeError> {
        if 10 % (n + 1) != 0 {
            return Err(LatticeError::UnsupportedRank(n));
        }
        if m > n + 1 {
            return Err(LatticeError::CosetOutOfRange { n, m });
        }
        Ok(CosetLabel { n, m })
    }
}

/// Coset `m * a + L` of `Lambda / L`, a cyclic group of order 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LambdaCoset(pub u8);

/// Coset `i*a + j*b + L` of `Lambda* / L`; the 20 labels partition the dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualCoset {
    pub alpha_mult: u8,
    pub beta_mult: u8,
}

impl DualCoset {
    pub fn all() -> impl Iterator<Item = DualCoset> {
        (0..2).flat_map(|j| {
            (0..10).map(move |i| DualCoset {
                alpha_mult: i,
                beta_mult: j,
            })
        })
    }

    /// Block-wise coset labels `(c1, c2, c3)`: the two `A9*/A9` classes and
    /// the `A1*/A1` parity of `i*a + j*b + L`.
    pub fn block_cosets(&self) -> (u8, u8, u8) {
        let i = self.alpha_mult as u32;
        let j = self.beta_mult as u32;
        let c1 = (i + 2 * j) % 10;
        let c2 = (2 * i + 10 - j) % 10;
        let c3 = i % 2;
        (c1 as u8, c2 as u8, c3 as u8)
    }

    pub fn in_lambda(&self) -> bool {
        self.beta_mult == 0
    }
}

/// Scaled glue vector `a_n` as an `(n+1)`-coordinate block.
pub fn glue_vector(n: u32) -> Result<Vec<i64>, LatticeError> {
    if 10 % (n + 1) != 0 {
        return Err(LatticeError::UnsupportedRank(n));
    }
    let unit = (10 / (n + 1)) as i64;
    let mut v = vec![unit; (n + 1) as usize];
    v[n as usize] = -(n as i64) * unit;
    Ok(v)
}

/// Minimum norm `m(n+1-m)/(n+1)` of the coset `m * a_n + A_n`.
pub fn coset_min_norm(c: CosetLabel) -> Rational {
    let n1 = BigInt::from(c.n + 1);
    let m = BigInt::from(c.m);
    Rational::new(&m * (&n1 - &m), n1)
}

/// The `C(n+1, m)` minimum representatives of `m * a_n + A_n`: vectors
/// `(m/(n+1)) * 1 - sum_{i in I} e_i` over all m-subsets `I`.
pub fn min_coset_reps(c: CosetLabel) -> Vec<Vec<i64>> {
    let dim = (c.n + 1) as usize;
    let unit = (10 / (c.n + 1)) as i64;
    let base = c.m as i64 * unit;
    let mut out = Vec::new();
    let mut subset = Vec::new();
    subsets(dim, c.m as usize, &mut subset, &mut |idx: &[usize]| {
        let mut v = vec![base; dim];
        for &i in idx {
            v[i] -= 10;
        }
        out.push(v);
    });
    out.sort();
    out
}

fn subsets(n: usize, k: usize, cur: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        emit(cur);
        return;
    }
    let start = cur.last().map_or(0, |&x| x + 1);
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, cur, emit);
        cur.pop();
    }
}

/// All vectors of `m * a_n + A_n` with norm at most `bound`, complete and
/// duplicate free, sorted. Backtracks over integer vectors `z` with
/// `sum z = m`, realizing `(m/(n+1)) * 1 - z` (scaled coordinate
/// `m*10/(n+1) - 10 z_i`), with an exact Cauchy-Schwarz prune on the tail:
/// over `t` free coordinates with forced scaled sum `s`, the scaled tail
/// norm is at least `s^2 / t`.
pub fn enum_coset_vectors(c: CosetLabel, bound: &Rational) -> Vec<Vec<i64>> {
    let dim = (c.n + 1) as usize;
    let unit = (10 / (c.n + 1)) as i64;
    let base = c.m as i64 * unit;
    if bound.is_negative() {
        return Vec::new();
    }
    // scaled norms are integers, so norm <= bound iff scaled norm <= floor(100*bound)
    let budget = num_integer::Integer::div_floor(&(bound.numer() * BigInt::from(100)), bound.denom());
    let Ok(budget) = i64::try_from(&budget) else {
        panic!("enumeration bound too large");
    };
    let mut out = Vec::new();
    let mut coords = vec![0i64; dim];
    enum_rec(dim, base, budget, c.m as i64, 0, 0, &mut coords, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn enum_rec(
    dim: usize,
    base: i64,
    budget: i64,
    sum_left: i64,
    pos: usize,
    sq_acc: i64,
    coords: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if pos == dim {
        if sum_left == 0 {
            out.push(coords.clone());
        }
        return;
    }
    let tail = (dim - pos - 1) as i64;
    let room = budget - sq_acc;
    if room < 0 {
        return;
    }
    let mut try_z = |z: i64| -> bool {
        let coord = base - 10 * z;
        let sq = coord * coord;
        if sq > room {
            return false;
        }
        let rest = sum_left - z;
        // scaled tail coordinates sum to tail*base - 10*rest; their norm is
        // at least that sum squared over tail (for tail = 0 this forces
        // rest = 0 and the recursion emits)
        let top = tail * base - 10 * rest;
        if sq * tail + top * top <= room * tail {
            coords[pos] = coord;
            enum_rec(dim, base, budget, rest, pos + 1, sq_acc + sq, coords, out);
        }
        true
    };
    // the scaled coordinate is a parabola in z with vertex at z = base/10,
    // so scan outward from the nearest integer until the square alone
    // exceeds the remaining budget
    let z0 = num_integer::Integer::div_floor(&(2 * base + 10), &20);
    let mut z = z0;
    while try_z(z) {
        z += 1;
    }
    z = z0 - 1;
    while try_z(z) {
        z -= 1;
    }
    coords[pos] = 0;
}

/// The switching root `r = (0, 0, 2 a1)`, a norm-2 vector.
pub fn switching_root() -> ScaledVector {
    ScaledVector::from_blocks(&[0; 10], &[0; 10], &[10, -10])
}

/// The glue vector `a = (a9, 2 a9, a1)` of norm 5.
pub fn alpha() -> ScaledVector {
    let a9 = glue_vector(9).unwrap();
    let a9x2: Vec<i64> = a9.iter().map(|x| 2 * x).collect();
    let a1 = glue_vector(1).unwrap();
    ScaledVector::from_blocks(&a9, &a9x2, &a1)
}

/// The dual glue vector `b = (2 a9, -a9, 0)`; `Lambda* = Lambda + Z b`.
pub fn beta() -> ScaledVector {
    let a9 = glue_vector(9).unwrap();
    let a9x2: Vec<i64> = a9.iter().map(|x| 2 * x).collect();
    let a9neg: Vec<i64> = a9.iter().map(|x| -x).collect();
    ScaledVector::from_blocks(&a9x2, &a9neg, &[0, 0])
}

/// Simple-root basis of `L`: nine roots per `A9` block and one for `A1`.
pub fn l_basis() -> Vec<ScaledVector> {
    let mut out = Vec::with_capacity(19);
    for block in 0..2 {
        for i in 0..9 {
            let mut coords = [0i64; 22];
            coords[block * 10 + i] = 10;
            coords[block * 10 + i + 1] = -10;
            out.push(ScaledVector(coords));
        }
    }
    out.push(switching_root());
    out
}

/// Bases of `L`, `Lambda` and `Lambda*`, with discriminants 200, 2 and 1/2.
pub struct LatticeBases {
    pub l_basis: Vec<ScaledVector>,
    pub lambda_basis: Vec<ScaledVector>,
    pub dual_basis: Vec<ScaledVector>,
}

pub fn lambda_bases() -> LatticeBases {
    let l = l_basis();
    let mut lambda_gens = l.clone();
    lambda_gens.push(alpha());
    let lambda = hnf(&IntMatrix::from_scaled_vectors(&lambda_gens)).to_scaled_vectors();
    let mut dual_gens = lambda.clone();
    dual_gens.push(beta());
    let dual = hnf(&IntMatrix::from_scaled_vectors(&dual_gens)).to_scaled_vectors();
    debug_assert_eq!(lambda.len(), 19);
    debug_assert_eq!(dual.len(), 19);
    LatticeBases {
        l_basis: l,
        lambda_basis: lambda,
        dual_basis: dual,
    }
}

/// Index `|Lambda : L|`, read off the discriminant ratio.
pub fn lambda_index_over_l() -> BigInt {
    let bases = lambda_bases();
    let ratio = gram_det(&bases.l_basis).unwrap() / gram_det(&bases.lambda_basis).unwrap();
    let sq = ratio.to_integer();
    let idx = sq.sqrt();
    assert_eq!(&idx * &idx, sq, "index squared law violated");
    idx
}

fn block_in_root_lattice(block: &[i64]) -> bool {
    block.iter().all(|&x| x % 10 == 0) && block.iter().sum::<i64>() == 0
}

/// True iff the scaled vector lies in `L`.
pub fn in_l(v: &ScaledVector) -> bool {
    block_in_root_lattice(v.block(0))
        && block_in_root_lattice(v.block(1))
        && block_in_root_lattice(v.block(2))
}

/// The unique `m` with `v - m*a` in `L`, if `v` lies in `Lambda`.
pub fn lambda_membership(v: &ScaledVector) -> Option<LambdaCoset> {
    let a = alpha();
    (0..10).find(|&m| in_l(&(*v - a * i64::from(m)))).map(LambdaCoset)
}

/// All `v` in `Lambda*` with `(v, v) <= bound` and `(v, r) = 1`, assembled
/// coset by coset. The pairing with `r` forces the `A1` block to be exactly
/// `a1`, so only odd alpha-multiples contribute; the two `A9` blocks are
/// enumerated with the residual norm budget.
pub fn enum_dual_short_with_r(bound: &Rational) -> Vec<ScaledVector> {
    let mut out = Vec::new();
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    for coset in DualCoset::all() {
        let (c1, c2, c3) = coset.block_cosets();
        if c3 != 1 {
            continue;
        }
        let budget = bound - &half;
        if budget.is_negative() {
            continue;
        }
        let first = enum_coset_vectors(CosetLabel::new(9, c1 as u32).unwrap(), &budget);
        for b1 in &first {
            let n1 = Rational::new(BigInt::from(scaled_dot(b1, b1)), BigInt::from(100));
            let rest = &budget - n1;
            if rest.is_negative() {
                continue;
            }
            let second = enum_coset_vectors(CosetLabel::new(9, c2 as u32).unwrap(), &rest);
            for b2 in &second {
                out.push(ScaledVector::from_blocks(b1, b2, &[5, -5]));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The dual cosets outside `Lambda` that can meet `(v, r) = 1`, as their
/// `A9`-block class pairs, recomputed from the glue arithmetic.
pub fn dual_pairs_outside_lambda() -> Vec<(u8, u8)> {
    DualCoset::all()
        .filter(|c| !c.in_lambda())
        .filter(|c| c.block_cosets().2 == 1)
        .map(|c| {
            let (c1, c2, _) = c.block_cosets();
            (c1, c2)
        })
        .collect()
}

/// Minimum norm over `Lambda* \ Lambda` subject to `(v, r) = 1`: the
/// analytic per-coset minimum, cross-checked by enumeration at that bound.
pub fn min_dual_norm_outside_lambda_with_r() -> Rational {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let analytic = dual_pairs_outside_lambda()
        .into_iter()
        .map(|(c1, c2)| {
            coset_min_norm(CosetLabel::new(9, c1 as u32).unwrap())
                + coset_min_norm(CosetLabel::new(9, c2 as u32).unwrap())
                + &half
        })
        .min()
        .expect("nonempty");
    // enumeration at the analytic bound must find a vector outside Lambda,
    // and nothing outside Lambda strictly below it
    let at_bound = enum_dual_short_with_r(&analytic);
    let outside: Vec<_> = at_bound
        .iter()
        .filter(|v| lambda_membership(v).is_none())
        .collect();
    assert!(!outside.is_empty(), "analytic minimum not attained");
    assert!(outside.iter().all(|v| {
        Rational::new(BigInt::from(v.scaled_norm()), BigInt::from(100)) == analytic
    }));
    analytic
}
