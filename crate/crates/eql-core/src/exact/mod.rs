//! Exact integer and rational linear algebra.
//!
//! Every geometric vector in this crate is stored as `10 * v` with integer
//! coordinates ("scaled" representation), so all inner products are exact
//! integers divided by 100. No floating point is used anywhere.

mod enumerate;
mod matrix;
mod poly;

pub use enumerate::{inverse, short_vectors};
pub use matrix::{
    coords_in_hnf_basis, gram_det, gram_matrix, hnf, lattice_equal, IntMatrix,
};
pub use poly::{char_poly, distinct_root_count, poly_gcd, IntPolynomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number used throughout the public API.
pub type Rational = BigRational;

/// Serde adapter carrying big integers as decimal strings in JSON.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("generators are rank deficient")]
    RankDeficient,
    #[error("zero polynomial has no well-defined root count")]
    ZeroPolynomial,
}

/// Size of the ambient coordinate carrier: two 10-coordinate blocks and one
/// 2-coordinate block.
pub const AMBIENT_DIM: usize = 22;

/// Block boundaries of the ambient space.
pub const BLOCKS: [std::ops::Range<usize>; 3] = [0..10, 10..20, 20..22];

/// A 22-coordinate integer vector holding `10 * v` for a vector `v` of the
/// ambient rational space. Blocks: coordinates 0..10, 10..20, 20..22.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScaledVector(pub [i64; AMBIENT_DIM]);

impl ScaledVector {
    pub fn zero() -> Self {
        ScaledVector([0; AMBIENT_DIM])
    }

    pub fn from_blocks(b1: &[i64], b2: &[i64], b3: &[i64]) -> Self {
        assert_eq!(b1.len(), 10);
        assert_eq!(b2.len(), 10);
        assert_eq!(b3.len(), 2);
        let mut coords = [0; AMBIENT_DIM];
        coords[0..10].copy_from_slice(b1);
        coords[10..20].copy_from_slice(b2);
        coords[20..22].copy_from_slice(b3);
        ScaledVector(coords)
    }

    pub fn block(&self, idx: usize) -> &[i64] {
        &self.0[BLOCKS[idx].clone()]
    }

    pub fn coords(&self) -> &[i64; AMBIENT_DIM] {
        &self.0
    }

    /// Geometric norm `(v, v)` of the vector represented by `self`.
    pub fn norm(&self) -> Rational {
        dot(&self.0, &self.0)
    }

    /// `100 * (v, v)`, always an exact integer.
    pub fn scaled_norm(&self) -> i64 {
        scaled_dot(&self.0, &self.0)
    }
}

impl std::ops::Add for ScaledVector {
    type Output = ScaledVector;
    fn add(self, rhs: ScaledVector) -> ScaledVector {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0.iter()) {
            *o += r;
        }
        ScaledVector(out)
    }
}

impl std::ops::Sub for ScaledVector {
    type Output = ScaledVector;
    fn sub(self, rhs: ScaledVector) -> ScaledVector {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0.iter()) {
            *o -= r;
        }
        ScaledVector(out)
    }
}

impl std::ops::Neg for ScaledVector {
    type Output = ScaledVector;
    fn neg(self) -> ScaledVector {
        let mut out = self.0;
        for o in out.iter_mut() {
            *o = -*o;
        }
        ScaledVector(out)
    }
}

impl std::ops::Mul<i64> for ScaledVector {
    type Output = ScaledVector;
    fn mul(self, rhs: i64) -> ScaledVector {
        let mut out = self.0;
        for o in out.iter_mut() {
            *o *= rhs;
        }
        ScaledVector(out)
    }
}

impl std::fmt::Debug for ScaledVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({:?} | {:?} | {:?})",
            self.block(0),
            self.block(1),
            self.block(2)
        )
    }
}

/// Raw integer dot product of two scaled coordinate slices.
pub fn scaled_dot(u: &[i64], v: &[i64]) -> i64 {
    assert_eq!(u.len(), v.len(), "dot of unequal lengths");
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Exact geometric inner product `(u, v)` of the vectors represented by the
/// scaled slices, i.e. the raw dot divided by 100.
pub fn dot(u: &[i64], v: &[i64]) -> Rational {
    Rational::new(BigInt::from(scaled_dot(u, v)), BigInt::from(100))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dot_of_switching_root_is_two() {
        let r = ScaledVector::from_blocks(&[0; 10], &[0; 10], &[10, -10]);
        assert_eq!(r.norm(), rat(2, 1));
    }

    #[test]
    fn dot_is_symmetric_and_bilinear() {
        // deterministic pseudo-random small vectors
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 21) as i64 - 10
        };
        for _ in 0..50 {
            let u = ScaledVector(std::array::from_fn(|_| next()));
            let v = ScaledVector(std::array::from_fn(|_| next()));
            let w = ScaledVector(std::array::from_fn(|_| next()));
            let a = next();
            let b = next();
            assert_eq!(dot(&u.0, &v.0), dot(&v.0, &u.0));
            let lhs = dot(&(u * a + v * b).0, &w.0);
            let rhs = dot(&u.0, &w.0) * rat(a, 1) + dot(&v.0, &w.0) * rat(b, 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn block_access() {
        let v = ScaledVector::from_blocks(&[1; 10], &[2; 10], &[3, 4]);
        assert_eq!(v.block(0), &[1; 10]);
        assert_eq!(v.block(1), &[2; 10]);
        assert_eq!(v.block(2), &[3, 4]);
        assert_eq!(v.scaled_norm(), 75);
    }
}
