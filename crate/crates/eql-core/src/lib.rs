//! Exact-arithmetic construction and certification of maximum equiangular
//! line sets in dimension 18 with common angle arccos(1/5).
//!
//! The construction lives in an overlattice of the root lattice
//! `A9 + A9 + A1`: norm-3 vectors paired with a fixed switching root `r`
//! encode unit line systems, so every certificate here is an exact integer
//! or rational identity. The crate covers:
//!
//! - big-integer linear algebra (Hermite form, Gram determinants,
//!   division-free characteristic polynomials) in [`exact`];
//! - the glued lattice, its dual, and bounded coset enumeration in
//!   [`lattice`];
//! - the 1152-vector candidate set `X`, switching classes and
//!   strong-maximality certificates in [`xvec`];
//! - the 126-vertex class graph and its 151200 maximum cliques in
//!   [`cliques`];
//! - matchings, 1-factorizations and proper 10-edge-colorings of `K10`
//!   with the associated counting bounds in [`colorings`];
//! - Seidel matrices and exact spectra in [`seidel`];
//! - the automorphism action fixing the switching root in [`symmetry`];
//! - reproduction reports and the bundled reference line sets in
//!   [`report`].

pub mod cliques;
pub mod colorings;
pub mod exact;
pub mod lattice;
pub mod report;
pub mod seidel;
pub mod symmetry;
pub mod xvec;

pub use exact::{Rational, ScaledVector};
