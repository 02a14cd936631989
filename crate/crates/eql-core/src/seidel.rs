//! Line systems and Seidel matrices of equiangular sets, with exact
//! characteristic polynomials, eigenvalue-5 multiplicity (hence the ambient
//! dimension of the induced lines), and distinct-eigenvalue counts.

use crate::exact::{char_poly, distinct_root_count, scaled_dot, IntMatrix, IntPolynomial, ScaledVector};
use crate::lattice::switching_root;
use crate::xvec::AesSet;
use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// Symmetric matrix with zero diagonal and off-diagonal entries +-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl SeidelMatrix {
    pub fn new(order: usize, entries: Vec<i64>) -> SeidelMatrix {
        assert_eq!(entries.len(), order * order);
        let m = SeidelMatrix { order, entries };
        for i in 0..order {
            assert_eq!(m.get(i, i), 0, "diagonal must be zero");
            for j in 0..order {
                if i != j {
                    assert!(m.get(i, j).abs() == 1, "off-diagonal must be +-1");
                    assert_eq!(m.get(i, j), m.get(j, i), "must be symmetric");
                }
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(
            (0..self.order)
                .map(|i| (0..self.order).map(|j| BigInt::from(self.get(i, j))).collect())
                .collect(),
        )
    }

    pub fn char_poly(&self) -> IntPolynomial {
        char_poly(&self.to_int_matrix()).expect("square by construction")
    }
}

/// The scaled vectors `2u - r` for the members of an equiangular set; each
/// has norm 10, pairwise inner products +-2.
pub struct LineSystem {
    pub vectors: Vec<ScaledVector>,
}

/// Build the line system of an equiangular set (members in the canonical
/// sorted label order).
pub fn lines_from_aes(s: &AesSet) -> LineSystem {
    let r = switching_root();
    let vectors: Vec<ScaledVector> = s
        .realizations()
        .into_iter()
        .map(|u| u * 2 - r)
        .collect();
    for (t, a) in vectors.iter().enumerate() {
        assert_eq!(a.scaled_norm(), 1000, "line vector norm must be 10");
        for b in &vectors[t + 1..] {
            let d = scaled_dot(a.coords(), b.coords());
            assert!(d == 200 || d == -200, "line dots must be +-2");
        }
    }
    LineSystem { vectors }
}

impl LineSystem {
    /// Rank of the Gram matrix: the dimension spanned by the lines.
    pub fn rank(&self) -> usize {
        let n = self.vectors.len();
        let mut gram = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *gram.get_mut(i, j) = BigInt::from(scaled_dot(
                    self.vectors[i].coords(),
                    self.vectors[j].coords(),
                ));
            }
        }
        gram.rank()
    }
}

/// Seidel matrix of an equiangular set: `5I - W` for the unit-normalized
/// line Gram `W`, so the kernel of the lines contributes eigenvalue +5.
pub fn seidel(s: &AesSet) -> SeidelMatrix {
    assert!(s.is_aes(), "Seidel matrices require an equiangular set");
    let lines = lines_from_aes(s);
    let n = lines.vectors.len();
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                // scaled line dot is +-200; descaled and unit-normalized +-1
                entries[i * n + j] =
                    -scaled_dot(lines.vectors[i].coords(), lines.vectors[j].coords()) / 200;
            }
        }
    }
    SeidelMatrix::new(n, entries)
}

/// Exact spectral summary of an equiangular set.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSummary {
    pub charpoly: IntPolynomial,
    pub mult5: usize,
    pub dimension: usize,
    pub distinct_eigs: usize,
}

pub fn analyze(s: &AesSet) -> SpectralSummary {
    let p = seidel(s).char_poly();
    let mult5 = p.root_multiplicity(5);
    let dimension = s.len() - mult5;
    let distinct_eigs = distinct_root_count(&p).expect("char poly is nonzero");
    SpectralSummary {
        charpoly: p,
        mult5,
        dimension,
        distinct_eigs,
    }
}

/// Checks that the Seidel characteristic polynomial is invariant under
/// `trials` random switchings of the set.
pub fn switching_invariance_check(s: &AesSet, trials: usize, rng: &mut impl Rng) -> bool {
    let reference = seidel(s).char_poly();
    let labels: Vec<_> = s.iter().copied().collect();
    for _ in 0..trials {
        let subset: BTreeSet<_> = labels
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .copied()
            .collect();
        let switched = s.switch(&subset);
        if seidel(&switched).char_poly() != reference {
            return false;
        }
    }
    true
}

/// The two reference spectra of the distinguished 57-vector sets, expanded
/// exactly from their factored forms. Index 1 belongs to the set whose
/// coloring puts the round-robin factors in colors 1..9, index 2 to the
/// shift putting them in colors 2..10.
pub fn reference_charpoly(which: u8) -> IntPolynomial {
    let lin = |c: i64, e: usize| IntPolynomial::x_minus(c).pow(e);
    match which {
        1 => lin(5, 39)
            .mul(&lin(-9, 1))
            .mul(&lin(-11, 13))
            .mul(&lin(-13, 2))
            .mul(&IntPolynomial::from_i64(&[32, 17, 1])),
        2 => lin(5, 39)
            .mul(&lin(-9, 2))
            .mul(&lin(-11, 11))
            .mul(&lin(-13, 3))
            .mul(&IntPolynomial::from_i64(&[36, 17, 1])),
        _ => panic!("reference polynomial index must be 1 or 2"),
    }
}
