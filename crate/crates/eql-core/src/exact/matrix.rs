//! Big-integer matrices: Hermite normal form, fraction-free determinants,
//! Gram determinants of scaled generator sets.

use super::{dot, ExactError, Rational, ScaledVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rectangular matrix with exact integer entries, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_scaled_vectors(vecs: &[ScaledVector]) -> Self {
        IntMatrix::from_rows(
            vecs.iter()
                .map(|v| v.coords().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Converts rows back into 22-coordinate scaled vectors. Panics if the
    /// width is not the ambient dimension or an entry overflows `i64`.
    pub fn to_scaled_vectors(&self) -> Vec<ScaledVector> {
        assert_eq!(self.cols, super::AMBIENT_DIM);
        (0..self.rows)
            .map(|i| {
                let mut coords = [0i64; super::AMBIENT_DIM];
                for (c, entry) in coords.iter_mut().zip(self.row(i)) {
                    *c = i64::try_from(entry).expect("entry exceeds i64");
                }
                ScaledVector(coords)
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|a| a * c).collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(k, k) * m.get(i, j) - m.get(i, k) * m.get(k, j);
                    *m.get_mut(i, j) = num / &prev;
                }
                *m.get_mut(i, k) = BigInt::zero();
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            for i in rank + 1..m.rows {
                for j in col + 1..m.cols {
                    let num = m.get(rank, col) * m.get(i, j) - m.get(i, col) * m.get(rank, j);
                    *m.get_mut(i, j) = num / &prev;
                }
                *m.get_mut(i, col) = BigInt::zero();
            }
            prev = m.get(rank, col).clone();
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form with zero rows removed.
///
/// Pivots are positive, entries above a pivot are reduced into `[0, pivot)`,
/// so the output is the canonical basis of the integer row lattice: two
/// generating sets span the same lattice iff their forms are identical.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut m = m.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        // gcd elimination below pivot_row in this column
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !m.get(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if m.get(i, col).abs() < m.get(b, col).abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(pivot_row, b);
            let mut others = false;
            for i in pivot_row + 1..rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let q = m.get(i, col).div_floor(m.get(pivot_row, col));
                if !q.is_zero() {
                    for j in 0..cols {
                        let sub = &q * m.get(pivot_row, j);
                        *m.get_mut(i, j) -= sub;
                    }
                }
                if !m.get(i, col).is_zero() {
                    others = true;
                }
            }
            if !others {
                break;
            }
        }
        if m.get(pivot_row, col).is_zero() {
            continue;
        }
        if m.get(pivot_row, col).is_negative() {
            for j in 0..cols {
                let neg = -m.get(pivot_row, j).clone();
                *m.get_mut(pivot_row, j) = neg;
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = m.get(i, col).div_floor(m.get(pivot_row, col));
            if !q.is_zero() {
                for j in 0..cols {
                    let sub = &q * m.get(pivot_row, j);
                    *m.get_mut(i, j) -= sub;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let kept: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| m.row(i).to_vec()).collect();
    IntMatrix::from_rows(kept)
}

/// True iff the integer spans of the two scaled generator sets coincide.
pub fn lattice_equal(gens_a: &[ScaledVector], gens_b: &[ScaledVector]) -> bool {
    hnf(&IntMatrix::from_scaled_vectors(gens_a)) == hnf(&IntMatrix::from_scaled_vectors(gens_b))
}

/// Exact Gram matrix of scaled generators, already descaled to geometric
/// inner products.
pub fn gram_matrix(gens: &[ScaledVector]) -> Vec<Vec<Rational>> {
    gens.iter()
        .map(|u| gens.iter().map(|v| dot(u.coords(), v.coords())).collect())
        .collect()
}

/// Determinant of the exact Gram matrix of the generators; the discriminant
/// when the generators are a lattice basis.
pub fn gram_det(gens: &[ScaledVector]) -> Result<Rational, ExactError> {
    let k = gens.len();
    // scaled Gram = 100 * geometric Gram, so det descales by 100^k
    let mut scaled = IntMatrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            *scaled.get_mut(i, j) =
                BigInt::from(super::scaled_dot(gens[i].coords(), gens[j].coords()));
        }
    }
    let det = scaled.det().expect("square by construction");
    if det.is_zero() {
        return Err(ExactError::RankDeficient);
    }
    Ok(Rational::new(det, BigInt::from(100).pow(k as u32)))
}

/// Integer coordinates of `v` with respect to the rows of an HNF basis, or
/// `None` if `v` is not in the row lattice.
pub fn coords_in_hnf_basis(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.cols(), v.len());
    let pivots: Vec<usize> = (0..basis.rows())
        .map(|i| (0..basis.cols()).find(|&j| !basis.get(i, j).is_zero()).unwrap())
        .collect();
    let mut rem: Vec<BigInt> = v.to_vec();
    let mut coords = vec![BigInt::zero(); basis.rows()];
    for (i, &p) in pivots.iter().enumerate() {
        let (q, r) = rem[p].div_rem(basis.get(i, p));
        if !r.is_zero() {
            return None;
        }
        for j in 0..basis.cols() {
            let sub = &q * basis.get(i, j);
            rem[j] -= sub;
        }
        coords[i] = q;
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_of_index_two_sublattice() {
        let m = mat(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(hnf(&m), mat(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        for n in 1..6 {
            assert_eq!(hnf(&IntMatrix::identity(n)), IntMatrix::identity(n));
        }
    }

    #[test]
    fn hnf_is_idempotent() {
        let m = mat(&[&[4, 7, -2], &[9, 0, 3], &[6, -5, 11], &[1, 1, 1]]);
        let h = hnf(&m);
        assert_eq!(hnf(&h), h);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = mat(&[&[3, 1, -2], &[0, 4, 5], &[7, -1, 2]]);
        // 3*(8+5) - 1*(0-35) + (-2)*(0-28) = 39 + 35 + 56 = 130
        assert_eq!(m.det().unwrap(), BigInt::from(130));
        assert_eq!(
            IntMatrix::zero(2, 3).det(),
            Err(ExactError::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn coords_in_hnf_basis_roundtrip() {
        let basis = hnf(&mat(&[&[2, 1, 0], &[0, 3, 1]]));
        let v: Vec<BigInt> = [4, 5, 1].iter().map(|&x| BigInt::from(x)).collect();
        let c = coords_in_hnf_basis(&basis, &v).unwrap();
        let mut rebuilt = vec![BigInt::from(0); 3];
        for (i, ci) in c.iter().enumerate() {
            for j in 0..3 {
                let add = ci * basis.get(i, j);
                rebuilt[j] += add;
            }
        }
        assert_eq!(rebuilt, v);
        let outside: Vec<BigInt> = [1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(coords_in_hnf_basis(&basis, &outside).is_none());
    }
}
