//! Exact short-vector enumeration for a positive-definite rational quadratic
//! form, and rational matrix inversion. Used for root systems of sublattices
//! and for strong-maximality checks in duals of proper sublattices.

use super::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// All integer coefficient vectors `x` with `x^T G x <= bound`, for a
/// symmetric positive-definite rational Gram matrix `G`. Includes the zero
/// vector and both signs; output sorted lexicographically.
///
/// Works from an exact LDL^T decomposition: with `G = U^T D U` (U unit upper
/// triangular) the form is `sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2`, which is
/// enumerated back to front with exact rational interval bounds per level.
pub fn short_vectors(gram: &[Vec<Rational>], bound: &Rational) -> Vec<Vec<i64>> {
    let k = gram.len();
    assert!(gram.iter().all(|row| row.len() == k), "gram not square");
    if k == 0 {
        return vec![vec![]];
    }
    let (d, u) = ldl(gram);
    assert!(
        d.iter().all(|di| di.is_positive()),
        "gram matrix is not positive definite"
    );
    let mut out = Vec::new();
    let mut x = vec![0i64; k];
    recurse(&d, &u, bound.clone(), k, &mut x, &mut out);
    out.sort();
    out
}

fn ldl(gram: &[Vec<Rational>]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let k = gram.len();
    let mut d = vec![Rational::zero(); k];
    let mut u = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        let mut di = gram[i][i].clone();
        for t in 0..i {
            di -= &d[t] * &u[t][i] * &u[t][i];
        }
        d[i] = di;
        u[i][i] = Rational::one();
        for j in i + 1..k {
            let mut v = gram[i][j].clone();
            for t in 0..i {
                v -= &d[t] * &u[t][i] * &u[t][j];
            }
            u[i][j] = v / &d[i];
        }
    }
    (d, u)
}

fn recurse(
    d: &[Rational],
    u: &[Vec<Rational>],
    remaining: Rational,
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if remaining.is_negative() {
        return;
    }
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let center: Rational = (i + 1..x.len())
        .map(|j| &u[i][j] * Rational::from(BigInt::from(x[j])))
        .sum();
    // admissible x_i satisfy d_i (x_i + center)^2 <= remaining
    let term = |xi: i64| {
        let s = Rational::from(BigInt::from(xi)) + &center;
        &d[i] * &s * &s
    };
    let start = rational_round_neg(&center);
    let mut xi = start;
    while term(xi) <= remaining {
        x[i] = xi;
        let rem = remaining.clone() - term(xi);
        recurse(d, u, rem, i, x, out);
        xi += 1;
    }
    let mut xi = start - 1;
    while term(xi) <= remaining {
        x[i] = xi;
        let rem = remaining.clone() - term(xi);
        recurse(d, u, rem, i, x, out);
        xi -= 1;
    }
    x[i] = 0;
}

/// Nearest integer to `-c` (ties toward floor), exact.
fn rational_round_neg(c: &Rational) -> i64 {
    let num = -(c.numer() * BigInt::from(2)) + c.denom();
    let den = c.denom() * BigInt::from(2);
    let fl = num_integer::Integer::div_floor(&num, &den);
    i64::try_from(&fl).expect("rounding overflow")
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination, `None`
/// if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix not square");
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let s = &f * &a[col][j];
                a[i][j] -= s;
                let s = &f * &inv[col][j];
                inv[i][j] -= s;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn short_vectors_of_standard_square_lattice() {
        let gram = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        let found = short_vectors(&gram, &rat(2, 1));
        // all (x, y) with x^2 + y^2 <= 2: 9 vectors
        assert_eq!(found.len(), 9);
        assert!(found.contains(&vec![1, -1]));
        assert!(found.contains(&vec![0, 0]));
        assert!(!found.contains(&vec![2, 0]));
    }

    #[test]
    fn short_vectors_of_a2_root_lattice() {
        // Gram of A2 basis: norm-2 roots at 120 degrees; 6 roots + origin
        let gram = vec![vec![rat(2, 1), rat(-1, 1)], vec![rat(-1, 1), rat(2, 1)]];
        let found = short_vectors(&gram, &rat(2, 1));
        assert_eq!(found.len(), 7);
    }

    #[test]
    fn brute_force_cross_check_on_skew_form() {
        let gram = vec![
            vec![rat(3, 2), rat(1, 3), rat(0, 1)],
            vec![rat(1, 3), rat(2, 1), rat(-1, 2)],
            vec![rat(0, 1), rat(-1, 2), rat(5, 4)],
        ];
        let bound = rat(4, 1);
        let fast = short_vectors(&gram, &bound);
        let mut slow = Vec::new();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                for z in -4i64..=4 {
                    let v = [x, y, z];
                    let mut q = rat(0, 1);
                    for i in 0..3 {
                        for j in 0..3 {
                            q += &gram[i][j] * rat(v[i] * v[j], 1);
                        }
                    }
                    if q <= bound {
                        slow.push(vec![x, y, z]);
                    }
                }
            }
        }
        slow.sort();
        assert_eq!(fast, slow);
    }

    #[test]
    fn inverse_of_gram() {
        let g = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)]];
        let gi = inverse(&g).unwrap();
        assert_eq!(gi[0][0], rat(2, 3));
        assert_eq!(gi[0][1], rat(-1, 3));
        let singular = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(inverse(&singular).is_none());
    }
}
