//! Integer-coefficient polynomials, division-free characteristic polynomials
//! and gcd-based distinct-root counting.

use super::{ExactError, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense integer polynomial, coefficients lowest degree first. The zero
/// polynomial is stored as a single zero coefficient; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::from_coeffs(vec![])
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64(&[1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    /// `x - c`.
    pub fn x_minus(c: i64) -> Self {
        IntPolynomial::from_i64(&[-c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn add(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, rhs: &IntPolynomial) -> IntPolynomial {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn pow(&self, e: usize) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder or has non-integer intermediate coefficients.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % divisor.leading()).is_zero() {
                let q = &top / divisor.leading();
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
                quot[k] = q;
            } else {
                return None;
            }
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPolynomial::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Multiplicity of the integer root `c`.
    pub fn root_multiplicity(&self, c: i64) -> usize {
        let lin = IntPolynomial::x_minus(c);
        let mut p = self.clone();
        let mut mult = 0;
        while let Some(q) = p.divide_exact(&lin) {
            mult += 1;
            p = q;
        }
        mult
    }

    /// Gcd of the coefficients (non-negative); zero only for the zero
    /// polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    pub fn primitive_part(&self) -> IntPolynomial {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }
}

impl std::fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if a.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{a}*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

// JSON form: array of decimal strings, lowest degree first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

/// Characteristic polynomial `det(xI - m)` by the Samuelson-Berkowitz
/// recursion. Division free: every intermediate value is an integer.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial, ExactError> {
    if m.rows() != m.cols() {
        return Err(ExactError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    // coefficients of the principal submatrix char poly, highest degree first
    let mut p = vec![BigInt::one(), -m.get(0, 0).clone()];
    for i in 1..n {
        // Toeplitz column: 1, -a, -(R C), -(R M C), -(R M^2 C), ...
        let mut t = Vec::with_capacity(i + 2);
        t.push(BigInt::one());
        t.push(-m.get(i, i).clone());
        let mut v: Vec<BigInt> = (0..i).map(|k| m.get(k, i).clone()).collect();
        for step in 0..i {
            let rv: BigInt = (0..i).map(|k| m.get(i, k) * &v[k]).sum();
            t.push(-rv);
            if step + 1 < i {
                let next: Vec<BigInt> = (0..i)
                    .map(|row| (0..i).map(|k| m.get(row, k) * &v[k]).sum())
                    .collect();
                v = next;
            }
        }
        // p_new = T p, lower-triangular Toeplitz with first column t
        let mut next = vec![BigInt::zero(); i + 2];
        for (s, slot) in next.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, pj) in p.iter().enumerate().take(s + 1) {
                acc += &t[s - j] * pj;
            }
            *slot = acc;
        }
        p = next;
    }
    p.reverse();
    Ok(IntPolynomial::from_coeffs(p))
}

/// Primitive gcd over the integers (positive leading coefficient), computed
/// with a primitive pseudo-remainder sequence.
pub fn poly_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return normalize_sign(b.primitive_part());
    }
    if b.is_zero() {
        return normalize_sign(a.primitive_part());
    }
    let (mut f, mut g) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g).primitive_part();
        f = g;
        g = r;
    }
    normalize_sign(f.primitive_part())
}

fn normalize_sign(p: IntPolynomial) -> IntPolynomial {
    if p.leading().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Pseudo-remainder of `f` by `g` (deg f >= deg g, g nonzero).
fn pseudo_rem(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let df = f.degree().unwrap();
    let dg = g.degree().unwrap();
    let lead = g.leading().clone();
    let mut r = f.scale(&lead.pow((df - dg + 1) as u32));
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let q = r.leading() / &lead;
        let mut coeffs = vec![BigInt::zero(); dr - dg + 1];
        coeffs[dr - dg] = q;
        let qpoly = IntPolynomial::from_coeffs(coeffs);
        r = r.sub(&qpoly.mul(g));
    }
    r
}

/// Number of distinct complex roots: `deg p - deg gcd(p, p')`.
pub fn distinct_root_count(p: &IntPolynomial) -> Result<usize, ExactError> {
    let deg = p.degree().ok_or(ExactError::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(0);
    }
    let g = poly_gcd(p, &p.derivative());
    Ok(deg - g.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn char_poly_of_zero_and_swap() {
        assert_eq!(
            char_poly(&IntMatrix::zero(2, 2)).unwrap(),
            poly(&[0, 0, 1]) // x^2
        );
        let swap = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(char_poly(&swap).unwrap(), poly(&[-1, 0, 1])); // x^2 - 1
        assert!(char_poly(&IntMatrix::zero(2, 3)).is_err());
    }

    // Independent oracle: det(xI - M) by cofactor expansion over polynomial
    // entries.
    fn char_poly_cofactor(m: &IntMatrix) -> IntPolynomial {
        let n = m.rows();
        let entries: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mij = IntPolynomial::from_coeffs(vec![-m.get(i, j).clone()]);
                        if i == j {
                            mij.add(&IntPolynomial::x())
                        } else {
                            mij
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(rows: &[usize], cols: &[usize], e: &Vec<Vec<IntPolynomial>>) -> IntPolynomial {
            if rows.is_empty() {
                return IntPolynomial::one();
            }
            let r = rows[0];
            let rest: Vec<usize> = rows[1..].to_vec();
            let mut acc = IntPolynomial::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(&rest, &sub_cols, e);
                let term = e[r][c].mul(&minor);
                acc = if pos % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        det(&idx, &idx, &entries)
    }

    #[test]
    fn berkowitz_matches_cofactor_oracle() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i64 - 5
        };
        for n in 1..=5 {
            for _ in 0..8 {
                let m = IntMatrix::from_i64_rows(
                    &(0..n)
                        .map(|_| (0..n).map(|_| next()).collect())
                        .collect::<Vec<_>>(),
                );
                assert_eq!(char_poly(&m).unwrap(), char_poly_cofactor(&m));
            }
        }
    }

    #[test]
    fn divide_exact_and_multiplicity() {
        // (x-5)^3 (x+2)
        let p = poly(&[-5, 1]).pow(3).mul(&poly(&[2, 1]));
        assert_eq!(p.root_multiplicity(5), 3);
        assert_eq!(p.root_multiplicity(-2), 1);
        assert_eq!(p.root_multiplicity(7), 0);
        assert_eq!(p.divide_exact(&poly(&[-5, 1])).unwrap(), {
            poly(&[-5, 1]).pow(2).mul(&poly(&[2, 1]))
        });
        assert!(poly(&[1, 1]).divide_exact(&poly(&[0, 0, 1])).is_none());
    }

    #[test]
    fn distinct_roots_of_squares_and_products() {
        assert_eq!(distinct_root_count(&poly(&[0, 0, 1])).unwrap(), 1); // x^2
        assert_eq!(distinct_root_count(&poly(&[-1, 0, 1])).unwrap(), 2); // x^2-1
        assert_eq!(
            distinct_root_count(&IntPolynomial::zero()),
            Err(ExactError::ZeroPolynomial)
        );
        // (x-1)^2 (x-2)^3 (x^2+1)
        let p = poly(&[-1, 1])
            .pow(2)
            .mul(&poly(&[-2, 1]).pow(3))
            .mul(&poly(&[1, 0, 1]));
        assert_eq!(distinct_root_count(&p).unwrap(), 4);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = poly(&[-1, 1]).mul(&poly(&[3, 1]));
        let b = poly(&[-1, 1]).mul(&poly(&[7, 1]));
        assert_eq!(poly_gcd(&a, &b), poly(&[-1, 1]));
        let coprime = poly_gcd(&poly(&[1, 1]), &poly(&[2, 1]));
        assert_eq!(coprime.degree(), Some(0));
    }

    #[test]
    fn serde_decimal_strings_lowest_first() {
        let p = poly(&[3, 0, -2]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["3","0","-2"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
