//! Dense polynomials with exact big-integer coefficients.
//!
//! Only the operations the cyclotomic machinery needs: arithmetic, exact
//! division, and remainder modulo a monic divisor. Everything is exact; no
//! decision anywhere in the crate goes through floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A polynomial over `Z` stored densely, lowest degree first, with no
/// trailing zero coefficients (the zero polynomial has an empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient and remainder by a monic divisor. Stays in `Z[x]` because the
    /// leading coefficient is 1.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            for (j, b) in divisor.coeffs.iter().take(d).enumerate() {
                rem[i - d + j] -= &q * b;
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &IntPoly) -> IntPoly {
        self.div_rem_monic(divisor).1
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn exact_div_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divisible_by_monic(&self, divisor: &IntPoly) -> bool {
        self.rem_monic(divisor).is_zero()
    }

    /// Fold exponents modulo `x^n - 1`.
    pub fn reduce_mod_x_n_minus_one(&self, n: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i % n] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Largest absolute coefficient value, as `BigInt` (zero for the zero
    /// polynomial).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if first && c.is_negative() {
                // leading term keeps its own sign
                c.clone()
            } else {
                c.abs()
            };
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a.is_one() {
                        write!(f, "")?;
                    } else {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_normalization() {
        let p = IntPoly::from_i64_coeffs(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPoly::from_i64_coeffs(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = IntPoly::from_i64_coeffs(&[-1, 3, 0, 2]);
        let b = IntPoly::from_i64_coeffs(&[4, 0, 1]); // monic of degree 2
        let prod = a.mul(&b);
        let (q, r) = prod.div_rem_monic(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert!(prod.divisible_by_monic(&b));
    }

    #[test]
    fn remainder_example() {
        // x^3 + 1 = (x + 1)(x^2 - x + 1), so x^3 + 1 mod (x^2 + 1) = -x + ... compute directly
        let p = IntPoly::from_i64_coeffs(&[1, 0, 0, 1]);
        let d = IntPoly::from_i64_coeffs(&[1, 0, 1]);
        let (q, r) = p.div_rem_monic(&d);
        // x^3 + 1 = x*(x^2+1) + (1 - x)
        assert_eq!(q, IntPoly::from_i64_coeffs(&[0, 1]));
        assert_eq!(r, IntPoly::from_i64_coeffs(&[1, -1]));
    }

    #[test]
    fn exponent_folding() {
        // x^5 + x^2 mod (x^3 - 1) = x^2 + x^2
        let p = IntPoly::from_i64_coeffs(&[0, 0, 1, 0, 0, 1]);
        let folded = p.reduce_mod_x_n_minus_one(3);
        assert_eq!(folded, IntPoly::from_i64_coeffs(&[0, 0, 2]));
    }

    #[test]
    fn display_reads_naturally() {
        let p = IntPoly::from_i64_coeffs(&[1, -1, 1]);
        assert_eq!(p.to_string(), "1 - x + x^2");
    }
}
