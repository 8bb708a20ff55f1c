//! Mask polynomials: elements of `Q[x]/(x^N - 1)` encoding sets, multisets
//! and rational weight functions on `Z_N`.

use crate::cyclotomic::CyclotomicTable;
use crate::error::{Error, Result};
use crate::modulus::CyclicModulus;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `sum_i c_i x^i` with exact rational coefficients, indexed by `Z_N`.
/// Rationals are kept in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskPolynomial {
    modulus: CyclicModulus,
    coeffs: Vec<BigRational>,
}

impl MaskPolynomial {
    pub fn zero(modulus: &CyclicModulus) -> Self {
        MaskPolynomial {
            modulus: modulus.clone(),
            coeffs: vec![BigRational::zero(); modulus.n() as usize],
        }
    }

    /// Mask of a multiset of residues: `coeffs[i]` = multiplicity of `i`.
    pub fn mask_of(elements: &[u64], modulus: &CyclicModulus) -> Result<Self> {
        modulus.check_elements(elements)?;
        let mut mask = Self::zero(modulus);
        for &e in elements {
            mask.coeffs[e as usize] += BigRational::one();
        }
        Ok(mask)
    }

    pub fn from_rationals(coeffs: Vec<BigRational>, modulus: &CyclicModulus) -> Result<Self> {
        if coeffs.len() != modulus.n() as usize {
            return Err(Error::Input(format!(
                "expected {} coefficients, got {}",
                modulus.n(),
                coeffs.len()
            )));
        }
        Ok(MaskPolynomial {
            modulus: modulus.clone(),
            coeffs,
        })
    }

    pub fn from_integers(coeffs: &[i64], modulus: &CyclicModulus) -> Result<Self> {
        let rationals = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Self::from_rationals(rationals, modulus)
    }

    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u64) -> &BigRational {
        &self.coeffs[self.modulus.reduce(i) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `S(1)`: the total weight (cardinality, for a set mask).
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// True when every coefficient is 0 or 1.
    pub fn is_set_mask(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_multiset_mask(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Residues with nonzero coefficient, increasing.
    pub fn support(&self) -> Vec<u64> {
        (0..self.modulus.n())
            .filter(|&i| !self.coeffs[i as usize].is_zero())
            .collect()
    }

    pub fn add(&self, other: &MaskPolynomial) -> MaskPolynomial {
        assert_eq!(self.modulus.n(), other.modulus.n());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        MaskPolynomial {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, k: &BigRational) -> MaskPolynomial {
        MaskPolynomial {
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication in `Q[x]/(x^N - 1)`.
    pub fn mul_mod(&self, other: &MaskPolynomial) -> MaskPolynomial {
        assert_eq!(self.modulus.n(), other.modulus.n());
        let n = self.modulus.n() as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[(i + j) % n] += a * b;
                }
            }
        }
        MaskPolynomial {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    /// Multiply by `x^t`: the mask of the translated set `S + t`.
    pub fn translate(&self, t: u64) -> MaskPolynomial {
        let n = self.modulus.n() as usize;
        let t = self.modulus.reduce(t) as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + t) % n] = c.clone();
        }
        MaskPolynomial {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    /// Reindex by a unit: the mask of `u * S`.
    pub fn unit_scale(&self, u: u64) -> Result<MaskPolynomial> {
        let n = self.modulus.n();
        if self.modulus.reduce(u).gcd(&n) != 1 {
            return Err(Error::Input(format!("{u} is not a unit modulo {n}")));
        }
        let mut coeffs = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[((i as u64 * u) % n) as usize] = c.clone();
        }
        Ok(MaskPolynomial {
            modulus: self.modulus.clone(),
            coeffs,
        })
    }

    /// Clear denominators: the integer polynomial `lcm * self` together with
    /// the common denominator used. Vanishing at roots of unity is unaffected.
    pub fn cleared_int_poly(&self) -> (IntPoly, BigInt) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (IntPoly::from_coeffs(coeffs), lcm)
    }

    /// Exact test for `Phi_m | S`, equivalently `S(zeta) = 0` at every
    /// primitive m-th root of unity. Decided by integer polynomial remainder
    /// after clearing denominators; `m` must divide `N`.
    pub fn vanishes_at_order(&self, m: u64) -> Result<bool> {
        if !self.modulus.is_divisor(m) {
            return Err(Error::NotADivisor {
                value: m,
                modulus: self.modulus.n(),
            });
        }
        if m == 1 {
            return Ok(self.eval_at_one().is_zero());
        }
        let (cleared, _) = self.cleared_int_poly();
        let folded = if cleared.is_zero() {
            cleared
        } else {
            cleared.reduce_mod_x_n_minus_one(m as usize)
        };
        let table = CyclotomicTable::shared(&self.modulus);
        Ok(folded.divisible_by_monic(table.get(m)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn modulus(n: u64) -> CyclicModulus {
        CyclicModulus::new(n).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn mask_of_basic() {
        let m = modulus(6);
        let s = MaskPolynomial::mask_of(&[0, 3], &m).unwrap();
        assert_eq!(s.support(), vec![0, 3]);
        assert!(s.is_set_mask());
        assert_eq!(s.eval_at_one(), rat(2, 1));

        let empty = MaskPolynomial::mask_of(&[], &m).unwrap();
        assert!(empty.is_zero());

        // Subgroup of order 3 inside Z_6.
        let z3 = MaskPolynomial::mask_of(&[0, 2, 4], &m).unwrap();
        assert_eq!(z3.support(), vec![0, 2, 4]);

        assert!(MaskPolynomial::mask_of(&[6], &m).is_err());
    }

    #[test]
    fn multiset_multiplicities() {
        let m = modulus(4);
        let s = MaskPolynomial::mask_of(&[1, 1, 3], &m).unwrap();
        assert_eq!(*s.coeff(1), rat(2, 1));
        assert!(s.is_multiset_mask());
        assert!(!s.is_set_mask());
        assert_eq!(s.eval_at_one(), rat(3, 1));
    }

    #[test]
    fn vanishing_examples() {
        let m8 = modulus(8);
        let s = MaskPolynomial::mask_of(&[0, 1, 2, 3], &m8).unwrap();
        assert!(s.vanishes_at_order(4).unwrap());
        assert!(!s.vanishes_at_order(8).unwrap());
        assert!(s.vanishes_at_order(2).unwrap());

        let m6 = modulus(6);
        let point = MaskPolynomial::mask_of(&[0], &m6).unwrap();
        for &d in m6.divisors() {
            if d > 1 {
                assert!(!point.vanishes_at_order(d).unwrap());
            }
        }
        assert!(point.vanishes_at_order(4).is_err());
    }

    #[test]
    fn subgroup_mask_vanishes_at_full_order() {
        // The mask of Z_p <= Z_N is Phi_p(x^{N/p}), which vanishes at every
        // primitive N-th root of unity.
        for (n, p) in [(6u64, 2u64), (6, 3), (12, 2), (12, 3), (30, 5)] {
            let m = modulus(n);
            let coset: Vec<u64> = (0..p).map(|k| k * (n / p)).collect();
            let mask = MaskPolynomial::mask_of(&coset, &m).unwrap();
            assert!(mask.vanishes_at_order(n).unwrap(), "Z_{p} in Z_{n}");
        }
    }

    #[test]
    fn rational_weights_vanish_like_their_clearing() {
        let m = modulus(6);
        // (1/2) * (mask of {0,3}) still vanishes exactly where 1 + x^3 does.
        let s = MaskPolynomial::mask_of(&[0, 3], &m).unwrap().scale(&rat(1, 2));
        assert!(s.vanishes_at_order(2).unwrap());
        assert!(s.vanishes_at_order(6).unwrap());
        assert!(!s.vanishes_at_order(3).unwrap());
    }

    #[test]
    fn translate_and_unit_scale_permute_support() {
        let m = modulus(8);
        let s = MaskPolynomial::mask_of(&[0, 1, 2, 3], &m).unwrap();
        assert_eq!(s.translate(2).support(), vec![2, 3, 4, 5]);
        assert_eq!(s.unit_scale(3).unwrap().support(), vec![0, 1, 3, 6]);
        assert!(s.unit_scale(2).is_err());
    }

    #[test]
    fn mul_mod_wraps_exponents() {
        let m = modulus(4);
        let a = MaskPolynomial::mask_of(&[3], &m).unwrap();
        let b = MaskPolynomial::mask_of(&[2], &m).unwrap();
        assert_eq!(a.mul_mod(&b).support(), vec![1]);
    }

    #[test]
    fn cleared_poly_uses_lcm_of_denominators() {
        let m = modulus(3);
        let w = MaskPolynomial::from_rationals(vec![rat(1, 2), rat(-1, 3), rat(0, 1)], &m).unwrap();
        let (p, denom) = w.cleared_int_poly();
        assert_eq!(denom, BigInt::from_i64(6).unwrap());
        assert_eq!(p, IntPoly::from_i64_coeffs(&[3, -2]));
    }
}
