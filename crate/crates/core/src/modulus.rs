//! The ambient cyclic group `Z_N`: divisors, prime factorization, units.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A positive modulus `N` together with its divisor list and prime
/// factorization, shared by every structure living on `Z_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicModulus {
    n: u64,
    divisors: Vec<u64>,
    factorization: Vec<(u64, u32)>,
}

impl CyclicModulus {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let factorization = factorize(n);
        let mut divisors = vec![1u64];
        for &(p, e) in &factorization {
            let snapshot = divisors.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divisors.extend(snapshot.iter().map(|d| d * pk));
            }
        }
        divisors.sort_unstable();
        Ok(CyclicModulus {
            n,
            divisors,
            factorization,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// All divisors of `N` in increasing order (including 1 and `N`).
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    /// The prime divisors of `N`, increasing.
    pub fn primes(&self) -> Vec<u64> {
        self.factorization.iter().map(|&(p, _)| p).collect()
    }

    /// The square-free radical of `N` (product of its prime divisors).
    pub fn radical(&self) -> u64 {
        self.factorization.iter().map(|&(p, _)| p).product()
    }

    pub fn is_divisor(&self, d: u64) -> bool {
        d != 0 && self.n % d == 0
    }

    pub fn is_square_free(&self) -> bool {
        self.factorization.iter().all(|&(_, e)| e == 1)
    }

    /// Reduce an arbitrary residue into `[0, N)`.
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.n
    }

    /// Reduce a difference `a - b` into `[0, N)`.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a % self.n + self.n - b % self.n) % self.n
    }

    /// The multiplicative units of `Z_N`, increasing.
    pub fn units(&self) -> Vec<u64> {
        (1..=self.n).filter(|&u| u.gcd(&self.n) == 1).collect()
    }

    pub fn euler_phi(&self) -> u64 {
        self.factorization
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// Checks that every element lies in `[0, N)`.
    pub fn check_elements(&self, elements: &[u64]) -> Result<()> {
        for &x in elements {
            if x >= self.n {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    modulus: self.n,
                });
            }
        }
        Ok(())
    }
}

/// The divisor class of a residue: the largest divisor of `N` dividing
/// `delta`, i.e. `gcd(delta mod N, N)`. The class of 0 is `N` by convention,
/// so elements of class `d` are exactly those of order `N/d`.
pub fn divisor_class(delta: u64, modulus: &CyclicModulus) -> u64 {
    let r = modulus.reduce(delta);
    if r == 0 {
        modulus.n()
    } else {
        r.gcd(&modulus.n())
    }
}

/// Trial-division factorization, smallest prime first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient of an arbitrary positive integer.
pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_and_factorization() {
        let m = CyclicModulus::new(12).unwrap();
        assert_eq!(m.divisors(), &[1, 2, 3, 4, 6, 12]);
        assert_eq!(m.factorization(), &[(2, 2), (3, 1)]);
        assert_eq!(m.radical(), 6);
        assert!(!m.is_square_free());
        assert_eq!(m.euler_phi(), 4);

        let m = CyclicModulus::new(1).unwrap();
        assert_eq!(m.divisors(), &[1]);
        assert!(m.factorization().is_empty());
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(CyclicModulus::new(0).is_err());
    }

    #[test]
    fn product_of_prime_powers_is_n() {
        for n in 1..=500 {
            let m = CyclicModulus::new(n).unwrap();
            let prod: u64 = m.factorization().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            for d in 1..=n {
                assert_eq!(m.is_divisor(d), n % d == 0);
            }
        }
    }

    #[test]
    fn divisor_class_examples() {
        let m8 = CyclicModulus::new(8).unwrap();
        assert_eq!(divisor_class(10, &m8), 2);
        assert_eq!(divisor_class(0, &m8), 8);
        let m72 = CyclicModulus::new(72).unwrap();
        assert_eq!(divisor_class(30, &m72), 6);
    }

    #[test]
    fn units_are_coprime_residues() {
        let m = CyclicModulus::new(12).unwrap();
        assert_eq!(m.units(), vec![1, 5, 7, 11]);
        assert_eq!(m.units().len() as u64, m.euler_phi());
    }
}
