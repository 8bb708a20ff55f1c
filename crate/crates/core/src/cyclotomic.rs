//! Cyclotomic polynomials, computed exactly and cached per order.

use crate::error::{Error, Result};
use crate::modulus::{factorize, CyclicModulus};
use crate::poly::IntPoly;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

fn cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, by exact recursive division:
/// `Phi_m = (x^m - 1) / prod_{e | m, e < m} Phi_e`. Results are memoized
/// process-wide behind an `Arc`.
///
/// Panics if `m == 0`.
pub fn cyclotomic_poly(m: u64) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(hit) = cache().lock().unwrap().get(&m) {
        return hit.clone();
    }
    // Build bottom-up over the divisors of m so recursion depth stays flat.
    let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    for &d in &divisors {
        if cache().lock().unwrap().contains_key(&d) {
            continue;
        }
        let mut poly = IntPoly::x_pow_minus_one(d as usize);
        for &e in divisors.iter().filter(|&&e| e < d && d % e == 0) {
            let phi_e = cache().lock().unwrap().get(&e).unwrap().clone();
            poly = poly
                .exact_div_monic(&phi_e)
                .expect("cyclotomic division is exact");
        }
        cache().lock().unwrap().insert(d, Arc::new(poly));
    }
    cache().lock().unwrap().get(&m).unwrap().clone()
}

/// `Phi_m(1)`: `p` when `m` is a power of the prime `p`, and 1 when `m` has
/// at least two distinct prime divisors. Requires `m >= 2` (`Phi_1(1) = 0`).
pub fn phi_at_one(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Input(format!(
            "phi_at_one requires m >= 2, got {m}"
        )));
    }
    let factors = factorize(m);
    let value = if factors.len() == 1 { factors[0].0 } else { 1 };
    debug_assert_eq!(
        num_bigint::BigInt::from(value),
        cyclotomic_poly(m).eval_at_one(),
        "factorization shortcut must agree with direct evaluation at 1"
    );
    Ok(value)
}

/// All cyclotomic polynomials `Phi_m` for divisors `m` of a fixed modulus,
/// computed once and shared immutably.
#[derive(Debug, Clone)]
pub struct CyclotomicTable {
    modulus: CyclicModulus,
    polys: BTreeMap<u64, Arc<IntPoly>>,
}

impl CyclotomicTable {
    pub fn new(modulus: &CyclicModulus) -> Self {
        let polys = modulus
            .divisors()
            .iter()
            .map(|&d| (d, cyclotomic_poly(d)))
            .collect();
        CyclotomicTable {
            modulus: modulus.clone(),
            polys,
        }
    }

    /// Shared table for a modulus, built at most once per process.
    pub fn shared(modulus: &CyclicModulus) -> Arc<CyclotomicTable> {
        static TABLES: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = tables.lock().unwrap().get(&modulus.n()) {
            return hit.clone();
        }
        let table = Arc::new(CyclotomicTable::new(modulus));
        tables
            .lock()
            .unwrap()
            .entry(modulus.n())
            .or_insert(table)
            .clone()
    }

    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }

    pub fn get(&self, m: u64) -> Result<&IntPoly> {
        self.polys.get(&m).map(|p| p.as_ref()).ok_or(Error::NotADivisor {
            value: m,
            modulus: self.modulus.n(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::euler_phi;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_poly(1), IntPoly::from_i64_coeffs(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), IntPoly::from_i64_coeffs(&[1, 1]));
        assert_eq!(*cyclotomic_poly(3), IntPoly::from_i64_coeffs(&[1, 1, 1]));
        assert_eq!(*cyclotomic_poly(6), IntPoly::from_i64_coeffs(&[1, -1, 1]));
        assert_eq!(
            *cyclotomic_poly(12),
            IntPoly::from_i64_coeffs(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=120u64 {
            assert_eq!(
                cyclotomic_poly(m).degree(),
                Some(euler_phi(m) as usize),
                "deg Phi_{m}"
            );
        }
    }

    #[test]
    fn product_over_divisors_is_x_d_minus_one() {
        // This is the defining identity; the full d <= 200 sweep lives in the
        // integration tests.
        for d in 1..=40u64 {
            let mut prod = IntPoly::one();
            for e in 1..=d {
                if d % e == 0 {
                    prod = prod.mul(&cyclotomic_poly(e));
                }
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(d as usize));
        }
    }

    #[test]
    fn phi_at_one_cases() {
        assert_eq!(phi_at_one(9).unwrap(), 3);
        assert_eq!(phi_at_one(6).unwrap(), 1);
        assert_eq!(phi_at_one(2).unwrap(), 2);
        assert_eq!(phi_at_one(8).unwrap(), 2);
        assert_eq!(phi_at_one(30).unwrap(), 1);
        assert!(phi_at_one(1).is_err());
    }

    #[test]
    fn table_covers_divisors() {
        let m = CyclicModulus::new(12).unwrap();
        let table = CyclotomicTable::shared(&m);
        for &d in m.divisors() {
            assert!(table.get(d).is_ok());
        }
        assert!(table.get(5).is_err());
    }
}
