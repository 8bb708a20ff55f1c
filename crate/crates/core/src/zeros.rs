//! Zero sets of mask polynomials.
//!
//! The zero set of `S` inside `Z_N` is a union of divisor classes `d Z_N^*`;
//! we store its canonical form: the set of orders `m | N`, `m > 1`, with
//! `Phi_m | S`. `VanishingTables` holds precomputed monomial residues so the
//! same exact test runs in machine integers for the search-heavy paths.

use crate::cyclotomic::CyclotomicTable;
use crate::error::{Error, Result};
use crate::mask::MaskPolynomial;
use crate::modulus::{divisor_class, CyclicModulus};
use crate::poly::IntPoly;
use num_traits::ToPrimitive;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// The set of divisors `m > 1` of `N` with `Phi_m | S`, i.e. the canonical
/// form of the zero set `Z(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroProfile {
    modulus: CyclicModulus,
    vanishing_orders: BTreeSet<u64>,
}

impl ZeroProfile {
    pub fn compute(mask: &MaskPolynomial) -> Self {
        let modulus = mask.modulus().clone();
        let vanishing_orders = modulus
            .divisors()
            .iter()
            .filter(|&&m| m > 1)
            .filter(|&&m| mask.vanishes_at_order(m).expect("m divides N"))
            .copied()
            .collect();
        ZeroProfile {
            modulus,
            vanishing_orders,
        }
    }

    pub fn from_orders(orders: BTreeSet<u64>, modulus: &CyclicModulus) -> Self {
        debug_assert!(orders.iter().all(|&m| m > 1 && modulus.is_divisor(m)));
        ZeroProfile {
            modulus: modulus.clone(),
            vanishing_orders: orders,
        }
    }

    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }

    pub fn vanishing_orders(&self) -> &BTreeSet<u64> {
        &self.vanishing_orders
    }

    pub fn is_empty(&self) -> bool {
        self.vanishing_orders.is_empty()
    }

    pub fn contains_order(&self, m: u64) -> bool {
        self.vanishing_orders.contains(&m)
    }

    /// The element-level view: residues `d` of `Z_N` with `S(xi_N^d) = 0`,
    /// i.e. those whose order `N/gcd(d, N)` is a vanishing order.
    pub fn zero_set_elements(&self) -> Vec<u64> {
        let n = self.modulus.n();
        (0..n)
            .filter(|&d| {
                let class = divisor_class(d, &self.modulus);
                self.vanishing_orders.contains(&(n / class))
            })
            .collect()
    }

    /// Divisor classes `d` such that `d Z_N^*` lies in the zero set.
    pub fn zero_divisor_classes(&self) -> BTreeSet<u64> {
        let n = self.modulus.n();
        self.vanishing_orders.iter().map(|&m| n / m).collect()
    }
}

/// Multiset residue counts: `counts[j] = #{s in S : s = j mod d}`.
pub fn residue_counts(elements: &[u64], d: u64, modulus: &CyclicModulus) -> Result<Vec<u64>> {
    if !modulus.is_divisor(d) {
        return Err(Error::NotADivisor {
            value: d,
            modulus: modulus.n(),
        });
    }
    modulus.check_elements(elements)?;
    let mut counts = vec![0u64; d as usize];
    for &s in elements {
        counts[(s % d) as usize] += 1;
    }
    Ok(counts)
}

/// Precomputed exact residues of monomials modulo each `Phi_m`, `m | N`.
///
/// Row `i` of the table for `m` is the coefficient vector of
/// `x^(i mod m) mod Phi_m`; the residue of a set mask is the sum of its rows,
/// so `Phi_m | S` iff that sum is the zero vector. This is the same exact
/// remainder computation as `MaskPolynomial::vanishes_at_order`, staged into
/// `i64` arithmetic for the exhaustive sweeps. Coefficient growth is checked
/// at construction.
#[derive(Debug)]
pub struct VanishingTables {
    modulus: CyclicModulus,
    /// Divisors m > 1 of N, increasing; index into `rows`.
    orders: Vec<u64>,
    /// rows[k][i] = coefficients of x^(i mod m_k) mod Phi_{m_k}, length phi(m_k).
    rows: Vec<Vec<Vec<i64>>>,
    /// class_of[i] = gcd(i, N) with the convention class_of[0] = N.
    class_of: Vec<u64>,
}

const TABLE_MODULUS_LIMIT: u64 = 4096;

impl VanishingTables {
    pub fn new(modulus: &CyclicModulus) -> Result<Self> {
        let n = modulus.n();
        if n > TABLE_MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge {
                modulus: n,
                limit: TABLE_MODULUS_LIMIT,
            });
        }
        let table = CyclotomicTable::shared(modulus);
        let orders: Vec<u64> = modulus.divisors().iter().copied().filter(|&m| m > 1).collect();
        let mut rows = Vec::with_capacity(orders.len());
        for &m in &orders {
            let phi_m = table.get(m)?;
            let mut per_residue: Vec<Vec<i64>> = Vec::with_capacity(m as usize);
            for i in 0..m {
                let rem = IntPoly::x_pow(i as usize).rem_monic(phi_m);
                let mut v = vec![0i64; phi_m.degree().unwrap_or(0)];
                for (j, c) in rem.coeffs().iter().enumerate() {
                    let c = c.to_i64().ok_or_else(|| {
                        Error::Input(format!("monomial residue overflows i64 at m = {m}"))
                    })?;
                    // Sums over at most N residues with multiplicity <= N must
                    // stay inside i64.
                    if c.unsigned_abs() > i64::MAX as u64 / (n * n) {
                        return Err(Error::Input(format!(
                            "monomial residue too large for exact i64 sweep at m = {m}"
                        )));
                    }
                    v[j] = c;
                }
                per_residue.push(v);
            }
            let full: Vec<Vec<i64>> = (0..n).map(|i| per_residue[(i % m) as usize].clone()).collect();
            rows.push(full);
        }
        let class_of = (0..n).map(|i| divisor_class(i, modulus)).collect();
        Ok(VanishingTables {
            modulus: modulus.clone(),
            orders,
            rows,
            class_of,
        })
    }

    /// Shared tables for a modulus, built at most once per process.
    pub fn shared(modulus: &CyclicModulus) -> Result<Arc<VanishingTables>> {
        static TABLES: OnceLock<Mutex<HashMap<u64, Arc<VanishingTables>>>> = OnceLock::new();
        let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&modulus.n()) {
            return Ok(hit.clone());
        }
        let built = Arc::new(VanishingTables::new(modulus)?);
        Ok(cache
            .lock()
            .unwrap()
            .entry(modulus.n())
            .or_insert(built)
            .clone())
    }

    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }

    /// The divisors m > 1 of N, in the index order used by `profile_bits`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn class_of(&self, i: u64) -> u64 {
        self.class_of[i as usize]
    }

    /// Exact `Phi_m | S` for a set/multiset given by an element iterator.
    pub fn vanishes(&self, elements: impl Iterator<Item = u64> + Clone, m: u64) -> Result<bool> {
        let k = self
            .orders
            .iter()
            .position(|&o| o == m)
            .ok_or(Error::NotADivisor {
                value: m,
                modulus: self.modulus.n(),
            })?;
        Ok(self.vanishes_at_index(elements, k))
    }

    fn vanishes_at_index(&self, elements: impl Iterator<Item = u64>, k: usize) -> bool {
        let rows = &self.rows[k];
        let width = rows.first().map_or(0, Vec::len);
        let mut acc = vec![0i64; width];
        for e in elements {
            for (a, r) in acc.iter_mut().zip(&rows[e as usize]) {
                *a += r;
            }
        }
        acc.iter().all(|&a| a == 0)
    }

    /// Vanishing orders of a set mask, as a bitset over `orders()` indices.
    pub fn profile_bits(&self, elements: impl Iterator<Item = u64> + Clone) -> u32 {
        let mut bits = 0u32;
        for k in 0..self.orders.len() {
            if self.vanishes_at_index(elements.clone(), k) {
                bits |= 1 << k;
            }
        }
        bits
    }

    pub fn profile_from_bits(&self, bits: u32) -> ZeroProfile {
        let orders = self
            .orders
            .iter()
            .enumerate()
            .filter(|&(k, _)| bits & (1 << k) != 0)
            .map(|(_, &m)| m)
            .collect();
        ZeroProfile::from_orders(orders, &self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(n: u64) -> CyclicModulus {
        CyclicModulus::new(n).unwrap()
    }

    fn profile_of(elements: &[u64], n: u64) -> BTreeSet<u64> {
        let m = modulus(n);
        let mask = MaskPolynomial::mask_of(elements, &m).unwrap();
        ZeroProfile::compute(&mask).vanishing_orders().clone()
    }

    #[test]
    fn zero_profile_examples() {
        assert_eq!(profile_of(&[0, 1, 2, 3], 8), BTreeSet::from([2, 4]));
        assert_eq!(
            profile_of(&[0, 1, 2, 3, 4, 5], 6),
            BTreeSet::from([2, 3, 6])
        );
        assert_eq!(profile_of(&[0, 1], 5), BTreeSet::new());
    }

    #[test]
    fn element_level_view() {
        let m = modulus(8);
        let mask = MaskPolynomial::mask_of(&[0, 1, 2, 3], &m).unwrap();
        let profile = ZeroProfile::compute(&mask);
        // Orders {2,4} correspond to classes {4} and {2,6}.
        assert_eq!(profile.zero_set_elements(), vec![2, 4, 6]);
        assert_eq!(profile.zero_divisor_classes(), BTreeSet::from([2, 4]));
    }

    #[test]
    fn residue_count_examples() {
        let m8 = modulus(8);
        assert_eq!(residue_counts(&[0, 1, 2, 3], 2, &m8).unwrap(), vec![2, 2]);
        assert_eq!(
            residue_counts(&[0, 1, 2, 3], 4, &m8).unwrap(),
            vec![1, 1, 1, 1]
        );
        let m12 = modulus(12);
        assert_eq!(
            residue_counts(&[0, 6, 1, 5, 9], 4, &m12).unwrap(),
            vec![1, 3, 1, 0]
        );
        assert!(residue_counts(&[0], 5, &m12).is_err());
        assert!(residue_counts(&[12], 4, &m12).is_err());
    }

    #[test]
    fn residue_counts_sum_to_cardinality() {
        let m = modulus(12);
        let s = [0u64, 1, 5, 6, 9, 11];
        for &d in m.divisors() {
            let counts = residue_counts(&s, d, &m).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), s.len() as u64);
        }
    }

    #[test]
    fn tables_agree_with_mask_polynomial() {
        for n in [6u64, 8, 12, 18, 24, 30] {
            let m = modulus(n);
            let tables = VanishingTables::shared(&m).unwrap();
            // A deterministic batch of subsets, including edge cases.
            let sets: Vec<Vec<u64>> = (0..200u64)
                .map(|k| (0..n).filter(|&i| (k.wrapping_mul(2654435761) >> i) & 1 == 1).collect())
                .chain([vec![], (0..n).collect()])
                .collect();
            for s in sets {
                let mask = MaskPolynomial::mask_of(&s, &m).unwrap();
                for &d in m.divisors() {
                    if d == 1 {
                        continue;
                    }
                    assert_eq!(
                        tables.vanishes(s.iter().copied(), d).unwrap(),
                        mask.vanishes_at_order(d).unwrap(),
                        "N = {n}, S = {s:?}, m = {d}"
                    );
                }
                let bits = tables.profile_bits(s.iter().copied());
                assert_eq!(
                    tables.profile_from_bits(bits),
                    ZeroProfile::compute(&mask),
                    "profile mismatch for N = {n}, S = {s:?}"
                );
            }
        }
    }

    #[test]
    fn class_of_matches_divisor_class() {
        let m = modulus(24);
        let tables = VanishingTables::shared(&m).unwrap();
        for i in 0..24 {
            assert_eq!(tables.class_of(i), divisor_class(i, &m));
        }
    }
}
