//! Tilings of `Z_N` by translation: deciding complements, enumerating them
//! by exact backtracking, enumerating all tiles, and lifting complements
//! through subgroups and quotients.

use crate::bits::{self, SetWord};
use crate::budget::{Budget, SearchOutcome, SearchStatus};
use crate::error::{Error, Result};
use crate::mask::MaskPolynomial;
use crate::modulus::CyclicModulus;
use crate::spectral::SEARCH_MODULUS_LIMIT;
use num_traits::One;
use std::collections::BTreeSet;

/// Does `S + T` cover every residue exactly once? Multisets are allowed;
/// multiplicities count.
pub fn is_tiling_complement(s: &[u64], t: &[u64], modulus: &CyclicModulus) -> Result<bool> {
    modulus.check_elements(s)?;
    modulus.check_elements(t)?;
    let n = modulus.n();
    if (s.len() as u64).checked_mul(t.len() as u64) != Some(n) {
        return Ok(false);
    }
    let mut counts = vec![0u64; n as usize];
    for &a in s {
        for &b in t {
            let idx = ((a + b) % n) as usize;
            counts[idx] += 1;
            if counts[idx] > 1 {
                return Ok(false);
            }
        }
    }
    Ok(counts.iter().all(|&c| c == 1))
}

/// The same tiling test through the group ring: `S(x) T(x) = 1 + x + ... +
/// x^(N-1) mod (x^N - 1)`. Kept as an independent route; it must always agree
/// with the covering count.
pub fn tiling_mask_identity(s: &[u64], t: &[u64], modulus: &CyclicModulus) -> Result<bool> {
    let product = MaskPolynomial::mask_of(s, modulus)?.mul_mod(&MaskPolynomial::mask_of(t, modulus)?);
    Ok(product.coeffs().iter().all(One::is_one))
}

fn checked_set(s: &[u64], modulus: &CyclicModulus) -> Result<Vec<u64>> {
    modulus.check_elements(s)?;
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input("duplicate element in set".into()));
    }
    Ok(v)
}

/// All tiling complements of `S`, up to translation (each returned complement
/// contains 0 and is the canonical representative of its translation class).
/// Backtracking always extends at the smallest uncovered residue, so an empty
/// `Complete` outcome certifies that `S` is not a tile.
pub fn find_tiling_complements(
    s: &[u64],
    modulus: &CyclicModulus,
    enumerate_all: bool,
    max_solutions: usize,
    budget: Budget,
) -> Result<SearchOutcome<Vec<u64>>> {
    let s = checked_set(s, modulus)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = modulus.n();
    if n % (s.len() as u64) != 0 {
        return Ok(SearchOutcome::complete(Vec::new()));
    }
    let cap = if enumerate_all { max_solutions.max(1) } else { 1 };
    if n <= 32 {
        complements_words::<u32>(&s, n as u32, cap, budget)
    } else if n <= 64 {
        complements_words::<u64>(&s, n as u32, cap, budget)
    } else if n <= SEARCH_MODULUS_LIMIT {
        complements_words::<u128>(&s, n as u32, cap, budget)
    } else {
        Err(Error::ModulusTooLarge {
            modulus: n,
            limit: SEARCH_MODULUS_LIMIT,
        })
    }
}

fn complements_words<W: SetWord>(
    s: &[u64],
    n: u32,
    cap: usize,
    budget: Budget,
) -> Result<SearchOutcome<Vec<u64>>> {
    let smask: W = bits::mask_from(s);
    let mut search = CoverSearch::new(smask, n, budget);
    let completed = search.run_distinct_canonical(cap);
    let mut items: Vec<Vec<u64>> = search.canonical.iter().map(|&m| bits::set_from(m)).collect();
    items.sort();
    let status = if search.budget_hit {
        SearchStatus::BudgetExhausted
    } else if completed {
        SearchStatus::Complete
    } else {
        SearchStatus::SolutionCapReached
    };
    Ok(SearchOutcome { items, status })
}

/// Exact-cover backtracking over translates of a fixed set.
pub(crate) struct CoverSearch<W: SetWord> {
    n: u32,
    elements: Vec<u32>,
    /// Translate masks of S, indexed by the translation amount.
    translates: Vec<W>,
    full: W,
    budget: Budget,
    nodes: u64,
    pub budget_hit: bool,
    pub canonical: BTreeSet<W>,
    /// Every raw complement found (as a mask), when collect_raw is on.
    pub raw: Vec<W>,
    collect_raw: bool,
}

impl<W: SetWord> CoverSearch<W> {
    pub fn new(smask: W, n: u32, budget: Budget) -> Self {
        let translates = (0..n).map(|t| bits::rotate(smask, t, n)).collect();
        CoverSearch {
            n,
            elements: bits::elements(smask).collect(),
            translates,
            full: bits::full::<W>(n),
            budget,
            nodes: 0,
            budget_hit: false,
            canonical: BTreeSet::new(),
            raw: Vec::new(),
            collect_raw: false,
        }
    }

    pub fn collect_raw(mut self) -> Self {
        self.collect_raw = true;
        self
    }

    /// Enumerate complements until `cap` distinct canonical (translation)
    /// classes are known; returns true when the tree was fully explored.
    pub fn run_distinct_canonical(&mut self, cap: usize) -> bool {
        self.recurse(W::zero(), W::zero(), cap)
    }

    fn recurse(&mut self, covered: W, tmask: W, cap: usize) -> bool {
        if covered == self.full {
            self.canonical.insert(bits::canonical_mask(tmask, self.n, &[1]));
            if self.collect_raw {
                self.raw.push(tmask);
            }
            return self.collect_raw || self.canonical.len() < cap;
        }
        // Branch on the smallest uncovered residue g: the translate covering
        // it must be S + (g - s) for some s in S.
        let g = (covered ^ self.full).lowest();
        for i in 0..self.elements.len() {
            let t = (g + self.n - self.elements[i]) % self.n;
            let translate = self.translates[t as usize];
            if !(translate & covered).is_zero() {
                continue;
            }
            self.nodes += 1;
            if self.nodes & 0x3ff == 0 && self.budget.exceeded() {
                self.budget_hit = true;
                return false;
            }
            if !self.recurse(covered | translate, tmask | W::bit(t), cap) {
                return false;
            }
        }
        true
    }
}

/// All tiles of `Z_N` up to translation, as canonical representatives
/// containing 0, found by size-filtered complement search: sets of size
/// `k | N`, `k^2 <= N`, are searched directly and every complement found is
/// itself a tile, which covers all sizes `>= sqrt(N)`.
pub fn enumerate_tiles(modulus: &CyclicModulus, budget: Budget) -> Result<SearchOutcome<Vec<u64>>> {
    let n = modulus.n();
    if n <= 32 {
        enumerate_tiles_words::<u32>(modulus, budget)
    } else if n <= 64 {
        enumerate_tiles_words::<u64>(modulus, budget)
    } else {
        // 2^64 subsets of size sqrt(N) is already far out of desk range.
        Err(Error::ModulusTooLarge {
            modulus: n,
            limit: 64,
        })
    }
}

fn enumerate_tiles_words<W: SetWord>(
    modulus: &CyclicModulus,
    budget: Budget,
) -> Result<SearchOutcome<Vec<u64>>> {
    let n = modulus.n() as u32;
    let mut tiles: BTreeSet<W> = BTreeSet::new();
    let mut budget_hit = false;

    for &k in modulus.divisors() {
        if k * k > modulus.n() {
            continue;
        }
        let k = k as u32;
        // Canonical candidates of size k containing 0.
        enumerate_size_k_candidates(W::bit(0), 1, k - 1, n, &mut |mask| {
            if budget.exceeded() {
                budget_hit = true;
                return false;
            }
            if !bits::is_canonical(mask, n, &[1]) {
                return true;
            }
            let mut search = CoverSearch::new(mask, n, budget).collect_raw();
            search.run_distinct_canonical(usize::MAX);
            if search.budget_hit {
                budget_hit = true;
                return false;
            }
            if !search.raw.is_empty() {
                tiles.insert(mask);
            }
            for &t in &search.raw {
                tiles.insert(bits::canonical_mask(t, n, &[1]));
            }
            true
        });
        if budget_hit {
            break;
        }
    }

    let mut items: Vec<Vec<u64>> = tiles.iter().map(|&m| bits::set_from(m)).collect();
    items.sort_by_key(|t| (t.len(), t.clone()));
    let status = if budget_hit {
        SearchStatus::BudgetExhausted
    } else {
        SearchStatus::Complete
    };
    Ok(SearchOutcome { items, status })
}

/// Recursively extend `mask` with `remaining` elements drawn increasingly
/// from `[from, n)`; calls `visit` on each completed candidate. `visit`
/// returning false aborts the walk.
fn enumerate_size_k_candidates<W: SetWord>(
    mask: W,
    from: u32,
    remaining: u32,
    n: u32,
    visit: &mut impl FnMut(W) -> bool,
) -> bool {
    if remaining == 0 {
        return visit(mask);
    }
    for v in from..=(n - remaining) {
        if !enumerate_size_k_candidates(mask | W::bit(v), v + 1, remaining - 1, n, visit) {
            return false;
        }
    }
    true
}

/// Lift a tiling of a subgroup to the whole group: if `S + T_H = H` for the
/// subgroup `H` of the given order, then `S + (T_H + U) = Z_N` for the
/// transversal `U = {0, 1, ..., N/|H| - 1}`.
pub fn lift_complement_through_subgroup(
    modulus: &CyclicModulus,
    subgroup_order: u64,
    s: &[u64],
    t_h: &[u64],
) -> Result<Vec<u64>> {
    let n = modulus.n();
    if !modulus.is_divisor(subgroup_order) {
        return Err(Error::NotADivisor {
            value: subgroup_order,
            modulus: n,
        });
    }
    let step = n / subgroup_order;
    for set in [s, t_h] {
        modulus.check_elements(set)?;
        if set.iter().any(|&x| x % step != 0) {
            return Err(Error::NotInSubgroup {
                set: set.to_vec(),
                order: subgroup_order,
            });
        }
    }
    // Check S + T_H = H inside H, viewed as Z_{subgroup_order}.
    let sub_modulus = CyclicModulus::new(subgroup_order)?;
    let s_in_h: Vec<u64> = s.iter().map(|&x| x / step).collect();
    let t_in_h: Vec<u64> = t_h.iter().map(|&x| x / step).collect();
    if !is_tiling_complement(&s_in_h, &t_in_h, &sub_modulus)? {
        return Err(Error::NotASubgroupTiling(format!(
            "S + T_H does not tile the subgroup of order {subgroup_order}"
        )));
    }
    let mut t: Vec<u64> = t_h
        .iter()
        .flat_map(|&th| (0..step).map(move |u| th + u))
        .collect();
    t.sort_unstable();
    debug_assert!(is_tiling_complement(s, &t, modulus).unwrap());
    Ok(t)
}

/// Lift a tiling of a quotient back up: if `S` projects injectively onto
/// `Z_l` (`l` = quotient order) and the projection tiles `Z_l` with `T_l`,
/// then `S` tiles `Z_N` with the full preimage of `T_l`.
pub fn lift_complement_through_quotient(
    modulus: &CyclicModulus,
    quotient_order: u64,
    s: &[u64],
    t_l: &[u64],
) -> Result<Vec<u64>> {
    let n = modulus.n();
    if !modulus.is_divisor(quotient_order) {
        return Err(Error::NotADivisor {
            value: quotient_order,
            modulus: n,
        });
    }
    modulus.check_elements(s)?;
    let l = quotient_order;
    let mut projected: Vec<u64> = s.iter().map(|&x| x % l).collect();
    projected.sort_unstable();
    let distinct = projected.len();
    projected.dedup();
    if projected.len() != distinct {
        return Err(Error::NonInjectiveProjection);
    }
    let quotient = CyclicModulus::new(l)?;
    if !is_tiling_complement(&projected, t_l, &quotient)? {
        return Err(Error::NotASubgroupTiling(format!(
            "projection of S does not tile the quotient of order {l} with the given complement"
        )));
    }
    let mut t: Vec<u64> = t_l
        .iter()
        .flat_map(|&tl| (0..n / l).map(move |j| tl % l + l * j))
        .collect();
    t.sort_unstable();
    debug_assert!(is_tiling_complement(s, &t, modulus).unwrap());
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(n: u64) -> CyclicModulus {
        CyclicModulus::new(n).unwrap()
    }

    #[test]
    fn tiling_examples() {
        let m8 = modulus(8);
        assert!(is_tiling_complement(&[0, 1, 2, 3], &[0, 4], &m8).unwrap());
        let m4 = modulus(4);
        assert!(!is_tiling_complement(&[0, 1], &[0, 1], &m4).unwrap());
        let m6 = modulus(6);
        assert!(is_tiling_complement(&[0, 3], &[0, 1, 2], &m6).unwrap());
    }

    #[test]
    fn tiling_is_symmetric_and_translation_invariant() {
        let m8 = modulus(8);
        assert!(is_tiling_complement(&[0, 4], &[0, 1, 2, 3], &m8).unwrap());
        assert!(is_tiling_complement(&[2, 3, 4, 5], &[3, 7], &m8).unwrap());
    }

    #[test]
    fn both_tiling_routes_agree_on_examples() {
        let m6 = modulus(6);
        for (s, t) in [
            (vec![0u64, 3], vec![0u64, 1, 2]),
            (vec![0, 1], vec![0, 2, 4]),
            (vec![0, 2], vec![0, 1, 3]),
            (vec![0, 1, 2], vec![0, 3]),
        ] {
            assert_eq!(
                is_tiling_complement(&s, &t, &m6).unwrap(),
                tiling_mask_identity(&s, &t, &m6).unwrap(),
                "S = {s:?}, T = {t:?}"
            );
        }
    }

    #[test]
    fn multiset_tiling_by_multiplicity() {
        // {0, 0} never tiles: the product mask has a coefficient 2.
        let m4 = modulus(4);
        assert!(!is_tiling_complement(&[0, 0], &[0, 1], &m4).unwrap());
        // But a multiset complement can tile: S = {0,1}, T = {0, 2} in Z_4.
        assert!(is_tiling_complement(&[0, 1], &[0, 2], &m4).unwrap());
    }

    #[test]
    fn complement_search_examples() {
        let m8 = modulus(8);
        let out =
            find_tiling_complements(&[0, 1, 2, 3], &m8, true, 64, Budget::unlimited()).unwrap();
        assert_eq!(out.items, vec![vec![0, 4]]);
        assert_eq!(out.status, SearchStatus::Complete);

        let m6 = modulus(6);
        let out = find_tiling_complements(&[0, 2], &m6, true, 64, Budget::unlimited()).unwrap();
        assert!(out.certified_empty());

        let out = find_tiling_complements(&[0], &m6, true, 64, Budget::unlimited()).unwrap();
        assert_eq!(out.items, vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn complement_search_filters_on_cardinality() {
        let m6 = modulus(6);
        let out = find_tiling_complements(&[0, 1, 2, 3], &m6, true, 64, Budget::unlimited()).unwrap();
        assert!(out.certified_empty());
    }

    #[test]
    fn enumerate_tiles_examples() {
        let m4 = modulus(4);
        let out = enumerate_tiles(&m4, Budget::unlimited()).unwrap();
        assert_eq!(
            out.items,
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2, 3]]
        );

        let m2 = modulus(2);
        let out = enumerate_tiles(&m2, Budget::unlimited()).unwrap();
        assert_eq!(out.items, vec![vec![0], vec![0, 1]]);

        let m6 = modulus(6);
        let out = enumerate_tiles(&m6, Budget::unlimited()).unwrap();
        assert!(out.items.contains(&vec![0, 3]));
        assert!(out.items.contains(&vec![0, 2, 4]));
        for tile in &out.items {
            let c = find_tiling_complements(tile, &m6, false, 1, Budget::unlimited()).unwrap();
            assert!(!c.items.is_empty(), "{tile:?} must tile");
        }
    }

    #[test]
    fn lift_through_subgroup_examples() {
        let m6 = modulus(6);
        // S = H = {0, 3}, T_H = {0}: lift with the transversal {0, 1, 2}.
        let t = lift_complement_through_subgroup(&m6, 2, &[0, 3], &[0]).unwrap();
        assert_eq!(t, vec![0, 1, 2]);

        // S = {0} in the trivial subgroup: complement is everything.
        let t = lift_complement_through_subgroup(&m6, 1, &[0], &[0]).unwrap();
        assert_eq!(t, (0..6).collect::<Vec<_>>());

        let m12 = modulus(12);
        let t = lift_complement_through_subgroup(&m12, 2, &[0, 6], &[0]).unwrap();
        assert_eq!(t, (0..6).collect::<Vec<_>>());

        assert!(lift_complement_through_subgroup(&m12, 2, &[0, 4], &[0]).is_err());
    }

    #[test]
    fn lift_through_quotient_examples() {
        let m12 = modulus(12);
        let t = lift_complement_through_quotient(&m12, 6, &[0, 1, 2], &[0, 3]).unwrap();
        assert_eq!(t, vec![0, 3, 6, 9]);
        assert!(is_tiling_complement(&[0, 1, 2], &t, &m12).unwrap());

        let t = lift_complement_through_quotient(&m12, 1, &[0], &[0]).unwrap();
        assert_eq!(t, (0..12).collect::<Vec<_>>());

        assert!(matches!(
            lift_complement_through_quotient(&m12, 6, &[0, 6], &[0, 3]),
            Err(Error::NonInjectiveProjection)
        ));
    }
}
