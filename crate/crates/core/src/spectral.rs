//! Spectral pairs on `Z_N`: verification, spectrum search, and the
//! structural tests applied to spectra (tiling conditions, equidistribution,
//! coset-union structure, normalizations).

use crate::bits::{self, SetWord};
use crate::budget::{Budget, SearchOutcome, SearchStatus};
use crate::cyclotomic::phi_at_one;
use crate::error::{Error, Result};
use crate::mask::MaskPolynomial;
use crate::modulus::{divisor_class, CyclicModulus};
use crate::zeros::{residue_counts, ZeroProfile};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest modulus accepted by the machine-word searches.
pub const SEARCH_MODULUS_LIMIT: u64 = 128;

/// A verified set/spectrum pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPair {
    modulus: CyclicModulus,
    s: Vec<u64>,
    lambda: Vec<u64>,
}

impl SpectralPair {
    /// Builds the pair after checking the orthogonality conditions.
    pub fn new(s: &[u64], lambda: &[u64], modulus: &CyclicModulus) -> Result<Self> {
        if !is_spectral_pair(s, lambda, modulus)? {
            return Err(Error::NotSpectralPair);
        }
        Ok(SpectralPair {
            modulus: modulus.clone(),
            s: sorted_set(s, modulus)?,
            lambda: sorted_set(lambda, modulus)?,
        })
    }

    pub fn set(&self) -> &[u64] {
        &self.s
    }

    pub fn spectrum(&self) -> &[u64] {
        &self.lambda
    }

    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }
}

fn sorted_set(elements: &[u64], modulus: &CyclicModulus) -> Result<Vec<u64>> {
    modulus.check_elements(elements)?;
    let mut v = elements.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input("duplicate element in set".into()));
    }
    Ok(v)
}

/// Is `Lambda` a spectrum for `S`? True iff `|S| = |Lambda|` and every
/// difference of distinct spectrum points lands in a vanishing divisor class
/// of `S`. Equal cardinality plus pairwise orthogonality already forces the
/// restricted characters to form a basis, so no separate spanning test runs.
pub fn is_spectral_pair(s: &[u64], lambda: &[u64], modulus: &CyclicModulus) -> Result<bool> {
    let s = sorted_set(s, modulus)?;
    let lambda = sorted_set(lambda, modulus)?;
    if s.len() != lambda.len() {
        return Ok(false);
    }
    let mask = MaskPolynomial::mask_of(&s, modulus)?;
    let profile = ZeroProfile::compute(&mask);
    let n = modulus.n();
    for (i, &a) in lambda.iter().enumerate() {
        for &b in &lambda[i + 1..] {
            let order = n / divisor_class(modulus.sub(b, a), modulus);
            if !profile.contains_order(order) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Swap the roles of set and spectrum. The input must already be a spectral
/// pair; the output always verifies.
pub fn dual_pair(s: &[u64], lambda: &[u64], modulus: &CyclicModulus) -> Result<SpectralPair> {
    if !is_spectral_pair(s, lambda, modulus)? {
        return Err(Error::NotSpectralPair);
    }
    SpectralPair::new(lambda, s, modulus)
}

/// Translate a spectral pair so that both the set and the spectrum contain 0
/// (subtracting the minimum of each when necessary).
pub fn normalize_pair(s: &[u64], lambda: &[u64], modulus: &CyclicModulus) -> Result<SpectralPair> {
    if !is_spectral_pair(s, lambda, modulus)? {
        return Err(Error::NotSpectralPair);
    }
    let shift = |v: &[u64]| -> Vec<u64> {
        if v.contains(&0) {
            return v.to_vec();
        }
        let min = *v.iter().min().expect("nonempty");
        v.iter().map(|&x| modulus.sub(x, min)).collect()
    };
    SpectralPair::new(&shift(s), &shift(lambda), modulus)
}

/// Search configuration for `find_spectra`.
#[derive(Debug, Clone)]
pub struct SpectrumSearchConfig {
    /// Normalize spectra to contain 0 (sound by translation of spectra).
    pub require_zero_in_spectrum: bool,
    /// Enumerate spectra instead of stopping at the first one found.
    pub enumerate_all: bool,
    /// Hard cap on the number of returned spectra (>= 1).
    pub max_solutions: usize,
    pub budget: Budget,
}

impl Default for SpectrumSearchConfig {
    fn default() -> Self {
        SpectrumSearchConfig {
            require_zero_in_spectrum: true,
            enumerate_all: false,
            max_solutions: 1,
            budget: Budget::unlimited(),
        }
    }
}

impl SpectrumSearchConfig {
    pub fn enumerate(max_solutions: usize) -> Self {
        SpectrumSearchConfig {
            enumerate_all: true,
            max_solutions,
            ..Default::default()
        }
    }

    fn cap(&self) -> usize {
        if self.enumerate_all {
            self.max_solutions.max(1)
        } else {
            1
        }
    }
}

/// All spectra of `S` (up to the configured cap), found by clique search in
/// the graph on `Z_N` whose edges are the pairs whose difference lies in a
/// vanishing divisor class of `S`. An empty, `Complete` outcome certifies
/// that `S` is not spectral.
pub fn find_spectra(
    s: &[u64],
    modulus: &CyclicModulus,
    config: &SpectrumSearchConfig,
) -> Result<SearchOutcome<Vec<u64>>> {
    let s = sorted_set(s, modulus)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = modulus.n();
    if n <= 32 {
        find_spectra_words::<u32>(&s, modulus, config)
    } else if n <= 64 {
        find_spectra_words::<u64>(&s, modulus, config)
    } else if n <= SEARCH_MODULUS_LIMIT {
        find_spectra_words::<u128>(&s, modulus, config)
    } else {
        Err(Error::ModulusTooLarge {
            modulus: n,
            limit: SEARCH_MODULUS_LIMIT,
        })
    }
}

fn find_spectra_words<W: SetWord>(
    s: &[u64],
    modulus: &CyclicModulus,
    config: &SpectrumSearchConfig,
) -> Result<SearchOutcome<Vec<u64>>> {
    let n = modulus.n() as u32;
    let mask = MaskPolynomial::mask_of(s, modulus)?;
    let profile = ZeroProfile::compute(&mask);
    let allowed = allowed_difference_mask::<W>(&profile, modulus);
    let adjacency: Vec<W> = (0..n).map(|v| bits::rotate(allowed, v, n)).collect();
    let k = s.len() as u32;

    let mut search = CliqueSearch {
        adjacency: &adjacency,
        cap: config.cap(),
        budget: config.budget,
        nodes: 0,
        results: Vec::new(),
        budget_hit: false,
    };

    let completed = if config.require_zero_in_spectrum {
        search.run(W::bit(0), allowed, k - 1)
    } else {
        search.run(W::zero(), bits::full::<W>(n), k)
    };

    let mut items: Vec<Vec<u64>> = search.results.iter().map(|&m| bits::set_from(m)).collect();
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

/// Difference classes in which spectrum points may differ: the elements of
/// `Z_N` whose order is a vanishing order of `S`.
pub(crate) fn allowed_difference_mask<W: SetWord>(
    profile: &ZeroProfile,
    modulus: &CyclicModulus,
) -> W {
    let n = modulus.n();
    let mut mask = W::zero();
    for d in 1..n {
        let order = n / divisor_class(d, modulus);
        if profile.contains_order(order) {
            mask = mask | W::bit(d as u32);
        }
    }
    mask
}

pub(crate) struct CliqueSearch<'a, W: SetWord> {
    pub adjacency: &'a [W],
    pub cap: usize,
    pub budget: Budget,
    pub nodes: u64,
    pub results: Vec<W>,
    pub budget_hit: bool,
}

impl<'a, W: SetWord> CliqueSearch<'a, W> {
    fn capped_out(&self) -> bool {
        self.results.len() >= self.cap
    }

    /// Enumerate cliques of exactly `need` more vertices drawn from `cands`,
    /// extending `current`. Vertices are consumed in increasing order so each
    /// clique is produced exactly once. Returns false when the search must
    /// stop (cap or budget).
    pub fn run(&mut self, current: W, mut cands: W, need: u32) -> bool {
        if need == 0 {
            self.results.push(current);
            return !self.capped_out();
        }
        while cands.count() >= need {
            self.nodes += 1;
            if self.nodes & 0x3ff == 0 && self.budget.exceeded() {
                self.budget_hit = true;
                return false;
            }
            let v = cands.lowest();
            cands = cands ^ W::bit(v);
            let next = current | W::bit(v);
            if !self.run(next, cands & self.adjacency[v as usize], need - 1) {
                return false;
            }
        }
        true
    }
}

/// Report of the two tiling conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1T2Report {
    /// Prime powers `r^a | N` with `Phi_{r^a} | S`.
    pub h_s: Vec<u64>,
    /// `S(1)` equals the product of `Phi_d(1)` over `h_s`.
    pub t1: bool,
    /// `Phi_m | S` for every product `m` of at least two pairwise coprime
    /// members of `h_s`.
    pub t2: bool,
}

/// The Coven-Meyerowitz conditions (T1) and (T2) for a nonempty set.
pub fn check_t1_t2(s: &[u64], modulus: &CyclicModulus) -> Result<T1T2Report> {
    let s = sorted_set(s, modulus)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mask = MaskPolynomial::mask_of(&s, modulus)?;
    let mut h_s = Vec::new();
    for &(p, e) in modulus.factorization() {
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            if mask.vanishes_at_order(pk)? {
                h_s.push(pk);
            }
        }
    }
    h_s.sort_unstable();

    let mut product = 1u64;
    for &d in &h_s {
        product *= phi_at_one(d)?;
    }
    let t1 = product == s.len() as u64;

    // Group by prime, then test Phi of every product of members taken from
    // two or more distinct primes.
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &d in &h_s {
        let p = crate::modulus::factorize(d)[0].0;
        by_prime.entry(p).or_default().push(d);
    }
    let groups: Vec<&Vec<u64>> = by_prime.values().collect();
    let mut t2 = true;
    'outer: for choice in coprime_products(&groups) {
        if choice.len() < 2 {
            continue;
        }
        let m: u64 = choice.iter().product();
        if !mask.vanishes_at_order(m)? {
            t2 = false;
            break 'outer;
        }
    }

    Ok(T1T2Report { h_s, t1, t2 })
}

/// All ways of picking at most one member from each group.
fn coprime_products(groups: &[&Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for group in groups {
        let mut next = out.clone();
        for &d in group.iter() {
            for existing in &out {
                let mut v = existing.clone();
                v.push(d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Outcome of an equidistribution test, with the counts as certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquidistributionCheck {
    pub equidistributed: bool,
    pub counts: Vec<u64>,
}

/// Does every residue class mod `d` contain `|S|/d` elements of `S`?
pub fn equidistribution_check(
    s: &[u64],
    d: u64,
    modulus: &CyclicModulus,
) -> Result<EquidistributionCheck> {
    let counts = residue_counts(s, d, modulus)?;
    let total: u64 = counts.iter().sum();
    let equidistributed = total % d == 0 && counts.iter().all(|&c| c == total / d);
    Ok(EquidistributionCheck {
        equidistributed,
        counts,
    })
}

/// Ma-type structure: if `S` vanishes at every divisor of `N` that is a
/// multiple of the maximal power `p^m || N`, then `S` is a union of
/// `Z_p`-cosets; returns that partition, or `None` when the hypothesis
/// fails.
pub fn ma_structure(
    s: &[u64],
    p: u64,
    modulus: &CyclicModulus,
) -> Result<Option<Vec<Vec<u64>>>> {
    let s = sorted_set(s, modulus)?;
    let n = modulus.n();
    let Some(&(_, e)) = modulus.factorization().iter().find(|&&(q, _)| q == p) else {
        return Err(Error::NotADivisor {
            value: p,
            modulus: n,
        });
    };
    let pm = p.pow(e);
    let mask = MaskPolynomial::mask_of(&s, modulus)?;
    for &d in modulus.divisors() {
        if d % pm == 0 && !mask.vanishes_at_order(d)? {
            return Ok(None);
        }
    }
    // Hypothesis holds: group by residue mod N/p; every group must be a full
    // coset of the order-p subgroup.
    let step = n / p;
    let mut by_residue: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &x in &s {
        by_residue.entry(x % step).or_default().push(x);
    }
    let mut cosets = Vec::new();
    for (r, members) in by_residue {
        let full: Vec<u64> = (0..p).map(|k| r + k * step).collect();
        if members != full {
            // Unreachable for 0/1 masks satisfying the hypothesis.
            return Err(Error::Input(format!(
                "residue class {r} mod {step} is not a full coset"
            )));
        }
        cosets.push(full);
    }
    Ok(Some(cosets))
}

/// Which prime's cosets a class decomposes into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCosets {
    /// Residue of the class modulo `N/(pq)`.
    pub class: u64,
    /// The prime whose cosets tile this class.
    pub prime: u64,
    pub cosets: Vec<Vec<u64>>,
}

/// Partition of a set into disjoint `Z_p`- and `Z_q`-cosets, one type per
/// `Z_pq`-coset class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetUnionDecomposition {
    pub p: u64,
    pub q: u64,
    pub classes: Vec<ClassCosets>,
}

impl CosetUnionDecomposition {
    pub fn all_cosets(&self) -> Vec<(u64, Vec<u64>)> {
        self.classes
            .iter()
            .flat_map(|c| c.cosets.iter().map(move |cs| (c.prime, cs.clone())))
            .collect()
    }

    /// True when only one prime's cosets appear overall.
    pub fn single_type(&self) -> Option<u64> {
        let mut primes: Vec<u64> = self.classes.iter().map(|c| c.prime).collect();
        primes.dedup();
        match primes[..] {
            [] => Some(self.p),
            [only] => Some(only),
            _ => None,
        }
    }

    pub fn union(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .classes
            .iter()
            .flat_map(|c| c.cosets.iter().flatten().copied())
            .collect();
        v.sort_unstable();
        v
    }
}

/// Try to write `S` as a disjoint union of `Z_p`- and `Z_q`-cosets, where
/// `N` has exactly the two prime divisors `p < q`. Within one `Z_pq`-coset
/// class only one type can appear; a full class is ambiguous and resolves to
/// the smaller prime.
pub fn coset_union_decompose(
    s: &[u64],
    modulus: &CyclicModulus,
) -> Result<Option<CosetUnionDecomposition>> {
    let s = sorted_set(s, modulus)?;
    let n = modulus.n();
    if modulus.factorization().len() != 2 {
        return Err(Error::NotTwoPrimes(n));
    }
    let p = modulus.factorization()[0].0;
    let q = modulus.factorization()[1].0;
    let m = n / (p * q);

    let mut classes = Vec::new();
    for k in 0..m {
        // t-coordinates of the class: s = k + m*t with t in [0, pq).
        let ts: Vec<u64> = s.iter().filter(|&&x| x % m == k).map(|&x| x / m).collect();
        if ts.is_empty() {
            continue;
        }
        let element = |t: u64| k + m * t;
        // Lines {t = a mod q} are Z_p-cosets, lines {t = b mod p} are
        // Z_q-cosets.
        if let Some(cosets) = full_lines(&ts, q, p, |a, j| element(a + q * j)) {
            classes.push(ClassCosets {
                class: k,
                prime: p,
                cosets,
            });
        } else if let Some(cosets) = full_lines(&ts, p, q, |b, j| element(b + p * j)) {
            classes.push(ClassCosets {
                class: k,
                prime: q,
                cosets,
            });
        } else {
            return Ok(None);
        }
    }
    Ok(Some(CosetUnionDecomposition { p, q, classes }))
}

/// Group `ts` (all in `[0, step*len)`, distinct) by residue mod `step`; if
/// every nonempty group has the full `len` points it is the whole line, and
/// the lines are returned mapped through `element`.
fn full_lines(
    ts: &[u64],
    step: u64,
    len: u64,
    element: impl Fn(u64, u64) -> u64,
) -> Option<Vec<Vec<u64>>> {
    let mut groups: BTreeMap<u64, u64> = BTreeMap::new();
    for &t in ts {
        *groups.entry(t % step).or_default() += 1;
    }
    if groups.values().any(|&c| c != len) {
        return None;
    }
    let lines = groups
        .keys()
        .map(|&a| {
            let mut line: Vec<u64> = (0..len).map(|j| element(a, j)).collect();
            line.sort_unstable();
            line
        })
        .collect();
    Some(lines)
}

/// Does `S` generate `Z_N` (after translating so that 0 is a member)?
pub fn generates_group(s: &[u64], modulus: &CyclicModulus) -> Result<bool> {
    let s = sorted_set(s, modulus)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let min = s[0];
    let mut g = modulus.n();
    for &x in &s {
        g = num_integer::gcd(g, modulus.sub(x, min));
    }
    Ok(g == 1)
}

/// Everything the analyzer reports about one set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub zero_orders: Vec<u64>,
    pub zero_divisor_classes: Vec<u64>,
    pub h_s: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    pub equidistribution: BTreeMap<u64, bool>,
    pub coset_union: Option<CosetUnionDecomposition>,
    pub generates_group: bool,
}

pub fn structure_report(s: &[u64], modulus: &CyclicModulus) -> Result<StructureReport> {
    let s = sorted_set(s, modulus)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mask = MaskPolynomial::mask_of(&s, modulus)?;
    let profile = ZeroProfile::compute(&mask);
    let t1t2 = check_t1_t2(&s, modulus)?;
    let mut equidistribution = BTreeMap::new();
    for &d in modulus.divisors() {
        equidistribution.insert(d, equidistribution_check(&s, d, modulus)?.equidistributed);
    }
    let coset_union = if modulus.factorization().len() == 2 {
        coset_union_decompose(&s, modulus)?
    } else {
        None
    };
    Ok(StructureReport {
        zero_orders: profile.vanishing_orders().iter().copied().collect(),
        zero_divisor_classes: profile.zero_divisor_classes().iter().copied().collect(),
        h_s: t1t2.h_s.clone(),
        t1: t1t2.t1,
        t2: t1t2.t2,
        equidistribution,
        coset_union,
        generates_group: generates_group(&s, modulus)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(n: u64) -> CyclicModulus {
        CyclicModulus::new(n).unwrap()
    }

    #[test]
    fn spectral_pair_examples() {
        let m8 = modulus(8);
        assert!(is_spectral_pair(&[0, 1, 2, 3], &[0, 2, 4, 6], &m8).unwrap());
        let m5 = modulus(5);
        assert!(is_spectral_pair(&[0], &[0], &m5).unwrap());
        assert!(!is_spectral_pair(&[0, 1], &[0, 1], &m5).unwrap());
    }

    #[test]
    fn pair_is_symmetric() {
        let m6 = modulus(6);
        assert!(is_spectral_pair(&[0, 3], &[0, 1], &m6).unwrap());
        assert!(is_spectral_pair(&[0, 1], &[0, 3], &m6).unwrap());
        let dual = dual_pair(&[0, 3], &[0, 1], &m6).unwrap();
        assert_eq!(dual.set(), &[0, 1]);
        assert_eq!(dual.spectrum(), &[0, 3]);
    }

    #[test]
    fn dual_requires_spectral_input() {
        let m5 = modulus(5);
        assert!(matches!(
            dual_pair(&[0, 1], &[0, 1], &m5),
            Err(Error::NotSpectralPair)
        ));
    }

    #[test]
    fn normalize_examples() {
        let m8 = modulus(8);
        let pair = normalize_pair(&[1, 2, 3, 4], &[2, 4, 6, 0], &m8).unwrap();
        assert_eq!(pair.set(), &[0, 1, 2, 3]);
        assert_eq!(pair.spectrum(), &[0, 2, 4, 6]);

        let m6 = modulus(6);
        let pair = normalize_pair(&[5], &[3], &m6).unwrap();
        assert_eq!(pair.set(), &[0]);
        assert_eq!(pair.spectrum(), &[0]);

        let m8 = modulus(8);
        let pair = normalize_pair(&[0, 1, 2, 3], &[0, 2, 4, 6], &m8).unwrap();
        assert_eq!(pair.set(), &[0, 1, 2, 3]);
        assert_eq!(pair.spectrum(), &[0, 2, 4, 6]);
    }

    #[test]
    fn find_spectra_examples() {
        let m8 = modulus(8);
        let out = find_spectra(&[0, 1, 2, 3], &m8, &SpectrumSearchConfig::enumerate(64)).unwrap();
        assert_eq!(out.items, vec![vec![0, 2, 4, 6]]);
        assert_eq!(out.status, SearchStatus::Complete);

        let m6 = modulus(6);
        let out = find_spectra(&[0, 2, 4], &m6, &SpectrumSearchConfig::enumerate(64)).unwrap();
        assert!(out.items.contains(&vec![0, 1, 2]));
        for lambda in &out.items {
            assert!(is_spectral_pair(&[0, 2, 4], lambda, &m6).unwrap());
        }

        let out = find_spectra(&[0, 1, 3], &m6, &SpectrumSearchConfig::enumerate(64)).unwrap();
        assert!(out.certified_empty());
    }

    #[test]
    fn find_spectra_existence_mode_reports_cap() {
        let m6 = modulus(6);
        let out = find_spectra(&[0, 2, 4], &m6, &SpectrumSearchConfig::default()).unwrap();
        assert_eq!(out.items.len(), 1);
        assert_eq!(out.status, SearchStatus::SolutionCapReached);
    }

    #[test]
    fn t1_t2_examples() {
        let m8 = modulus(8);
        let r = check_t1_t2(&[0, 1, 2, 3], &m8).unwrap();
        assert_eq!(r.h_s, vec![2, 4]);
        assert!(r.t1);
        assert!(r.t2);

        let r = check_t1_t2(&[0], &m8).unwrap();
        assert!(r.h_s.is_empty());
        assert!(r.t1);
        assert!(r.t2);

        let r = check_t1_t2(&[0, 1, 2], &m8).unwrap();
        assert!(r.h_s.is_empty());
        assert!(!r.t1);
    }

    #[test]
    fn t2_exercises_coprime_products() {
        // The full group Z_6: H_S = {2, 3} and Phi_6 | S(x), so T2 holds.
        let m6 = modulus(6);
        let r = check_t1_t2(&[0, 1, 2, 3, 4, 5], &m6).unwrap();
        assert_eq!(r.h_s, vec![2, 3]);
        assert!(r.t1);
        assert!(r.t2);

        // {0,1,4,5,6,11} in Z_12 is equidistributed mod 2 and mod 3 but not
        // mod 6 (residue counts 2,1,0,0,1,2), so Phi_2, Phi_3 | S while
        // Phi_6 does not divide: T1 holds (6 = 2 * 3) and T2 fails.
        let m12 = modulus(12);
        let r = check_t1_t2(&[0, 1, 4, 5, 6, 11], &m12).unwrap();
        assert_eq!(r.h_s, vec![2, 3]);
        assert!(r.t1);
        assert!(!r.t2);
    }

    #[test]
    fn equidistribution_examples() {
        let m8 = modulus(8);
        assert!(equidistribution_check(&[0, 1, 2, 3], 2, &m8).unwrap().equidistributed);
        assert!(!equidistribution_check(&[0, 1, 2, 3], 8, &m8).unwrap().equidistributed);
        let m6 = modulus(6);
        let check = equidistribution_check(&[0, 2, 4], 3, &m6).unwrap();
        assert!(check.equidistributed);
        assert_eq!(check.counts, vec![1, 1, 1]);
    }

    #[test]
    fn ma_structure_examples() {
        let m12 = modulus(12);
        let cosets = ma_structure(&[0, 6, 1, 7], 2, &m12).unwrap().unwrap();
        assert_eq!(cosets, vec![vec![0, 6], vec![1, 7]]);

        assert!(ma_structure(&[0, 1], 2, &m12).unwrap().is_none());

        let full: Vec<u64> = (0..12).collect();
        let cosets = ma_structure(&full, 2, &m12).unwrap().unwrap();
        assert_eq!(cosets.len(), 6);
        assert_eq!(cosets[0], vec![0, 6]);
    }

    #[test]
    fn coset_union_examples() {
        let m12 = modulus(12);
        let d = coset_union_decompose(&[0, 6, 1, 5, 9], &m12).unwrap().unwrap();
        assert_eq!(
            d.all_cosets(),
            vec![(2, vec![0, 6]), (3, vec![1, 5, 9])]
        );
        assert!(d.single_type().is_none());

        assert!(coset_union_decompose(&[0, 1], &m12).unwrap().is_none());

        let d = coset_union_decompose(&[0, 2, 4, 6, 8, 10], &m12).unwrap().unwrap();
        assert!(d.classes.iter().all(|c| c.prime == 2));
        assert_eq!(d.single_type(), Some(2));
        assert_eq!(d.union(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn generates_group_examples() {
        let m8 = modulus(8);
        assert!(generates_group(&[0, 1], &m8).unwrap());
        assert!(!generates_group(&[0, 2, 4], &m8).unwrap());
        let m12 = modulus(12);
        assert!(generates_group(&[0, 2, 3], &m12).unwrap());
        assert!(matches!(generates_group(&[], &m12), Err(Error::EmptySet)));
    }

    #[test]
    fn generation_is_translation_invariant() {
        let m8 = modulus(8);
        assert!(!generates_group(&[1, 3], &m8).unwrap());
        assert!(generates_group(&[1, 2], &m8).unwrap());
    }
}
