//! Structured sweep for `N = p^e q^2`: instead of all subsets, enumerate the
//! family that survives the reduction dispatches (disjoint unions of
//! `Z_p`- and `Z_q`-cosets) and test spectral => tile on it; independently
//! enumerate all tiles and test tile => spectral.

use super::exhaustive::SetAnalyzer;
use super::{
    reduction_applicability, unit_list, ClassRecord, GroupDescription, VerificationReport,
    VerifyMode, VerifyOptions,
};
use crate::bits::{self, SetWord};
use crate::error::{Error, Result};
use crate::modulus::CyclicModulus;
use crate::tiling;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

/// The two-prime shape `N = p^e q^2`: `q` is a prime whose exponent is
/// exactly 2 (the smaller one when both qualify).
#[derive(Debug, Clone, Copy)]
pub(crate) struct PnQSquaredShape {
    pub p: u64,
    pub q: u64,
}

pub(crate) fn pn_q_squared_shape(modulus: &CyclicModulus) -> Result<PnQSquaredShape> {
    let factors = modulus.factorization();
    if factors.len() != 2 {
        return Err(Error::NotPnQSquared(modulus.n()));
    }
    let q = factors
        .iter()
        .find(|&&(_, e)| e == 2)
        .map(|&(p, _)| p)
        .ok_or(Error::NotPnQSquared(modulus.n()))?;
    let p = factors.iter().map(|&(p, _)| p).find(|&r| r != q).unwrap();
    Ok(PnQSquaredShape { p, q })
}

pub fn verify_fuglede_structured(n: u64, options: &VerifyOptions) -> Result<VerificationReport> {
    if n <= 32 {
        run_structured::<u32>(n, options)
    } else if n <= 64 {
        run_structured::<u64>(n, options)
    } else {
        Err(Error::ModulusTooLarge {
            modulus: n,
            limit: 64,
        })
    }
}

fn run_structured<W: SetWord>(n: u64, options: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let modulus = CyclicModulus::new(n)?;
    let shape = pn_q_squared_shape(&modulus)?;
    let analyzer = Arc::new(SetAnalyzer::<W>::new(&modulus)?);
    let units = unit_list(&modulus, options.use_units);
    let nn = n as u32;

    // Part (a): every disjoint union of Z_p- and Z_q-cosets, up to symmetry.
    let candidates = coset_union_candidates::<W>(&modulus, shape, nn, &units);
    let mut budget_hit = false;

    let outcomes: Vec<CandidateOutcome<W>> = candidates
        .par_iter()
        .map(|&smask| analyze_candidate(smask, &analyzer, &modulus, shape, options))
        .collect();

    let mut spectral_count = 0u64;
    let mut both_count = 0u64;
    let mut counterexamples: Vec<(W, bool, bool)> = Vec::new();
    let mut violations: Vec<String> = Vec::new();
    let mut pairs: Vec<(W, W)> = Vec::new();
    let mut box_stats: BTreeMap<String, u64> = BTreeMap::new();
    for outcome in outcomes {
        budget_hit |= outcome.budget_hit;
        if let Some(lambda) = outcome.lambda {
            spectral_count += 1;
            pairs.push((outcome.smask, lambda));
            *box_stats.entry(outcome.box_label.clone()).or_default() += 1;
            if outcome.tile {
                both_count += 1;
            } else {
                counterexamples.push((outcome.smask, true, false));
            }
            violations.extend(outcome.violations);
        }
    }

    // Part (b): every tile must be spectral.
    let tiles = tiling::enumerate_tiles(&modulus, options.budget)?;
    budget_hit |= !tiles.is_complete();
    let mut tile_masks: BTreeSet<W> = BTreeSet::new();
    for t in &tiles.items {
        tile_masks.insert(bits::canonical_mask(bits::mask_from::<W>(t), nn, &units));
    }
    let tile_masks: Vec<W> = tile_masks.into_iter().collect();
    let tile_outcomes: Vec<(W, Option<W>, bool)> = tile_masks
        .par_iter()
        .map(|&t| {
            let (lambda, hit) = analyzer.find_spectrum(t, options.budget);
            (t, lambda, hit)
        })
        .collect();
    let tile_count = tile_masks.len() as u64;
    for (t, lambda, hit) in tile_outcomes {
        budget_hit |= hit;
        match lambda {
            Some(l) => pairs.push((t, l)),
            None => {
                if !hit {
                    counterexamples.push((t, false, true));
                }
            }
        }
    }

    let mut counterexamples: Vec<ClassRecord> = counterexamples
        .into_iter()
        .map(|(m, spectral, tile)| {
            let representative = bits::set_from(m);
            ClassRecord {
                size: representative.len() as u64,
                representative,
                spectral,
                tile,
            }
        })
        .collect();
    counterexamples.sort_by(|a, b| a.representative.cmp(&b.representative));
    let mut spectral_pairs: Vec<(Vec<u64>, Vec<u64>)> = pairs
        .into_iter()
        .map(|(s, l)| (bits::set_from(s), bits::set_from(l)))
        .collect();
    spectral_pairs.sort();
    spectral_pairs.dedup();
    violations.sort();

    Ok(VerificationReport {
        group: GroupDescription::Cyclic { n },
        mode: VerifyMode::Structured,
        certifying: true,
        unit_reduction: options.use_units,
        classes_examined: candidates.len() as u64 + tile_count,
        spectral_count,
        tile_count,
        both_count,
        counterexamples,
        structure_violations: violations,
        inconclusive: budget_hit,
        box_stats,
        wall_time_secs: start.elapsed().as_secs_f64(),
        details: None,
        spectral_pairs,
    })
}

struct CandidateOutcome<W: SetWord> {
    smask: W,
    lambda: Option<W>,
    tile: bool,
    box_label: String,
    violations: Vec<String>,
    budget_hit: bool,
}

fn analyze_candidate<W: SetWord>(
    smask: W,
    analyzer: &SetAnalyzer<W>,
    modulus: &CyclicModulus,
    shape: PnQSquaredShape,
    options: &VerifyOptions,
) -> CandidateOutcome<W> {
    let (lambda, sp_hit) = analyzer.find_spectrum(smask, options.budget);
    let mut outcome = CandidateOutcome {
        smask,
        lambda,
        tile: false,
        box_label: String::new(),
        violations: Vec::new(),
        budget_hit: sp_hit,
    };
    let Some(lambda) = outcome.lambda else {
        return outcome;
    };
    let n = modulus.n();
    let s: Vec<u64> = bits::set_from(smask);
    let lambda_set: Vec<u64> = bits::set_from(lambda);

    let (tile, tile_hit) = analyzer.has_complement(smask, options.budget);
    outcome.tile = tile;
    outcome.budget_hit |= tile_hit;

    // Vanishing pattern of S at the roots of order N/q and N/q^2.
    let mask = crate::mask::MaskPolynomial::mask_of(&s, modulus).expect("valid set");
    let v_q = mask.vanishes_at_order(n / shape.q).expect("divisor");
    let v_q2 = mask.vanishes_at_order(n / (shape.q * shape.q)).expect("divisor");
    outcome.box_label = format!(
        "S(xi^q){}0,S(xi^q2){}0",
        if v_q { "=" } else { "!=" },
        if v_q2 { "=" } else { "!=" }
    );

    // Side assertions on the discovered pair.
    let size = s.len() as u64;
    match crate::spectral::coset_union_decompose(&s, modulus) {
        Ok(Some(decomposition)) => {
            if decomposition.single_type().is_none() && size % (shape.p * shape.q) != 0 {
                outcome.violations.push(format!(
                    "mixed coset union {s:?} is spectral but pq = {} does not divide |S| = {size}",
                    shape.p * shape.q
                ));
            }
        }
        Ok(None) => outcome.violations.push(format!(
            "structured candidate {s:?} is not a disjoint coset union"
        )),
        Err(e) => outcome.violations.push(format!("{s:?}: {e}")),
    }
    if size % (shape.q * shape.q) == 0 && !tile && !outcome.budget_hit {
        outcome.violations.push(format!(
            "spectral set {s:?} with q^2 | |S| admits no tiling complement"
        ));
    }
    match reduction_applicability(&s, &lambda_set, modulus) {
        Ok(flags) => {
            if flags.survives_all && size % (shape.p * shape.q) != 0 {
                outcome.violations.push(format!(
                    "surviving pair ({s:?}, {lambda_set:?}) has |S| = {size} not divisible by pq"
                ));
            }
        }
        Err(e) => outcome.violations.push(format!("{s:?}: {e}")),
    }
    outcome
}

/// Enumerate every nonempty disjoint union of `Z_p`- and `Z_q`-cosets, as
/// canonical masks. Cosets meeting the same residue class mod `N/(pq)`
/// intersect across types, so each class independently picks cosets of one
/// type only; the classes are enumerated recursively with the first class
/// parallelized.
fn coset_union_candidates<W: SetWord>(
    modulus: &CyclicModulus,
    shape: PnQSquaredShape,
    n: u32,
    units: &[u32],
) -> Vec<W> {
    let nn = modulus.n();
    let m = nn / (shape.p * shape.q);
    let p_step = nn / shape.p;
    let q_step = nn / shape.q;
    let coset_mask = |anchor: u64, prime: u64, step: u64| -> W {
        let mut w = W::zero();
        for k in 0..prime {
            w = w | W::bit((anchor + k * step) as u32);
        }
        w
    };
    // Per residue class r: the available cosets of each type.
    let class_options: Vec<Vec<W>> = (0..m)
        .map(|r| {
            let p_cosets: Vec<W> = (0..shape.q)
                .map(|j| coset_mask(r + j * m, shape.p, p_step))
                .collect();
            let q_cosets: Vec<W> = (0..shape.p)
                .map(|j| coset_mask(r + j * m, shape.q, q_step))
                .collect();
            let mut options = Vec::new();
            // Any subset of q-type cosets (including the empty choice)...
            for pick in 0..(1u32 << q_cosets.len()) {
                let mut w = W::zero();
                for (i, &c) in q_cosets.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        w = w | c;
                    }
                }
                options.push(w);
            }
            // ... or a nonempty subset of p-type cosets.
            for pick in 1..(1u32 << p_cosets.len()) {
                let mut w = W::zero();
                for (i, &c) in p_cosets.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        w = w | c;
                    }
                }
                options.push(w);
            }
            options
        })
        .collect();

    let tail = |first: W, classes: &[Vec<W>]| -> BTreeSet<W> {
        let mut found = BTreeSet::new();
        let mut stack = vec![(first, 0usize)];
        while let Some((mask, depth)) = stack.pop() {
            if depth == classes.len() {
                if !mask.is_zero() {
                    found.insert(bits::canonical_mask(mask, n, units));
                }
                continue;
            }
            for &option in &classes[depth] {
                stack.push((mask | option, depth + 1));
            }
        }
        found
    };

    let (first_class, rest) = class_options.split_first().expect("at least one class");
    let merged: BTreeSet<W> = first_class
        .par_iter()
        .map(|&first| tail(first, rest))
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    merged.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_detection() {
        assert!(pn_q_squared_shape(&CyclicModulus::new(8).unwrap()).is_err());
        assert!(pn_q_squared_shape(&CyclicModulus::new(30).unwrap()).is_err());
        let s = pn_q_squared_shape(&CyclicModulus::new(12).unwrap()).unwrap();
        assert_eq!((s.p, s.q), (3, 2));
        let s = pn_q_squared_shape(&CyclicModulus::new(18).unwrap()).unwrap();
        assert_eq!((s.p, s.q), (2, 3));
        let s = pn_q_squared_shape(&CyclicModulus::new(36).unwrap()).unwrap();
        assert_eq!((s.p, s.q), (3, 2));
    }

    #[test]
    fn structured_12_is_clean() {
        let report = verify_fuglede_structured(12, &VerifyOptions::default()).unwrap();
        assert!(report.counterexamples.is_empty());
        assert!(report.structure_violations.is_empty());
        assert!(!report.inconclusive);
        assert!(report.spectral_count > 0);
        assert!(report.tile_count > 0);
    }

    #[test]
    fn candidates_are_coset_unions() {
        let modulus = CyclicModulus::new(12).unwrap();
        let shape = pn_q_squared_shape(&modulus).unwrap();
        let units = unit_list(&modulus, true);
        let candidates = coset_union_candidates::<u32>(&modulus, shape, 12, &units);
        assert!(!candidates.is_empty());
        for &c in &candidates {
            let s = bits::set_from(c);
            assert!(
                crate::spectral::coset_union_decompose(&s, &modulus)
                    .unwrap()
                    .is_some(),
                "{s:?}"
            );
        }
    }
}
