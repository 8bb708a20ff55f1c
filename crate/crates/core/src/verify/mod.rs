//! Desk-scale verification drivers: exhaustive sweeps over canonical subset
//! classes, the structured sweep for two-prime moduli with a square factor,
//! the p-by-p grid case, and a non-certifying sampled mode.

mod exhaustive;
mod sampled;
mod structured;
mod zp2;

pub use exhaustive::verify_fuglede_exhaustive;
pub use sampled::verify_fuglede_sampled;
pub use structured::verify_fuglede_structured;
pub use zp2::{verify_zp2, zp2_character_vanishes, Zp2Set};

use crate::bits::{self, SetWord};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::mask::MaskPolynomial;
use crate::modulus::CyclicModulus;
use crate::spectral;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Options shared by the verification drivers.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Reduce by unit multiplication as well as translation. Sound because
    /// zero profiles are invariant under the Galois action and tiling under
    /// group automorphisms; re-checked empirically at small moduli by the
    /// test suite before being relied on at larger ones.
    pub use_units: bool,
    /// Worker threads; `None` uses the global default.
    pub jobs: Option<usize>,
    pub budget: Budget,
    /// Keep one record per canonical class in the report.
    pub retain_details: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            use_units: true,
            jobs: None,
            budget: Budget::unlimited(),
            retain_details: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Structured,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescription {
    Cyclic { n: u64 },
    PrimeSquare { p: u64 },
}

/// One canonical class with its two statuses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: Vec<u64>,
    pub size: u64,
    pub spectral: bool,
    pub tile: bool,
}

/// Outcome of one verification run. `counterexamples` lists every canonical
/// class whose spectral and tile statuses differ; a timeout can only make the
/// run `inconclusive`, never a silent pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: GroupDescription,
    pub mode: VerifyMode,
    /// Sampled runs never certify anything.
    pub certifying: bool,
    pub unit_reduction: bool,
    pub classes_examined: u64,
    pub spectral_count: u64,
    pub tile_count: u64,
    pub both_count: u64,
    pub counterexamples: Vec<ClassRecord>,
    /// Failed side assertions (size constraints, subgroup structure, ...).
    pub structure_violations: Vec<String>,
    pub inconclusive: bool,
    /// Structured mode: how many examined spectral sets fall into each
    /// vanishing pattern of `S` at the roots of order N/q and N/q^2.
    pub box_stats: BTreeMap<String, u64>,
    pub wall_time_secs: f64,
    pub details: Option<Vec<ClassRecord>>,
    /// Spectral pairs discovered along the way (set, spectrum); in-memory
    /// only, for the invariance checks.
    #[serde(skip)]
    pub spectral_pairs: Vec<(Vec<u64>, Vec<u64>)>,
}

impl VerificationReport {
    /// Copy with the timing field zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport {
            wall_time_secs: 0.0,
            ..self.clone()
        }
    }
}

/// Canonical orbit representative of a nonempty set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub representative: Vec<u64>,
    pub used_units: bool,
}

/// The lexicographically smallest translate of `S` containing 0, taken over
/// unit multiples as well when `use_units` is set.
pub fn canonicalize(s: &[u64], modulus: &CyclicModulus, use_units: bool) -> Result<CanonicalForm> {
    modulus.check_elements(s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = modulus.n();
    let representative = if n <= 32 {
        canonicalize_words::<u32>(s, modulus, use_units)?
    } else if n <= 64 {
        canonicalize_words::<u64>(s, modulus, use_units)?
    } else if n <= 128 {
        canonicalize_words::<u128>(s, modulus, use_units)?
    } else {
        return Err(Error::ModulusTooLarge {
            modulus: n,
            limit: 128,
        });
    };
    Ok(CanonicalForm {
        representative,
        used_units: use_units,
    })
}

fn canonicalize_words<W: SetWord>(
    s: &[u64],
    modulus: &CyclicModulus,
    use_units: bool,
) -> Result<Vec<u64>> {
    let n = modulus.n() as u32;
    let units = unit_list(modulus, use_units);
    let mask: W = bits::mask_from(s);
    if mask.count() as usize != s.len() {
        return Err(Error::Input("duplicate element in set".into()));
    }
    Ok(bits::set_from(bits::canonical_mask(mask, n, &units)))
}

pub(crate) fn unit_list(modulus: &CyclicModulus, use_units: bool) -> Vec<u32> {
    if use_units {
        modulus.units().iter().map(|&u| u as u32).collect()
    } else {
        vec![1]
    }
}

/// Which dispatch clauses of the structured reduction apply to a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionFlags {
    pub trivial_size: bool,
    pub s_generates: bool,
    pub lambda_generates: bool,
    /// The characters indexed by the spectrum have no common kernel, i.e.
    /// gcd of the spectrum is coprime to N.
    pub common_kernel_trivial: bool,
    pub s_faithful_zero: bool,
    pub lambda_faithful_zero: bool,
    /// On two-prime moduli: `Some(p)` when S splits into cosets of a single
    /// prime, which is dispatched separately.
    pub s_single_type_cosets: Option<u64>,
    /// No dispatch applies; the pair belongs to the structured core family.
    pub survives_all: bool,
}

/// Evaluate the reduction dispatch flags on a spectral pair.
pub fn reduction_applicability(
    s: &[u64],
    lambda: &[u64],
    modulus: &CyclicModulus,
) -> Result<ReductionFlags> {
    if !spectral::is_spectral_pair(s, lambda, modulus)? {
        return Err(Error::NotSpectralPair);
    }
    let n = modulus.n();
    let trivial_size = s.len() <= 1;
    let s_generates = spectral::generates_group(s, modulus)?;
    let lambda_generates = spectral::generates_group(lambda, modulus)?;
    let common_kernel_trivial = {
        let mut g = n;
        for &l in lambda {
            g = num_integer::gcd(g, l);
        }
        g == 1
    };
    let s_mask = MaskPolynomial::mask_of(s, modulus)?;
    let lambda_mask = MaskPolynomial::mask_of(lambda, modulus)?;
    let s_faithful_zero = s_mask.vanishes_at_order(n)?;
    let lambda_faithful_zero = lambda_mask.vanishes_at_order(n)?;
    let s_single_type_cosets = if modulus.factorization().len() == 2 {
        spectral::coset_union_decompose(s, modulus)?.and_then(|d| d.single_type())
    } else {
        None
    };
    let survives_all = !trivial_size
        && s_generates
        && lambda_generates
        && common_kernel_trivial
        && s_faithful_zero
        && lambda_faithful_zero
        && s_single_type_cosets.is_none();
    Ok(ReductionFlags {
        trivial_size,
        s_generates,
        lambda_generates,
        common_kernel_trivial,
        s_faithful_zero,
        lambda_faithful_zero,
        s_single_type_cosets,
        survives_all,
    })
}
