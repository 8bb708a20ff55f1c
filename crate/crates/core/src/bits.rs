//! Machine-word subsets of `Z_n` for the search-heavy paths (n <= 128).
//!
//! A subset is a bitmask with bit `i` set iff `i` is a member. Rotation by
//! `t` within the low `n` bits is translation by `t`. The canonical form of
//! a nonempty set is the lexicographically smallest member of its orbit under
//! translation (and optionally multiplication by units), as a sorted element
//! list; for equal-size sets that order coincides with comparing bit-reversed
//! masks, which makes the orbit scan branch-free.

use std::hash::Hash;
use std::ops::{BitAnd, BitOr, BitXor, Not};

pub trait SetWord:
    Copy
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + BitXor<Output = Self>
    + Not<Output = Self>
{
    const BITS: u32;
    fn zero() -> Self;
    fn bit(i: u32) -> Self;
    fn is_zero(self) -> bool;
    fn has(self, i: u32) -> bool;
    fn count(self) -> u32;
    /// Index of the lowest set bit; undefined on zero.
    fn lowest(self) -> u32;
    fn reverse(self) -> Self;
    fn shl(self, k: u32) -> Self;
    fn shr(self, k: u32) -> Self;
}

macro_rules! impl_set_word {
    ($($t:ty),*) => {$(
        impl SetWord for $t {
            const BITS: u32 = <$t>::BITS;
            #[inline] fn zero() -> Self { 0 }
            #[inline] fn bit(i: u32) -> Self { 1 << i }
            #[inline] fn is_zero(self) -> bool { self == 0 }
            #[inline] fn has(self, i: u32) -> bool { self >> i & 1 == 1 }
            #[inline] fn count(self) -> u32 { self.count_ones() }
            #[inline] fn lowest(self) -> u32 { self.trailing_zeros() }
            #[inline] fn reverse(self) -> Self { self.reverse_bits() }
            #[inline] fn shl(self, k: u32) -> Self { if k >= Self::BITS { 0 } else { self << k } }
            #[inline] fn shr(self, k: u32) -> Self { if k >= Self::BITS { 0 } else { self >> k } }
        }
    )*};
}

impl_set_word!(u32, u64, u128);

/// Rotate left by `t` within the low `n` bits (translation by `t` in `Z_n`).
#[inline]
pub fn rotate<W: SetWord>(mask: W, t: u32, n: u32) -> W {
    let t = t % n;
    if t == 0 {
        return mask;
    }
    let keep = full::<W>(n);
    (mask.shl(t) | mask.shr(n - t)) & keep
}

/// The full set `Z_n` as a mask.
#[inline]
pub fn full<W: SetWord>(n: u32) -> W {
    if n >= W::BITS {
        !W::zero()
    } else {
        !((!W::zero()).shl(n))
    }
}

/// Iterate the elements of a mask in increasing order.
#[derive(Clone, Copy)]
pub struct Elements<W: SetWord>(W);

impl<W: SetWord> Iterator for Elements<W> {
    type Item = u32;
    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0.is_zero() {
            return None;
        }
        let i = self.0.lowest();
        self.0 = self.0 ^ W::bit(i);
        Some(i)
    }
}

pub fn elements<W: SetWord>(mask: W) -> Elements<W> {
    Elements(mask)
}

pub fn mask_from<W: SetWord>(set: &[u64]) -> W {
    let mut m = W::zero();
    for &s in set {
        m = m | W::bit(s as u32);
    }
    m
}

pub fn set_from<W: SetWord>(mask: W) -> Vec<u64> {
    elements(mask).map(u64::from).collect()
}

/// The image of a set under multiplication by `u` (a unit of `Z_n`).
#[inline]
pub fn unit_image<W: SetWord>(mask: W, u: u32, n: u32) -> W {
    let mut out = W::zero();
    for i in elements(mask) {
        out = out | W::bit(((i as u64 * u as u64) % n as u64) as u32);
    }
    out
}

/// Lexicographic order on sorted element lists, restricted to equal-size
/// sets, is bit-reversed mask order: A < B iff rev(A) > rev(B).
#[inline]
fn lex_key<W: SetWord>(mask: W) -> W {
    mask.reverse()
}

/// Canonical representative (lex-min sorted element list) of the orbit of a
/// nonempty set under translation, and under the given units when
/// `units.len() > 1`. Always contains 0 and is idempotent.
pub fn canonical_mask<W: SetWord>(mask: W, n: u32, units: &[u32]) -> W {
    debug_assert!(!mask.is_zero());
    let mut best = None::<W>;
    for &u in units {
        let image = if u == 1 { mask } else { unit_image(mask, u, n) };
        for p in elements(image) {
            let candidate = rotate(image, n - p, n);
            if best.map_or(true, |b| lex_key(candidate) > lex_key(b)) {
                best = Some(candidate);
            }
        }
    }
    best.expect("nonempty set has a canonical form")
}

/// True iff `mask` equals its canonical form. Cheaper than computing the
/// form when scanning all subsets: bail on the first better candidate.
pub fn is_canonical<W: SetWord>(mask: W, n: u32, units: &[u32]) -> bool {
    let key = lex_key(mask);
    for &u in units {
        let image = if u == 1 { mask } else { unit_image(mask, u, n) };
        for p in elements(image) {
            if lex_key(rotate(image, n - p, n)) > key {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotate_is_translation() {
        let m: u32 = mask_from(&[0, 1, 5]);
        let r = rotate(m, 2, 6);
        assert_eq!(set_from::<u32>(r), vec![1, 2, 3]);
        assert_eq!(rotate(m, 6, 6), m);
    }

    #[test]
    fn full_mask_has_n_bits() {
        assert_eq!(full::<u32>(6), 0b111111);
        assert_eq!(full::<u32>(32), u32::MAX);
        assert_eq!(full::<u64>(64), u64::MAX);
        assert_eq!(full::<u128>(5), 0b11111);
    }

    #[test]
    fn canonical_examples() {
        // {1,2} in Z_6 -> {0,1}
        let m: u32 = mask_from(&[1, 2]);
        assert_eq!(set_from(canonical_mask(m, 6, &[1])), vec![0, 1]);

        // {0,2} in Z_5 with units -> {0,1} (multiply by 3)
        let m: u32 = mask_from(&[0, 2]);
        let units = [1u32, 2, 3, 4];
        assert_eq!(set_from(canonical_mask(m, 5, &units)), vec![0, 1]);

        // {0} stays put
        let m: u32 = mask_from(&[0]);
        assert_eq!(set_from(canonical_mask(m, 9, &[1])), vec![0]);
    }

    #[test]
    fn canonical_is_idempotent_and_orbit_constant() {
        let n = 10u32;
        let units: Vec<u32> = (1..n).filter(|u| num_integer::gcd(*u, n) == 1).collect();
        for raw in 1u32..(1 << n) {
            let c = canonical_mask(raw, n, &units);
            assert_eq!(canonical_mask(c, n, &units), c);
            assert!(is_canonical(c, n, &units));
            // Every translate canonicalizes to the same representative.
            for t in 0..n {
                assert_eq!(canonical_mask(rotate(raw, t, n), n, &units), c);
            }
        }
    }

    #[test]
    fn lex_order_matches_sorted_list_comparison() {
        // {0,1,5} vs {0,2,3} in Z_6: lex order on sorted lists says the first
        // is smaller even though its mask value is larger.
        let a: u32 = mask_from(&[0, 1, 5]);
        let b: u32 = mask_from(&[0, 2, 3]);
        assert!(a > b);
        assert!(lex_key(a) > lex_key(b)); // i.e. list(a) < list(b)
    }

    #[test]
    fn canonical_prefers_lex_smaller_list() {
        // The orbit of {0,1,5} under translation in Z_6 contains {0,1,2}
        // (translate by 1); the canonical form must be {0,1,2}.
        let m: u32 = mask_from(&[0, 1, 5]);
        assert_eq!(set_from(canonical_mask(m, 6, &[1])), vec![0, 1, 2]);
    }
}
