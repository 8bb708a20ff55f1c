//! Exact arithmetic and exhaustive search for spectral sets, tilings and the
//! discrete Pompeiu property on finite cyclic groups (and Z_p x Z_p).
//!
//! Everything that decides anything is exact: vanishing at roots of unity is
//! polynomial divisibility over arbitrary-precision integers, weights are
//! rationals in lowest terms, and the searches (spectra as cliques in a
//! difference graph, tiling complements by exact cover) are plain integer
//! combinatorics. Floating point appears only in tests, as a cross-check.

pub mod bits;
pub mod budget;
pub mod cyclotomic;
pub mod error;
pub mod mask;
pub mod modulus;
pub mod poly;
pub mod pompeiu;
pub mod spectral;
pub mod tiling;
pub mod verify;
pub mod zeros;

pub use budget::{Budget, SearchOutcome, SearchStatus};
pub use cyclotomic::{cyclotomic_poly, phi_at_one, CyclotomicTable};
pub use error::{Error, Result};
pub use mask::MaskPolynomial;
pub use modulus::{divisor_class, CyclicModulus};
pub use poly::IntPoly;
pub use zeros::{residue_counts, VanishingTables, ZeroProfile};
