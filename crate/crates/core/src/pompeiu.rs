//! The discrete Pompeiu property for rational weight functions on `Z_N`,
//! and the structural decompositions of non-Pompeiu weights: coset
//! decompositions, the grid-cuboid criterion on square-free moduli, and the
//! nonnegative two-prime decomposition.

use crate::error::{Error, Result};
use crate::mask::MaskPolynomial;
use crate::modulus::CyclicModulus;
use crate::poly::IntPoly;
use crate::zeros::ZeroProfile;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// A rational-valued function on `Z_N`, identified with its mask polynomial.
/// A set corresponds to 0/1 weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    mask: MaskPolynomial,
}

impl WeightFunction {
    pub fn from_mask(mask: MaskPolynomial) -> Self {
        WeightFunction { mask }
    }

    pub fn from_values(values: Vec<BigRational>, modulus: &CyclicModulus) -> Result<Self> {
        Ok(WeightFunction {
            mask: MaskPolynomial::from_rationals(values, modulus)?,
        })
    }

    pub fn indicator(set: &[u64], modulus: &CyclicModulus) -> Result<Self> {
        let mask = MaskPolynomial::mask_of(set, modulus)?;
        if !mask.is_set_mask() {
            return Err(Error::NotASetMask);
        }
        Ok(WeightFunction { mask })
    }

    /// Parse the `index,value` CSV format (header required). `value` is an
    /// integer or `n/d`; the three-column header `index,numerator,denominator`
    /// is also accepted. Unlisted indices weigh 0.
    pub fn from_csv(text: &str, modulus: &CyclicModulus) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Input("empty weight CSV".into()))?;
        let header_fields: Vec<&str> = header.split(',').map(str::trim).collect();
        let three_column = match header_fields.as_slice() {
            ["index", "value"] => false,
            ["index", "numerator", "denominator"] => true,
            _ => {
                return Err(Error::Input(format!(
                    "unrecognized weight CSV header: {header:?}"
                )))
            }
        };
        let mut values = vec![BigRational::zero(); modulus.n() as usize];
        let mut seen = vec![false; modulus.n() as usize];
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let (index, value) = match (three_column, fields.as_slice()) {
                (false, [i, v]) => (*i, parse_rational(v)?),
                (true, [i, n, d]) => (*i, parse_rational(&format!("{n}/{d}"))?),
                _ => return Err(Error::Input(format!("malformed weight CSV row: {line:?}"))),
            };
            let index: u64 = index
                .parse()
                .map_err(|_| Error::Input(format!("bad index {index:?}")))?;
            if index >= modulus.n() {
                return Err(Error::ElementOutOfRange {
                    element: index,
                    modulus: modulus.n(),
                });
            }
            if seen[index as usize] {
                return Err(Error::Input(format!("duplicate index {index}")));
            }
            seen[index as usize] = true;
            values[index as usize] = value;
        }
        Self::from_values(values, modulus)
    }

    pub fn mask(&self) -> &MaskPolynomial {
        &self.mask
    }

    pub fn modulus(&self) -> &CyclicModulus {
        self.mask.modulus()
    }

    pub fn value(&self, i: u64) -> &BigRational {
        self.mask.coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.mask.is_zero()
    }
}

/// Parse `-3`, `5/2`, `-7/3`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("bad rational {text:?}"));
    match text.split_once('/') {
        None => {
            let n: BigInt = text.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Is `w` a Pompeiu weight function? Equivalent to the circulant of `w`
/// being invertible: no character sum over `w` vanishes, i.e. `m_w(1) != 0`
/// and the zero profile of `m_w` is empty. The identically-zero weight is
/// rejected as degenerate.
pub fn is_pompeiu(w: &WeightFunction) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::DegenerateWeight);
    }
    if w.mask.eval_at_one().is_zero() {
        return Ok(false);
    }
    Ok(ZeroProfile::compute(&w.mask).is_empty())
}

/// The orders of the witnessing characters: `{m | N, m > 1 : Phi_m | m_w}`,
/// plus 1 when the total weight vanishes. Every character of a listed order
/// annihilates `w`; an empty set means `w` is Pompeiu.
pub fn nonpompeiu_witnesses(w: &WeightFunction) -> BTreeSet<u64> {
    let mut witnesses: BTreeSet<u64> = ZeroProfile::compute(&w.mask)
        .vanishing_orders()
        .iter()
        .copied()
        .collect();
    if w.mask.eval_at_one().is_zero() {
        witnesses.insert(1);
    }
    witnesses
}

/// One coset indicator term `coefficient * 1_{Z_p + g}`, where `Z_p` is the
/// order-`p` subgroup and `g` ranges over `[0, N/p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTerm {
    pub prime: u64,
    pub coset: u64,
    pub coefficient: BigRational,
}

/// A weight written as a rational combination of prime-order coset
/// indicators. Only the recombination is contractual; the particular
/// coefficients are a deterministic choice among the valid solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    modulus: CyclicModulus,
    terms: Vec<CosetTerm>,
}

impl CosetDecomposition {
    pub fn terms(&self) -> &[CosetTerm] {
        &self.terms
    }

    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }

    /// Rebuild the weight as `sum w_{p,g} 1_{Z_p + g}`.
    pub fn recombine(&self) -> WeightFunction {
        let n = self.modulus.n();
        let mut values = vec![BigRational::zero(); n as usize];
        for term in &self.terms {
            let step = n / term.prime;
            for k in 0..term.prime {
                values[(term.coset + k * step) as usize] += &term.coefficient;
            }
        }
        WeightFunction::from_values(values, &self.modulus).expect("lengths match")
    }
}

/// Decompose a weight vanishing at a primitive `N`-th root of unity into a
/// rational combination of `Z_p`-coset indicators over the primes `p | N`.
/// Such a decomposition exists exactly under that vanishing hypothesis; the
/// underdetermined linear system is solved by reduced row echelon with free
/// coefficients pinned to zero, which makes the output deterministic.
pub fn faithful_coset_decomposition(w: &WeightFunction) -> Result<CosetDecomposition> {
    let modulus = w.modulus().clone();
    let n = modulus.n();
    if !w.mask.vanishes_at_order(n)? {
        return Err(Error::NotFaithfullyVanishing);
    }
    // Unknowns: (p, g) for p | N prime, g in [0, N/p), ordered by (p, g).
    let primes = modulus.primes();
    let mut offsets = Vec::new();
    let mut cols = 0usize;
    for &p in &primes {
        offsets.push(cols);
        cols += (n / p) as usize;
    }
    let mut rows = Vec::with_capacity(n as usize);
    let mut rhs = Vec::with_capacity(n as usize);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); cols];
        for (pi, &p) in primes.iter().enumerate() {
            row[offsets[pi] + (i % (n / p)) as usize] = BigRational::one();
        }
        rows.push(row);
        rhs.push(w.value(i).clone());
    }
    let solution = solve_rational_system(rows, rhs).ok_or(Error::NotFaithfullyVanishing)?;
    let mut terms = Vec::new();
    for (pi, &p) in primes.iter().enumerate() {
        for g in 0..(n / p) {
            let c = &solution[offsets[pi] + g as usize];
            if !c.is_zero() {
                terms.push(CosetTerm {
                    prime: p,
                    coset: g,
                    coefficient: c.clone(),
                });
            }
        }
    }
    Ok(CosetDecomposition { modulus, terms })
}

/// Reduced row echelon over the rationals; free variables are set to zero.
/// Returns `None` when the system is inconsistent.
fn solve_rational_system(
    mut rows: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_of_col = vec![None::<usize>; ncols];
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (next_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot);
        rhs.swap(next_row, pivot);
        let lead = rows[next_row][col].clone();
        for x in rows[next_row].iter_mut() {
            *x /= &lead;
        }
        rhs[next_row] /= &lead;
        for r in 0..nrows {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let (head, tail) = if r < next_row {
                    let (a, b) = rows.split_at_mut(next_row);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut b[0], &a[next_row])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x -= &factor * y;
                }
                let delta = &factor * &rhs[next_row];
                rhs[r] -= delta;
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == nrows {
            break;
        }
    }
    // Inconsistent iff a zero row has nonzero right-hand side.
    for r in next_row..nrows {
        if rows[r].iter().all(Zero::is_zero) && !rhs[r].is_zero() {
            return None;
        }
    }
    let mut solution = vec![BigRational::zero(); ncols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = rhs[*r].clone();
        }
    }
    Some(solution)
}

/// The Chinese-remainder picture of a square-free modulus `N = p_1 ... p_d`:
/// `Z_N` as the grid `prod [0, p_i)`, on which `Z_{p_i}`-cosets are the
/// axis-`i` lines.
#[derive(Debug, Clone)]
pub struct GridEmbedding {
    modulus: CyclicModulus,
    primes: Vec<u64>,
    /// CRT basis: `basis[i] = (N/p_i) * inv(N/p_i mod p_i) mod N`.
    basis: Vec<u64>,
}

impl GridEmbedding {
    pub fn new(modulus: &CyclicModulus) -> Result<Self> {
        if !modulus.is_square_free() {
            return Err(Error::NotSquareFree(modulus.n()));
        }
        let primes = modulus.primes();
        let n = modulus.n();
        let basis = primes
            .iter()
            .map(|&p| {
                let m = n / p;
                let inv = (1..p)
                    .find(|&j| (m % p) * j % p == 1)
                    .expect("N/p is invertible mod p on a square-free modulus");
                m * inv % n
            })
            .collect();
        Ok(GridEmbedding {
            modulus: modulus.clone(),
            primes,
            basis,
        })
    }

    pub fn dimension(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn to_grid(&self, x: u64) -> Vec<u64> {
        self.primes.iter().map(|&p| x % p).collect()
    }

    pub fn from_grid(&self, coords: &[u64]) -> u64 {
        let n = self.modulus.n();
        coords
            .iter()
            .zip(&self.basis)
            .fold(0u64, |acc, (&c, &b)| (acc + c % n * b) % n)
    }
}

/// `2^d` corner points of an axis-aligned box: one pair of distinct
/// coordinates per dimension, anchored at the first coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCuboid {
    /// `(a_i, b_i)` with `a_i != b_i`; the anchor is `(a_1, ..., a_d)`.
    pub pairs: Vec<(u64, u64)>,
}

impl GridCuboid {
    /// Corners with the parity of their Hamming distance to the anchor.
    pub fn corners(&self) -> Vec<(Vec<u64>, bool)> {
        let d = self.pairs.len();
        (0..1u32 << d)
            .map(|flip| {
                let coords = self
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if flip >> i & 1 == 1 { b } else { a })
                    .collect();
                (coords, flip.count_ones() % 2 == 1)
            })
            .collect()
    }
}

/// The signed corner sum `sum (-1)^{pi(c)} w(c)` over a grid-cuboid, where
/// `pi` is the Hamming distance to the anchor.
pub fn cuboid_alternating_sum(w: &WeightFunction, cuboid: &GridCuboid) -> Result<BigRational> {
    let embedding = GridEmbedding::new(w.modulus())?;
    if cuboid.pairs.len() != embedding.dimension() {
        return Err(Error::Input(format!(
            "cuboid dimension {} does not match grid dimension {}",
            cuboid.pairs.len(),
            embedding.dimension()
        )));
    }
    for (i, &(a, b)) in cuboid.pairs.iter().enumerate() {
        let p = embedding.primes()[i];
        if a == b || a >= p || b >= p {
            return Err(Error::Input(format!(
                "coordinate pair ({a}, {b}) invalid in dimension {i} (prime {p})"
            )));
        }
    }
    let mut sum = BigRational::zero();
    for (coords, odd) in cuboid.corners() {
        let value = w.value(embedding.from_grid(&coords));
        if odd {
            sum -= value;
        } else {
            sum += value;
        }
    }
    Ok(sum)
}

/// Exhaustive check of the alternating-sum criterion over all
/// `prod C(p_i, 2)` grid-cuboids. On a prime modulus (`d = 1`) the cuboids
/// degenerate to pairs, so the property forces constant weights.
pub fn cuboid_property_holds(w: &WeightFunction) -> Result<bool> {
    let embedding = GridEmbedding::new(w.modulus())?;
    let mut pairs = vec![(0u64, 1u64); embedding.dimension()];
    cuboids_rec(w, &embedding, 0, &mut pairs)
}

fn cuboids_rec(
    w: &WeightFunction,
    embedding: &GridEmbedding,
    dim: usize,
    pairs: &mut Vec<(u64, u64)>,
) -> Result<bool> {
    if dim == embedding.dimension() {
        let cuboid = GridCuboid {
            pairs: pairs.clone(),
        };
        return Ok(cuboid_alternating_sum(w, &cuboid)?.is_zero());
    }
    let p = embedding.primes()[dim];
    for a in 0..p {
        for b in (a + 1)..p {
            pairs[dim] = (a, b);
            if !cuboids_rec(w, embedding, dim + 1, pairs)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nonnegative decomposition `F = P * Phi_p(x^{N/p}) + Q * Phi_q(x^{N/q})
/// mod (x^N - 1)` for a two-prime modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPrimeDecomposition {
    modulus: CyclicModulus,
    pub p: u64,
    pub q: u64,
    /// Multiplier of `Phi_p(x^{N/p})`; nonnegative integer coefficients.
    pub p_poly: IntPoly,
    /// Multiplier of `Phi_q(x^{N/q})`; nonnegative integer coefficients.
    pub q_poly: IntPoly,
    /// `F` does not vanish at some root of order `N/p^k`, so `P` cannot be
    /// identically zero in any valid decomposition.
    pub p_forced_nonzero: bool,
    pub q_forced_nonzero: bool,
}

impl TwoPrimeDecomposition {
    pub fn modulus(&self) -> &CyclicModulus {
        &self.modulus
    }

    /// `P * Phi_p(x^{N/p}) + Q * Phi_q(x^{N/q}) mod (x^N - 1)` as a mask.
    pub fn recombine(&self) -> MaskPolynomial {
        let n = self.modulus.n() as usize;
        let term = |poly: &IntPoly, prime: u64| -> IntPoly {
            let step = (self.modulus.n() / prime) as usize;
            let mut subgroup = vec![BigInt::zero(); step * (prime as usize - 1) + 1];
            for j in 0..prime as usize {
                subgroup[j * step] = BigInt::one();
            }
            poly.mul(&IntPoly::from_coeffs(subgroup))
        };
        let total = term(&self.p_poly, self.p)
            .add(&term(&self.q_poly, self.q))
            .reduce_mod_x_n_minus_one(n);
        let mut values = vec![BigRational::zero(); n];
        for (i, c) in total.coeffs().iter().enumerate() {
            values[i] = BigRational::from_integer(c.clone());
        }
        MaskPolynomial::from_rationals(values, &self.modulus).expect("length matches")
    }
}

/// Write a nonnegative integer mask `F` with `F(xi_N) = 0`, `N = p^m q^n`,
/// as `P * Phi_p(x^{N/p}) + Q * Phi_q(x^{N/q})` with `P, Q` nonnegative.
///
/// Within each residue class `k mod N/pq` the class function on `Z_pq` is a
/// sum of a function of `t mod q` (the `Z_p`-coset lines) and one of
/// `t mod p`; subtracting the minimal combined weight of the class shifts
/// both parts to nonnegative integers without changing their sum.
pub fn two_prime_nonneg_decomposition(f: &MaskPolynomial) -> Result<TwoPrimeDecomposition> {
    let modulus = f.modulus().clone();
    let n = modulus.n();
    if modulus.factorization().len() != 2 {
        return Err(Error::NotTwoPrimes(n));
    }
    if !f.is_multiset_mask() {
        return Err(Error::NotAMultisetMask);
    }
    if !f.vanishes_at_order(n)? {
        return Err(Error::NoDecomposition);
    }
    let (p, pm) = {
        let (p, e) = modulus.factorization()[0];
        (p, e)
    };
    let (q, qn) = {
        let (q, e) = modulus.factorization()[1];
        (q, e)
    };
    let m = n / (p * q);

    let coeff_int = |i: u64| -> BigInt { f.coeff(i).numer().clone() };

    let mut p_coeffs = vec![BigInt::zero(); n as usize];
    let mut q_coeffs = vec![BigInt::zero(); n as usize];
    for k in 0..m {
        // Class function in t-coordinates: c[t] = F(k + m t), t in [0, pq).
        let c: Vec<BigInt> = (0..p * q).map(|t| coeff_int(k + m * t)).collect();
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        // Index helpers: the unique t with given residues (a mod q, b mod p).
        let t_of = |a: u64, b: u64| (0..p * q).find(|&t| t % q == a && t % p == b).unwrap();
        // Base solution: alpha over the q lines {t = a mod q}, beta over the
        // p lines {t = b mod p}.
        let base = c[t_of(0, 0) as usize].clone();
        let alpha: Vec<BigInt> = (0..q).map(|a| &c[t_of(a, 0) as usize] - &base).collect();
        let beta: Vec<BigInt> = (0..p).map(|b| c[t_of(0, b) as usize].clone()).collect();
        for t in 0..p * q {
            let expected = &alpha[(t % q) as usize] + &beta[(t % p) as usize];
            assert_eq!(
                expected,
                c[t as usize],
                "class {k} of a faithfully vanishing mask must split into coset lines"
            );
        }
        // Shift at a class element of minimal weight.
        let t_min = (0..p * q)
            .min_by_key(|&t| (c[t as usize].clone(), t))
            .unwrap();
        let e = c[t_min as usize].clone();
        let a_star = t_min % q;
        let b_star = t_min % p;
        for a in 0..q {
            let v = &alpha[a as usize] + &beta[b_star as usize];
            debug_assert!(!v.is_negative());
            p_coeffs[((k + m * a) % n) as usize] = v;
        }
        for b in 0..p {
            let v = &alpha[a_star as usize] + &beta[b as usize] - &e;
            debug_assert!(!v.is_negative());
            q_coeffs[((k + m * b) % n) as usize] = v;
        }
    }

    let p_forced_nonzero = (1..=pm).any(|k| {
        let order = n / p.pow(k);
        order > 1 && !f.vanishes_at_order(order).unwrap_or(false)
    });
    let q_forced_nonzero = (1..=qn).any(|k| {
        let order = n / q.pow(k);
        order > 1 && !f.vanishes_at_order(order).unwrap_or(false)
    });

    let out = TwoPrimeDecomposition {
        modulus,
        p,
        q,
        p_poly: IntPoly::from_coeffs(p_coeffs),
        q_poly: IntPoly::from_coeffs(q_coeffs),
        p_forced_nonzero,
        q_forced_nonzero,
    };
    debug_assert_eq!(&out.recombine(), f);
    Ok(out)
}
