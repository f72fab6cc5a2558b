//! Exhaustive codeword enumeration and weight enumerators.
//!
//! The hot loop walks the code in Gray-code order so each step costs one XOR
//! and one popcount. With the `parallel` feature the index range is split into
//! contiguous blocks; each block seeds its start word from the Gray code of its
//! first index and then walks independently.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Gf2Error, LinearCode};

/// Largest dimension enumerated directly (2^28 ≈ 2.7·10⁸ codewords).
pub const ENUMERATION_LIMIT: usize = 28;

/// Below this dimension the parallel kernel just runs sequentially.
#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 14;

/// Number of codewords of each Hamming weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    counts: Vec<BigUint>,
}

impl WeightEnumerator {
    /// `counts[w]` is the number of codewords of weight `w`; the vector has
    /// length `n + 1`.
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        Self { counts }
    }

    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> BigUint {
        self.counts.get(weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// MacWilliams transform: the weight enumerator of the dual code.
    ///
    /// `B_j = 2^{-k} Σ_w A_w K_j(w)` with Krawtchouk polynomials
    /// `K_j(w) = Σ_s (-1)^s C(w, s) C(n-w, j-s)`, where `2^k = Σ A_w`.
    pub fn macwilliams(&self) -> Self {
        let n = self.length();
        let size = BigInt::from(self.total());
        let binom = binomial_table(n);
        let counts = (0..=n)
            .map(|j| {
                let mut acc = BigInt::zero();
                for (w, a) in self.counts.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    acc += BigInt::from(a.clone()) * krawtchouk(&binom, n, j, w);
                }
                debug_assert!((&acc % &size).is_zero());
                let b = acc / &size;
                debug_assert!(!b.is_negative());
                b.to_biguint().expect("dual counts are nonnegative")
            })
            .collect();
        Self { counts }
    }
}

impl fmt::Display for WeightEnumerator {
    /// Renders as a polynomial in `w`, e.g. `1 + 30*w^8 + w^16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (weight, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coefficient = if c.is_one() && weight > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match weight {
                0 => write!(f, "{c}")?,
                1 if coefficient.is_empty() => f.write_str("w")?,
                1 => write!(f, "{coefficient}*w")?,
                _ if coefficient.is_empty() => write!(f, "w^{weight}")?,
                _ => write!(f, "{coefficient}*w^{weight}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightEnumerator({self})")
    }
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        table[i][0] = BigInt::one();
        for j in 1..=i {
            table[i][j] = &table[i - 1][j - 1] + &table[i - 1][j];
        }
    }
    table
}

fn krawtchouk(binom: &[Vec<BigInt>], n: usize, j: usize, w: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=j.min(w) {
        if j - s > n - w {
            continue;
        }
        let term = &binom[w][s] * &binom[n - w][j - s];
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Weight histogram of `offset + span(gens)` over Gray indices `[start, end)`.
fn count_block(gens: &[u128], offset: u128, start: u64, end: u64, counts: &mut [u64]) {
    if start >= end {
        return;
    }
    let mut word = offset;
    let mut g = gray(start);
    while g != 0 {
        let i = g.trailing_zeros() as usize;
        word ^= gens[i];
        g &= g - 1;
    }
    counts[word.count_ones() as usize] += 1;
    for i in start + 1..end {
        word ^= gens[i.trailing_zeros() as usize];
        counts[word.count_ones() as usize] += 1;
    }
}

/// Single-threaded weight histogram of the coset `offset + span(gens)`.
pub fn weight_counts_sequential(length: usize, gens: &[u128], offset: u128) -> Vec<u64> {
    let mut counts = vec![0u64; length + 1];
    count_block(gens, offset, 0, 1u64 << gens.len(), &mut counts);
    counts
}

/// Data-parallel weight histogram of the coset `offset + span(gens)`.
#[cfg(feature = "parallel")]
pub fn weight_counts_parallel(length: usize, gens: &[u128], offset: u128) -> Vec<u64> {
    use rayon::prelude::*;

    let k = gens.len();
    if k < PARALLEL_THRESHOLD {
        return weight_counts_sequential(length, gens, offset);
    }
    let block_bits = (k - 8).min(20);
    let block = 1u64 << block_bits;
    let blocks = 1u64 << (k - block_bits);
    (0..blocks)
        .into_par_iter()
        .fold(
            || vec![0u64; length + 1],
            |mut acc, b| {
                count_block(gens, offset, b * block, (b + 1) * block, &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0u64; length + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Dispatches to the parallel kernel when the feature is enabled.
pub fn weight_counts(length: usize, gens: &[u128], offset: u128) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    {
        weight_counts_parallel(length, gens, offset)
    }
    #[cfg(not(feature = "parallel"))]
    {
        weight_counts_sequential(length, gens, offset)
    }
}

fn to_enumerator(counts: Vec<u64>) -> WeightEnumerator {
    WeightEnumerator::from_counts(counts.into_iter().map(BigUint::from).collect())
}

/// Enumerates every codeword. Fails above [`ENUMERATION_LIMIT`].
pub fn weight_enumerator_exhaustive(code: &LinearCode) -> Result<WeightEnumerator, Gf2Error> {
    code.check_capacity()?;
    Ok(to_enumerator(weight_counts(
        code.length(),
        &code.generator_bits(),
        0,
    )))
}

/// Exhaustive when the code is small enough, otherwise MacWilliams from the
/// dual's exhaustive enumerator.
pub fn weight_enumerator(code: &LinearCode) -> Result<WeightEnumerator, Gf2Error> {
    if code.dimension() <= ENUMERATION_LIMIT {
        return weight_enumerator_exhaustive(code);
    }
    let dual = code.dual()?;
    if dual.dimension() <= ENUMERATION_LIMIT {
        return Ok(weight_enumerator_exhaustive(&dual)?.macwilliams());
    }
    Err(Gf2Error::Capacity {
        dimension: code.dimension(),
        dual_dimension: dual.dimension(),
    })
}

/// Weight distribution of the coset `delta + C`.
///
/// Exhaustive when `dim C` is within capacity; otherwise taken as the
/// difference of the enumerators of `C + <delta>` and `C`, both of which may
/// fall back to MacWilliams.
pub fn coset_weight_enumerator(
    code: &LinearCode,
    delta: &super::BinaryWord,
) -> Result<WeightEnumerator, Gf2Error> {
    if code.contains(delta)? {
        return weight_enumerator(code);
    }
    if code.dimension() <= ENUMERATION_LIMIT {
        return Ok(to_enumerator(weight_counts(
            code.length(),
            &code.generator_bits(),
            delta.bits(),
        )));
    }
    let whole = weight_enumerator(&code.extend(delta)?)?;
    let inner = weight_enumerator(code)?;
    let counts = whole
        .counts
        .iter()
        .zip(&inner.counts)
        .map(|(a, b)| a - b)
        .collect();
    Ok(WeightEnumerator::from_counts(counts))
}

/// Number of codewords of weight `w` as a plain integer, when it fits.
pub fn count_as_u64(we: &WeightEnumerator, w: usize) -> Option<u64> {
    we.count(w).to_u64()
}
