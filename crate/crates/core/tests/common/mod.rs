//! Independent oracles and random generators shared by the integration tests.
//!
//! Nothing here calls into the library's series or enumeration code: the
//! Ising oracles enumerate subsets and partitions directly, and spans are
//! closed under addition in a hash set.
#![allow(dead_code)]

use std::collections::HashSet;

use framed_codes::{BinaryWord, LinearCode};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use framed_codes::qseries::QSeries;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Visits every set of distinct parts from `parts` (ascending) with sum at
/// most `budget`, reporting `(sum, number of parts)`.
fn distinct_subsets(parts: &[u64], budget: u64, visit: &mut impl FnMut(u64, usize)) {
    fn go(
        parts: &[u64],
        from: usize,
        sum: u64,
        size: usize,
        budget: u64,
        visit: &mut impl FnMut(u64, usize),
    ) {
        visit(sum, size);
        for i in from..parts.len() {
            let s = sum + parts[i];
            if s > budget {
                break;
            }
            go(parts, i + 1, s, size + 1, budget, visit);
        }
    }
    go(parts, 0, 0, 0, budget, visit);
}

/// Coefficients of `ch_0` and `ch_{1/2}` indexed by exponent in units of
/// `q^{1/2}`, through `q^max_q`.
///
/// A state is a set of distinct fermion modes of energy `k − 1/2`; even sets
/// lie in `L(1/2, 0)`, odd sets in `L(1/2, 1/2)`.
pub fn fermion_oracle(max_q: u64) -> (Vec<i128>, Vec<i128>) {
    let budget = 2 * max_q;
    let odd_parts: Vec<u64> = (1..=budget).step_by(2).collect();
    let mut even = vec![0i128; budget as usize + 1];
    let mut odd = vec![0i128; budget as usize + 1];
    distinct_subsets(&odd_parts, budget, &mut |sum, size| {
        if size % 2 == 0 {
            even[sum as usize] += 1;
        } else {
            odd[sum as usize] += 1;
        }
    });
    (even, odd)
}

/// Number of partitions of `m` into distinct parts, for `m ≤ max_q`.
pub fn distinct_partition_oracle(max_q: u64) -> Vec<i128> {
    let parts: Vec<u64> = (1..=max_q).collect();
    let mut counts = vec![0i128; max_q as usize + 1];
    distinct_subsets(&parts, max_q, &mut |sum, _| counts[sum as usize] += 1);
    counts
}

/// Dense coefficients in units of `unit` (in 1/48ths), starting at `offset`.
pub fn series_from_dense(coeffs: &[i128], unit: i64, offset: i64, order: i64) -> QSeries {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (offset + i as i64 * unit, BigInt::from(*c)));
    QSeries::from_terms(terms, order).expect("oracle exponents are nonnegative")
}

/// Truncated product of dense series.
pub fn dense_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// All words in the span of `gens`, by closure under addition.
pub fn brute_span(gens: &[BinaryWord]) -> HashSet<u128> {
    let mut span = HashSet::from([0u128]);
    for g in gens {
        let shifted: Vec<u128> = span.iter().map(|w| w ^ g.bits()).collect();
        span.extend(shifted);
    }
    span
}

/// Weight counts by walking a brute-force span.
pub fn brute_weight_counts(length: usize, gens: &[BinaryWord]) -> Vec<u64> {
    let mut counts = vec![0u64; length + 1];
    for w in brute_span(gens) {
        counts[w.count_ones() as usize] += 1;
    }
    counts
}

pub fn random_word(rng: &mut StdRng, n: usize) -> BinaryWord {
    let mask = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    BinaryWord::from_bits(n, rng.gen::<u128>() & mask).unwrap()
}

pub fn random_even_word(rng: &mut StdRng, n: usize) -> BinaryWord {
    let w = random_word(rng, n);
    if w.weight().is_multiple_of(2) {
        w
    } else {
        // flip the last coordinate
        BinaryWord::from_bits(n, w.bits() ^ (1u128 << (n - 1))).unwrap()
    }
}

/// Span of `rows` random words of length `n`; its dimension may be smaller.
pub fn random_code(rng: &mut StdRng, n: usize, rows: usize) -> LinearCode {
    let gens: Vec<BinaryWord> = (0..rows).map(|_| random_word(rng, n)).collect();
    LinearCode::from_generators(n, &gens).unwrap()
}

pub fn random_even_code(rng: &mut StdRng, n: usize, rows: usize) -> LinearCode {
    let gens: Vec<BinaryWord> = (0..rows).map(|_| random_even_word(rng, n)).collect();
    LinearCode::from_generators(n, &gens).unwrap()
}

/// A holomorphic pair `(D⊥, D)` with `1 ∈ D`, so both codes are even, and
/// `D ≠ {0, 1}`, so an even word outside `C` exists.
pub fn random_holomorphic_pair(rng: &mut StdRng, n: usize) -> (LinearCode, LinearCode) {
    loop {
        let extra = rng.gen_range(1..n / 2 + 1);
        let mut gens = vec![BinaryWord::all_ones(n).unwrap()];
        gens.extend((0..extra).map(|_| random_even_word(rng, n)));
        let d = LinearCode::from_generators(n, &gens).unwrap();
        if d.dimension() >= 2 {
            let c = d.dual().unwrap();
            return (c, d);
        }
    }
}

/// A random even word outside `c`. The caller ensures `c` is not the whole
/// even-weight code.
pub fn random_even_word_outside(rng: &mut StdRng, c: &LinearCode) -> BinaryWord {
    loop {
        let w = random_even_word(rng, c.length());
        if !c.contains(&w).unwrap() {
            return w;
        }
    }
}
