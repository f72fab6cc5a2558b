mod common;

use framed_codes::characters::{code_voa_character, ising_character, IsingLabel, IsingTable};
use framed_codes::gf2::weight_enumerator_exhaustive;
use framed_codes::orbifold::{orbifold_transform, tau_equivalent, tau_sign, TauInvolution};
use framed_codes::qseries::{QSeries, UNITS_PER_Q};
use framed_codes::{BinaryWord, LinearCode, StructureCodes};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn word(n: usize, bits: u128) -> BinaryWord {
    let mask = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    BinaryWord::from_bits(n, bits & mask).unwrap()
}

fn even(w: BinaryWord) -> BinaryWord {
    if w.weight().is_multiple_of(2) {
        w
    } else {
        BinaryWord::from_bits(w.len(), w.bits() ^ 1).unwrap()
    }
}

/// `(length, generator rows)` with length in `lo..=hi`.
fn code_strategy(lo: usize, hi: usize, max_rows: usize) -> impl Strategy<Value = LinearCode> {
    (lo..=hi, prop::collection::vec(any::<u128>(), 0..=max_rows)).prop_map(|(n, rows)| {
        let gens: Vec<BinaryWord> = rows.into_iter().map(|b| word(n, b)).collect();
        LinearCode::from_generators(n, &gens).unwrap()
    })
}

fn even_code_strategy(lo: usize, hi: usize, max_rows: usize) -> impl Strategy<Value = LinearCode> {
    (lo..=hi, prop::collection::vec(any::<u128>(), 0..=max_rows)).prop_map(|(n, rows)| {
        let gens: Vec<BinaryWord> = rows.into_iter().map(|b| even(word(n, b))).collect();
        LinearCode::from_generators(n, &gens).unwrap()
    })
}

/// Holomorphic `(D⊥, D)` with `1 ∈ D` and `dim D ≥ 2`, plus raw bits for δ.
fn holomorphic_strategy() -> impl Strategy<Value = (StructureCodes, u128)> {
    (
        prop::sample::select(vec![4usize, 8, 12, 16]),
        prop::collection::vec(any::<u128>(), 1..8),
        any::<u128>(),
    )
        .prop_filter_map("D = {0, 1}", |(n, rows, delta)| {
            let mut gens = vec![BinaryWord::all_ones(n).unwrap()];
            gens.extend(rows.into_iter().map(|b| even(word(n, b))));
            let d = LinearCode::from_generators(n, &gens).unwrap();
            (d.dimension() >= 2).then(|| (StructureCodes::holomorphic_from_d(d).unwrap(), delta))
        })
}

fn series_strategy(order: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((0i64..=order, -50i64..50), 0..12).prop_map(move |terms| {
        QSeries::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))), order).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dual_is_an_involution(c in code_strategy(1, 40, 24)) {
        let dual = c.dual().unwrap();
        prop_assert_eq!(dual.dual().unwrap(), c.clone());
        prop_assert_eq!(c.dimension() + dual.dimension(), c.length());
        prop_assert!(c.is_orthogonal_to(&BinaryWord::zero(c.length()).unwrap()).unwrap());
        for g in dual.generators() {
            prop_assert!(c.is_orthogonal_to(g).unwrap());
        }
    }

    #[test]
    fn macwilliams_matches_exhaustive(c in code_strategy(1, 20, 20)) {
        let we = weight_enumerator_exhaustive(&c).unwrap();
        let we_dual = weight_enumerator_exhaustive(&c.dual().unwrap()).unwrap();
        prop_assert_eq!(we.macwilliams(), we_dual);
    }

    #[test]
    fn enumerator_counts_sum_to_code_size(c in code_strategy(1, 24, 18)) {
        let we = c.weight_enumerator().unwrap();
        prop_assert_eq!(we.total(), BigUint::from(1u8) << c.dimension());
        prop_assert_eq!(we.count(0), BigUint::from(1u8));
    }

    #[test]
    fn extension_contains_code_and_delta(c in code_strategy(1, 64, 12), bits in any::<u128>()) {
        let delta = word(c.length(), bits);
        let e = c.extend(&delta).unwrap();
        prop_assert!(c.is_subcode_of(&e).unwrap());
        prop_assert!(e.contains(&delta).unwrap());
        prop_assert!(e.dimension() <= c.dimension() + 1);
    }

    #[test]
    fn membership_matches_brute_span(c in code_strategy(1, 12, 8), bits in any::<u128>()) {
        let w = word(c.length(), bits);
        let span = common::brute_span(c.generators());
        prop_assert_eq!(c.contains(&w).unwrap(), span.contains(&w.bits()));
        prop_assert_eq!(span.len(), 1usize << c.dimension());
    }

    #[test]
    fn ring_laws(a in series_strategy(200), b in series_strategy(200), c in series_strategy(200)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn truncation_coherence(a in series_strategy(300), b in series_strategy(300), lower in 0i64..300) {
        let high = a.mul(&b).unwrap().truncate(lower).unwrap();
        let low = a.truncate(lower).unwrap().mul(&b.truncate(lower).unwrap()).unwrap();
        prop_assert_eq!(high, low);
    }

    #[test]
    fn characters_truncate_coherently(order in 0i64..=(12 * UNITS_PER_Q), lower in 0i64..=(12 * UNITS_PER_Q)) {
        let lower = lower.min(order);
        for h in IsingLabel::ALL {
            let full = ising_character(h, order).unwrap();
            prop_assert!(full.has_nonnegative_coefficients());
            prop_assert_eq!(full.truncate(lower).unwrap(), ising_character(h, lower).unwrap());
        }
    }

    #[test]
    fn code_voa_character_matches_naive_sum(c in even_code_strategy(2, 12, 6)) {
        let order = 6 * UNITS_PER_Q;
        let grouped = code_voa_character(&c, order).unwrap();
        let table = IsingTable::new(order).unwrap();
        let mut naive = QSeries::zero(order);
        for w in c.codewords().unwrap() {
            let mut term = QSeries::one(order);
            for i in 0..c.length() {
                term = term.mul(table.get(IsingLabel::from_bit(w.get(i)))).unwrap();
            }
            naive = naive.add(&term).unwrap();
        }
        prop_assert!(grouped.has_nonnegative_coefficients());
        prop_assert_eq!(&grouped, &naive);
        prop_assert_eq!(grouped.coefficient_at_q(1).unwrap(), BigInt::from(c.weight_two_words().len()));
    }

    #[test]
    fn a2_matches_obstruction_report(c in even_code_strategy(2, 24, 10)) {
        let s = StructureCodes::holomorphic_from_d(c.dual().unwrap());
        // only valid when the dual is even too
        if let Ok(s) = s {
            if s.validate().passed() {
                let report = s.v1_code_obstruction().unwrap();
                let q1 = code_voa_character(s.c(), UNITS_PER_Q).unwrap().coefficient_at_q(1).unwrap();
                prop_assert_eq!(BigInt::from(report.a2), q1);
            }
        }
    }

    #[test]
    fn tau_sign_is_multiplicative(d in code_strategy(1, 16, 6), beta in any::<u128>(), picks in prop::collection::vec(any::<u64>(), 2)) {
        let n = d.length();
        let s = StructureCodes::new(LinearCode::zero(n).unwrap(), d.clone()).unwrap();
        let tau = TauInvolution::new(&s, word(n, beta)).unwrap();
        let words: Vec<BinaryWord> = d.codewords().unwrap().collect();
        let a = words[(picks[0] % words.len() as u64) as usize];
        let b = words[(picks[1] % words.len() as u64) as usize];
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(tau_sign(&tau, &sum).unwrap(), tau_sign(&tau, &a).unwrap() * tau_sign(&tau, &b).unwrap());
    }

    #[test]
    fn tau_classes_bounded(d in code_strategy(1, 10, 4), betas in prop::collection::vec(any::<u128>(), 1..40)) {
        let n = d.length();
        let s = StructureCodes::new(LinearCode::zero(n).unwrap(), d.clone()).unwrap();
        let taus: Vec<TauInvolution<'_>> = betas.iter().map(|b| TauInvolution::new(&s, word(n, *b)).unwrap()).collect();
        let mut reps: Vec<&TauInvolution<'_>> = Vec::new();
        for t in &taus {
            prop_assert!(tau_equivalent(t, t).unwrap());
            if !reps.iter().any(|r| tau_equivalent(r, t).unwrap()) {
                reps.push(t);
            }
        }
        let d_perp = d.dual().unwrap();
        prop_assert!(reps.len() <= 1usize << (n - d_perp.dimension()));
    }

    #[test]
    fn orbifold_preserves_holomorphy((s, bits) in holomorphic_strategy()) {
        let n = s.length();
        let delta = even(word(n, bits));
        prop_assume!(!s.c().contains(&delta).unwrap());
        let r = orbifold_transform(&s, &delta).unwrap();
        prop_assert!(r.output.is_holomorphic().unwrap());
        prop_assert_eq!(r.d0.dimension() + 1, s.d().dimension());
        prop_assert!(r.certificates.delta_in_output_c);
    }

    #[test]
    fn validity_survives_extension_inside_d_perp((s, bits) in holomorphic_strategy(), extra in any::<u128>()) {
        // a sub-pair (C', D) with C' ⊂ D⊥, extended back by an even δ ∈ D⊥
        let n = s.length();
        let d_perp = s.d().dual().unwrap();
        let mut delta = BinaryWord::zero(n).unwrap();
        for (i, g) in d_perp.generators().iter().enumerate() {
            if (bits ^ extra) >> i & 1 == 1 {
                delta = delta.add(g).unwrap();
            }
        }
        let smaller = LinearCode::from_generators(n, &d_perp.generators()[1..]).unwrap();
        let pair = StructureCodes::new(smaller.clone(), s.d().clone()).unwrap();
        prop_assert!(pair.validate().passed());
        let extended = StructureCodes::new(smaller.extend(&delta).unwrap(), s.d().clone()).unwrap();
        prop_assert!(extended.validate().passed());
    }
}
