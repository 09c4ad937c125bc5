//! Weight enumeration and minimum distance against a brute-force span.

use odp_core::weights::{min_distance_bz, words_of_weight};
use odp_core::{min_distance, weight_distribution, BitVector, LinearCode};
use proptest::prelude::*;

fn code_from(n: usize, rows: &[u128]) -> LinearCode {
    let mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let rows = rows.iter().map(|&r| BitVector::from_u128(n, r & mask)).collect();
    LinearCode::from_rows(n, rows).unwrap()
}

/// Every codeword, by summing all subsets of the generator rows.
fn brute_words(c: &LinearCode) -> Vec<u128> {
    let rows: Vec<u128> = c.generator().rows().iter().map(|r| r.to_u128().unwrap()).collect();
    (0..1u64 << rows.len())
        .map(|m| (0..rows.len()).filter(|&i| m >> i & 1 == 1).fold(0, |a, i| a ^ rows[i]))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distribution_matches_brute_force(n in 1usize..=40, rows in prop::collection::vec(any::<u128>(), 0..10)) {
        let c = code_from(n, &rows);
        let mut counts = vec![0u64; n + 1];
        for w in brute_words(&c) {
            counts[w.count_ones() as usize] += 1;
        }
        let wd = weight_distribution(&c).unwrap();
        prop_assert_eq!(wd.counts(), &counts[..]);
    }

    #[test]
    fn bz_agrees_with_enumeration(n in 2usize..=128, rows in prop::collection::vec(any::<u128>(), 1..12), sparse in any::<u128>()) {
        // Thinning the rows gives small distances as well as large ones.
        let rows: Vec<u128> = rows.iter().map(|r| r & (sparse | r.rotate_left(7))).collect();
        let c = code_from(n, &rows);
        prop_assume!(c.k() > 0);
        let expected = brute_words(&c).into_iter().filter(|&w| w != 0).map(|w| w.count_ones() as usize).min().unwrap();
        prop_assert_eq!(min_distance_bz(&c).unwrap(), expected);
        prop_assert_eq!(min_distance(&c).unwrap(), expected);
    }

    #[test]
    fn words_of_weight_lists_exactly_the_matching_words(n in 1usize..=24, rows in prop::collection::vec(any::<u128>(), 0..8), w in 0usize..=24) {
        let c = code_from(n, &rows);
        let mut got: Vec<u128> = words_of_weight(&c, |x| x == w).unwrap().map(|v| v.to_u128().unwrap()).collect();
        let mut want: Vec<u128> = brute_words(&c).into_iter().filter(|x| x.count_ones() as usize == w).collect();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn golay_and_qr_distances() {
    let g = odp_core::codedb::extended_qr(23).unwrap();
    assert_eq!(min_distance_bz(&g).unwrap(), 8);
    let wd = weight_distribution(&g).unwrap();
    assert_eq!((wd.get(8), wd.get(12), wd.get(16)), (759, 2576, 759));
    assert!(wd.is_symmetric());
}

#[test]
fn zero_code_has_no_distance() {
    assert!(min_distance(&LinearCode::zero(5)).is_err());
    assert_eq!(weight_distribution(&LinearCode::zero(5)).unwrap().counts(), &[1, 0, 0, 0, 0, 0]);
}
