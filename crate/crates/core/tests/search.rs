//! Searches against an exhaustive subspace oracle on small codes.

use std::collections::HashMap;

use odp_core::canon::{are_equivalent, canonical_form};
use odp_core::search::*;
use odp_core::{min_distance, BitVector, LinearCode};
use proptest::prelude::*;

mod oracle;
use oracle::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn odp_matches_exhaustive_chains(c in small_code(), inverse in any::<bool>()) {
        let order = if inverse { Order::Inverse } else { Order::Dictionary };
        let l = Lattice::new(&c);
        let expected = l.best(l.full(), order, &mut HashMap::new());
        let r = odp(&c, order, &SearchConfig::default()).unwrap();
        prop_assert!(r.proven);
        prop_assert_eq!(r.profile.entries(), &expected[..]);
        prop_assert!(verify_witness(&r.witness, &r.profile).unwrap());
        prop_assert_eq!(r.witness.code(), c);
    }

    #[test]
    fn chain_subcodes_match_exhaustive_subcodes(c in small_code(), pick in any::<u8>()) {
        let l = Lattice::new(&c);
        let d0 = min_distance(&c).unwrap();
        let top = (1..1usize << l.k).map(|m| l.words[m].count_ones() as usize).max().unwrap();
        let dmin = d0 + pick as usize % (top - d0 + 1);
        let subs: Vec<u64> = l.all().into_iter().filter(|&s| l.dim(s) > 0 && l.distance(s) as usize >= dmin).collect();
        let dim = subs.iter().map(|&s| l.dim(s)).max().unwrap();
        let r = chain_subcodes(&c, dmin, &SearchConfig::default()).unwrap();
        prop_assert_eq!(r.dim, dim);
        prop_assert_eq!(max_dimension(&c, dmin, &SearchConfig::default()).unwrap(), dim);
        let mut forms: Vec<_> = subs
            .iter()
            .filter(|&&s| l.dim(s) == dim)
            .map(|&s| canonical_form(&l.code(c.n(), s)).unwrap())
            .collect();
        forms.sort();
        forms.dedup();
        prop_assert_eq!(r.classes.len(), forms.len());
        for e in &r.classes {
            prop_assert!(c.contains_code(e));
            prop_assert_eq!(e.k(), dim);
            prop_assert!(min_distance(e).unwrap() >= dmin);
            prop_assert!(forms.contains(&canonical_form(e).unwrap()));
        }
    }

    #[test]
    fn random_subcodes_are_maximal(c in small_code(), seed in any::<u64>()) {
        let d0 = min_distance(&c).unwrap();
        let cfg = SearchConfig { seed, restarts: 3, ..SearchConfig::default() };
        let r = random_subcode(&c, d0 + 1, &cfg);
        let l = Lattice::new(&c);
        let top = (1..1usize << l.k).map(|m| l.words[m].count_ones() as usize).max().unwrap();
        if top <= d0 {
            prop_assert!(r.is_err());
            return Ok(());
        }
        let r = r.unwrap();
        prop_assert_eq!(r.maximality, Maximality::Proven);
        prop_assert!(c.contains_code(&r.code));
        prop_assert!(min_distance(&r.code).unwrap() > d0);
        for s in l.all() {
            let e = l.code(c.n(), s);
            if e.k() == r.code.k() + 1 && e.contains_code(&r.code) {
                prop_assert!(min_distance(&e).unwrap() <= d0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn supercodes_are_complete_up_to_equivalence(n in 4usize..=8, row in any::<u32>(), extra in 1usize..=2, dmin in 2usize..=3) {
        let seed = code_from(n, &[row]);
        prop_assume!(seed.k() == 1 && min_distance(&seed).unwrap() >= dmin);
        let k = 1 + extra;
        let found = chain_supercodes(&[seed.clone()], k, dmin, &SearchConfig::default()).unwrap();
        // Every code of dimension k containing the seed, one level at a time.
        let mut level = vec![seed];
        for _ in 0..extra {
            let mut next = std::collections::BTreeMap::new();
            for e in &level {
                for w in 1u128..1 << n {
                    let v = BitVector::from_u128(n, w);
                    if e.contains(&v) {
                        continue;
                    }
                    let x = e.extend_by(&v).unwrap();
                    if min_distance(&x).unwrap() >= dmin {
                        next.entry(x.generator().clone()).or_insert(x);
                    }
                }
            }
            level = next.into_values().collect();
        }
        let classes = odp_core::canon::dedupe(&level).unwrap();
        prop_assert_eq!(found.len(), classes.len());
        for f in &found {
            prop_assert!(classes.iter().any(|c| are_equivalent(c, f).unwrap()));
            prop_assert!(min_distance(f).unwrap() >= dmin && f.k() == k);
        }
    }
}

#[test]
fn witnesses_of_bundled_codes() {
    for (name, order) in [("d16", Order::Dictionary), ("2e8", Order::Inverse), ("e8", Order::Inverse)] {
        let c = odp_core::codedb::catalog_code(name).unwrap();
        let r = odp(&c, order, &SearchConfig::default()).unwrap();
        assert!(verify_witness(&r.witness, &r.profile).unwrap(), "{name}");
    }
}

#[test]
fn exhausted_budget_gives_a_valid_lower_bound() {
    let g = odp_core::codedb::catalog_code("g24").unwrap();
    let cfg = SearchConfig { node_budget: Some(1), ..SearchConfig::default() };
    let r = odp(&g, Order::Dictionary, &cfg).unwrap();
    assert!(!r.proven);
    assert!(verify_witness(&r.witness, &r.profile).unwrap());
    assert_eq!(r.witness.code(), g);
    let best: DistanceProfile = "8,8,8,8,8,8,8,12,12,12,16,16".parse().unwrap();
    assert_ne!(compare_profiles(&best, &r.profile, Order::Dictionary).unwrap(), std::cmp::Ordering::Less);
}

#[test]
fn repetition_seed_grows_to_e8() {
    let mut cfg = SearchConfig::default();
    cfg.filters.doubly_even = true;
    let one = LinearCode::repetition(8);
    let found = chain_supercodes(&[one.clone()], 4, 4, &cfg).unwrap();
    assert_eq!(found.len(), 1);
    let e8 = odp_core::codedb::catalog_code("e8").unwrap();
    assert!(are_equivalent(&found[0], &e8).unwrap());
    cfg.seed = 7;
    cfg.restarts = 20;
    let r = random_supercode(&one, 4, &cfg).unwrap();
    assert!(r.code.k() <= 4 && r.code.is_doubly_even() && r.code.contains_code(&one));
    assert!(random_supercode(&one, 8, &cfg).is_err());
}

#[test]
fn e8_has_only_the_repetition_subcode_at_distance_eight() {
    let e8 = odp_core::codedb::catalog_code("e8").unwrap();
    let s = chain_subcodes(&e8, 8, &SearchConfig::default()).unwrap();
    assert_eq!(s.dim, 1);
    assert_eq!(s.classes, vec![LinearCode::repetition(8)]);
    let r = random_subcode(&e8, 8, &SearchConfig::default()).unwrap();
    assert_eq!(r.code, LinearCode::repetition(8));
}
