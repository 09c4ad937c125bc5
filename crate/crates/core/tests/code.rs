//! Algebraic identities of code operations on random codes.

use odp_core::{BitVector, LinearCode, TypeClass};
use proptest::prelude::*;

fn code_from(n: usize, rows: &[u64]) -> LinearCode {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows = rows.iter().map(|&r| BitVector::from_u128(n, (r & mask) as u128)).collect();
    LinearCode::from_rows(n, rows).unwrap()
}

fn arb_code() -> impl Strategy<Value = LinearCode> {
    (1usize..=40, prop::collection::vec(any::<u64>(), 0..12)).prop_map(|(n, rows)| code_from(n, &rows))
}

fn subset(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|&i| mask >> (i % 64) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dual_is_an_involution(c in arb_code()) {
        let d = c.dual();
        prop_assert_eq!(c.k() + d.k(), c.n());
        prop_assert_eq!(d.dual(), c.clone());
        for r in d.generator().rows() {
            for s in c.generator().rows() {
                prop_assert_eq!(r.and(s).weight() % 2, 0);
            }
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(a in arb_code(), rows in prop::collection::vec(any::<u64>(), 0..12)) {
        let b = code_from(a.n(), &rows);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.k() + i.k(), a.k() + b.k());
        prop_assert!(s.contains_code(&a) && s.contains_code(&b));
        prop_assert!(a.contains_code(&i) && b.contains_code(&i));
    }

    #[test]
    fn shortening_is_dual_to_puncturing(c in arb_code(), mask in any::<u64>()) {
        let t = subset(c.n(), mask);
        let short = c.shorten(&t).unwrap();
        let punct = c.dual().puncture(&t).unwrap();
        prop_assert_eq!(short.dual(), punct);
        prop_assert!(short.k() + t.len() >= c.k());
    }

    #[test]
    fn hull_is_self_orthogonal(c in arb_code()) {
        let h = c.hull();
        prop_assert!(h.is_self_orthogonal());
        prop_assert!(c.contains_code(&h) && c.dual().contains_code(&h));
    }

    #[test]
    fn permutation_preserves_weights(c in arb_code(), seed in any::<u64>()) {
        let n = c.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = c.permute(&perm);
        prop_assert_eq!(odp_core::weight_distribution(&p).unwrap(), odp_core::weight_distribution(&c).unwrap());
    }
}

#[test]
fn type_classes() {
    let e8 = odp_core::codedb::catalog_code("e8").unwrap();
    assert_eq!(e8.type_classify(), TypeClass::TypeII);
    let i2 = LinearCode::repetition(2);
    assert_eq!(i2.type_classify(), TypeClass::TypeI);
    assert_eq!(LinearCode::repetition(3).type_classify(), TypeClass::NotSelfDual);
}
