//! Exhaustive oracles for small codes, shared by the property suites.
#![allow(dead_code)]

use std::collections::HashMap;

use odp_core::search::Order;
use odp_core::{BitVector, LinearCode};
use proptest::prelude::*;

pub fn code_from(n: usize, rows: &[u32]) -> LinearCode {
    let rows = rows
        .iter()
        .map(|&r| BitVector::from_u128(n, (r as u128) & ((1u128 << n) - 1)))
        .collect();
    LinearCode::from_rows(n, rows).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn brute_equivalent(a: &LinearCode, b: &LinearCode) -> bool {
    a.k() == b.k() && permutations(a.n()).iter().any(|p| a.permute(p) == *b)
}

pub fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        p.swap(i, (s % (i as u64 + 1)) as usize);
    }
    p
}

/// Every subspace of a code of dimension at most 5, as a bitmask over the
/// `2^k` messages, with its words.
pub struct Lattice {
    pub words: Vec<u128>,
    pub k: usize,
}

impl Lattice {
    pub fn new(c: &LinearCode) -> Self {
        let k = c.k();
        let rows: Vec<u128> = c.generator().rows().iter().map(|r| r.to_u128().unwrap()).collect();
        let words = (0..1usize << k)
            .map(|m| (0..k).filter(|&i| m >> i & 1 == 1).fold(0u128, |a, i| a ^ rows[i]))
            .collect();
        Self { words, k }
    }

    pub fn full(&self) -> u64 {
        (1u64 << (1 << self.k)) - 1
    }

    pub fn dim(&self, s: u64) -> usize {
        s.count_ones().trailing_zeros() as usize
    }

    pub fn distance(&self, s: u64) -> u32 {
        (1..1usize << self.k)
            .filter(|&m| s >> m & 1 == 1)
            .map(|m| self.words[m].count_ones())
            .min()
            .unwrap_or(0)
    }

    pub fn hyperplanes(&self, s: u64) -> Vec<u64> {
        let mut out: Vec<u64> = (1..1usize << self.k)
            .map(|y| {
                (0..1usize << self.k)
                    .filter(|&m| s >> m & 1 == 1 && (m & y).count_ones() % 2 == 0)
                    .fold(0u64, |a, m| a | 1 << m)
            })
            .filter(|&h| h != s)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn all(&self) -> Vec<u64> {
        let mut seen = vec![self.full()];
        let mut i = 0;
        while i < seen.len() {
            for h in self.hyperplanes(seen[i]) {
                if !seen.contains(&h) {
                    seen.push(h);
                }
            }
            i += 1;
        }
        seen
    }

    pub fn code(&self, n: usize, s: u64) -> LinearCode {
        let rows = (1..1usize << self.k)
            .filter(|&m| s >> m & 1 == 1)
            .map(|m| BitVector::from_u128(n, self.words[m]))
            .collect();
        LinearCode::from_rows(n, rows).unwrap()
    }

    /// Best profile of chains from `s` down to dimension 1, in the stored
    /// orientation (entries from dimension `dim(s)` down to 1).
    pub fn best(&self, s: u64, order: Order, memo: &mut HashMap<u64, Vec<usize>>) -> Vec<usize> {
        if let Some(p) = memo.get(&s) {
            return p.clone();
        }
        let d = self.distance(s) as usize;
        let p = if self.dim(s) == 1 {
            vec![d]
        } else {
            let mut best: Option<Vec<usize>> = None;
            for h in self.hyperplanes(s) {
                let tail = self.best(h, order, memo);
                let better = match &best {
                    None => true,
                    Some(b) => match order {
                        Order::Dictionary => tail > *b,
                        Order::Inverse => tail.iter().rev().gt(b.iter().rev()),
                    },
                };
                if better {
                    best = Some(tail);
                }
            }
            let mut p = vec![d];
            p.extend(best.expect("a hyperplane"));
            p
        };
        memo.insert(s, p.clone());
        p
    }
}

pub fn small_code() -> impl Strategy<Value = LinearCode> {
    (2usize..=10, prop::collection::vec(any::<u32>(), 1..=5))
        .prop_map(|(n, rows)| code_from(n, &rows))
        .prop_filter("nonzero code", |c| c.k() > 0)
}

