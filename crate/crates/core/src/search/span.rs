//! Small subspaces of a packed ambient space.

use crate::code::LinearCode;
use crate::error::Result;
use crate::gf2::BitVector;
use crate::packed::{for_each_codeword, PackedWord, Word};

/// A subspace kept as an ordered basis plus an echelon used for reduction.
///
/// `basis` keeps insertion order, so its prefixes form a chain.
#[derive(Clone, Debug)]
pub struct Span {
    n: usize,
    basis: Vec<Word>,
    echelon: Vec<(u32, Word)>,
}

impl Span {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            basis: Vec::new(),
            echelon: Vec::new(),
        }
    }

    pub fn from_words(n: usize, words: &[Word]) -> Self {
        let mut s = Self::new(n);
        for &w in words {
            s.insert(w);
        }
        s
    }

    pub fn of_code(c: &LinearCode) -> Result<Self> {
        Ok(Self::from_words(c.n(), &c.packed_rows::<Word>()?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Reduced representative of `x` modulo the span; zero iff `x` lies in it.
    pub fn reduce(&self, mut x: Word) -> Word {
        for &(p, r) in &self.echelon {
            if x.bit(p as usize) {
                x ^= r;
            }
        }
        x
    }

    pub fn contains(&self, x: Word) -> bool {
        self.reduce(x) == 0
    }

    /// Adds `x`; returns `false` if it was already in the span.
    pub fn insert(&mut self, x: Word) -> bool {
        let r = self.reduce(x);
        if r == 0 {
            return false;
        }
        self.echelon.push((r.trailing_zeros(), r));
        self.basis.push(x);
        true
    }

    pub fn with(&self, x: Word) -> Self {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    /// Smallest nonzero weight, or `None` for the zero space.
    pub fn min_weight(&self) -> Option<u32> {
        crate::weights::packed_min_weight(&self.basis)
    }

    /// Smallest weight in the coset `x + span`.
    pub fn coset_min_weight(&self, x: Word) -> u32 {
        let mut best = u32::MAX;
        for_each_codeword(&self.basis, |_, w| best = best.min((w ^ x).count_ones()));
        best
    }

    /// `true` iff every word of `x + span` has weight at least `w`.
    pub fn coset_weight_at_least(&self, x: Word, w: u32) -> bool {
        if x.count_ones() < w {
            return false;
        }
        let mut ok = true;
        let mut word = x;
        for i in 1..(1u64 << self.basis.len()) {
            word ^= self.basis[i.trailing_zeros() as usize];
            if word.count_ones() < w {
                ok = false;
                break;
            }
        }
        ok
    }

    pub fn to_code(&self) -> LinearCode {
        let rows = self.basis.iter().map(|&w| BitVector::from_u128(self.n, w)).collect();
        LinearCode::from_rows(self.n, rows).expect("rows have length n")
    }

    /// Sorted reduced echelon rows; equal keys iff equal subspaces.
    pub fn key(&self) -> Vec<Word> {
        let mut rows: Vec<Word> = self.echelon.iter().map(|&(_, r)| r).collect();
        // Full reduction: clear every pivot from the other rows.
        let pivots: Vec<u32> = self.echelon.iter().map(|&(p, _)| p).collect();
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i != j && rows[j].bit(pivots[i] as usize) {
                    rows[j] ^= rows[i];
                }
            }
        }
        rows.sort_unstable();
        rows
    }
}

/// Basis of a complement of `sub` inside `ambient`, reduced modulo `sub`.
/// Every combination of it is its own reduced coset representative.
pub fn complement(ambient: &[Word], sub: &Span) -> Vec<Word> {
    let mut s = sub.clone();
    let mut out = Vec::new();
    for &a in ambient {
        let r = s.reduce(a);
        if r != 0 {
            s.insert(r);
            out.push(r);
        }
    }
    out
}
