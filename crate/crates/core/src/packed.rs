//! Single-word codeword representation used by the hot loops.
//!
//! Every enumeration kernel is generic over the word type so that codes of
//! length at most 64 run on `u64` and codes of length at most 128 on `u128`.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::PrimInt;

use crate::gf2::BitVector;

/// An unsigned machine word holding one codeword.
pub trait PackedWord: PrimInt + Hash + Debug + Default + Send + Sync + 'static {
    const BITS: usize;

    fn from_bits(v: &BitVector) -> Self;

    fn to_bits(self, len: usize) -> BitVector;

    fn weight(self) -> u32 {
        self.count_ones()
    }

    fn bit(self, i: usize) -> bool {
        (self >> i) & Self::one() == Self::one()
    }

    fn unit(i: usize) -> Self {
        Self::one() << i
    }
}

impl PackedWord for u64 {
    const BITS: usize = 64;

    fn from_bits(v: &BitVector) -> Self {
        assert!(v.len() <= 64, "vector of length {} does not fit in u64", v.len());
        v.to_u128().expect("length checked") as u64
    }

    fn to_bits(self, len: usize) -> BitVector {
        BitVector::from_u128(len, self as u128)
    }
}

impl PackedWord for u128 {
    const BITS: usize = 128;

    fn from_bits(v: &BitVector) -> Self {
        v.to_u128()
            .unwrap_or_else(|| panic!("vector of length {} does not fit in u128", v.len()))
    }

    fn to_bits(self, len: usize) -> BitVector {
        BitVector::from_u128(len, self)
    }
}

/// The word type used by the search and canonical-form engines.
pub type Word = u128;

/// Visits every codeword of the span of `rows` in binary-reflected Gray-code
/// order. The callback receives the message (bit `i` selects row `i`) and
/// the codeword; the first call is always the zero word.
pub fn for_each_codeword<W: PackedWord>(rows: &[W], mut f: impl FnMut(u64, W)) {
    assert!(rows.len() < 64, "too many rows for message enumeration");
    let mut word = W::zero();
    let mut msg = 0u64;
    f(0, word);
    for i in 1..(1u64 << rows.len()) {
        let b = i.trailing_zeros() as usize;
        word = word ^ rows[b];
        msg ^= 1 << b;
        f(msg, word);
    }
}

/// All `2^k` codewords indexed by message.
pub fn codeword_table<W: PackedWord>(rows: &[W]) -> Vec<W> {
    let mut table = vec![W::zero(); 1usize << rows.len()];
    for_each_codeword(rows, |m, w| table[m as usize] = w);
    table
}

/// Weights of all `2^k` codewords indexed by message.
pub fn weight_table<W: PackedWord>(rows: &[W]) -> Vec<u8> {
    let mut table = vec![0u8; 1usize << rows.len()];
    for_each_codeword(rows, |m, w| table[m as usize] = w.weight() as u8);
    table
}

/// Packs the rows of a generator matrix.
pub fn pack_rows<W: PackedWord>(rows: &[BitVector]) -> Vec<W> {
    rows.iter().map(W::from_bits).collect()
}

/// Applies a coordinate permutation (`i` goes to `perm[i]`) to a packed word.
pub fn permute_word<W: PackedWord>(w: W, perm: &[usize]) -> W {
    let mut out = W::zero();
    let mut rest = w;
    while rest != W::zero() {
        let i = rest.trailing_zeros() as usize;
        rest = rest & (rest - W::one());
        out = out | W::unit(perm[i]);
    }
    out
}

/// Byte-indexed lookup tables that permute a packed word in `ceil(n/8)` steps.
pub struct Permuter<W: PackedWord> {
    tables: Vec<[W; 256]>,
}

impl<W: PackedWord> Permuter<W> {
    pub fn new(perm: &[usize]) -> Self {
        let chunks = perm.len().div_ceil(8);
        let mut tables = Vec::with_capacity(chunks);
        for c in 0..chunks {
            let mut t = [W::zero(); 256];
            for (byte, slot) in t.iter_mut().enumerate() {
                let mut out = W::zero();
                for b in 0..8 {
                    let i = c * 8 + b;
                    if i < perm.len() && (byte >> b) & 1 == 1 {
                        out = out | W::unit(perm[i]);
                    }
                }
                *slot = out;
            }
            tables.push(t);
        }
        Self { tables }
    }

    pub fn apply(&self, w: W) -> W {
        let mut out = W::zero();
        let mask = W::from(0xffu8).expect("byte mask");
        for (c, t) in self.tables.iter().enumerate() {
            let byte = ((w >> (8 * c)) & mask).to_usize().expect("byte");
            out = out | t[byte];
        }
        out
    }
}
