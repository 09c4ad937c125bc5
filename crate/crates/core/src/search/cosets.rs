//! Coset representatives of a code inside an ambient code.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::packed::Word;

use super::span::{complement, Span};

/// One representative per nontrivial coset, streamed lazily. Representative
/// `i` is the combination of the complement basis selected by the bits of
/// `i`, for `i = 1 .. 2^m - 1`.
pub struct CosetReps {
    n: usize,
    basis: Vec<Word>,
    next: u128,
    end: u128,
}

impl CosetReps {
    pub fn complement_basis(&self) -> Vec<BitVector> {
        self.basis.iter().map(|&w| BitVector::from_u128(self.n, w)).collect()
    }

    /// Number of representatives still to come.
    pub fn remaining(&self) -> u128 {
        self.end - self.next
    }
}

impl Iterator for CosetReps {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.next >= self.end {
            return None;
        }
        let i = self.next;
        self.next += 1;
        let mut w: Word = 0;
        for (b, &v) in self.basis.iter().enumerate() {
            if (i >> b) & 1 == 1 {
                w ^= v;
            }
        }
        Some(BitVector::from_u128(self.n, w))
    }
}

pub fn coset_reps(ambient: &LinearCode, c: &LinearCode) -> Result<CosetReps> {
    if ambient.n() != c.n() {
        return Err(Error::LengthMismatch {
            expected: ambient.n(),
            found: c.n(),
        });
    }
    if !ambient.contains_code(c) {
        return Err(Error::NotSubcode);
    }
    let sub = Span::of_code(c)?;
    let basis = complement(&ambient.packed_rows::<Word>()?, &sub);
    if basis.len() >= 127 {
        return Err(Error::Capacity("coset space too large".into()));
    }
    Ok(CosetReps {
        n: c.n(),
        end: 1u128 << basis.len(),
        basis,
        next: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::GF2Matrix;

    #[test]
    fn cosets_of_e8() {
        let e8 = LinearCode::from_generator(
            &GF2Matrix::from_strs(&["11111111", "00001111", "00110011", "01010101"]).unwrap(),
        );
        let full = LinearCode::full_space(8);
        let reps: Vec<BitVector> = coset_reps(&full, &e8).unwrap().collect();
        assert_eq!(reps.len(), 15);
        let mut seen = std::collections::HashSet::new();
        for r in &reps {
            assert!(!e8.contains(r));
            assert!(seen.insert(e8.reduce(r)));
        }
        assert_eq!(coset_reps(&e8, &e8).unwrap().count(), 0);
        assert!(coset_reps(&e8, &full).is_err());
    }
}
