//! Minimum distance, weight distribution and weight-filtered codeword
//! iteration.

use std::fmt;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, GF2Matrix};
use crate::packed::{for_each_codeword, PackedWord, Word};

/// Largest dimension enumerated in full by default.
pub const DEFAULT_ENUMERATION_BITS: usize = 28;

/// Counts `A_0, ..., A_n` of codewords of each weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    /// Wraps raw counts; `counts.len()` must be `n + 1`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "a distribution needs at least A_0");
        Self { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `A_w`, zero past the length.
    pub fn get(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Weights `w > 0` with `A_w > 0`.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..self.counts.len()).filter(|&w| self.counts[w] > 0).collect()
    }

    /// Smallest nonzero weight present, if any.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..=n).all(|w| self.counts[w] == self.counts[n - w])
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("WeightDistribution{")?;
        let mut first = true;
        for (w, &a) in self.counts.iter().enumerate().filter(|(_, &a)| a > 0) {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "A{w}={a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, &a) in self.counts.iter().enumerate().filter(|(_, &a)| a > 0) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{w}:{a}")?;
        }
        Ok(())
    }
}

/// Distribution of weights over the span of packed `rows` of length `n`.
pub fn packed_distribution<W: PackedWord>(rows: &[W], n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    for_each_codeword(rows, |_, w| counts[w.weight() as usize] += 1);
    counts
}

fn check_budget(c: &LinearCode, max_bits: usize) -> Result<()> {
    if c.k() > max_bits {
        return Err(Error::Capacity(format!(
            "enumerating 2^{} codewords exceeds the budget of 2^{}",
            c.k(),
            max_bits
        )));
    }
    Ok(())
}

/// Full weight distribution with the default enumeration budget.
pub fn weight_distribution(c: &LinearCode) -> Result<WeightDistribution> {
    weight_distribution_with_budget(c, DEFAULT_ENUMERATION_BITS)
}

/// Full weight distribution by Gray-code enumeration of all `2^k`
/// codewords, provided `k <= max_bits`.
pub fn weight_distribution_with_budget(c: &LinearCode, max_bits: usize) -> Result<WeightDistribution> {
    if let Some(wd) = c.distribution.get() {
        return Ok(wd.clone());
    }
    check_budget(c, max_bits)?;
    let counts = if c.n() <= 64 {
        packed_distribution(&c.packed_rows::<u64>()?, c.n())
    } else if c.n() <= 128 {
        packed_distribution(&c.packed_rows::<u128>()?, c.n())
    } else {
        let mut counts = vec![0u64; c.n() + 1];
        let rows = c.generator().rows();
        let mut word = BitVector::zeros(c.n());
        counts[0] += 1;
        for i in 1..(1u64 << c.k()) {
            word.xor_assign(&rows[i.trailing_zeros() as usize]);
            counts[word.weight()] += 1;
        }
        counts
    };
    let wd = WeightDistribution::from_counts(counts);
    let _ = c.min_distance.set(wd.min_weight().unwrap_or(0));
    let _ = c.distribution.set(wd.clone());
    Ok(wd)
}

/// Minimum distance. Codes of dimension at most the enumeration budget are
/// scanned in full; larger ones go through [`min_distance_bz`].
pub fn min_distance(c: &LinearCode) -> Result<usize> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    if let Some(&d) = c.min_distance.get() {
        return Ok(d);
    }
    let d = if c.k() <= DEFAULT_ENUMERATION_BITS {
        weight_distribution(c)?.min_weight().expect("k >= 1")
    } else {
        min_distance_bz(c)?
    };
    let _ = c.min_distance.set(d);
    Ok(d)
}

/// Smallest weight among packed codewords, scanning every word.
pub fn packed_min_weight<W: PackedWord>(rows: &[W]) -> Option<u32> {
    let mut best = None::<u32>;
    for_each_codeword(rows, |m, w| {
        if m != 0 {
            let wt = w.weight();
            if best.map_or(true, |b| wt < b) {
                best = Some(wt);
            }
        }
    });
    best
}

struct InfoSetMatrix {
    rows: Vec<Word>,
    deficit: usize,
}

/// Generator matrices systematic on pairwise disjoint (possibly partial)
/// information sets, chosen greedily left to right. `deficit` is `k` minus
/// the size of the set.
fn information_set_matrices(c: &LinearCode) -> Vec<InfoSetMatrix> {
    let n = c.n();
    let k = c.k();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let fresh: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        if fresh.is_empty() {
            break;
        }
        let order: Vec<usize> = fresh.iter().copied().chain((0..n).filter(|&i| used[i])).collect();
        // perm sends original coordinate order[j] to position j.
        let mut perm = vec![0; n];
        for (j, &i) in order.iter().enumerate() {
            perm[i] = j;
        }
        let ech = c.generator().permute_columns(&perm).rref();
        let rank_fresh = ech.pivots.iter().filter(|&&p| p < fresh.len()).count();
        if rank_fresh == 0 {
            break;
        }
        for &p in ech.pivots.iter().filter(|&&p| p < fresh.len()) {
            used[order[p]] = true;
        }
        let rows = ech
            .matrix
            .rows()
            .iter()
            .map(|r| {
                let mut v = BitVector::zeros(n);
                for j in r.iter_ones() {
                    v.set(order[j], true);
                }
                Word::from_bits(&v)
            })
            .collect();
        out.push(InfoSetMatrix {
            rows,
            deficit: k - rank_fresh,
        });
    }
    out
}

/// Visits XORs of every `w`-subset of `rows`; stops early when `f` returns
/// `false`.
fn for_each_combination(rows: &[Word], w: usize, f: &mut impl FnMut(Word) -> bool) -> bool {
    fn rec(rows: &[Word], start: usize, left: usize, acc: Word, f: &mut impl FnMut(Word) -> bool) -> bool {
        if left == 0 {
            return f(acc);
        }
        for i in start..=rows.len() - left {
            if !rec(rows, i + 1, left - 1, acc ^ rows[i], f) {
                return false;
            }
        }
        true
    }
    if w > rows.len() {
        return true;
    }
    rec(rows, 0, w, 0, f)
}

/// Minimum distance by the Brouwer–Zimmermann method over disjoint
/// information sets. Requires `n <= 128`.
pub fn min_distance_bz(c: &LinearCode) -> Result<usize> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    if c.n() > <Word as PackedWord>::BITS {
        return Err(Error::Capacity(format!(
            "length {} exceeds {} coordinates",
            c.n(),
            <Word as PackedWord>::BITS
        )));
    }
    let mats = information_set_matrices(c);
    let mut upper = c
        .generator()
        .rows()
        .iter()
        .map(BitVector::weight)
        .min()
        .expect("k >= 1");
    for w in 1..=c.k() {
        for m in &mats {
            for_each_combination(&m.rows, w, &mut |x| {
                let wt = x.count_ones() as usize;
                if wt > 0 && wt < upper {
                    upper = wt;
                }
                true
            });
        }
        let lower: usize = mats.iter().map(|m| (w + 1).saturating_sub(m.deficit)).sum();
        if lower >= upper {
            break;
        }
    }
    Ok(upper)
}

/// Iterator over the codewords whose weight satisfies a predicate, in Gray
/// enumeration order.
pub struct WordsOfWeight<F> {
    rows: Vec<Word>,
    n: usize,
    next: u64,
    end: u64,
    word: Word,
    pred: F,
}

impl<F: FnMut(usize) -> bool> Iterator for WordsOfWeight<F> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        while self.next < self.end {
            let i = self.next;
            self.next += 1;
            if i > 0 {
                self.word ^= self.rows[i.trailing_zeros() as usize];
            }
            if (self.pred)(self.word.count_ones() as usize) {
                return Some(BitVector::from_u128(self.n, self.word));
            }
        }
        None
    }
}

/// Codewords (including zero if the predicate accepts weight 0) whose weight
/// satisfies `pred`.
pub fn words_of_weight<F: FnMut(usize) -> bool>(c: &LinearCode, pred: F) -> Result<WordsOfWeight<F>> {
    if c.k() >= 64 {
        return Err(Error::Capacity(format!("dimension {} is too large to enumerate", c.k())));
    }
    Ok(WordsOfWeight {
        rows: c.packed_rows::<Word>()?,
        n: c.n(),
        next: 0,
        end: 1u64 << c.k(),
        word: 0,
        pred,
    })
}

/// Minimum distance of the code generated by the first `rows` rows of `m`.
pub fn prefix_min_distance(m: &GF2Matrix, rows: usize) -> Result<usize> {
    min_distance(&LinearCode::from_generator(&m.top_rows(rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> LinearCode {
        LinearCode::from_generator(
            &GF2Matrix::from_strs(&["11111111", "00001111", "00110011", "01010101"]).unwrap(),
        )
    }

    #[test]
    fn e8_distribution() {
        let wd = weight_distribution(&e8()).unwrap();
        assert_eq!(wd.counts(), &[1, 0, 0, 0, 14, 0, 0, 0, 1]);
        assert!(wd.is_symmetric());
        assert_eq!(min_distance(&e8()).unwrap(), 4);
    }

    #[test]
    fn zero_code() {
        let z = LinearCode::zero(5);
        assert_eq!(weight_distribution(&z).unwrap().counts(), &[1, 0, 0, 0, 0, 0]);
        assert_eq!(min_distance(&z), Err(Error::EmptyCode));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            weight_distribution_with_budget(&e8(), 3),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn words_of_weight_filters() {
        let top: Vec<_> = words_of_weight(&e8(), |w| w == 8).unwrap().collect();
        assert_eq!(top, vec![BitVector::ones(8)]);
        assert_eq!(words_of_weight(&e8(), |w| w >= 9).unwrap().count(), 0);
        assert_eq!(words_of_weight(&e8(), |_| true).unwrap().count(), 16);
    }

    #[test]
    fn bz_on_e8() {
        assert_eq!(min_distance_bz(&e8()).unwrap(), 4);
        assert_eq!(min_distance_bz(&LinearCode::repetition(9)).unwrap(), 9);
    }
}
