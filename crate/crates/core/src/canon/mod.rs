//! Permutation equivalence of codes: canonical forms, equivalence tests,
//! class keys for subcodes inside a fixed code, and automorphism generators.
//!
//! A code is turned into a colored set system on its coordinates: all
//! codewords of weight at most `w*`, where `w*` is the least weight such that
//! those words span the code. The set depends only on the code, so a
//! canonical labeling of it is a canonical labeling of the code, and its
//! automorphisms are exactly the automorphisms of the code. When the dual is
//! smaller the dual is labeled instead; both determine each other.

pub mod engine;

use std::collections::BTreeMap;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, GF2Matrix};
use crate::packed::{for_each_codeword, PackedWord, Word};
use crate::weights::{self, WeightDistribution};

pub use engine::{Labeling, Structure};

/// Largest dimension whose codewords are enumerated to build the structure.
pub const MAX_ENUMERATION_BITS: usize = 26;

/// Largest number of words kept in a structure.
pub const MAX_STRUCTURE_WORDS: usize = 400_000;

/// Codewords of weight at most `w*`, the least weight whose words span `c`.
pub fn spanning_words(c: &LinearCode) -> Result<Vec<Word>> {
    if c.k() == 0 {
        return Ok(Vec::new());
    }
    if c.k() > MAX_ENUMERATION_BITS {
        return Err(Error::Capacity(format!(
            "dimension {} is too large for canonical labeling",
            c.k()
        )));
    }
    let rows: Vec<Word> = c.packed_rows()?;
    let wd = weights::weight_distribution(c)?;
    let mut basis: Vec<Word> = Vec::new();
    let mut pivots: Vec<Word> = Vec::new();
    let mut words: Vec<Word> = Vec::new();
    let weights_present = wd.nonzero_weights();
    let mut next = 0;
    while basis.len() < c.k() {
        // Collect enough weights at once that the words could span.
        let lo = weights_present[next];
        let mut hi_idx = next;
        let mut count: u64 = wd.get(lo);
        while (count as usize) < c.k() - basis.len() && hi_idx + 1 < weights_present.len() {
            hi_idx += 1;
            count += wd.get(weights_present[hi_idx]);
        }
        let hi = weights_present[hi_idx];
        if words.len() as u64 + count > MAX_STRUCTURE_WORDS as u64 {
            return Err(Error::Capacity(format!(
                "more than {MAX_STRUCTURE_WORDS} low-weight words"
            )));
        }
        let mut batch: Vec<Word> = Vec::with_capacity(count as usize);
        for_each_codeword(&rows, |_, w| {
            let wt = w.count_ones() as usize;
            if wt >= lo && wt <= hi {
                batch.push(w);
            }
        });
        batch.sort_unstable_by_key(|w| w.count_ones());
        for &w in &batch {
            insert_basis(&mut basis, &mut pivots, w);
        }
        words.extend(batch);
        next = hi_idx + 1;
    }
    Ok(words)
}

fn insert_basis(basis: &mut Vec<Word>, pivots: &mut Vec<Word>, w: Word) -> bool {
    let mut x = w;
    for (b, &p) in basis.iter().zip(pivots.iter()) {
        if x & p != 0 {
            x ^= b;
        }
    }
    if x == 0 {
        return false;
    }
    let p = x & x.wrapping_neg();
    for b in basis.iter_mut() {
        if *b & p != 0 {
            *b ^= x;
        }
    }
    basis.push(x);
    pivots.push(p);
    true
}

/// Cheap necessary conditions for equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub n: usize,
    pub k: usize,
    pub weights: Vec<u64>,
    pub dual_distance: Option<usize>,
    pub hull_dimension: usize,
}

impl Signature {
    pub fn of(c: &LinearCode) -> Result<Self> {
        let dual = c.dual();
        // The smaller side is enumerated; the other follows by MacWilliams.
        let (wd, dual_wd) = if c.k() <= dual.k() {
            let wd = weights::weight_distribution(c)?;
            let t = crate::exact::macwilliams_transform(&wd, c.k());
            (wd, to_distribution(&t))
        } else {
            let dwd = weights::weight_distribution(&dual)?;
            let t = crate::exact::macwilliams_transform(&dwd, dual.k());
            (to_distribution(&t), dwd)
        };
        Ok(Self {
            n: c.n(),
            k: c.k(),
            weights: wd.counts().to_vec(),
            dual_distance: dual_wd.min_weight(),
            hull_dimension: c.hull().k(),
        })
    }
}

fn to_distribution(t: &[crate::Rational]) -> WeightDistribution {
    use num_traits::ToPrimitive;
    WeightDistribution::from_counts(
        t.iter()
            .map(|q| q.to_integer().to_u64().expect("a genuine code has integral counts"))
            .collect(),
    )
}

/// A complete invariant of a code up to coordinate permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub signature: Signature,
    /// Reduced generator of the canonically relabeled code.
    pub generator: GF2Matrix,
}

impl PartialOrd for GF2Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GF2Matrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ncols(), self.rows()).cmp(&(other.ncols(), other.rows()))
    }
}

/// Canonical labeling of a code together with its automorphisms.
#[derive(Clone, Debug)]
pub struct CodeLabeling {
    /// Coordinate `i` goes to `perm[i]`.
    pub perm: Vec<usize>,
    /// Generators of the automorphism group (possibly redundant).
    pub generators: Vec<Vec<usize>>,
    /// The canonical representative `perm(C)`.
    pub canonical: LinearCode,
}

fn structure_for(layers: &[&LinearCode]) -> Result<Structure> {
    let n = layers[0].n();
    let mut all: BTreeMap<Word, u32> = BTreeMap::new();
    let rows: Vec<Vec<BitVector>> = layers.iter().map(|c| c.generator().rows().to_vec()).collect();
    for layer in layers {
        for w in spanning_words(layer)? {
            all.entry(w).or_insert(0);
        }
    }
    let codes: Vec<LinearCode> = rows
        .into_iter()
        .map(|r| LinearCode::from_rows(n, r).expect("same length"))
        .collect();
    let mut words = Vec::with_capacity(all.len());
    let mut colors = Vec::with_capacity(all.len());
    for (w, _) in all {
        let v = BitVector::from_u128(n, w);
        let mut color = 0u32;
        for (i, c) in codes.iter().enumerate() {
            if c.contains(&v) {
                color |= 1 << i;
            }
        }
        words.push(w);
        colors.push(color);
    }
    Structure::new(n, words, colors)
}

fn label_layers(layers: &[&LinearCode]) -> Result<Labeling> {
    let s = structure_for(layers)?;
    engine::canonical_labeling(&s)
}

fn use_dual(c: &LinearCode) -> bool {
    c.n() - c.k() < c.k()
}

fn check_size(c: &LinearCode) -> Result<()> {
    if c.n() > <Word as PackedWord>::BITS {
        return Err(Error::Capacity(format!("length {} exceeds {}", c.n(), <Word as PackedWord>::BITS)));
    }
    Ok(())
}

/// Canonical labeling of `c`; the automorphism generators are those of `c`.
pub fn label_code(c: &LinearCode) -> Result<CodeLabeling> {
    check_size(c)?;
    let l = if use_dual(c) {
        label_layers(&[&c.dual()])?
    } else {
        label_layers(&[c])?
    };
    Ok(CodeLabeling {
        canonical: c.permute(&l.perm),
        perm: l.perm,
        generators: l.generators,
    })
}

pub fn canonical_form(c: &LinearCode) -> Result<CanonicalForm> {
    let l = label_code(c)?;
    Ok(CanonicalForm {
        signature: Signature::of(c)?,
        generator: l.canonical.generator().clone(),
    })
}

/// A permutation mapping `a` onto `b`, if one exists.
pub fn find_equivalence(a: &LinearCode, b: &LinearCode) -> Result<Option<Vec<usize>>> {
    if a.n() != b.n() || a.k() != b.k() {
        return Ok(None);
    }
    if Signature::of(a)? != Signature::of(b)? {
        return Ok(None);
    }
    let la = label_code(a)?;
    let lb = label_code(b)?;
    if la.canonical != lb.canonical {
        return Ok(None);
    }
    // b = pb^{-1}(pa(a))
    let mut inv_b = vec![0; b.n()];
    for (i, &x) in lb.perm.iter().enumerate() {
        inv_b[x] = i;
    }
    let sigma: Vec<usize> = la.perm.iter().map(|&x| inv_b[x]).collect();
    if a.permute(&sigma) != *b {
        return Err(Error::Precondition("equivalence witness failed to verify".into()));
    }
    Ok(Some(sigma))
}

pub fn are_equivalent(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    Ok(find_equivalence(a, b)?.is_some())
}

/// Automorphism group generators of `c`.
pub fn automorphism_generators(c: &LinearCode) -> Result<Vec<Vec<usize>>> {
    Ok(label_code(c)?.generators)
}

/// One representative per equivalence class, the one with the least
/// generator, sorted by canonical form.
pub fn dedupe(codes: &[LinearCode]) -> Result<Vec<LinearCode>> {
    let mut classes: BTreeMap<CanonicalForm, LinearCode> = BTreeMap::new();
    for c in codes {
        let f = canonical_form(c)?;
        match classes.get_mut(&f) {
            Some(rep) if c.generator() < rep.generator() => *rep = c.clone(),
            Some(_) => {}
            None => {
                classes.insert(f, c.clone());
            }
        }
    }
    Ok(classes.into_values().collect())
}

/// Key of the pair `(C, E)` with `E` a subcode of `C`: equal keys iff some
/// permutation maps `C` onto `C'` and `E` onto `E'` at once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairKey {
    outer: GF2Matrix,
    inner: GF2Matrix,
}

/// Canonical labeling of the pair `(C, E)`; the generators are those of the
/// stabilizer of `E` in the automorphism group of `C`.
#[derive(Clone, Debug)]
pub struct PairLabeling {
    pub key: PairKey,
    pub perm: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
}

pub fn label_pair(c: &LinearCode, e: &LinearCode) -> Result<PairLabeling> {
    check_size(c)?;
    if !c.contains_code(e) {
        return Err(Error::NotSubcode);
    }
    // Label whichever of (C, E) and (E^perp, C^perp) enumerates fewer words.
    let l = if c.n() - e.k() < c.k() {
        let (ed, cd) = (e.dual(), c.dual());
        label_layers(&[&ed, &cd])?
    } else {
        label_layers(&[c, e])?
    };
    Ok(PairLabeling {
        key: PairKey {
            outer: c.permute(&l.perm).generator().clone(),
            inner: e.permute(&l.perm).generator().clone(),
        },
        perm: l.perm,
        generators: l.generators,
    })
}

pub fn subcode_class_key(c: &LinearCode, e: &LinearCode) -> Result<PairKey> {
    Ok(label_pair(c, e)?.key)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&str]) -> LinearCode {
        LinearCode::from_generator(&GF2Matrix::from_strs(rows).unwrap())
    }

    fn e8() -> LinearCode {
        code(&["11111111", "00001111", "00110011", "01010101"])
    }

    #[test]
    fn spanning_words_of_e8_are_the_weight_four_words() {
        let w = spanning_words(&e8()).unwrap();
        assert_eq!(w.len(), 14);
        assert!(w.iter().all(|x| x.count_ones() == 4));
    }

    #[test]
    fn permuted_e8_is_equivalent() {
        let perm = [3, 7, 1, 0, 5, 2, 6, 4];
        let a = e8();
        let b = a.permute(&perm);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let sigma = find_equivalence(&a, &b).unwrap().unwrap();
        assert_eq!(a.permute(&sigma), b);
    }

    #[test]
    fn inequivalent_codes_differ() {
        let a = code(&["1100", "0011"]);
        let b = code(&["1100", "0110"]);
        assert!(!are_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn e8_automorphisms_fix_the_code() {
        let gens = automorphism_generators(&e8()).unwrap();
        assert!(!gens.is_empty());
        for g in gens {
            assert_eq!(e8().permute(&g), e8());
        }
    }

    #[test]
    fn pair_keys() {
        let c = e8();
        let a = code(&["11110000"]);
        let b = code(&["00001111"]);
        let one = code(&["11111111"]);
        assert_eq!(subcode_class_key(&c, &a).unwrap(), subcode_class_key(&c, &b).unwrap());
        assert_ne!(subcode_class_key(&c, &a).unwrap(), subcode_class_key(&c, &one).unwrap());
        assert_eq!(subcode_class_key(&c, &code(&["11000000"])), Err(Error::NotSubcode));
    }
}
