//! Randomized growth of subcodes and supercodes by random coset additions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::packed::{for_each_codeword, Word};
use crate::weights;

use super::span::{complement, Span};
use super::{Filters, SearchConfig};

/// Coset spaces up to this dimension are scanned in full to confirm that no
/// extension remains.
const FULL_SCAN_BITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// Every coset was checked.
    Proven,
    /// Random retries were exhausted on a coset space too large to scan.
    Probable,
}

#[derive(Clone, Debug)]
pub struct RandomOutcome {
    pub code: LinearCode,
    pub maximality: Maximality,
    /// Index of the restart that produced `code`.
    pub restart: usize,
}

fn admissible(e: &Span, x: Word, dmin: u32, filters: Filters) -> bool {
    if filters.doubly_even || filters.self_orthogonal {
        let m = if filters.doubly_even { 4 } else { 2 };
        if x.count_ones() % m != 0 || e.basis().iter().any(|&b| (b & x).count_ones() % 2 == 1) {
            return false;
        }
    }
    e.coset_weight_at_least(x, dmin)
}

/// Adds random admissible cosets of `e` inside `ambient` until none is left.
fn grow(e: &mut Span, ambient: &[Word], dmin: u32, filters: Filters, rng: &mut ChaCha8Rng) -> Maximality {
    loop {
        let comp = complement(ambient, e);
        if comp.is_empty() {
            return Maximality::Proven;
        }
        let tries = 64 * comp.len();
        let mut added = false;
        for _ in 0..tries {
            let mut x: Word = 0;
            for &b in &comp {
                if rng.gen::<bool>() {
                    x ^= b;
                }
            }
            if x != 0 && admissible(e, x, dmin, filters) {
                e.insert(x);
                added = true;
                break;
            }
        }
        if added {
            continue;
        }
        if comp.len() > FULL_SCAN_BITS {
            return Maximality::Probable;
        }
        let mut x: Word = 0;
        let mut hit = None;
        for i in 1u64..(1u64 << comp.len()) {
            x ^= comp[i.trailing_zeros() as usize];
            if admissible(e, x, dmin, filters) {
                hit = Some(x);
                break;
            }
        }
        match hit {
            Some(x) => {
                e.insert(x);
            }
            None => return Maximality::Proven,
        }
    }
}

fn better(a: &RandomOutcome, b: &Option<RandomOutcome>) -> bool {
    b.as_ref().map_or(true, |b| a.code.k() > b.code.k())
}

/// A maximal subcode of `c` with minimum distance at least `d'`, grown from a
/// random codeword of weight at least `d'`. The best of `cfg.restarts` runs
/// is returned; runs are reproducible from `cfg.seed`.
pub fn random_subcode(c: &LinearCode, dmin: usize, cfg: &SearchConfig) -> Result<RandomOutcome> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    let rows: Vec<Word> = c.packed_rows()?;
    let heavy = heavy_words(&rows, dmin as u32)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<RandomOutcome> = None;
    for restart in 0..cfg.restarts.max(1) {
        let start = match &heavy {
            Heavy::Listed(ws) => ws[rng.gen_range(0..ws.len())],
            Heavy::Sample => loop {
                let mut x: Word = 0;
                for &r in &rows {
                    if rng.gen::<bool>() {
                        x ^= r;
                    }
                }
                if x.count_ones() >= dmin as u32 {
                    break x;
                }
            },
        };
        let mut e = Span::from_words(c.n(), &[start]);
        let maximality = grow(&mut e, &rows, dmin as u32, Filters::default(), &mut rng);
        let out = RandomOutcome {
            code: e.to_code(),
            maximality,
            restart,
        };
        if better(&out, &best) {
            best = Some(out);
        }
    }
    Ok(best.expect("at least one restart"))
}

enum Heavy {
    Listed(Vec<Word>),
    Sample,
}

/// Words of weight at least `w`, listed when the code is small or when they
/// are too rare to hit by sampling.
fn heavy_words(rows: &[Word], w: u32) -> Result<Heavy> {
    let k = rows.len();
    if k <= weights::DEFAULT_ENUMERATION_BITS {
        let mut count = 0u64;
        for_each_codeword(rows, |_, x| {
            if x.count_ones() >= w {
                count += 1;
            }
        });
        if count == 0 {
            return Err(Error::Precondition(format!("no codeword of weight at least {w}")));
        }
        // Sampling is fine when at least one word in 2^10 qualifies.
        if count << 10 >= 1u64 << k {
            return Ok(Heavy::Sample);
        }
        let mut out = Vec::with_capacity(count as usize);
        for_each_codeword(rows, |_, x| {
            if x.count_ones() >= w {
                out.push(x);
            }
        });
        return Ok(Heavy::Listed(out));
    }
    Ok(Heavy::Sample)
}

/// A code containing `c1` inside `c1`'s dual (intersected with `cfg.within`
/// when given) with minimum distance at least `d' < d(c1)`, grown by random
/// coset additions.
pub fn random_supercode(c1: &LinearCode, dmin: usize, cfg: &SearchConfig) -> Result<RandomOutcome> {
    if c1.k() == 0 {
        return Err(Error::EmptyCode);
    }
    let d1 = weights::min_distance(c1)?;
    if dmin >= d1 {
        return Err(Error::Precondition(format!(
            "target distance {dmin} must be below d(C1) = {d1}"
        )));
    }
    let mut ambient = c1.dual();
    if let Some(w) = &cfg.within {
        ambient = ambient.intersect(w)?;
    }
    let amb: Vec<Word> = ambient.packed_rows()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<RandomOutcome> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut e = Span::of_code(c1)?;
        let maximality = grow(&mut e, &amb, dmin as u32, cfg.filters, &mut rng);
        let out = RandomOutcome {
            code: e.to_code(),
            maximality,
            restart,
        };
        if better(&out, &best) {
            best = Some(out);
        }
    }
    Ok(best.expect("at least one restart"))
}
