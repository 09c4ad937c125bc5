//! Exhaustive searches for subcodes of a code and supercodes of seed codes.

use crate::canon;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::packed::Word;
use crate::weights;

use super::lattice::{avoiding_search, shrink_to_avoiding, Ambient, Grower};
use super::span::Span;
use super::{Budget, EquivalenceMode, Filters, SearchConfig};

/// Node cap for the direct kernel search before switching to level growth.
const KERNEL_NODES: usize = 4_000_000;
/// Cap on subcodes listed by the direct kernel search.
const KERNEL_SOLUTIONS: usize = 64;
/// Node cap for the pruning test applied to each hyperplane.
const PRUNE_NODES: usize = 50_000;

/// Maximal subcodes of largest dimension with a prescribed minimum distance.
#[derive(Clone, Debug)]
pub struct SubcodeClasses {
    /// Largest dimension of a subcode whose minimum distance is at least `d'`.
    pub dim: usize,
    /// One code per equivalence class of such subcodes of dimension `dim`.
    pub classes: Vec<LinearCode>,
}

fn max_weight(c: &LinearCode) -> Result<usize> {
    let wd = weights::weight_distribution(c)?;
    Ok(wd.nonzero_weights().last().copied().unwrap_or(0))
}

fn check_target(c: &LinearCode, d: usize) -> Result<()> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    if max_weight(c)? < d {
        return Err(Error::Precondition(format!("no codeword of weight at least {d}")));
    }
    Ok(())
}

/// Largest subcodes of `c` with every nonzero weight at least `w`, as spans
/// covering every equivalence class (possibly with repeats).
pub(crate) fn largest_subcodes(c: &LinearCode, w: u32, budget: &Budget) -> Result<(usize, Vec<Span>)> {
    let rows: Vec<Word> = c.packed_rows()?;
    if let Some(a) = avoiding_search(c.n(), &rows, w, true, KERNEL_NODES, KERNEL_SOLUTIONS)? {
        return Ok((a.dim, a.spans));
    }
    let dim = match avoiding_search(c.n(), &rows, w, false, KERNEL_NODES, 1)? {
        Some(a) => a.dim,
        None => return grow_subcodes(c, w, budget),
    };
    if dim == 0 {
        return Ok((0, Vec::new()));
    }
    Ok((dim, shrink_to_avoiding(c, w, dim, PRUNE_NODES, budget)?))
}

/// Bottom-up growth inside `c`, merging pairs (code, subcode).
fn grow_subcodes(c: &LinearCode, w: u32, budget: &Budget) -> Result<(usize, Vec<Span>)> {
    let g = Grower::new(Ambient::within(c)?, EquivalenceMode::Pair, Filters::default(), budget);
    let mut level = g.classes(vec![Span::new(c.n())])?;
    let mut dim = 0;
    loop {
        let next = g.step(&level, w)?;
        if next.is_empty() {
            break;
        }
        level = next;
        dim += 1;
    }
    if dim == 0 {
        return Ok((0, Vec::new()));
    }
    Ok((dim, level.into_iter().map(|c| c.span).collect()))
}

/// The maximum dimension `k'` of a subcode of `d` with minimum distance at
/// least `d'`, and all inequivalent such subcodes of dimension `k'`.
pub fn chain_subcodes(d: &LinearCode, dmin: usize, cfg: &SearchConfig) -> Result<SubcodeClasses> {
    check_target(d, dmin)?;
    let budget = Budget::new(cfg);
    let (dim, spans) = largest_subcodes(d, dmin as u32, &budget)?;
    let codes: Vec<LinearCode> = spans.iter().map(Span::to_code).collect();
    Ok(SubcodeClasses {
        dim,
        classes: canon::dedupe(&codes)?,
    })
}

/// The maximum dimension of a subcode of `c` with minimum distance at least
/// `d'`.
pub fn max_dimension(c: &LinearCode, dmin: usize, cfg: &SearchConfig) -> Result<usize> {
    check_target(c, dmin)?;
    let rows: Vec<Word> = c.packed_rows()?;
    if let Some(a) = avoiding_search(c.n(), &rows, dmin as u32, false, KERNEL_NODES, 1)? {
        return Ok(a.dim);
    }
    let budget = Budget::new(cfg);
    Ok(largest_subcodes(c, dmin as u32, &budget)?.0)
}

/// All inequivalent `[n, k]` codes of minimum distance at least `d` that
/// contain one of the seeds, grown one coset at a time.
pub fn chain_supercodes(seeds: &[LinearCode], k: usize, d: usize, cfg: &SearchConfig) -> Result<Vec<LinearCode>> {
    let Some(first) = seeds.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    for s in seeds {
        if s.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: s.n(),
            });
        }
        if s.k() > k {
            return Err(Error::Precondition(format!("seed dimension {} exceeds {k}", s.k())));
        }
        if s.k() > 0 && weights::min_distance(s)? < d {
            return Err(Error::Precondition(format!("seed has minimum distance below {d}")));
        }
        if cfg.filters.doubly_even && !(s.is_self_orthogonal() && s.is_doubly_even()) {
            return Err(Error::Precondition("seed is not doubly-even self-orthogonal".into()));
        }
        if cfg.filters.self_orthogonal && !s.is_self_orthogonal() {
            return Err(Error::Precondition("seed is not self-orthogonal".into()));
        }
        if let Some(w) = &cfg.within {
            if !w.contains_code(s) {
                return Err(Error::NotSubcode);
            }
        }
    }
    let budget = Budget::new(cfg);
    let ambient = match &cfg.within {
        Some(w) => Ambient::within(w)?,
        None => Ambient::Full(n),
    };
    let g = Grower::new(ambient, cfg.equivalence, cfg.filters, &budget);
    let lo = seeds.iter().map(LinearCode::k).min().expect("nonempty");
    let seed_spans = |dim: usize| -> Result<Vec<Span>> {
        seeds
            .iter()
            .filter(|s| s.k() == dim)
            .map(Span::of_code)
            .collect()
    };
    let mut level = g.classes(seed_spans(lo)?)?;
    for dim in lo + 1..=k {
        let mut next = g.step(&level, d as u32)?;
        let extra = seed_spans(dim)?;
        if !extra.is_empty() {
            let mut spans: Vec<Span> = next.drain(..).map(|c| c.span).collect();
            spans.extend(extra);
            next = g.classes(spans)?;
        }
        level = next;
    }
    let mut out: Vec<LinearCode> = level.iter().map(|c| c.span.to_code()).collect();
    if cfg.filters.self_complementary {
        out.retain(LinearCode::is_self_complementary);
    }
    Ok(out)
}
