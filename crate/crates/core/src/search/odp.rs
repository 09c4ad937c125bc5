//! Optimum distance profiles in the dictionary and inverse orders.
//!
//! Dictionary order runs top-down. While the profile stays at the current
//! distance every subcode attains it, so the search jumps straight to the
//! largest dimension at which some retained code has a subcode of larger
//! minimum distance, and keeps every class attaining the best value there.
//!
//! Inverse order runs bottom-up inside the code, one coset at a time,
//! keeping every class of pairs (code, subcode) that attains the best value.
//! Once the value drops to `d(C)` the rest of the profile is forced.

use std::collections::BTreeMap;

use crate::canon;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, GF2Matrix};
use crate::packed::Word;
use crate::weights;

use super::chain::largest_subcodes;
use super::lattice::{Ambient, Grower};
use super::span::Span;
use super::{verify_witness, Budget, ChainWitness, DistanceProfile, EquivalenceMode, Filters, Order, SearchConfig};

#[derive(Clone, Debug)]
pub struct OdpResult {
    pub profile: DistanceProfile,
    pub witness: ChainWitness,
    /// `false` when the budget ran out: the profile is then only a lower
    /// bound realized by the witness.
    pub proven: bool,
}

pub fn odp(c: &LinearCode, order: Order, cfg: &SearchConfig) -> Result<OdpResult> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    let budget = Budget::new(cfg);
    let found = match order {
        Order::Dictionary => dictionary(c, &budget),
        Order::Inverse => inverse(c, cfg.equivalence, &budget),
    };
    let (profile, rows) = match found {
        Ok(x) => x,
        Err(Error::BudgetExceeded) => return fallback(c),
        Err(e) => return Err(e),
    };
    let witness = witness_of(c.n(), rows)?;
    if !verify_witness(&witness, &profile)? {
        return Err(Error::Precondition("search produced an inconsistent witness".into()));
    }
    Ok(OdpResult {
        profile,
        witness,
        proven: true,
    })
}

fn witness_of(n: usize, rows: Vec<Word>) -> Result<ChainWitness> {
    let rows = rows.into_iter().map(|w| BitVector::from_u128(n, w)).collect();
    Ok(ChainWitness {
        matrix: GF2Matrix::from_rows(n, rows)?,
    })
}

/// Completes the chain whose members are listed from small to large.
fn chain_rows(members: &[&Span]) -> Vec<Word> {
    let n = members[0].n();
    let mut acc = Span::new(n);
    for m in members {
        for &b in m.basis() {
            acc.insert(b);
        }
    }
    acc.basis().to_vec()
}

/// Caps for the direct search across a run of equal profile entries.
const LEAP_NODES: usize = 20_000;
const LEAP_SOLUTIONS: usize = 50_000;

struct Node {
    /// Chain members from the full code down to this one.
    chain: Vec<Span>,
}

fn dictionary(c: &LinearCode, budget: &Budget) -> Result<(DistanceProfile, Vec<Word>)> {
    let k = c.k();
    let top = Span::of_code(c)?;
    let d0 = weights::min_distance(c)? as u32;
    // profile[dim] for dim = 1..=k
    let mut by_dim = vec![0u32; k + 1];
    by_dim[k] = d0;
    let mut nodes = vec![Node { chain: vec![top] }];
    let mut cur = d0;
    let mut j = k;
    while j > 1 {
        let mut best_dim = 0;
        let mut found: Vec<(usize, Span)> = Vec::new();
        for (i, node) in nodes.iter().enumerate() {
            let d = node.chain.last().expect("nonempty chain").to_code();
            let (dim, spans) = largest_subcodes(&d, cur + 1, budget)?;
            if dim == 0 || dim < best_dim {
                continue;
            }
            if dim > best_dim {
                best_dim = dim;
                found.clear();
            }
            found.extend(spans.into_iter().map(|s| (i, s)));
        }
        if best_dim == 0 {
            for x in by_dim.iter_mut().take(j).skip(1) {
                *x = cur;
            }
            break;
        }
        let wstar = found
            .iter()
            .map(|(_, s)| s.min_weight().expect("nonzero"))
            .max()
            .expect("nonempty");
        for x in by_dim.iter_mut().take(j).skip(best_dim + 1) {
            *x = cur;
        }
        by_dim[best_dim] = wstar;
        // Later steps look only inside the retained codes, so merging them
        // up to equivalence loses nothing.
        let mut classes: BTreeMap<GF2Matrix, Node> = BTreeMap::new();
        for (i, s) in found {
            if s.min_weight() != Some(wstar) {
                continue;
            }
            budget.tick()?;
            let form = canon::label_code(&s.to_code())?.canonical.generator().clone();
            classes.entry(form).or_insert_with(|| {
                let mut chain = nodes[i].chain.clone();
                chain.push(s);
                Node { chain }
            });
        }
        nodes = classes.into_values().collect();
        cur = wstar;
        j = best_dim;
    }
    let members: Vec<&Span> = nodes[0].chain.iter().rev().collect();
    let rows = chain_rows(&members);
    let profile = (0..k).map(|i| by_dim[k - i] as usize).collect();
    Ok((DistanceProfile(profile), rows))
}

fn inverse(c: &LinearCode, mode: EquivalenceMode, budget: &Budget) -> Result<(DistanceProfile, Vec<Word>)> {
    let k = c.k();
    let dc = weights::min_distance(c)? as u32;
    let g = Grower::new(Ambient::within(c)?, mode, Filters::default(), budget);
    let mut level = g.classes(vec![Span::new(c.n())])?;
    let mut by_dim = vec![0u32; k + 1];
    let mut dim = 0;
    while dim < k {
        let m = g.best_value(&level)?.expect("a proper subcode has a nonzero coset");
        if m <= dc {
            for x in by_dim.iter_mut().skip(dim + 1) {
                *x = dc;
            }
            break;
        }
        level = g.leap(&level, m, LEAP_NODES, LEAP_SOLUTIONS)?;
        let next = level.first().expect("the best value is attained").span.dim();
        for x in &mut by_dim[dim + 1..=next] {
            *x = m;
        }
        dim = next;
    }
    let top = Span::of_code(c)?;
    let rows = chain_rows(&[&level[0].span, &top]);
    let profile = (0..k).map(|i| by_dim[k - i] as usize).collect();
    Ok((DistanceProfile(profile), rows))
}

/// A valid chain whose profile is a lower bound: a heaviest codeword first
/// when the code is small enough to scan, then the reduced generator.
fn fallback(c: &LinearCode) -> Result<OdpResult> {
    let n = c.n();
    let mut acc = Span::new(n);
    if c.k() <= weights::DEFAULT_ENUMERATION_BITS {
        let mut heavy: Word = 0;
        crate::packed::for_each_codeword(&c.packed_rows::<Word>()?, |_, w| {
            if w.count_ones() > heavy.count_ones() {
                heavy = w;
            }
        });
        acc.insert(heavy);
    }
    for &r in Span::of_code(c)?.basis() {
        acc.insert(r);
    }
    let witness = witness_of(n, acc.basis().to_vec())?;
    let profile = witness.profile()?;
    Ok(OdpResult {
        profile,
        witness,
        proven: false,
    })
}
