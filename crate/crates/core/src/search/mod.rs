//! Subcode and supercode searches: coset enumeration, the chain searches,
//! the randomized searches and optimum distance profiles.

pub mod chain;
pub mod cosets;
pub mod odp;
pub mod random;
pub mod span;

mod lattice;

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::weights;

pub use chain::{chain_subcodes, chain_supercodes, max_dimension, SubcodeClasses};
pub use cosets::coset_reps;
pub use odp::{odp, OdpResult};
pub use random::{random_subcode, random_supercode, Maximality, RandomOutcome};

/// Which end of the chain is optimized first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    /// Scan from the full code downward.
    Dictionary,
    /// Scan from the one-dimensional end upward.
    Inverse,
}

impl std::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dic" | "dictionary" => Ok(Order::Dictionary),
            "inv" | "inverse" => Ok(Order::Inverse),
            _ => Err(Error::InvalidArgument(format!("unknown order {s:?}"))),
        }
    }
}

/// Minimum distances along a subcode chain; entry `i` belongs to the member
/// of dimension `k - i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistanceProfile(pub Vec<usize>);

impl DistanceProfile {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl std::str::FromStr for DistanceProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad profile entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DistanceProfile)
    }
}

/// A generator matrix whose first `k - i` rows generate chain member `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub matrix: GF2Matrix,
}

impl ChainWitness {
    /// Profile realized by the witness.
    pub fn profile(&self) -> Result<DistanceProfile> {
        let k = self.matrix.nrows();
        (0..k)
            .map(|i| weights::prefix_min_distance(&self.matrix, k - i))
            .collect::<Result<Vec<_>>>()
            .map(DistanceProfile)
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(&self.matrix)
    }
}

/// Extension-time filters for supercode searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub doubly_even: bool,
    pub self_orthogonal: bool,
    /// Applied to the final codes only.
    pub self_complementary: bool,
}

/// How codes are merged during level-wise searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// Up to coordinate permutation of the code alone.
    #[default]
    Abstract,
    /// Up to permutations preserving the ambient code as well.
    Pair,
    /// Only identical codes are merged.
    None,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub time_budget: Option<Duration>,
    pub node_budget: Option<usize>,
    pub seed: u64,
    pub restarts: usize,
    /// Accepted for interface compatibility; searches run on one thread.
    pub threads: usize,
    pub filters: Filters,
    /// Restricts supercode growth to this code.
    pub within: Option<LinearCode>,
    pub equivalence: EquivalenceMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            time_budget: None,
            node_budget: None,
            seed: 0,
            restarts: 1,
            threads: 1,
            filters: Filters::default(),
            within: None,
            equivalence: EquivalenceMode::Abstract,
        }
    }
}

/// Time and node accounting for one search call.
pub(crate) struct Budget {
    deadline: Option<Instant>,
    max_nodes: Option<usize>,
    nodes: Cell<usize>,
}

impl Budget {
    pub(crate) fn new(cfg: &SearchConfig) -> Self {
        Self {
            deadline: cfg.time_budget.map(|t| Instant::now() + t),
            max_nodes: cfg.node_budget,
            nodes: Cell::new(0),
        }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        if self.max_nodes.is_some_and(|m| n > m) {
            return Err(Error::BudgetExceeded);
        }
        if n % 64 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::BudgetExceeded);
        }
        Ok(())
    }
}

/// Three-way comparison of profiles: forward scan for the dictionary order,
/// backward scan for the inverse order. `Greater` means `a` is an upper
/// bound on `b`.
pub fn compare_profiles(a: &DistanceProfile, b: &DistanceProfile, order: Order) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let pairs: Box<dyn Iterator<Item = (&usize, &usize)>> = match order {
        Order::Dictionary => Box::new(a.0.iter().zip(&b.0)),
        Order::Inverse => Box::new(a.0.iter().zip(&b.0).rev()),
    };
    for (x, y) in pairs {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return Ok(o),
        }
    }
    Ok(Ordering::Equal)
}

/// `true` iff the first `k - i` rows of the witness generate a code of
/// minimum distance `p[i]` for every `i`.
pub fn verify_witness(w: &ChainWitness, p: &DistanceProfile) -> Result<bool> {
    let k = w.matrix.nrows();
    if p.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            found: p.len(),
        });
    }
    if w.matrix.rank() != k {
        return Ok(false);
    }
    for (i, &d) in p.0.iter().enumerate() {
        if weights::prefix_min_distance(&w.matrix, k - i)? != d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of complete subcode chains of a `k`-dimensional code:
/// the product of `2^t - 1` for `t = 2..=k`.
pub fn chain_count(k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument("chain count needs k >= 1".into()));
    }
    let mut out = BigUint::one();
    for t in 2..=k {
        out *= (BigUint::one() << t) - BigUint::one();
    }
    Ok(out)
}

/// Number of `r`-dimensional subspaces of a `t`-dimensional binary space.
pub fn gaussian_binomial(t: usize, r: usize) -> Result<BigUint> {
    if r > t {
        return Err(Error::InvalidArgument(format!("gaussian binomial needs r <= t, got ({t}, {r})")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..r {
        num *= (BigUint::one() << (t - j)) - BigUint::one();
        den *= (BigUint::one() << (r - j)) - BigUint::one();
    }
    Ok(num / den)
}
