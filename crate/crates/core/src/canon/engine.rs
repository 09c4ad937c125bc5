//! Canonical labeling of a colored set system on at most 128 points.
//!
//! The structure is a list of colored words (subsets of the points, packed
//! into [`Word`]s). Isomorphisms are point permutations mapping the colored
//! word set onto itself or onto another structure's. The search is the usual
//! individualization-refinement tree: color refinement on the point/word
//! incidence graph, branching on the first non-singleton point cell, pruning
//! by node invariants and by orbits of automorphisms found so far.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::packed::{PackedWord, Permuter, Word};

/// Default cap on search-tree nodes per labeling.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

/// A colored set system.
#[derive(Clone, Debug)]
pub struct Structure {
    n: usize,
    words: Vec<Word>,
    colors: Vec<u32>,
}

impl Structure {
    pub fn new(n: usize, words: Vec<Word>, colors: Vec<u32>) -> Result<Self> {
        if n > <Word as PackedWord>::BITS {
            return Err(Error::Capacity(format!("{n} points exceed the word size")));
        }
        if words.len() != colors.len() {
            return Err(Error::LengthMismatch {
                expected: words.len(),
                found: colors.len(),
            });
        }
        Ok(Self { n, words, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Sorted `(color, word)` list of the image under `perm`.
    pub fn image(&self, perm: &[usize]) -> Vec<(u32, Word)> {
        let p = Permuter::<Word>::new(perm);
        let mut out: Vec<(u32, Word)> = self.words.iter().zip(&self.colors).map(|(&w, &c)| (c, p.apply(w))).collect();
        out.sort_unstable();
        out
    }
}

/// Result of a canonical labeling.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// Point `i` goes to position `perm[i]`.
    pub perm: Vec<usize>,
    /// The image of the structure under `perm`; equal for isomorphic inputs.
    pub certificate: Vec<(u32, Word)>,
    /// Automorphisms found during the search.
    pub generators: Vec<Vec<usize>>,
    pub nodes: usize,
}

struct Leaf {
    path: Vec<u64>,
    seq: Vec<usize>,
    perm: Vec<usize>,
    cert: Vec<(u32, Word)>,
}

struct Search<'a> {
    s: &'a Structure,
    supports: Vec<Vec<u8>>,
    containing: Vec<Vec<u32>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    nodes: usize,
    budget: usize,
}

fn rank_by<K: Ord>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0u32; keys.len()];
    let mut r = 0u32;
    for i in 0..idx.len() {
        if i > 0 && keys[idx[i]] != keys[idx[i - 1]] {
            r += 1;
        }
        out[idx[i]] = r;
    }
    let classes = if keys.is_empty() { 0 } else { r as usize + 1 };
    (out, classes)
}

fn mix(c: u32) -> u64 {
    let mut x = (c as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn distinct(colors: &[u32]) -> usize {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

impl<'a> Search<'a> {
    fn new(s: &'a Structure, budget: usize) -> Self {
        let supports: Vec<Vec<u8>> = s
            .words
            .iter()
            .map(|&w| {
                let mut v = Vec::with_capacity(w.count_ones() as usize);
                let mut r = w;
                while r != 0 {
                    v.push(r.trailing_zeros() as u8);
                    r &= r - 1;
                }
                v
            })
            .collect();
        let mut containing = vec![Vec::new(); s.n];
        for (j, sup) in supports.iter().enumerate() {
            for &i in sup {
                containing[i as usize].push(j as u32);
            }
        }
        Self {
            s,
            supports,
            containing,
            first: None,
            best: None,
            generators: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    /// Color refinement to a stable partition. Returns the node invariant;
    /// `pcol` ends up holding ranks `0..classes`. Multisets of neighbor
    /// colors are summarized by a sum of mixed hashes: a collision only
    /// coarsens the partition, which stays isomorphism invariant.
    fn refine(&self, pcol: &mut Vec<u32>) -> u64 {
        let mut h = DefaultHasher::new();
        let (r, mut pclasses) = rank_by(pcol);
        *pcol = r;
        let mut wclasses = 0usize;
        loop {
            let wkeys: Vec<(u32, u64)> = self
                .supports
                .iter()
                .zip(&self.s.colors)
                .map(|(sup, &c)| (c, sup.iter().fold(0u64, |a, &i| a.wrapping_add(mix(pcol[i as usize])))))
                .collect();
            let (wcol, wc) = rank_by(&wkeys);
            let pkeys: Vec<(u32, u64)> = (0..self.s.n)
                .map(|i| {
                    let v = self.containing[i]
                        .iter()
                        .fold(0u64, |a, &j| a.wrapping_add(mix(wcol[j as usize])));
                    (pcol[i], v)
                })
                .collect();
            let (np, pc) = rank_by(&pkeys);
            let mut sorted_p = pkeys;
            sorted_p.sort_unstable();
            sorted_p.hash(&mut h);
            *pcol = np;
            if pc == pclasses && wc == wclasses {
                break;
            }
            pclasses = pc;
            wclasses = wc;
            if pc == self.s.n {
                // Discrete: one more word pass cannot split points further.
                let mut sorted_w = wkeys;
                sorted_w.sort_unstable();
                sorted_w.hash(&mut h);
                break;
            }
        }
        h.finish()
    }

    fn stabilizer_orbits(&self, seq: &[usize]) -> Vec<usize> {
        let n = self.s.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for g in self.generators.iter().filter(|g| seq.iter().all(|&v| g[v] == v)) {
            for i in 0..n {
                let a = find(&mut parent, i);
                let b = find(&mut parent, g[i]);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }

    fn leaf(&mut self, path: &[u64], seq: &[usize], pcol: &[u32]) -> Option<usize> {
        let perm: Vec<usize> = pcol.iter().map(|&c| c as usize).collect();
        let cert = self.s.image(&perm);
        let leaf = Leaf {
            path: path.to_vec(),
            seq: seq.to_vec(),
            perm,
            cert,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                seq: leaf.seq.clone(),
                perm: leaf.perm.clone(),
                cert: leaf.cert.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.path == leaf.path && first.cert == leaf.cert {
            let g = compose_inverse(&first.perm, &leaf.perm);
            let jump = common_prefix(&first.seq, &leaf.seq);
            self.generators.push(g);
            return Some(jump);
        }
        let best = self.best.as_ref().expect("set with first");
        match (&leaf.path, &leaf.cert).cmp(&(&best.path, &best.cert)) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let g = compose_inverse(&best.perm, &leaf.perm);
                let jump = common_prefix(&best.seq, &leaf.seq);
                self.generators.push(g);
                Some(jump)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    fn node(&mut self, path: &mut Vec<u64>, seq: &mut Vec<usize>, pcol: Vec<u32>) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Capacity(format!(
                "canonical labeling exceeded {} search nodes",
                self.budget
            )));
        }
        let n = self.s.n;
        let classes = distinct(&pcol);
        if classes == n {
            return Ok(self.leaf(path, seq, &pcol));
        }
        if let Some(best) = &self.best {
            let d = path.len().min(best.path.len());
            if path[..d] < best.path[..d] {
                return Ok(None);
            }
        }
        let depth = seq.len();
        let mut sizes = vec![0usize; n];
        for &c in &pcol {
            sizes[c as usize] += 1;
        }
        let target = (0..n).find(|&c| sizes[c] > 1).expect("not discrete") as u32;
        let cell: Vec<usize> = (0..n).filter(|&i| pcol[i] == target).collect();
        let mut seen_gens = usize::MAX;
        let mut orbits = Vec::new();
        for &v in &cell {
            if seen_gens != self.generators.len() {
                orbits = self.stabilizer_orbits(seq);
                seen_gens = self.generators.len();
            }
            // Children are visited in increasing order, so a smaller orbit
            // mate has already been explored.
            if orbits[v] != v && cell.contains(&orbits[v]) {
                continue;
            }
            let mut child: Vec<u32> = pcol.iter().map(|&c| 2 * c + 1).collect();
            child[v] = 2 * pcol[v];
            let inv = self.refine(&mut child);
            path.push(inv);
            seq.push(v);
            let r = self.node(path, seq, child);
            path.pop();
            seq.pop();
            if let Some(j) = r? {
                if j < depth {
                    return Ok(Some(j));
                }
            }
        }
        Ok(None)
    }
}

/// `g = a^{-1} b`, i.e. `g(i) = a^{-1}(b(i))`.
fn compose_inverse(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    b.iter().map(|&x| inv[x]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Canonical labeling with the default node budget.
pub fn canonical_labeling(s: &Structure) -> Result<Labeling> {
    canonical_labeling_with_budget(s, DEFAULT_NODE_BUDGET)
}

pub fn canonical_labeling_with_budget(s: &Structure, budget: usize) -> Result<Labeling> {
    let mut search = Search::new(s, budget);
    let mut pcol = vec![0u32; s.n];
    let inv = search.refine(&mut pcol);
    let mut path = vec![inv];
    let mut seq = Vec::new();
    search.node(&mut path, &mut seq, pcol)?;
    let best = search.best.take().expect("at least one leaf");
    Ok(Labeling {
        perm: best.perm,
        certificate: best.cert,
        generators: search.generators,
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Structure {
        let words = (0..n).map(|i| (1u128 << i) | (1u128 << ((i + 1) % n))).collect::<Vec<_>>();
        let colors = vec![0; n];
        Structure::new(n, words, colors).unwrap()
    }

    #[test]
    fn relabeled_cycles_share_a_certificate() {
        let a = canonical_labeling(&cycle(9)).unwrap();
        let perm: Vec<usize> = (0..9).map(|i| (i * 4 + 2) % 9).collect();
        let s = cycle(9);
        let moved: Vec<Word> = s.image(&perm).into_iter().map(|(_, w)| w).collect();
        let b = canonical_labeling(&Structure::new(9, moved, vec![0; 9]).unwrap()).unwrap();
        assert_eq!(a.certificate, b.certificate);
    }

    #[test]
    fn generators_are_automorphisms() {
        let s = cycle(8);
        let l = canonical_labeling(&s).unwrap();
        assert!(!l.generators.is_empty());
        let base = s.image(&(0..8).collect::<Vec<_>>());
        for g in &l.generators {
            assert_eq!(s.image(g), base);
        }
    }

    #[test]
    fn colors_distinguish() {
        let words = vec![0b0011u128, 0b1100];
        let a = Structure::new(4, words.clone(), vec![0, 1]).unwrap();
        let b = Structure::new(4, words, vec![0, 0]).unwrap();
        assert_ne!(
            canonical_labeling(&a).unwrap().certificate,
            canonical_labeling(&b).unwrap().certificate
        );
    }
}
