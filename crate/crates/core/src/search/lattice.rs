//! Level-wise growth of codes one coset at a time, with orbit pruning and
//! class merging, and a direct search for large subcodes that avoid a given
//! set of low-weight words.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::canon::{self, PairKey};
use crate::gf2::GF2Matrix;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::packed::{for_each_codeword, PackedWord, Permuter, Word};

use super::span::{complement, Span};
use super::{Budget, EquivalenceMode, Filters};

/// A class representative together with generators of the group used for
/// orbit pruning (its stabilizer or its automorphism group).
#[derive(Clone, Debug)]
pub(crate) struct Class {
    pub span: Span,
    pub gens: Vec<Vec<usize>>,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Pair(PairKey),
    Abstract(GF2Matrix),
    Exact(Vec<Word>),
}

/// Where extension vectors come from.
#[derive(Clone, Debug)]
pub(crate) enum Ambient {
    Within { code: LinearCode, rows: Vec<Word> },
    Full(usize),
    OwnDual,
}

impl Ambient {
    pub(crate) fn within(code: &LinearCode) -> Result<Self> {
        Ok(Ambient::Within {
            rows: code.packed_rows()?,
            code: code.clone(),
        })
    }
}

pub(crate) struct Grower<'a> {
    ambient: Ambient,
    mode: EquivalenceMode,
    filters: Filters,
    budget: &'a Budget,
}

impl<'a> Grower<'a> {
    pub(crate) fn new(ambient: Ambient, mode: EquivalenceMode, filters: Filters, budget: &'a Budget) -> Self {
        let orthogonal = filters.doubly_even || filters.self_orthogonal;
        let ambient = match ambient {
            Ambient::Full(_) if orthogonal => Ambient::OwnDual,
            a => a,
        };
        // Merging by the code alone is unsound inside a fixed ambient code.
        let mode = match (&ambient, mode) {
            (Ambient::Within { .. }, EquivalenceMode::Abstract) => EquivalenceMode::Pair,
            (Ambient::Full(_) | Ambient::OwnDual, EquivalenceMode::Pair) => EquivalenceMode::Abstract,
            (_, m) => m,
        };
        Self {
            ambient,
            mode,
            filters,
            budget,
        }
    }

    fn classify(&self, span: &Span) -> Result<(Key, Vec<Vec<usize>>)> {
        self.budget.tick()?;
        match self.mode {
            EquivalenceMode::Pair => {
                let Ambient::Within { code, .. } = &self.ambient else {
                    unreachable!("pair mode needs an ambient code")
                };
                let l = canon::label_pair(code, &span.to_code())?;
                Ok((Key::Pair(l.key), l.generators))
            }
            EquivalenceMode::Abstract => {
                // The canonical generator alone is a complete invariant.
                let l = canon::label_code(&span.to_code())?;
                Ok((Key::Abstract(l.canonical.generator().clone()), l.generators))
            }
            EquivalenceMode::None => Ok((Key::Exact(span.key()), Vec::new())),
        }
    }

    /// Merges equivalent spans; output is ordered by class key.
    pub(crate) fn classes(&self, spans: Vec<Span>) -> Result<Vec<Class>> {
        let mut seen = HashSet::new();
        let mut out: BTreeMap<Key, Class> = BTreeMap::new();
        for s in spans {
            if !seen.insert(s.key()) {
                continue;
            }
            let (key, gens) = self.classify(&s)?;
            let d = s.min_weight().unwrap_or(0);
            out.entry(key).or_insert(Class { span: s, gens, d });
        }
        Ok(out.into_values().collect())
    }

    fn ambient_rows(&self, e: &Span) -> Result<Vec<Word>> {
        Ok(match &self.ambient {
            Ambient::Within { rows, .. } => rows.clone(),
            Ambient::Full(n) => (0..*n).map(Word::unit).collect(),
            Ambient::OwnDual => e.to_code().dual().packed_rows()?,
        })
    }

    fn passes_filters(&self, e: &Span, x: Word) -> bool {
        let f = self.filters;
        if f.doubly_even || f.self_orthogonal {
            if e.basis().iter().any(|&b| (b & x).count_ones() % 2 == 1) {
                return false;
            }
            let m = if f.doubly_even { 4 } else { 2 };
            if x.count_ones() % m != 0 {
                return false;
            }
        }
        true
    }

    /// Calls `f(x, table)` for every reduced nonzero coset representative of
    /// `e` in the ambient space that passes the filters.
    fn for_each_coset(&self, e: &Span, mut f: impl FnMut(Word, &[Word]) -> Result<()>) -> Result<()> {
        let amb = self.ambient_rows(e)?;
        let comp = complement(&amb, e);
        if comp.len() > 40 {
            return Err(Error::Capacity(format!("2^{} cosets to scan", comp.len())));
        }
        let table = crate::packed::codeword_table(e.basis());
        let mut x: Word = 0;
        for i in 1u64..(1u64 << comp.len()) {
            x ^= comp[i.trailing_zeros() as usize];
            if i % 4096 == 0 {
                self.budget.tick()?;
            }
            if self.passes_filters(e, x) {
                f(x, &table)?;
            }
        }
        Ok(())
    }

    /// Largest `d(E + x)` over all classes and admissible cosets.
    pub(crate) fn best_value(&self, classes: &[Class]) -> Result<Option<u32>> {
        let mut best: Option<u32> = None;
        for c in classes {
            let cap = if c.span.dim() == 0 { u32::MAX } else { c.d };
            self.for_each_coset(&c.span, |x, table| {
                let floor = best.unwrap_or(0);
                if cap <= floor && best.is_some() {
                    return Ok(());
                }
                let mut m = cap;
                for &t in table {
                    m = m.min((x ^ t).count_ones());
                    if m <= floor && best.is_some() {
                        return Ok(());
                    }
                }
                best = Some(m);
                Ok(())
            })?;
        }
        Ok(best)
    }

    /// Every class `E + x` with `d(E + x) >= threshold`.
    pub(crate) fn step(&self, classes: &[Class], threshold: u32) -> Result<Vec<Class>> {
        let mut seen = HashSet::new();
        let mut out: BTreeMap<Key, Class> = BTreeMap::new();
        for c in classes {
            let mut cands: Vec<Word> = Vec::new();
            self.for_each_coset(&c.span, |x, table| {
                if table.iter().all(|&t| (x ^ t).count_ones() >= threshold) {
                    cands.push(x);
                }
                Ok(())
            })?;
            for x in orbit_representatives(&cands, &c.gens, |y| c.span.reduce(y)) {
                let s = c.span.with(x);
                if !seen.insert(s.key()) {
                    continue;
                }
                let (key, gens) = self.classify(&s)?;
                if out.contains_key(&key) {
                    continue;
                }
                let d = s.min_weight().expect("nonzero span");
                out.insert(key, Class { span: s, gens, d });
            }
        }
        Ok(out.into_values().collect())
    }
}

impl Grower<'_> {
    /// Every class of the largest dimension reachable from `classes` while
    /// keeping minimum distance at least `threshold`, found directly rather
    /// than one coset at a time. Only for growth inside an ambient code;
    /// falls back to [`Grower::step`] when the direct search gives up.
    pub(crate) fn leap(&self, classes: &[Class], threshold: u32, max_nodes: usize, max_solutions: usize) -> Result<Vec<Class>> {
        let Ambient::Within { rows, .. } = &self.ambient else {
            return self.step(classes, threshold);
        };
        let Some(dim) = classes.first().map(|c| c.span.dim()) else {
            return Ok(Vec::new());
        };
        let mut reach = Vec::with_capacity(classes.len());
        for c in classes {
            let comp = complement(rows, &c.span);
            match avoiding_over(&c.span, &comp, threshold, false, max_nodes, 1)? {
                Some(a) => reach.push((a.dim, comp)),
                None => return self.step(classes, threshold),
            }
        }
        let top = reach.iter().map(|r| r.0).max().unwrap_or(dim);
        if top <= dim + 1 {
            return self.step(classes, threshold);
        }
        let mut spans = Vec::new();
        for (c, (d, comp)) in classes.iter().zip(&reach) {
            if *d < top {
                continue;
            }
            self.budget.tick()?;
            match avoiding_over(&c.span, comp, threshold, true, max_nodes, max_solutions)? {
                Some(a) => spans.extend(span_orbit_representatives(a.spans, &c.gens)),
                None => return self.step(classes, threshold),
            }
        }
        self.classes(spans)
    }
}

/// One span from each orbit under the group generated by `gens`.
fn span_orbit_representatives(spans: Vec<Span>, gens: &[Vec<usize>]) -> Vec<Span> {
    if gens.is_empty() {
        return spans;
    }
    let index: HashMap<Vec<Word>, usize> = spans.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();
    let mut parent: Vec<usize> = (0..spans.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for g in gens {
        let perm = Permuter::<Word>::new(g);
        for (i, s) in spans.iter().enumerate() {
            let image: Vec<Word> = s.basis().iter().map(|&b| perm.apply(b)).collect();
            if let Some(&j) = index.get(&Span::from_words(s.n(), &image).key()) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let keep: Vec<bool> = (0..spans.len()).map(|i| find(&mut parent, i) == i).collect();
    spans.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect()
}

/// One element from each orbit of `items` under the group generated by
/// `gens`; `canon` maps an image back to the representative form.
pub(crate) fn orbit_representatives(items: &[Word], gens: &[Vec<usize>], canon: impl Fn(Word) -> Word) -> Vec<Word> {
    if gens.is_empty() {
        return items.to_vec();
    }
    let index: HashMap<Word, usize> = items.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for g in gens {
        let perm = Permuter::<Word>::new(g);
        for (i, &x) in items.iter().enumerate() {
            if let Some(&j) = index.get(&canon(perm.apply(x))) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..items.len())
        .filter(|&i| find(&mut parent, i) == i)
        .map(|i| items[i])
        .collect()
}

/// Subcodes of `c` of dimension `target` with every nonzero weight at least
/// `w`, one per equivalence class, found top-down through hyperplanes.
/// Subcodes of a code depend only on its class, so classes are merged by
/// their canonical forms. `target` must be the largest such dimension; a
/// hyperplane is kept only while it still has a subcode of that dimension.
pub(crate) fn shrink_to_avoiding(
    c: &LinearCode,
    w: u32,
    target: usize,
    max_nodes: usize,
    budget: &Budget,
) -> Result<Vec<Span>> {
    let n = c.n();
    let g = Grower::new(Ambient::Full(n), EquivalenceMode::Abstract, Filters::default(), budget);
    let top = Span::of_code(c)?;
    let (_, gens) = g.classify(&top)?;
    let mut level = vec![Class { span: top, gens, d: 0 }];
    let units: Vec<Word> = (0..n).map(Word::unit).collect();
    for dim in (target..c.k()).rev() {
        let mut seen = HashSet::new();
        let mut out: BTreeMap<Key, Class> = BTreeMap::new();
        for e in &level {
            let dual = Span::of_code(&e.span.to_code().dual())?;
            let comp = complement(&units, &dual);
            if comp.len() > 30 {
                return Err(Error::Capacity(format!("2^{} hyperplanes to scan", comp.len())));
            }
            let mut zs = Vec::with_capacity((1usize << comp.len()) - 1);
            let mut z: Word = 0;
            for i in 1u64..(1u64 << comp.len()) {
                z ^= comp[i.trailing_zeros() as usize];
                zs.push(z);
            }
            for z in orbit_representatives(&zs, &e.gens, |y| dual.reduce(y)) {
                let h = hyperplane(&e.span, z);
                if !seen.insert(h.key()) {
                    continue;
                }
                let keep = if dim == target {
                    h.min_weight().map_or(false, |d| d >= w)
                } else {
                    let rows = h.basis().to_vec();
                    match avoiding_search(n, &rows, w, false, max_nodes, 1)? {
                        Some(a) => a.dim >= target,
                        None => true,
                    }
                };
                if !keep {
                    continue;
                }
                let (key, gens) = g.classify(&h)?;
                if out.contains_key(&key) {
                    continue;
                }
                out.insert(key, Class { span: h, gens, d: 0 });
            }
        }
        level = out.into_values().collect();
    }
    Ok(level.into_iter().map(|c| c.span).collect())
}

/// The words of `e` orthogonal to `z`; `z` must not lie in the dual of `e`.
fn hyperplane(e: &Span, z: Word) -> Span {
    let odd = |x: Word| (x & z).count_ones() % 2 == 1;
    let pivot = *e.basis().iter().find(|&&b| odd(b)).expect("z is not orthogonal to e");
    let words: Vec<Word> = e
        .basis()
        .iter()
        .filter(|&&b| b != pivot)
        .map(|&b| if odd(b) { b ^ pivot } else { b })
        .collect();
    Span::from_words(e.n(), &words)
}

/// Result of [`avoiding_search`].
pub(crate) struct Avoiding {
    /// Largest dimension of a subcode with every nonzero weight at least `w`.
    pub dim: usize,
    /// The subcodes of that dimension found (one, or all of them).
    pub spans: Vec<Span>,
}

/// Largest subcodes of the span of `rows` avoiding all nonzero words of
/// weight below `w`, found as kernels of maps onto `F^t` with `t` minimal.
/// Returns `None` when `max_nodes` search nodes or `max_solutions`
/// solutions are exceeded.
pub(crate) fn avoiding_search(
    n: usize,
    rows: &[Word],
    w: u32,
    all: bool,
    max_nodes: usize,
    max_solutions: usize,
) -> Result<Option<Avoiding>> {
    avoiding_over(&Span::new(n), rows, w, all, max_nodes, max_solutions)
}

/// Like [`avoiding_search`] for codes `base + <subset of rows>`: the largest
/// such codes whose words outside `base` all have weight at least `w`. The
/// dimension reported is that of the whole code.
pub(crate) fn avoiding_over(
    base: &Span,
    rows: &[Word],
    w: u32,
    all: bool,
    max_nodes: usize,
    max_solutions: usize,
) -> Result<Option<Avoiding>> {
    let n = base.n();
    let k = rows.len();
    if k > 26 {
        return Err(Error::Capacity(format!("dimension {k} is too large to scan")));
    }
    let mut low: Vec<(u32, u64)> = Vec::new();
    for_each_codeword(rows, |m, x| {
        let wt = x.count_ones();
        if m != 0 && (wt < w || !base.coset_weight_at_least(x, w)) {
            low.push((wt, m));
        }
    });
    // The base comes first so that basis prefixes still form a chain.
    let with_base = |s: Span| {
        let mut out = base.clone();
        for &b in s.basis() {
            out.insert(b);
        }
        out
    };
    if low.is_empty() {
        return Ok(Some(Avoiding {
            dim: base.dim() + k,
            spans: vec![with_base(Span::from_words(n, rows))],
        }));
    }
    if low.len() as u64 == (1u64 << k) - 1 {
        let spans = if base.dim() == 0 { Vec::new() } else { vec![base.clone()] };
        return Ok(Some(Avoiding { dim: base.dim(), spans }));
    }
    low.sort_unstable();

    // Basis of the span of the low words, taken from the low words.
    let mut ech = MsgEchelon::default();
    let mut basis: Vec<u64> = Vec::new();
    for &(_, m) in &low {
        if ech.insert(m, basis.len()) {
            basis.push(m);
        }
    }
    let s = basis.len();
    let mut constraints: Vec<Vec<u64>> = vec![Vec::new(); s];
    let mut distinct = HashSet::new();
    for &(_, m) in &low {
        let c = ech.coords(m).expect("low word lies in its own span");
        if distinct.insert(c) {
            constraints[63 - c.leading_zeros() as usize].push(c);
        }
    }
    for u in 0..k {
        let m = 1u64 << u;
        if ech.insert(m, basis.len()) {
            basis.push(m);
        }
    }

    let mut nodes = 0usize;
    for t in 1..=s {
        let mut sols: Vec<Vec<u32>> = Vec::new();
        let mut a = vec![0u32; s];
        let limit = if all { max_solutions } else { 1 };
        let done = dfs(0, 0, t, &constraints, &mut a, &mut sols, limit, &mut nodes, max_nodes);
        if !done {
            return Ok(None);
        }
        if sols.is_empty() {
            continue;
        }
        if all && sols.len() >= max_solutions {
            return Ok(None);
        }
        let extra = k - s;
        if all && t * extra > 40 {
            return Ok(None);
        }
        let per = if all { 1u64 << (t * extra) } else { 1 };
        if all && (sols.len() as u64).saturating_mul(per) > max_solutions as u64 {
            return Ok(None);
        }
        let mut spans = Vec::new();
        for sol in &sols {
            for ci in 0..per {
                let mut images: Vec<u32> = sol.clone();
                for e in 0..extra {
                    images.push(((ci >> (t * e)) & ((1 << t) - 1)) as u32);
                }
                spans.push(with_base(kernel_span(n, rows, &basis, &images)));
            }
        }
        return Ok(Some(Avoiding {
            dim: base.dim() + k - t,
            spans,
        }));
    }
    unreachable!("an injective map on the span always exists")
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    i: usize,
    rank: usize,
    t: usize,
    constraints: &[Vec<u64>],
    a: &mut [u32],
    sols: &mut Vec<Vec<u32>>,
    limit: usize,
    nodes: &mut usize,
    max_nodes: usize,
) -> bool {
    *nodes += 1;
    if *nodes > max_nodes {
        return false;
    }
    if i == a.len() {
        sols.push(a.to_vec());
        return true;
    }
    let top = if rank < t { 1u32 << rank } else { (1u32 << rank) - 1 };
    for v in 1..=top {
        a[i] = v;
        let ok = constraints[i].iter().all(|&c| {
            let mut acc = 0u32;
            let mut rest = c;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc ^= a[b];
            }
            acc != 0
        });
        if ok {
            let r = if v == 1 << rank { rank + 1 } else { rank };
            if !dfs(i + 1, r, t, constraints, a, sols, limit, nodes, max_nodes) {
                return false;
            }
            if sols.len() >= limit {
                return true;
            }
        }
    }
    true
}

/// Kernel of the map sending basis message `b` to `images[b]`.
fn kernel_span(n: usize, rows: &[Word], basis: &[u64], images: &[u32]) -> Span {
    let mut ech: Vec<(u32, u32, u64)> = Vec::new();
    let mut out = Span::new(n);
    for (b, &img) in images.iter().enumerate() {
        let mut v = img;
        let mut combo = 1u64 << b;
        for &(p, r, c) in &ech {
            if (v >> p) & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        if v == 0 {
            let mut msg = 0u64;
            let mut rest = combo;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                msg ^= basis[j];
            }
            let mut word: Word = 0;
            let mut rest = msg;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                word ^= rows[j];
            }
            out.insert(word);
        } else {
            ech.push((v.trailing_zeros(), v, combo));
        }
    }
    out
}

/// Echelon over message bits that remembers how each row combines the
/// inserted vectors.
#[derive(Default)]
struct MsgEchelon {
    rows: Vec<(u32, u64, u64)>,
}

impl MsgEchelon {
    fn insert(&mut self, m: u64, index: usize) -> bool {
        let mut v = m;
        let mut combo = 1u64 << index;
        for &(p, r, c) in &self.rows {
            if (v >> p) & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        if v == 0 {
            return false;
        }
        self.rows.push((v.trailing_zeros(), v, combo));
        true
    }

    fn coords(&self, m: u64) -> Option<u64> {
        let mut v = m;
        let mut combo = 0u64;
        for &(p, r, c) in &self.rows {
            if (v >> p) & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        (v == 0).then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::GF2Matrix;

    fn rows(strs: &[&str]) -> (usize, Vec<Word>) {
        let c = LinearCode::from_generator(&GF2Matrix::from_strs(strs).unwrap());
        (c.n(), c.packed_rows().unwrap())
    }

    #[test]
    fn avoiding_in_e8() {
        let (n, r) = rows(&["11111111", "00001111", "00110011", "01010101"]);
        let a = avoiding_search(n, &r, 8, true, 1 << 20, 1 << 20).unwrap().unwrap();
        assert_eq!(a.dim, 1);
        assert_eq!(a.spans.len(), 1);
        assert_eq!(a.spans[0].basis(), &[0xff]);
        let a = avoiding_search(n, &r, 4, false, 1 << 20, 1).unwrap().unwrap();
        assert_eq!(a.dim, 4);
        let a = avoiding_search(n, &r, 9, false, 1 << 20, 1).unwrap().unwrap();
        assert_eq!(a.dim, 0);
    }

    #[test]
    fn orbits_under_a_swap() {
        let reps = orbit_representatives(&[0b01, 0b10, 0b11], &[vec![1, 0]], |x| x);
        assert_eq!(reps, vec![0b01, 0b11]);
    }
}
