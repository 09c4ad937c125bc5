//! Standard constructions: Reed–Muller, extended quadratic residue, the
//! `d_n` family and direct sums.

use std::collections::HashSet;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, GF2Matrix};
use crate::packed::Word;
use crate::search::span::{complement, Span};

/// The Reed–Muller code `R(r, m)` of length `2^m`: evaluations of all
/// monomials of degree at most `r`, coordinate `j` being the point whose
/// bit `i` is `x_i`.
pub fn reed_muller(r: usize, m: usize) -> Result<LinearCode> {
    if r > m || m > 16 {
        return Err(Error::InvalidArgument(format!("R({r},{m}) is out of range")));
    }
    let n = 1usize << m;
    let mut rows = Vec::new();
    for deg in 0..=r {
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != deg {
                continue;
            }
            let mut v = BitVector::zeros(n);
            for j in 0..n {
                if (j as u32) & mask == mask {
                    v.set(j, true);
                }
            }
            rows.push(v);
        }
    }
    LinearCode::from_rows(n, rows)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The binary quadratic-residue code of prime length `p = ±1 mod 8`,
/// extended by an overall parity bit in the last coordinate.
pub fn extended_qr(p: usize) -> Result<LinearCode> {
    if !is_prime(p) || (p % 8 != 1 && p % 8 != 7) {
        return Err(Error::InvalidArgument(format!("{p} is not a prime congruent to ±1 mod 8")));
    }
    let residues: HashSet<usize> = (1..p).map(|x| x * x % p).collect();
    let q = BitVector::from_indices(p, residues.iter().copied())?;
    let nonres = BitVector::from_indices(p, (1..p).filter(|x| !residues.contains(x)))?;
    let one = BitVector::ones(p);
    let target = (p + 1) / 2;
    // The idempotent generator is one of these four vectors.
    for g in [q.clone(), q.xor(&one), nonres.clone(), nonres.xor(&one)] {
        let shifts: Vec<BitVector> = (0..p).map(|s| g.permute(&rotation(p, s))).collect();
        let code = LinearCode::from_rows(p, shifts)?;
        if code.k() == target {
            let rows = code
                .generator()
                .rows()
                .iter()
                .map(|r| {
                    let parity = r.weight() % 2 == 1;
                    r.concat(&BitVector::from_bools(&[parity]))
                })
                .collect();
            return LinearCode::from_rows(p + 1, rows);
        }
    }
    Err(Error::Precondition(format!("no quadratic-residue idempotent found for p = {p}")))
}

fn rotation(p: usize, s: usize) -> Vec<usize> {
    (0..p).map(|i| (i + s) % p).collect()
}

/// The `d_n` component code of even length `n >= 4`: the words `11` on
/// coordinate pair 0 plus `11` on pair `i`, for every other pair `i`.
pub fn d_component(n: usize) -> Result<LinearCode> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("d_n needs even n >= 4, got {n}")));
    }
    let rows = (1..n / 2)
        .map(|i| BitVector::from_indices(n, [0, 1, 2 * i, 2 * i + 1]))
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_rows(n, rows)
}

/// `d_n` together with the glue word `1010…10`; Type II when `n = 0 mod 8`.
pub fn d_plus(n: usize) -> Result<LinearCode> {
    let d = d_component(n)?;
    let glue = BitVector::from_indices(n, (0..n).step_by(2))?;
    d.extend_by(&glue)
}

/// The `[7,3,4]` simplex code `e_7`.
pub fn e7() -> LinearCode {
    LinearCode::from_generator(&GF2Matrix::from_strs(&["1111000", "1100110", "1010101"]).expect("valid rows"))
}

/// Direct sum of all the given codes, in order.
pub fn direct_sum_all(codes: &[LinearCode]) -> Result<LinearCode> {
    let (first, rest) = codes
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("no codes to sum".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, c| acc.direct_sum(c)))
}

/// A doubly-even self-dual code containing the doubly-even self-orthogonal
/// code `k`, whose words outside `k` all have weight at least `w`. Found by
/// depth-first search over cosets of the current code in its dual.
pub fn doubly_even_completion(k: &LinearCode, w: usize) -> Result<Option<LinearCode>> {
    let n = k.n();
    if n % 8 != 0 || !k.is_self_orthogonal() || !k.is_doubly_even() {
        return Err(Error::Precondition("need a doubly-even self-orthogonal code of length 0 mod 8".into()));
    }
    let start = Span::of_code(k)?;
    let mut seen = HashSet::new();
    Ok(complete(&start, n / 2, w as u32, &mut seen).map(|s| s.to_code()))
}

fn complete(e: &Span, target: usize, w: u32, seen: &mut HashSet<Vec<Word>>) -> Option<Span> {
    if e.dim() == target {
        return Some(e.clone());
    }
    if !seen.insert(e.key()) {
        return None;
    }
    let dual: Vec<Word> = e.to_code().dual().packed_rows().ok()?;
    let comp = complement(&dual, e);
    let mut x: Word = 0;
    for i in 1u64..(1u64 << comp.len()) {
        x ^= comp[i.trailing_zeros() as usize];
        if x.count_ones() % 4 == 0 && e.coset_weight_at_least(x, w) {
            if let Some(done) = complete(&e.with(x), target, w, seen) {
                return Some(done);
            }
        }
    }
    None
}
