//! Binary linear codes and their structural operations.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, Echelon, GF2Matrix};
use crate::weights::WeightDistribution;

/// Self-duality class of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeClass {
    NotSelfDual,
    /// Self-dual with some weight congruent to 2 mod 4.
    TypeI,
    /// Self-dual and doubly-even.
    TypeII,
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeClass::NotSelfDual => "not self-dual",
            TypeClass::TypeI => "Type I",
            TypeClass::TypeII => "Type II",
        })
    }
}

/// An `[n, k]` binary linear code.
///
/// The generator is kept in reduced row echelon form, so two codes are equal
/// exactly when their generator matrices are equal. Minimum distance and
/// weight distribution are computed on demand and cached.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    gen: GF2Matrix,
    pivots: Vec<usize>,
    pub(crate) min_distance: OnceLock<usize>,
    pub(crate) distribution: OnceLock<WeightDistribution>,
}

impl LinearCode {
    pub fn from_generator(m: &GF2Matrix) -> Self {
        Self::from_echelon(m.rref())
    }

    fn from_echelon(ech: Echelon) -> Self {
        Self {
            n: ech.matrix.ncols(),
            gen: ech.matrix,
            pivots: ech.pivots,
            min_distance: OnceLock::new(),
            distribution: OnceLock::new(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        Ok(Self::from_generator(&GF2Matrix::from_rows(n, rows)?))
    }

    /// The `[n, 0]` code.
    pub fn zero(n: usize) -> Self {
        Self::from_generator(&GF2Matrix::empty(n))
    }

    /// The `[n, n]` code.
    pub fn full_space(n: usize) -> Self {
        Self::from_generator(&GF2Matrix::identity(n))
    }

    /// The `[n, 1, n]` repetition code.
    pub fn repetition(n: usize) -> Self {
        Self::from_generator(&GF2Matrix::from_rows(n, vec![BitVector::ones(n)]).expect("length n"))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.nrows()
    }

    /// The canonical (reduced echelon) generator matrix.
    pub fn generator(&self) -> &GF2Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            matrix: self.gen.clone(),
            rank: self.gen.nrows(),
            pivots: self.pivots.clone(),
        }
    }

    /// Reduces `v` modulo the code; the result has zeros at every pivot.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.gen.rows().iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.n && self.reduce(v).is_zero()
    }

    /// `true` iff every codeword of `other` lies in `self`.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.n == self.n && other.gen.rows().iter().all(|r| self.contains(r))
    }

    /// Message coordinates of a codeword in the canonical basis.
    pub fn coordinates(&self, v: &BitVector) -> Option<BitVector> {
        self.echelon().coordinates(v)
    }

    pub fn encode(&self, m: &BitVector) -> BitVector {
        self.gen.combine(m)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.gen.nullspace())
    }

    /// `span(C ∪ {v})`.
    pub fn extend_by(&self, v: &BitVector) -> Result<LinearCode> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        if self.contains(v) {
            return Ok(self.clone());
        }
        let mut m = self.gen.clone();
        m.push_row(v.clone())?;
        Ok(LinearCode::from_generator(&m))
    }

    /// The span of both codes.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if other.n != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(LinearCode::from_generator(&self.gen.vstack(&other.gen)?))
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        if other.n != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Block-diagonal sum `[n1 + n2, k1 + k2]`.
    pub fn direct_sum(&self, other: &LinearCode) -> LinearCode {
        let n = self.n + other.n;
        let mut rows = Vec::with_capacity(self.k() + other.k());
        let z2 = BitVector::zeros(other.n);
        let z1 = BitVector::zeros(self.n);
        for r in self.gen.rows() {
            rows.push(r.concat(&z2));
        }
        for r in other.gen.rows() {
            rows.push(z1.concat(r));
        }
        LinearCode::from_generator(&GF2Matrix::from_rows(n, rows).expect("consistent lengths"))
    }

    /// Codewords vanishing on `coords`, with those coordinates deleted.
    pub fn shorten(&self, coords: &[usize]) -> Result<LinearCode> {
        let mut on_t = vec![false; self.n];
        for &t in coords {
            if t >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    len: self.n,
                });
            }
            on_t[t] = true;
        }
        let t_cols: Vec<usize> = (0..self.n).filter(|&i| on_t[i]).collect();
        let keep: Vec<usize> = (0..self.n).filter(|&i| !on_t[i]).collect();
        // Messages m with (m G) restricted to T equal to zero.
        let restricted = GF2Matrix::from_rows(
            self.k(),
            t_cols
                .iter()
                .map(|&c| {
                    let mut col = BitVector::zeros(self.k());
                    for (r, row) in self.gen.rows().iter().enumerate() {
                        if row.get(c) {
                            col.set(r, true);
                        }
                    }
                    col
                })
                .collect(),
        )?;
        let messages = restricted.nullspace();
        let rows = messages
            .rows()
            .iter()
            .map(|m| self.gen.combine(m).select(&keep))
            .collect();
        LinearCode::from_rows(keep.len(), rows)
    }

    /// Deletes the coordinates in `coords`.
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        let mut drop = vec![false; self.n];
        for &t in coords {
            if t >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    len: self.n,
                });
            }
            drop[t] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&i| !drop[i]).collect();
        let rows = self.gen.rows().iter().map(|r| r.select(&keep)).collect();
        LinearCode::from_rows(keep.len(), rows)
    }

    /// Image under the coordinate permutation `i -> perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> LinearCode {
        LinearCode::from_generator(&self.gen.permute_columns(perm))
    }

    /// Every pair of generator rows (including a row with itself) is
    /// orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.gen.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.k() == self.n && self.is_self_orthogonal()
    }

    /// All weights divisible by 4, decided on the basis: rows of weight
    /// divisible by 4 with pairwise even overlaps generate a doubly-even code.
    pub fn is_doubly_even(&self) -> bool {
        let rows = self.gen.rows();
        rows.iter().enumerate().all(|(i, a)| {
            a.weight() % 4 == 0 && rows[i + 1..].iter().all(|b| a.overlap(b) % 2 == 0)
        })
    }

    /// Contains the all-one vector.
    pub fn is_self_complementary(&self) -> bool {
        self.k() > 0 && self.contains(&BitVector::ones(self.n))
    }

    /// `C ∩ C⊥`.
    pub fn hull(&self) -> LinearCode {
        self.intersect(&self.dual()).expect("same length")
    }

    /// Self-duality class. Codes of dimension at most 28 are classified from
    /// their full weight distribution; larger ones by the basis criterion.
    pub fn type_classify(&self) -> TypeClass {
        if !self.is_self_dual() {
            return TypeClass::NotSelfDual;
        }
        let doubly_even = if self.k() <= 28 {
            match crate::weights::weight_distribution(self) {
                Ok(wd) => wd.counts().iter().enumerate().all(|(w, &a)| a == 0 || w % 4 == 0),
                Err(_) => self.is_doubly_even(),
            }
        } else {
            self.is_doubly_even()
        };
        if doubly_even {
            TypeClass::TypeII
        } else {
            TypeClass::TypeI
        }
    }

    /// Packed generator rows; requires `n <= W::BITS`.
    pub fn packed_rows<W: crate::packed::PackedWord>(&self) -> Result<Vec<W>> {
        if self.n > W::BITS {
            return Err(Error::Capacity(format!(
                "length {} exceeds the {}-bit word",
                self.n,
                W::BITS
            )));
        }
        Ok(crate::packed::pack_rows(self.gen.rows()))
    }
}

/// Largest minimum distance a self-dual code of even length `n` can have.
pub fn extremal_bound(n: usize) -> Result<usize> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "extremal bound needs a positive even length, got {n}"
        )));
    }
    Ok(if n % 24 == 22 {
        4 * (n / 24) + 6
    } else {
        4 * (n / 24) + 4
    })
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl Hash for LinearCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.gen.hash(state);
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}] {:?}", self.n, self.k(), self.gen)
    }
}
