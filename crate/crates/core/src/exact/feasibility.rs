//! Exact feasibility of a putative weight distribution under the MacWilliams
//! identities.
//!
//! The unknowns are the primal counts `A_w` for the allowed weights and the
//! dual counts `A^perp_j` for the constrained dual indices. `A_0` and
//! `A^perp_0` are always 1. For a self-complementary code the columns `w` and
//! `n - w` are merged, since `A_w = A_{n-w}`, and only even dual indices are
//! used because every dual word has even weight.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::krawtchouk;
use super::linsolve::{DenseMatrix, Solution};
use crate::error::{Error, Result};

/// A putative code described by its length, dimension and allowed weights.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityProblem {
    pub n: usize,
    pub k: usize,
    /// Nonzero weights allowed to occur.
    pub allowed_weights: BTreeSet<usize>,
    pub self_complementary: bool,
    /// Known dual counts besides `A^perp_0 = 1`.
    pub fixed_dual: BTreeMap<usize, BigRational>,
    /// Dual indices whose identities are used; defaults to the first
    /// `columns` indices (even ones only when self-complementary).
    pub dual_rows: Option<Vec<usize>>,
}

impl FeasibilityProblem {
    pub fn new(n: usize, k: usize, weights: impl IntoIterator<Item = usize>) -> Self {
        Self {
            n,
            k,
            allowed_weights: weights.into_iter().filter(|&w| w > 0).collect(),
            self_complementary: false,
            fixed_dual: BTreeMap::new(),
            dual_rows: None,
        }
    }

    pub fn self_complementary(mut self) -> Self {
        self.self_complementary = true;
        self
    }

    pub fn fix_dual(mut self, j: usize, value: i64) -> Self {
        self.fixed_dual.insert(j, BigRational::from_integer(value.into()));
        self
    }

    pub fn with_dual_rows(mut self, rows: Vec<usize>) -> Self {
        self.dual_rows = Some(rows);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k > self.n {
            return Err(Error::InvalidArgument(format!("need 0 <= k <= n and n >= 1, got n={}, k={}", self.n, self.k)));
        }
        if let Some(&w) = self.allowed_weights.iter().find(|&&w| w > self.n) {
            return Err(Error::InvalidArgument(format!("weight {w} exceeds the length {}", self.n)));
        }
        if let Some((j, v)) = self.fixed_dual.iter().find(|(&j, v)| j > self.n || v.is_negative()) {
            return Err(Error::InvalidArgument(format!("bad fixed dual value A_dual[{j}] = {v}")));
        }
        if let Some(rows) = &self.dual_rows {
            if let Some(&j) = rows.iter().find(|&&j| j > self.n) {
                return Err(Error::InvalidArgument(format!("dual row {j} exceeds the length {}", self.n)));
            }
        }
        Ok(())
    }

    /// Column representatives, starting with weight 0.
    pub fn columns(&self) -> Vec<usize> {
        let n = self.n;
        let mut set: BTreeSet<usize> = self.allowed_weights.clone();
        set.insert(0);
        if self.self_complementary {
            set.insert(n);
            set.into_iter().map(|w| w.min(n - w)).collect::<BTreeSet<_>>().into_iter().collect()
        } else {
            set.into_iter().collect()
        }
    }

    /// Weights merged into column `c`.
    fn column_weights(&self, c: usize) -> Vec<usize> {
        if self.self_complementary && 2 * c != self.n {
            vec![c, self.n - c]
        } else {
            vec![c]
        }
    }

    pub fn rows(&self) -> Vec<usize> {
        if let Some(r) = &self.dual_rows {
            return r.clone();
        }
        let cols = self.columns().len();
        let step = if self.self_complementary { 2 } else { 1 };
        (0..cols).map(|i| i * step).filter(|&j| j <= self.n).collect()
    }

    /// The folded Krawtchouk matrix `P` with `P[r][c] = sum P_j(n, w)` over
    /// the weights `w` merged into column `c`, for dual row `j`.
    pub fn system_matrix(&self) -> Result<DenseMatrix<BigRational>> {
        self.validate()?;
        let cols = self.columns();
        let rows = self
            .rows()
            .iter()
            .map(|&j| {
                cols.iter()
                    .map(|&c| {
                        let s: BigInt = self
                            .column_weights(c)
                            .iter()
                            .map(|&w| krawtchouk(j, self.n, w).expect("validated"))
                            .sum();
                        BigRational::from_integer(s)
                    })
                    .collect()
            })
            .collect();
        DenseMatrix::from_rows(rows)
    }

    /// `2^k P^{-1}` when `P` is square and invertible.
    pub fn scaled_inverse(&self) -> Result<Option<DenseMatrix<BigRational>>> {
        let p = self.system_matrix()?;
        Ok(p.inverse().map(|inv| inv.scale(&two_pow(self.k))))
    }
}

fn two_pow(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}

/// Evidence that no code has the requested distribution.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// The system forces a count that is not a nonnegative integer.
    BadCount { dual: bool, index: usize, value: BigRational },
    /// `sum coefficients[j] * A^perp_j = constant` with every coefficient
    /// nonnegative and a negative constant (or the mirror image).
    SignRow {
        coefficients: Vec<(usize, BigRational)>,
        constant: BigRational,
    },
    /// The identities contradict each other outright.
    Inconsistent,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::BadCount { dual, index, value } => {
                write!(f, "{}[{index}] = {value}", if *dual { "A_dual" } else { "A" })
            }
            Certificate::SignRow { coefficients, constant } => {
                let terms: Vec<String> = coefficients
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| format!("{c}*A_dual[{j}]"))
                    .collect();
                write!(f, "{} = {constant}", terms.join(" + "))
            }
            Certificate::Inconsistent => f.write_str("inconsistent identities"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeasibilityOutcome {
    /// The only solution; every count is a nonnegative integer.
    UniqueSolution {
        primal: BTreeMap<usize, BigRational>,
        dual: BTreeMap<usize, BigRational>,
    },
    /// Consistent with `free` degrees of freedom and no sign certificate.
    Underdetermined { free: usize },
    Infeasible(Certificate),
}

impl FeasibilityOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Infeasible(_))
    }
}

fn bad_count(v: &BigRational) -> bool {
    v.is_negative() || !v.is_integer()
}

/// Row 0 of `2^k P^{-1}` expresses `A_0 = 1` in the dual counts. Moving the
/// known ones to the right leaves a relation among the unknown ones.
fn inverse_row_certificate(p: &FeasibilityProblem, rows: &[usize], known: &BTreeMap<usize, BigRational>) -> Result<Option<Certificate>> {
    let Some(q) = p.scaled_inverse()? else {
        return Ok(None);
    };
    let mut constant = BigRational::one();
    let mut coefficients = Vec::new();
    for (r, &j) in rows.iter().enumerate() {
        let e = q[(0, r)].clone();
        match known.get(&j) {
            Some(v) => constant -= e * v,
            None => coefficients.push((j, e)),
        }
    }
    let all_nonneg = coefficients.iter().all(|(_, c)| !c.is_negative());
    let all_nonpos = coefficients.iter().all(|(_, c)| !c.is_positive());
    if (all_nonneg && constant.is_negative()) || (all_nonpos && constant.is_positive()) {
        return Ok(Some(Certificate::SignRow { coefficients, constant }));
    }
    Ok(None)
}

pub fn feasibility_check(p: &FeasibilityProblem) -> Result<FeasibilityOutcome> {
    let pm = p.system_matrix()?;
    let cols = p.columns();
    let rows = p.rows();
    let mut known: BTreeMap<usize, BigRational> = p.fixed_dual.clone();
    known.insert(0, BigRational::one());

    let primal_unknowns: Vec<usize> = (1..cols.len()).collect();
    let dual_unknowns: Vec<usize> = rows.iter().copied().filter(|j| !known.contains_key(j)).collect();
    let nvars = primal_unknowns.len() + dual_unknowns.len();
    let scale = two_pow(p.k);

    let mut system = DenseMatrix::zeros(rows.len(), nvars);
    let mut rhs = Vec::with_capacity(rows.len());
    for (r, &j) in rows.iter().enumerate() {
        for (v, &c) in primal_unknowns.iter().enumerate() {
            system[(r, v)] = pm[(r, c)].clone();
        }
        let mut b = -pm[(r, 0)].clone();
        match known.get(&j) {
            Some(val) => b += scale.clone() * val,
            None => {
                let v = primal_unknowns.len() + dual_unknowns.iter().position(|&x| x == j).expect("unknown row");
                system[(r, v)] = -scale.clone();
            }
        }
        rhs.push(b);
    }

    match system.solve(&rhs)? {
        Solution::Inconsistent { .. } => Ok(FeasibilityOutcome::Infeasible(Certificate::Inconsistent)),
        Solution::Unique(x) => {
            let mut primal = BTreeMap::new();
            for w in p.column_weights(0) {
                primal.insert(w, BigRational::one());
            }
            for (v, &c) in primal_unknowns.iter().enumerate() {
                if bad_count(&x[v]) {
                    return Ok(FeasibilityOutcome::Infeasible(Certificate::BadCount {
                        dual: false,
                        index: cols[c],
                        value: x[v].clone(),
                    }));
                }
                for w in p.column_weights(cols[c]) {
                    primal.insert(w, x[v].clone());
                }
            }
            let mut dual: BTreeMap<usize, BigRational> = rows.iter().filter_map(|j| known.get(j).map(|v| (*j, v.clone()))).collect();
            for (i, &j) in dual_unknowns.iter().enumerate() {
                let val = x[primal_unknowns.len() + i].clone();
                if bad_count(&val) {
                    return Ok(FeasibilityOutcome::Infeasible(Certificate::BadCount {
                        dual: true,
                        index: j,
                        value: val,
                    }));
                }
                dual.insert(j, val);
            }
            Ok(FeasibilityOutcome::UniqueSolution { primal, dual })
        }
        Solution::Underdetermined { free, reduced, pivots } => {
            if rows.len() == cols.len() {
                if let Some(cert) = inverse_row_certificate(p, &rows, &known)? {
                    return Ok(FeasibilityOutcome::Infeasible(cert));
                }
            }
            // Every unknown is a count, so a reduced row whose coefficients
            // share a sign opposite to its right-hand side is impossible.
            for r in 0..pivots.len() {
                let coeffs: Vec<&BigRational> = (0..nvars).map(|v| &reduced[(r, v)]).collect();
                let b = &reduced[(r, nvars)];
                let nonneg = coeffs.iter().all(|c| !c.is_negative());
                let nonpos = coeffs.iter().all(|c| !c.is_positive());
                if (nonneg && b.is_negative()) || (nonpos && b.is_positive()) {
                    let coefficients = dual_unknowns
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| (j, reduced[(r, primal_unknowns.len() + i)].clone()))
                        .collect();
                    if primal_unknowns.iter().enumerate().all(|(v, _)| reduced[(r, v)].is_zero()) {
                        return Ok(FeasibilityOutcome::Infeasible(Certificate::SignRow {
                            coefficients,
                            constant: b.clone(),
                        }));
                    }
                    return Ok(FeasibilityOutcome::Infeasible(Certificate::Inconsistent));
                }
            }
            Ok(FeasibilityOutcome::Underdetermined { free })
        }
    }
}
