//! Exact MacWilliams machinery: Krawtchouk polynomials, the transform and
//! feasibility certificates for putative weight distributions.

pub mod feasibility;
pub mod linsolve;
pub mod scalar;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weights::WeightDistribution;

pub use feasibility::{feasibility_check, Certificate, FeasibilityOutcome, FeasibilityProblem};
pub use linsolve::{DenseMatrix, Solution};
pub use scalar::Scalar;

fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `P_w(n, i) = sum_j (-1)^j C(i, j) C(n - i, w - j)`.
pub fn krawtchouk(w: usize, n: usize, i: usize) -> Result<BigInt> {
    if w > n || i > n {
        return Err(Error::InvalidArgument(format!(
            "Krawtchouk P_{w}({n}, {i}) needs 0 <= w, i <= n"
        )));
    }
    let mut acc = BigInt::zero();
    for j in 0..=w.min(i) {
        let term = binomial(i, j) * binomial(n - i, w - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Table `t[w][i] = P_w(n, i)`.
pub fn krawtchouk_table(n: usize) -> Vec<Vec<BigInt>> {
    (0..=n)
        .map(|w| (0..=n).map(|i| krawtchouk(w, n, i).expect("in range")).collect())
        .collect()
}

/// `A^perp_w = 2^-k sum_i A_i P_w(n, i)` for arbitrary rational input.
pub fn transform(counts: &[BigRational], k: usize) -> Vec<BigRational> {
    let n = counts.len() - 1;
    let table = krawtchouk_table(n);
    let scale = BigRational::from_integer(BigInt::one() << k);
    table
        .iter()
        .map(|row| {
            let s = row
                .iter()
                .zip(counts)
                .fold(BigRational::zero(), |acc, (p, a)| acc + a * BigRational::from_integer(p.clone()));
            s / scale.clone()
        })
        .collect()
}

/// The dual distribution predicted by the MacWilliams identities.
pub fn macwilliams_transform(a: &WeightDistribution, k: usize) -> Vec<BigRational> {
    let counts: Vec<BigRational> = a
        .counts()
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    transform(&counts, k)
}

/// Dimension `n - d - k + 1` of the dual shortened on the support of a
/// minimum-weight word.
pub fn shortened_dual_dimension(n: usize, k: usize, d: usize) -> Result<usize> {
    if d == 0 || d > n || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= d <= n and 1 <= k <= n, got n={n}, k={k}, d={d}"
        )));
    }
    (n + 1)
        .checked_sub(d + k)
        .ok_or_else(|| Error::InvalidArgument(format!("d + k exceeds n + 1 for n={n}, k={k}, d={d}")))
}
