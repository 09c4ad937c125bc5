//! Binary linear codes: optimum distance profiles, equivalence and exact
//! weight-enumerator feasibility.

pub mod canon;
pub mod codedb;
pub mod code;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod io;
pub mod packed;
pub mod search;
pub mod weights;

pub use code::{extremal_bound, LinearCode, TypeClass};
pub use error::{Error, Result};
pub use gf2::{BitVector, GF2Matrix};
pub use packed::Word;
pub use weights::{min_distance, weight_distribution, WeightDistribution};

/// Exact rational scalar used for every MacWilliams computation.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = exact::DenseMatrix<Rational>;
pub type FloatMatrix = exact::DenseMatrix<f64>;
