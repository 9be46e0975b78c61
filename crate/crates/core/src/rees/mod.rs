//! The multi-graded extended Rees algebra `ℬ(I₁,…,I_g)` of m-primary monomial
//! ideals and its maximal homogeneous ideal
//! `𝒩 = (t₁⁻¹,…,t_g⁻¹, 𝔪, I₁t₁,…,I_g t_g)`.
//!
//! `ℬ` is `ℤ^g`-graded with `ℬ_b = ∏ Iⱼ^{max(bⱼ,0)}`, and every homogeneous
//! ideal we need (`𝒩ⁿ` in particular) is described piece by piece as a
//! monomial ideal of `R`. That turns the Hilbert–Samuel function of `𝒩` into
//! a finite sum of colengths, which is the direct oracle for the closed
//! multiplicity formula.

mod graded;
mod instance;
mod laurent;
mod reduction;

pub use graded::{e_n_direct, mu_n_direct, GradedPowers, OracleConfig, Piece};
pub use instance::{IdealSummary, ReductionInfo, ReesInstance, ReesReport};
pub use laurent::{check_reduction_equation_bounded, BoxVerdict, LaurentElement, LaurentTerm};
pub use reduction::{
    joint_reduction_check, reduction_number_dim1, reduction_number_monomial, ReductionNumber,
};

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::hilbert::HilbertError;
use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("a Rees instance needs at least one ideal")]
    NoIdeals,
    #[error("ideal {0} is not m-primary")]
    NotMPrimary(String),
    #[error("formula sum {sum} is not divisible by 2^{d}")]
    NonIntegralResult { sum: BigUint, d: usize },
    #[error("Hilbert function of N did not stabilize by n = {n_cap}; last candidates {previous} and {last}")]
    StabilizationFailure { n_cap: u32, previous: BigInt, last: BigInt },
    #[error("direct oracle limited to dim B <= {max}, instance has {dim}")]
    GuardExceeded { dim: usize, max: usize },
    #[error("element {element} is not in ideal {ideal}")]
    ElementNotInIdeal { element: String, ideal: String },
    #[error("expected {expected} elements, got {got}")]
    ElementCount { expected: usize, got: usize },
    #[error("operation needs a one-dimensional ring, got dimension {0}")]
    NotOneDimensional(usize),
    #[error("reduction search exceeded {0} steps")]
    ReductionSearchExhausted(u32),
    #[error("box has {cells} cells, limit is {limit}")]
    BoxTooLarge { cells: usize, limit: usize },
    #[error("term {term} of generator {index} does not lie in N")]
    GeneratorOutsideN { index: usize, term: String },
    #[error("generator {index}: {reason}")]
    MalformedGenerator { index: usize, reason: String },
}
