//! Length functions `ℓ(R/I₁^{r₁}⋯I_g^{r_g})` and the mixed multiplicities read
//! off their top-degree part.
//!
//! We work with the total colength, a polynomial of total degree `d` for all
//! `rⱼ` large, whose coefficient of `r^q/q!` (with `|q| = d`) is the mixed
//! multiplicity `e(I₁^{[q₁]}|⋯|I_g^{[q_g]})`. The iterated forward difference
//! `Δ^q` of such a polynomial is exactly that coefficient, so no fitting is
//! needed: we evaluate `Δ^q` at diagonal base points until it stops moving.

mod cache;
mod engine;
mod key;

pub use cache::{CacheError, SampleCache};
pub use engine::{HilbertEngine, MixedMultiplicityQuery, StabilizationConfig};
pub use key::{parse_sample_key, sample_key, SampleKey, CACHE_FORMAT_TAG};

use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("a query needs at least one ideal")]
    EmptyQuery,
    #[error("{ideals} ideals but {weights} weights")]
    LengthMismatch { ideals: usize, weights: usize },
    #[error("weights sum to {got}, expected the ring dimension {expected}")]
    WeightSum { expected: usize, got: u64 },
    #[error("ideal {0} is not m-primary")]
    NotMPrimary(String),
    #[error("q = {q} outside [0, {max}]")]
    QOutOfRange { q: usize, max: usize },
    #[error(
        "finite differences did not stabilize by base point {base}; last candidates {previous} and {last}"
    )]
    StabilizationFailure { base: u32, previous: BigInt, last: BigInt },
    #[error("stabilized difference {0} is not a positive integer")]
    NonPositive(BigInt),
}
