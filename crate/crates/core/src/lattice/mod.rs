//! Monomial ideals in the two supported local ring families.
//!
//! A [`Ring`] is either a polynomial ring in `d` variables localized at the
//! irrelevant ideal, or a numerical semigroup ring `k[[t^a1, ..., t^ak]]`.
//! Both are graded by a monoid in which distinct monomials have distinct
//! degrees, so every length we need reduces to counting monomials.
//!
//! The residue field never appears: all quotients of monomial ideals have a
//! monomial basis and their lengths are independent of `k`.

mod ideal;
mod monomial;
mod ring;

pub use ideal::{Colength, MonomialIdeal};
pub use monomial::Monomial;
pub use ring::{make_ring, Ring, RingKind, RingSpec, Semigroup};

use thiserror::Error;

/// Largest semigroup generator accepted; bounds the conductor enumeration.
pub const MAX_SEMIGROUP_GENERATOR: u32 = 4096;
/// Largest number of variables accepted for a polynomial ring.
pub const MAX_POLYNOMIAL_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty ring descriptor")]
    EmptySpec,
    #[error("semigroup generators {0:?} have gcd {1}, colengths would be infinite")]
    NonCoprimeSemigroup(Vec<u32>, u32),
    #[error("semigroup generators must be positive")]
    ZeroSemigroupGenerator,
    #[error("ring too large: {0}")]
    RingTooLarge(String),
    #[error("a monomial ideal needs at least one generator")]
    EmptyGenerators,
    #[error("generator {0} is the unit monomial; the ideal would not be proper")]
    UnitGenerator(String),
    #[error("invalid monomial {monomial}: {reason}")]
    InvalidMonomial { monomial: String, reason: String },
    #[error("ideals live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("the zeroth power is the unit ideal, which is not representable")]
    ZeroPower,
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("{0} is not m-primary")]
    NotMPrimary(String),
    #[error("exponent overflow while multiplying monomials")]
    ExponentOverflow,
}
