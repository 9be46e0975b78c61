use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::{LatticeError, MAX_POLYNOMIAL_DIM, MAX_SEMIGROUP_GENERATOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    PolynomialLocal,
    NumericalSemigroup,
}

/// User-facing ring descriptor, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    PolynomialLocal(usize),
    NumericalSemigroup(Vec<u32>),
}

/// A numerical semigroup `S ⊆ ℕ` with finite complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    gens: Vec<u32>,
    conductor: u32,
    gaps: Vec<u32>,
    // membership table for 0..conductor
    member: Vec<bool>,
}

impl Semigroup {
    fn new(raw: &[u32]) -> Result<Self, LatticeError> {
        if raw.is_empty() {
            return Err(LatticeError::EmptySpec);
        }
        if raw.contains(&0) {
            return Err(LatticeError::ZeroSemigroupGenerator);
        }
        if let Some(&big) = raw.iter().find(|&&a| a > MAX_SEMIGROUP_GENERATOR) {
            return Err(LatticeError::RingTooLarge(format!(
                "semigroup generator {big} exceeds {MAX_SEMIGROUP_GENERATOR}"
            )));
        }
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let g = sorted.iter().fold(0u32, |acc, &a| acc.gcd(&a));
        if g != 1 {
            return Err(LatticeError::NonCoprimeSemigroup(sorted, g));
        }

        // Frobenius number < a_min * a_max, so this table decides membership.
        let bound = (sorted[0] as usize) * (*sorted.last().unwrap() as usize) + 1;
        let mut table = vec![false; bound];
        table[0] = true;
        for v in 1..bound {
            table[v] = sorted
                .iter()
                .any(|&a| (a as usize) <= v && table[v - a as usize]);
        }
        let conductor = (0..bound).rev().find(|&v| !table[v]).map_or(0, |f| f + 1);
        let gaps: Vec<u32> = (1..conductor).filter(|&v| !table[v]).map(|v| v as u32).collect();

        // a generator is minimal unless it splits as a sum of two nonzero elements
        let gens = sorted
            .iter()
            .copied()
            .filter(|&a| {
                let a = a as usize;
                !(1..a).any(|s| table[s] && table[a - s])
            })
            .collect();
        let member = table[..conductor].to_vec();
        Ok(Self { gens, conductor: conductor as u32, gaps, member })
    }

    /// Minimal generators, ascending.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// Smallest `c` with `[c, ∞) ⊆ S`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn contains(&self, v: u64) -> bool {
        v >= self.conductor as u64 || self.member[v as usize]
    }

    /// Multiplicity of the semigroup ring, the smallest nonzero element.
    pub fn multiplicity(&self) -> u32 {
        self.gens[0]
    }
}

/// A supported local ring. Always Cohen–Macaulay: either regular, or a
/// one-dimensional domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    kind: RingKind,
    dim: usize,
    semigroup: Option<Semigroup>,
}

impl Ring {
    pub fn polynomial_local(d: usize) -> Result<Arc<Ring>, LatticeError> {
        if d == 0 {
            return Err(LatticeError::EmptySpec);
        }
        if d > MAX_POLYNOMIAL_DIM {
            return Err(LatticeError::RingTooLarge(format!(
                "{d} variables exceeds {MAX_POLYNOMIAL_DIM}"
            )));
        }
        Ok(Arc::new(Ring { kind: RingKind::PolynomialLocal, dim: d, semigroup: None }))
    }

    pub fn numerical_semigroup(gens: &[u32]) -> Result<Arc<Ring>, LatticeError> {
        let semigroup = Semigroup::new(gens)?;
        Ok(Arc::new(Ring {
            kind: RingKind::NumericalSemigroup,
            dim: 1,
            semigroup: Some(semigroup),
        }))
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Krull dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of the exponent vector of a monomial of this ring.
    pub fn arity(&self) -> usize {
        match self.kind {
            RingKind::PolynomialLocal => self.dim,
            RingKind::NumericalSemigroup => 1,
        }
    }

    pub fn semigroup(&self) -> Option<&Semigroup> {
        self.semigroup.as_ref()
    }

    pub fn spec(&self) -> RingSpec {
        match &self.semigroup {
            None => RingSpec::PolynomialLocal(self.dim),
            Some(s) => RingSpec::NumericalSemigroup(s.gens.clone()),
        }
    }

    /// Compact canonical descriptor used in cache keys: `poly(2)` or `sg(4,5,7)`.
    pub fn key(&self) -> String {
        match &self.semigroup {
            None => format!("poly({})", self.dim),
            Some(s) => format!("sg({})", join(&s.gens)),
        }
    }
}

/// Validates a descriptor and precomputes the semigroup data.
pub fn make_ring(spec: &RingSpec) -> Result<Arc<Ring>, LatticeError> {
    match spec {
        RingSpec::PolynomialLocal(d) => Ring::polynomial_local(*d),
        RingSpec::NumericalSemigroup(gens) => Ring::numerical_semigroup(gens),
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::PolynomialLocal(d) => write!(f, "polynomial_local({d})"),
            RingSpec::NumericalSemigroup(g) => write!(f, "numerical_semigroup({})", join(g)),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec().fmt(f)
    }
}
