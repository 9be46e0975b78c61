//! Executable checkers for the inequalities relating generators, mixed
//! multiplicities and the multiplicity of `𝒩`, plus a seeded random explorer.
//! Every supported ring is Cohen–Macaulay, so any reported violation is a bug
//! witness rather than a counterexample.

mod checks;
mod explore;

pub use checks::{
    check_equation_strict_g3, check_isw, check_kv2, check_necessary_conditions_g2, check_nog,
    check_scaling,
};
pub use explore::{explore_random, CheckKind, ExploreConfig, ExploreSummary, RingFamily, Tally};

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::hilbert::HilbertError;
use crate::lattice::LatticeError;
use crate::rees::ReesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Rees(#[from] ReesError),
    #[error("ideal {0} is not m-primary")]
    NotMPrimary(String),
    #[error("elements {0} do not generate an m-primary ideal")]
    NotParameterSystem(String),
    #[error("element {element} is not in ideal {ideal}")]
    ElementNotInIdeal { element: String, ideal: String },
    #[error("{0}")]
    InvalidArgument(String),
}

impl TheoremError {
    /// Whether the failure is a stabilization failure deep in the engine.
    pub fn is_stabilization_failure(&self) -> bool {
        matches!(
            self,
            TheoremError::Hilbert(HilbertError::StabilizationFailure { .. })
                | TheoremError::Rees(ReesError::Hilbert(HilbertError::StabilizationFailure { .. }))
                | TheoremError::Rees(ReesError::StabilizationFailure { .. })
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Le,
    Ge,
    Gt,
    Eq,
}

impl Relation {
    pub fn eval(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckMode {
    Inequality,
    Implication,
    Equality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckStatus {
    /// Both sides computed and compared.
    Checked,
    /// The hypothesis of an implication fails; nothing to check.
    Vacuous,
    /// The quantity is not computable exactly here.
    Unknown,
}

/// Outcome of one checker. For `Checked` results `holds` is exactly
/// `relation(lhs, rhs)`; vacuous and unknown results always hold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CheckResult {
    pub name: String,
    pub instance: String,
    pub lhs: Option<BigInt>,
    pub rhs: Option<BigInt>,
    pub relation: Relation,
    pub mode: CheckMode,
    pub status: CheckStatus,
    pub holds: bool,
    pub note: String,
}

impl CheckResult {
    pub fn checked(
        name: &str,
        instance: &str,
        mode: CheckMode,
        lhs: BigInt,
        relation: Relation,
        rhs: BigInt,
    ) -> Self {
        let holds = relation.eval(&lhs, &rhs);
        Self {
            name: name.into(),
            instance: instance.into(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            relation,
            mode,
            status: CheckStatus::Checked,
            holds,
            note: String::new(),
        }
    }

    pub fn vacuous(name: &str, instance: &str, mode: CheckMode, relation: Relation) -> Self {
        Self {
            name: name.into(),
            instance: instance.into(),
            lhs: None,
            rhs: None,
            relation,
            mode,
            status: CheckStatus::Vacuous,
            holds: true,
            note: String::new(),
        }
    }

    pub fn unknown(name: &str, instance: &str, mode: CheckMode, relation: Relation) -> Self {
        Self { status: CheckStatus::Unknown, ..Self::vacuous(name, instance, mode, relation) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn is_violation(&self) -> bool {
        self.status == CheckStatus::Checked && !self.holds
    }

    /// Recomputes `holds` from the stored sides.
    pub fn consistent(&self) -> bool {
        match (self.status, &self.lhs, &self.rhs) {
            (CheckStatus::Checked, Some(l), Some(r)) => self.holds == self.relation.eval(l, r),
            (CheckStatus::Checked, _, _) => false,
            _ => self.holds,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.status, self.holds) {
            (CheckStatus::Vacuous, _) => "vacuous",
            (CheckStatus::Unknown, _) => "unknown",
            (_, true) => "holds",
            (_, false) => "VIOLATED",
        };
        write!(f, "{}: ", self.name)?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, "{l} {} {r} ", self.relation.symbol())?;
        }
        write!(f, "{verdict}")?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}
