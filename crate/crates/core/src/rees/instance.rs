use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use super::graded::{e_n_direct, mu_n_direct, OracleConfig};
use super::reduction::reduction_number_dim1;
use super::ReesError;
use crate::hilbert::HilbertEngine;
use crate::lattice::{LatticeError, MonomialIdeal, Ring};

/// Ring, ordered m-primary ideals `I₁,…,I_g`, and the derived
/// `L = I₁ + ⋯ + I_g + 𝔪²`.
#[derive(Debug, Clone)]
pub struct ReesInstance {
    ring: Arc<Ring>,
    ideals: Vec<MonomialIdeal>,
    names: Vec<String>,
    m: MonomialIdeal,
    l: MonomialIdeal,
}

impl ReesInstance {
    pub fn new(ideals: Vec<MonomialIdeal>) -> Result<Self, ReesError> {
        let names = (1..=ideals.len()).map(|j| format!("I{j}")).collect();
        Self::with_names(ideals, names)
    }

    pub fn with_names(ideals: Vec<MonomialIdeal>, names: Vec<String>) -> Result<Self, ReesError> {
        let first = ideals.first().ok_or(ReesError::NoIdeals)?;
        let ring = first.ring().clone();
        for i in &ideals {
            if **i.ring() != *ring {
                return Err(LatticeError::RingMismatch(ring.to_string(), i.ring().to_string()).into());
            }
            if !i.is_m_primary() {
                return Err(ReesError::NotMPrimary(i.to_string()));
            }
        }
        let names = if names.len() == ideals.len() {
            names
        } else {
            (1..=ideals.len()).map(|j| format!("I{j}")).collect()
        };
        let m = MonomialIdeal::maximal_ideal(&ring);
        let mut l = m.power(2)?;
        for i in &ideals {
            l = l.sum(i)?;
        }
        Ok(Self { ring, ideals, names, m, l })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn d(&self) -> usize {
        self.ring.dim()
    }

    pub fn g(&self) -> usize {
        self.ideals.len()
    }

    pub fn maximal_ideal(&self) -> &MonomialIdeal {
        &self.m
    }

    pub fn l(&self) -> &MonomialIdeal {
        &self.l
    }

    /// `dim ℬ = d + g`.
    pub fn rees_dim(&self) -> usize {
        self.d() + self.g()
    }

    /// `μ(𝒩) = g + μ(𝔪) + Σ μ(Iⱼ) − ℓ(L/𝔪²)`.
    pub fn mu_n(&self) -> Result<BigUint, ReesError> {
        let gens = self.g() + self.m.mu() + self.ideals.iter().map(MonomialIdeal::mu).sum::<usize>();
        let overlap = MonomialIdeal::length_quotient(&self.m.power(2)?, &self.l)?;
        Ok(BigUint::from(gens) - overlap)
    }

    /// Closed formula for `e(𝒩)` as a weighted sum of mixed multiplicities
    /// of `L` and the `Iⱼ`; the division by `2^d` must be exact.
    pub fn e_n_formula(&self, engine: &HilbertEngine) -> Result<BigUint, ReesError> {
        let d = self.d();
        let g = self.g();
        let mut terms: Vec<(Vec<MonomialIdeal>, Vec<u32>, usize)> = Vec::new();
        for mask in 0u64..(1u64 << g) {
            let subset: Vec<usize> = (0..g).filter(|&j| mask >> j & 1 == 1).collect();
            for q in 0..d {
                for comp in weak_compositions(d - 1 - q, subset.len()) {
                    let mut ideals = vec![self.l.clone()];
                    ideals.extend(subset.iter().map(|&j| self.ideals[j].clone()));
                    let mut weights = vec![q as u32 + 1];
                    weights.extend(comp);
                    terms.push((ideals, weights, d - 1 - q));
                }
            }
        }
        let values = terms
            .par_iter()
            .map(|(ideals, weights, shift)| Ok(engine.mixed(ideals, weights)? << *shift))
            .collect::<Result<Vec<BigUint>, ReesError>>()?;
        let sum: BigUint = values.into_iter().sum();
        let mask = (BigUint::from(1u32) << d) - 1u32;
        if !(&sum & &mask).is_zero() {
            return Err(ReesError::NonIntegralResult { sum, d });
        }
        Ok(sum >> d)
    }

    /// Full report on the numeric minimal-multiplicity equation
    /// `e(𝒩) = μ(𝒩) − dim ℬ + 1`. With an oracle config, `e(𝒩)` and `μ(𝒩)`
    /// are recomputed from the graded pieces of `𝒩ⁿ` as a cross-check.
    pub fn verdict(
        &self,
        engine: &HilbertEngine,
        oracle: Option<OracleConfig>,
    ) -> Result<ReesReport, ReesError> {
        let mu_n = self.mu_n()?;
        let e_n_formula = self.e_n_formula(engine)?;
        let dim_b = self.rees_dim();
        let bound = BigInt::from(mu_n.clone()) - dim_b + 1;
        let equation_holds = BigInt::from(e_n_formula.clone()) == bound;
        let (e_n_direct, mu_n_direct) = match oracle {
            Some(cfg) => (Some(e_n_direct(self, cfg)?), Some(mu_n_direct(self)?)),
            None => (None, None),
        };
        let d = self.d();
        let per_ideal = self
            .ideals
            .iter()
            .zip(&self.names)
            .map(|(ideal, name)| {
                let e_top = engine.e_q_pair(&self.m, ideal, d - 1)?;
                let reduction = if d == 1 {
                    ReductionInfo::Number(reduction_number_dim1(ideal)?)
                } else {
                    ReductionInfo::Unknown
                };
                Ok(IdealSummary {
                    name: name.clone(),
                    ideal: ideal.to_string(),
                    mu: ideal.mu(),
                    e_top,
                    reduction,
                })
            })
            .collect::<Result<Vec<_>, ReesError>>()?;
        Ok(ReesReport {
            instance: self.to_string(),
            ring: self.ring.to_string(),
            d,
            g: self.g(),
            dim_b,
            ring_mu: self.m.mu(),
            ring_e: engine.multiplicity(&self.m)?,
            mu_n,
            mu_n_direct,
            e_n_formula,
            e_n_direct,
            bound,
            equation_holds,
            per_ideal,
        })
    }
}

/// Weak compositions of `total` into `parts` nonnegative parts.
pub(crate) fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

impl fmt::Display for ReesInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring)?;
        for (name, ideal) in self.names.iter().zip(&self.ideals) {
            write!(f, "; {name}={ideal}")?;
        }
        Ok(())
    }
}

/// Reduction-number information for one ideal: exact in dimension one,
/// where a principal monomial reduction exists, unknown otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionInfo {
    Number(u32),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSummary {
    pub name: String,
    pub ideal: String,
    pub mu: usize,
    /// `e_{d−1}(𝔪|I)`.
    pub e_top: BigUint,
    pub reduction: ReductionInfo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesReport {
    pub instance: String,
    pub ring: String,
    pub d: usize,
    pub g: usize,
    pub dim_b: usize,
    pub ring_mu: usize,
    pub ring_e: BigUint,
    pub mu_n: BigUint,
    pub mu_n_direct: Option<BigUint>,
    pub e_n_formula: BigUint,
    pub e_n_direct: Option<BigUint>,
    /// `μ(𝒩) − dim ℬ + 1`.
    pub bound: BigInt,
    pub equation_holds: bool,
    pub per_ideal: Vec<IdealSummary>,
}

impl ReesReport {
    /// False when an oracle value was computed and disagrees.
    pub fn oracle_agrees(&self) -> bool {
        self.e_n_direct.as_ref().map_or(true, |e| *e == self.e_n_formula)
            && self.mu_n_direct.as_ref().map_or(true, |m| *m == self.mu_n)
    }
}
