use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{ReesError, ReesInstance};
use crate::lattice::{LatticeError, Monomial, MonomialIdeal};

/// A graded component of a homogeneous ideal of `ℬ`, as an ideal of `R`.
/// Components in degrees `b ≤ 0` may be all of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    Unit,
    Ideal(MonomialIdeal),
}

impl Piece {
    pub fn contains(&self, m: &Monomial) -> bool {
        match self {
            Piece::Unit => true,
            Piece::Ideal(i) => i.contains(m),
        }
    }

    /// `ℓ(R/piece)`.
    pub fn colength(&self) -> Result<BigUint, LatticeError> {
        match self {
            Piece::Unit => Ok(BigUint::zero()),
            Piece::Ideal(i) => i.finite_colength(),
        }
    }

    pub fn is_subpiece(&self, other: &Piece) -> Result<bool, LatticeError> {
        match (self, other) {
            (_, Piece::Unit) => Ok(true),
            (Piece::Unit, Piece::Ideal(_)) => Ok(false),
            (Piece::Ideal(a), Piece::Ideal(b)) => a.is_subideal(b),
        }
    }

    /// Monomials of `R` outside this piece; `None` if that set is infinite.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        match self {
            Piece::Unit => Some(Vec::new()),
            Piece::Ideal(i) => i.standard_monomials(),
        }
    }

    fn sum(self, other: Piece) -> Result<Piece, LatticeError> {
        Ok(match (self, other) {
            (Piece::Unit, _) | (_, Piece::Unit) => Piece::Unit,
            (Piece::Ideal(a), Piece::Ideal(b)) => Piece::Ideal(a.sum(&b)?),
        })
    }

    fn times(&self, ideal: &MonomialIdeal) -> Result<Piece, LatticeError> {
        Ok(match self {
            Piece::Unit => Piece::Ideal(ideal.clone()),
            Piece::Ideal(a) => Piece::Ideal(a.product(ideal)?),
        })
    }
}

/// Graded components of the powers `𝒩ⁿ`, memoized level by level.
///
/// `𝒩ⁿ_b = Σⱼ 𝒩ⁿ⁻¹_{b+eⱼ} + 𝔪·𝒩ⁿ⁻¹_b + Σⱼ Iⱼ·𝒩ⁿ⁻¹_{b−eⱼ}`, one summand per
/// generator class `tⱼ⁻¹`, `𝔪`, `Iⱼtⱼ`. Whenever some `|bⱼ| ≥ n` the
/// component is all of `ℬ_b`: `t_j^{-n}` resp. `(Iⱼtⱼ)ⁿ` already reaches it.
pub struct GradedPowers<'a> {
    instance: &'a ReesInstance,
    // powers[j][k] = Iⱼ^k for k ≥ 1
    powers: Vec<Vec<MonomialIdeal>>,
    // levels[n] holds the non-full components of 𝒩ⁿ, keyed by b ∈ (−n, n)^g
    levels: Vec<HashMap<Vec<i64>, Piece>>,
}

impl<'a> GradedPowers<'a> {
    pub fn new(instance: &'a ReesInstance) -> Self {
        let powers = instance.ideals().iter().map(|i| vec![i.clone()]).collect();
        Self { instance, powers, levels: vec![HashMap::new()] }
    }

    /// Whether the component of `𝒩ⁿ` in degree `b` is all of `ℬ_b`.
    pub fn is_full(n: u32, b: &[i64]) -> bool {
        n == 0 || b.iter().any(|x| x.unsigned_abs() >= n as u64)
    }

    /// `ℬ_b = ∏ Iⱼ^{max(bⱼ,0)}`.
    pub fn ambient(&mut self, b: &[i64]) -> Result<Piece, ReesError> {
        let top = b.iter().copied().max().unwrap_or(0).max(0) as u32;
        self.ensure_powers(top)?;
        Ok(self.ambient_ready(b)?)
    }

    fn ambient_ready(&self, b: &[i64]) -> Result<Piece, LatticeError> {
        let mut acc = Piece::Unit;
        for (j, &bj) in b.iter().enumerate() {
            if bj > 0 {
                acc = acc.times(&self.powers[j][bj as usize - 1])?;
            }
        }
        Ok(acc)
    }

    fn ensure_powers(&mut self, k: u32) -> Result<(), LatticeError> {
        for (j, table) in self.powers.iter_mut().enumerate() {
            while table.len() < k as usize {
                let next = table.last().unwrap().product(&self.instance.ideals()[j])?;
                table.push(next);
            }
        }
        Ok(())
    }

    /// Degree-`b` component of `𝒩ⁿ`.
    pub fn piece(&mut self, n: u32, b: &[i64]) -> Result<Piece, ReesError> {
        if b.len() != self.instance.g() {
            return Err(ReesError::MalformedGenerator {
                index: 0,
                reason: format!("multidegree has {} entries, expected {}", b.len(), self.instance.g()),
            });
        }
        if Self::is_full(n, b) {
            return self.ambient(b);
        }
        self.ensure_level(n)?;
        Ok(self.levels[n as usize][b].clone())
    }

    fn ensure_level(&mut self, n: u32) -> Result<(), ReesError> {
        let g = self.instance.g();
        // every ambient component referenced from levels ≤ n has bⱼ ≤ n
        self.ensure_powers(n)?;
        while self.levels.len() <= n as usize {
            let level = self.levels.len() as u32;
            let cells = open_box(g, level as i64 - 1);
            let this: &Self = self;
            let computed = cells
                .into_par_iter()
                .map(|b| this.compute(level, &b).map(|p| (b, p)))
                .collect::<Result<HashMap<_, _>, LatticeError>>()?;
            self.levels.push(computed);
        }
        Ok(())
    }

    // level n − 1 and powers up to n are already present
    fn compute(&self, n: u32, b: &[i64]) -> Result<Piece, LatticeError> {
        let prev = |c: &[i64]| -> Result<Piece, LatticeError> {
            if Self::is_full(n - 1, c) {
                self.ambient_ready(c)
            } else {
                Ok(self.levels[n as usize - 1][c].clone())
            }
        };
        let mut acc = prev(b)?.times(self.instance.maximal_ideal())?;
        let mut c = b.to_vec();
        for (j, ideal) in self.instance.ideals().iter().enumerate() {
            c[j] = b[j] + 1;
            acc = acc.sum(prev(&c)?)?;
            c[j] = b[j] - 1;
            acc = acc.sum(prev(&c)?.times(ideal)?)?;
            c[j] = b[j];
        }
        Ok(acc)
    }

    /// `ℓ(ℬ/𝒩ⁿ) = Σ_b ℓ(ℬ_b/𝒩ⁿ_b)`; only `b ∈ (−n, n)^g` contribute.
    pub fn hilbert_function(&mut self, n: u32) -> Result<BigUint, ReesError> {
        if n == 0 {
            return Ok(BigUint::zero());
        }
        self.ensure_level(n)?;
        let this: &Self = self;
        let terms = this.levels[n as usize]
            .par_iter()
            .map(|(b, p)| {
                let amb = this.ambient_ready(b)?;
                Ok(p.colength()? - amb.colength()?)
            })
            .collect::<Result<Vec<BigUint>, LatticeError>>()?;
        Ok(terms.into_iter().sum())
    }

    /// Drops memoized levels below `n`, which later levels no longer need
    /// once `n` itself is built.
    pub fn forget_below(&mut self, n: u32) {
        for level in self.levels.iter_mut().take(n as usize) {
            level.clear();
            level.shrink_to_fit();
        }
    }
}

/// All `b ∈ [−r, r]^g` in lexicographic order; empty when `r < 0`.
pub(crate) fn open_box(g: usize, r: i64) -> Vec<Vec<i64>> {
    if r < 0 {
        return Vec::new();
    }
    let mut out = vec![Vec::with_capacity(g)];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Limits for the direct Hilbert-function oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest power of `𝒩` sampled.
    pub n_cap: u32,
    /// Consecutive top differences that must agree.
    pub window: usize,
    /// Largest admitted `dim ℬ = d + g`.
    pub max_dim: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { n_cap: 12, window: 2, max_dim: 4 }
    }
}

/// `e(𝒩)` as the `(d+g)`-th forward difference of `n ↦ ℓ(ℬ/𝒩ⁿ)` at the
/// largest sampled points.
pub fn e_n_direct(instance: &ReesInstance, config: OracleConfig) -> Result<BigUint, ReesError> {
    let k = instance.rees_dim();
    if k > config.max_dim {
        return Err(ReesError::GuardExceeded { dim: k, max: config.max_dim });
    }
    let window = config.window.max(1);
    let n_cap = config.n_cap;
    let mut graded = GradedPowers::new(instance);
    let mut h = Vec::with_capacity(n_cap as usize + 1);
    for n in 0..=n_cap {
        h.push(BigInt::from(graded.hilbert_function(n)?));
        graded.forget_below(n);
    }
    if (n_cap as usize + 1) < k + window {
        let last = h.last().cloned().unwrap_or_default();
        return Err(ReesError::StabilizationFailure { n_cap, previous: last.clone(), last });
    }
    let diffs: Vec<BigInt> = (n_cap as usize + 1 - k - window..=n_cap as usize - k)
        .map(|m| forward_difference(&h[m..=m + k]))
        .collect();
    let n = diffs.len();
    if diffs.windows(2).any(|p| p[0] != p[1]) || !diffs[n - 1].is_positive() {
        let previous = if n >= 2 { diffs[n - 2].clone() } else { diffs[n - 1].clone() };
        return Err(ReesError::StabilizationFailure { n_cap, previous, last: diffs[n - 1].clone() });
    }
    Ok(diffs[n - 1].magnitude().clone())
}

// Δ^k at the first point of `vals` (k + 1 values).
fn forward_difference(vals: &[BigInt]) -> BigInt {
    let mut row = vals.to_vec();
    while row.len() > 1 {
        row = row.windows(2).map(|p| &p[1] - &p[0]).collect();
    }
    row.pop().unwrap()
}

/// `μ(𝒩) = ℓ(𝒩/𝒩²)`, summed over the degrees `b ∈ [−2, 2]^g` where the two
/// components can differ.
pub fn mu_n_direct(instance: &ReesInstance) -> Result<BigUint, ReesError> {
    let mut graded = GradedPowers::new(instance);
    let mut total = BigUint::zero();
    for b in open_box(instance.g(), 2) {
        let two = graded.piece(2, &b)?.colength()?;
        let one = graded.piece(1, &b)?.colength()?;
        total += two - one;
    }
    Ok(total)
}
