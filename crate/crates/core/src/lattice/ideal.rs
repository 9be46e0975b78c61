use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;

use super::{LatticeError, Monomial, Ring, RingKind};

/// `ℓ(R/I)`: finite exactly when the ideal is m-primary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colength {
    Finite(BigUint),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<BigUint> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

/// A proper, nonzero monomial ideal stored by its minimal generators.
///
/// Generators form an antichain under divisibility and are kept in a
/// canonical order (descending lex for polynomial rings, ascending value for
/// semigroup rings), so structural equality is ideal equality.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl Hash for MonomialIdeal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

/// `a | b` in the ring's divisibility order.
fn divides(ring: &Ring, a: &Monomial, b: &Monomial) -> bool {
    match ring.semigroup() {
        None => a.exponents().iter().zip(b.exponents()).all(|(x, y)| x <= y),
        Some(s) => {
            let (a, b) = (a.exponents()[0], b.exponents()[0]);
            b >= a && s.contains((b - a) as u64)
        }
    }
}

fn canonical_sort(kind: RingKind, gens: &mut [Monomial]) {
    match kind {
        RingKind::PolynomialLocal => gens.sort_unstable_by(|a, b| b.cmp(a)),
        RingKind::NumericalSemigroup => gens.sort_unstable(),
    }
}

/// Antichain reduction. A proper divisor always has strictly smaller total
/// degree (semigroup value), so scanning in ascending degree only needs to
/// test candidates against the already-kept generators.
fn minimalize(ring: &Ring, mut cands: Vec<Monomial>) -> Vec<Monomial> {
    cands.sort_unstable_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| b.cmp(a)));
    cands.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| divides(ring, k, &c)) {
            kept.push(c);
        }
    }
    canonical_sort(ring.kind(), &mut kept);
    kept
}

impl MonomialIdeal {
    /// Canonical ideal generated by `gens`.
    pub fn from_gens(ring: &Arc<Ring>, gens: Vec<Monomial>) -> Result<Self, LatticeError> {
        if gens.is_empty() {
            return Err(LatticeError::EmptyGenerators);
        }
        for m in &gens {
            if m.arity() != ring.arity() {
                return Err(LatticeError::InvalidMonomial {
                    monomial: format!("{:?}", m.exponents()),
                    reason: format!("expected {} exponents", ring.arity()),
                });
            }
            if let Some(s) = ring.semigroup() {
                if !s.contains(m.exponents()[0] as u64) {
                    return Err(LatticeError::InvalidMonomial {
                        monomial: m.render(ring.kind()),
                        reason: format!("not an element of the semigroup {ring}"),
                    });
                }
            }
            if m.is_one() {
                return Err(LatticeError::UnitGenerator(m.render(ring.kind())));
            }
        }
        Ok(Self::from_valid(ring.clone(), gens))
    }

    /// Semigroup ring convenience: ideal generated by `t^v` for each value.
    pub fn from_values(ring: &Arc<Ring>, values: &[u32]) -> Result<Self, LatticeError> {
        Self::from_gens(ring, values.iter().map(|&v| Monomial::value(v)).collect())
    }

    /// Polynomial ring convenience: ideal generated by exponent vectors.
    pub fn from_exponents(ring: &Arc<Ring>, exps: &[&[u32]]) -> Result<Self, LatticeError> {
        Self::from_gens(ring, exps.iter().map(|e| Monomial::new(e.to_vec())).collect())
    }

    // gens are known valid non-unit monomials of `ring`
    fn from_valid(ring: Arc<Ring>, gens: Vec<Monomial>) -> Self {
        let gens = minimalize(&ring, gens);
        MonomialIdeal { ring, gens }
    }

    pub fn maximal_ideal(ring: &Arc<Ring>) -> Self {
        let gens = match ring.semigroup() {
            None => (0..ring.dim()).map(|i| Monomial::pure_power(ring.dim(), i, 1)).collect(),
            Some(s) => s.gens().iter().map(|&v| Monomial::value(v)).collect(),
        };
        Self::from_valid(ring.clone(), gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Minimal generators in canonical order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Minimal number of generators, `dim_k I/mI`.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    fn same_ring(&self, other: &Self) -> Result<(), LatticeError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(LatticeError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.arity() == self.ring.arity() && self.gens.iter().any(|g| divides(&self.ring, g, m))
    }

    /// `self ⊆ other`.
    pub fn is_subideal(&self, other: &Self) -> Result<bool, LatticeError> {
        self.same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains(g)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LatticeError> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_valid(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self, LatticeError> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Self::from_valid(self.ring.clone(), gens))
    }

    /// Product of an ideal with a principal monomial ideal.
    pub fn scale(&self, m: &Monomial) -> Result<Self, LatticeError> {
        let gens = self.gens.iter().map(|g| g.mul(m)).collect::<Result<Vec<_>, _>>()?;
        Ok(MonomialIdeal { ring: self.ring.clone(), gens: minimalize(&self.ring, gens) })
    }

    pub fn power(&self, n: u32) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroPower);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.product(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.product(&base)?;
        }
        Ok(acc.unwrap())
    }

    /// Exponent `p_i` of the pure power `x_i^{p_i}` among the generators, per variable.
    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let d = self.ring.arity();
        let mut bounds = vec![None; d];
        for g in &self.gens {
            if let Some((i, e)) = g.as_pure_power() {
                bounds[i] = Some(e);
            }
        }
        bounds.into_iter().collect()
    }

    pub fn is_m_primary(&self) -> bool {
        match self.ring.kind() {
            RingKind::NumericalSemigroup => true,
            RingKind::PolynomialLocal => self.pure_power_bounds().is_some(),
        }
    }

    fn semigroup_scan_bound(&self) -> u32 {
        let s = self.ring.semigroup().expect("semigroup ring");
        let max_gen = self.gens.last().map_or(0, |g| g.exponents()[0]);
        max_gen.max(s.conductor()) + s.conductor()
    }

    /// Number of standard monomials, `ℓ(R/I)`.
    pub fn colength(&self) -> Colength {
        match self.ring.semigroup() {
            Some(s) => {
                let count = (0..self.semigroup_scan_bound())
                    .filter(|&v| s.contains(v as u64) && !self.contains(&Monomial::value(v)))
                    .count();
                Colength::Finite(BigUint::from(count))
            }
            None => match self.pure_power_bounds() {
                None => Colength::Infinite,
                Some(bounds) => {
                    let gens: Vec<&[u32]> = self.gens.iter().map(|g| g.exponents()).collect();
                    Colength::Finite(BigUint::from(staircase_count(&gens, &bounds, 0)))
                }
            },
        }
    }

    /// Finite colength or `NotMPrimary`.
    pub fn finite_colength(&self) -> Result<BigUint, LatticeError> {
        self.colength().finite().ok_or_else(|| LatticeError::NotMPrimary(self.to_string()))
    }

    /// The monomials of `R` outside the ideal, or `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        match self.ring.semigroup() {
            Some(s) => Some(
                (0..self.semigroup_scan_bound())
                    .filter(|&v| s.contains(v as u64))
                    .map(Monomial::value)
                    .filter(|m| !self.contains(m))
                    .collect(),
            ),
            None => {
                let bounds = self.pure_power_bounds()?;
                let mut out = Vec::new();
                let mut cur = vec![0u32; bounds.len()];
                box_walk(&bounds, 0, &mut cur, &mut |e| {
                    let m = Monomial::new(e.to_vec());
                    if !self.contains(&m) {
                        out.push(m);
                    }
                });
                Some(out)
            }
        }
    }

    /// `ℓ(outer/inner)` for `inner ⊆ outer`, both m-primary.
    pub fn length_quotient(inner: &Self, outer: &Self) -> Result<BigUint, LatticeError> {
        if !inner.is_subideal(outer)? {
            return Err(LatticeError::NotContained {
                inner: inner.to_string(),
                outer: outer.to_string(),
            });
        }
        let a = inner.finite_colength()?;
        let b = outer.finite_colength()?;
        Ok(a - b)
    }
}

/// `Σ_{prefix} min { g_last : g_j ≤ prefix_j for j < last }` over the box of
/// prefixes: each prefix column of the staircase contributes its height.
fn staircase_count(gens: &[&[u32]], bounds: &[u32], i: usize) -> u128 {
    let last = bounds.len() - 1;
    if i == last {
        return gens.iter().map(|g| g[i]).min().expect("pure power of last variable") as u128;
    }
    let mut sorted = gens.to_vec();
    sorted.sort_unstable_by_key(|g| g[i]);
    let mut active = 0;
    let mut total = 0u128;
    for a in 0..bounds[i] {
        while active < sorted.len() && sorted[active][i] <= a {
            active += 1;
        }
        total += staircase_count(&sorted[..active], bounds, i + 1);
    }
    total
}

fn box_walk(bounds: &[u32], i: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == bounds.len() {
        f(cur);
        return;
    }
    for a in 0..bounds[i] {
        cur[i] = a;
        box_walk(bounds, i + 1, cur, f);
    }
    cur[i] = 0;
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&g.render(self.ring.kind()))?;
        }
        f.write_str("]")
    }
}
