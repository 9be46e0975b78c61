use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::Signed;
use rayon::prelude::*;

use super::{sample_key, HilbertError, SampleCache};
use crate::lattice::{LatticeError, MonomialIdeal, Ring};

/// When to trust a finite difference. Base points double from 1 up to
/// `cap`; at each level the difference is evaluated at `window` consecutive
/// diagonal base points. A value is accepted once two successive levels
/// `b ≥ 2` and `2b` are each constant and agree: length functions of
/// non-normal ideals can repeat a transient value at small neighbouring base
/// points before settling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizationConfig {
    pub window: usize,
    pub cap: u32,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig { window: 2, cap: 64 }
    }
}

/// Ideals with weights summing to `dim R`.
#[derive(Debug, Clone)]
pub struct MixedMultiplicityQuery {
    ideals: Vec<MonomialIdeal>,
    weights: Vec<u32>,
}

impl MixedMultiplicityQuery {
    pub fn new(ideals: Vec<MonomialIdeal>, weights: Vec<u32>) -> Result<Self, HilbertError> {
        let first = ideals.first().ok_or(HilbertError::EmptyQuery)?;
        if ideals.len() != weights.len() {
            return Err(HilbertError::LengthMismatch {
                ideals: ideals.len(),
                weights: weights.len(),
            });
        }
        let ring = first.ring().clone();
        for i in &ideals {
            if **i.ring() != *ring {
                return Err(LatticeError::RingMismatch(ring.to_string(), i.ring().to_string())
                    .into());
            }
            if !i.is_m_primary() {
                return Err(HilbertError::NotMPrimary(i.to_string()));
            }
        }
        let total: u64 = weights.iter().map(|&w| w as u64).sum();
        if total != ring.dim() as u64 {
            return Err(HilbertError::WeightSum { expected: ring.dim(), got: total });
        }
        Ok(MixedMultiplicityQuery { ideals, weights })
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideals[0].ring()
    }

    fn memo_key(&self) -> String {
        let parts: Vec<String> =
            self.ideals.iter().zip(&self.weights).map(|(i, w)| format!("{i}^[{w}]")).collect();
        format!("{};{}", self.ring().key(), parts.join("|"))
    }
}

/// Samples colengths of products of powers and extracts (mixed) multiplicities.
#[derive(Debug)]
pub struct HilbertEngine {
    config: StabilizationConfig,
    cache: Arc<SampleCache>,
    memo: Mutex<HashMap<String, BigUint>>,
}

impl Default for HilbertEngine {
    fn default() -> Self {
        Self::new(StabilizationConfig::default())
    }
}

impl HilbertEngine {
    pub fn new(config: StabilizationConfig) -> Self {
        Self::with_cache(config, Arc::new(SampleCache::new()))
    }

    pub fn with_cache(config: StabilizationConfig, cache: Arc<SampleCache>) -> Self {
        HilbertEngine { config, cache, memo: Mutex::new(HashMap::new()) }
    }

    pub fn config(&self) -> StabilizationConfig {
        self.config
    }

    pub fn cache(&self) -> &Arc<SampleCache> {
        &self.cache
    }

    /// `ℓ(R/I₁^{r₁}⋯I_g^{r_g})`; `rⱼ = 0` omits `Iⱼ`, and all-zero gives 0.
    pub fn sample_length(
        &self,
        ideals: &[MonomialIdeal],
        r: &[u32],
    ) -> Result<BigUint, HilbertError> {
        if ideals.len() != r.len() {
            return Err(HilbertError::LengthMismatch { ideals: ideals.len(), weights: r.len() });
        }
        let Some(first) = ideals.first() else {
            return Ok(BigUint::from(0u32));
        };
        let names: Vec<String> = ideals.iter().map(|i| i.to_string()).collect();
        let factors: Vec<(String, u32)> = names.into_iter().zip(r.iter().copied()).collect();
        if factors.iter().all(|(_, e)| *e == 0) {
            return Ok(BigUint::from(0u32));
        }
        let key = sample_key(first.ring(), &factors);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v);
        }
        let mut product: Option<MonomialIdeal> = None;
        for (ideal, &e) in ideals.iter().zip(r) {
            if e == 0 {
                continue;
            }
            let p = ideal.power(e)?;
            product = Some(match product {
                None => p,
                Some(acc) => acc.product(&p)?,
            });
        }
        let v = colength_of(&product.expect("some exponent is positive"))?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    /// `e(I₁^{[q₁]}|⋯|I_g^{[q_g]})` with `Σqⱼ = d`.
    ///
    /// Ideals of weight zero are dropped before sampling: the coefficient of
    /// `r^q` does not depend on them.
    pub fn mixed_multiplicity(&self, query: &MixedMultiplicityQuery) -> Result<BigUint, HilbertError> {
        let key = query.memo_key();
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let (ideals, weights): (Vec<&MonomialIdeal>, Vec<u32>) = query
            .ideals
            .iter()
            .zip(&query.weights)
            .filter(|(_, &w)| w > 0)
            .map(|(i, &w)| (i, w))
            .unzip();
        let mut sampler = Sampler::new(self, query.ring().clone(), ideals);
        let value = self.stabilized_difference(&mut sampler, &weights)?;
        self.memo.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    pub fn mixed(&self, ideals: &[MonomialIdeal], weights: &[u32]) -> Result<BigUint, HilbertError> {
        self.mixed_multiplicity(&MixedMultiplicityQuery::new(ideals.to_vec(), weights.to_vec())?)
    }

    /// `e(I)`.
    pub fn multiplicity(&self, ideal: &MonomialIdeal) -> Result<BigUint, HilbertError> {
        let d = ideal.ring().dim() as u32;
        self.mixed(std::slice::from_ref(ideal), &[d])
    }

    /// `e_q(I₁|I₂) = e(I₁^{[d-q]}|I₂^{[q]})` for `0 ≤ q ≤ d-1`.
    pub fn e_q_pair(
        &self,
        i1: &MonomialIdeal,
        i2: &MonomialIdeal,
        q: usize,
    ) -> Result<BigUint, HilbertError> {
        let d = i1.ring().dim();
        if q >= d {
            return Err(HilbertError::QOutOfRange { q, max: d - 1 });
        }
        self.mixed(&[i1.clone(), i2.clone()], &[(d - q) as u32, q as u32])
    }

    /// The raw difference `Δ^q ℓ` at the diagonal base point `(b, …, b)`,
    /// without any stabilization check. All ideals take part in sampling,
    /// including those of weight zero.
    pub fn difference_at(
        &self,
        ideals: &[MonomialIdeal],
        weights: &[u32],
        base: u32,
    ) -> Result<BigInt, HilbertError> {
        let query = MixedMultiplicityQuery::new(ideals.to_vec(), weights.to_vec())?;
        let mut sampler = Sampler::new(self, query.ring().clone(), query.ideals.iter().collect());
        let top: Vec<u32> = weights.iter().map(|w| base + w).collect();
        sampler.ensure(&top)?;
        sampler.difference(weights, base)
    }

    fn stabilized_difference(
        &self,
        sampler: &mut Sampler<'_>,
        weights: &[u32],
    ) -> Result<BigUint, HilbertError> {
        let window = self.config.window.max(1) as u32;
        let mut base = 1u32;
        let mut trail: Vec<BigInt> = Vec::new();
        // constant value of the previous level, if it was constant and b ≥ 2
        let mut settled: Option<BigInt> = None;
        loop {
            let top: Vec<u32> = weights.iter().map(|w| base + window - 1 + w).collect();
            sampler.ensure(&top)?;
            let vals = (0..window)
                .map(|w| sampler.difference(weights, base + w))
                .collect::<Result<Vec<_>, _>>()?;
            let constant = vals.windows(2).all(|p| p[0] == p[1]);
            if constant && settled.as_ref() == Some(&vals[0]) {
                let v = vals.into_iter().next().unwrap();
                if !v.is_positive() {
                    return Err(HilbertError::NonPositive(v));
                }
                return Ok(v.to_biguint().unwrap());
            }
            settled = (constant && base >= 2).then(|| vals[0].clone());
            trail.extend(vals);
            if base.saturating_mul(2) > self.config.cap {
                let n = trail.len();
                return Err(HilbertError::StabilizationFailure {
                    base,
                    previous: trail[n - 2].clone(),
                    last: trail[n - 1].clone(),
                });
            }
            base *= 2;
        }
    }
}

fn colength_of(ideal: &MonomialIdeal) -> Result<BigUint, HilbertError> {
    ideal.colength().finite().ok_or_else(|| HilbertError::NotMPrimary(ideal.to_string()))
}

/// Per-query state: the ideals being sampled and their cached powers.
struct Sampler<'a> {
    engine: &'a HilbertEngine,
    ring: Arc<Ring>,
    ideals: Vec<&'a MonomialIdeal>,
    names: Vec<String>,
    // powers[j][k] = ideals[j]^(k+1)
    powers: Vec<Vec<MonomialIdeal>>,
}

impl<'a> Sampler<'a> {
    fn new(engine: &'a HilbertEngine, ring: Arc<Ring>, ideals: Vec<&'a MonomialIdeal>) -> Self {
        let names = ideals.iter().map(|i| i.to_string()).collect();
        let powers = ideals.iter().map(|&i| vec![i.clone()]).collect();
        Sampler { engine, ring, ideals, names, powers }
    }

    fn ensure(&mut self, top: &[u32]) -> Result<(), LatticeError> {
        for (j, &t) in top.iter().enumerate() {
            while (self.powers[j].len() as u32) < t {
                let next = self.powers[j].last().unwrap().product(self.ideals[j])?;
                self.powers[j].push(next);
            }
        }
        Ok(())
    }

    fn sample(&self, r: &[u32]) -> Result<BigUint, HilbertError> {
        let factors: Vec<(String, u32)> =
            self.names.iter().cloned().zip(r.iter().copied()).collect();
        if r.iter().all(|&e| e == 0) {
            return Ok(BigUint::from(0u32));
        }
        let key = sample_key(&self.ring, &factors);
        if let Some(v) = self.engine.cache.get(&key) {
            return Ok(v);
        }
        let mut product: Option<MonomialIdeal> = None;
        for (j, &e) in r.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = &self.powers[j][e as usize - 1];
            product = Some(match product {
                None => p.clone(),
                Some(acc) => acc.product(p)?,
            });
        }
        let v = colength_of(&product.unwrap())?;
        self.engine.cache.insert(key, v.clone());
        Ok(v)
    }

    /// `Σ_ε (-1)^{|q|-|ε|} ∏ C(qⱼ, εⱼ) ℓ(b + ε)` over `0 ≤ εⱼ ≤ qⱼ`.
    fn difference(&self, weights: &[u32], base: u32) -> Result<BigInt, HilbertError> {
        let total: u32 = weights.iter().sum();
        let mut points: Vec<Vec<u32>> = vec![vec![]];
        for &q in weights {
            points = points
                .into_iter()
                .flat_map(|p| {
                    (0..=q).map(move |e| {
                        let mut p = p.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        let terms = points
            .par_iter()
            .map(|eps| {
                let r: Vec<u32> = eps.iter().map(|e| base + e).collect();
                let len = BigInt::from(self.sample(&r)?);
                let coeff: u64 =
                    weights.iter().zip(eps).map(|(&q, &e)| binomial(q as u64, e as u64)).product();
                let sign_negative = (total - eps.iter().sum::<u32>()) % 2 == 1;
                let term = len * BigInt::from(coeff);
                Ok(if sign_negative { -term } else { term })
            })
            .collect::<Result<Vec<BigInt>, HilbertError>>()?;
        Ok(terms.into_iter().sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s457() -> Arc<Ring> {
        Ring::numerical_semigroup(&[4, 5, 7]).unwrap()
    }

    fn poly2() -> (Arc<Ring>, MonomialIdeal, MonomialIdeal) {
        let r = Ring::polynomial_local(2).unwrap();
        let m = MonomialIdeal::maximal_ideal(&r);
        let i = MonomialIdeal::from_exponents(&r, &[&[1, 0], &[0, 2]]).unwrap();
        (r, m, i)
    }

    fn n(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn sample_length_examples() {
        let e = HilbertEngine::default();
        let (_, m, i) = poly2();
        assert_eq!(e.sample_length(&[m.clone(), i.clone()], &[1, 1]).unwrap(), n(4));
        assert_eq!(e.sample_length(&[m.clone(), i.clone()], &[0, 0]).unwrap(), n(0));
        let s = s457();
        let ms = MonomialIdeal::maximal_ideal(&s);
        assert_eq!(e.sample_length(&[ms], &[3]).unwrap(), n(8));
        assert_eq!(e.cache().len(), 2);
    }

    #[test]
    fn mixed_examples() {
        let e = HilbertEngine::default();
        let (_, m, i) = poly2();
        assert_eq!(e.mixed(&[m.clone(), i.clone()], &[1, 1]).unwrap(), n(1));
        assert_eq!(e.mixed(&[m.clone(), i.clone()], &[0, 2]).unwrap(), n(2));
        let ms = MonomialIdeal::maximal_ideal(&s457());
        assert_eq!(e.multiplicity(&ms).unwrap(), n(4));
    }

    #[test]
    fn multiplicity_examples() {
        let e = HilbertEngine::default();
        for d in 1..=3 {
            let r = Ring::polynomial_local(d).unwrap();
            assert_eq!(e.multiplicity(&MonomialIdeal::maximal_ideal(&r)).unwrap(), n(1));
        }
        let (_, m, _) = poly2();
        assert_eq!(e.multiplicity(&m.power(2).unwrap()).unwrap(), n(4));
    }

    #[test]
    fn e_q_pair_examples() {
        let e = HilbertEngine::default();
        let (_, m, i) = poly2();
        assert_eq!(e.e_q_pair(&m, &i, 1).unwrap(), n(1));
        assert_eq!(e.e_q_pair(&m.power(2).unwrap(), &i, 1).unwrap(), n(2));
        assert_eq!(e.e_q_pair(&m, &i, 0).unwrap(), e.multiplicity(&m).unwrap());
        assert!(matches!(e.e_q_pair(&m, &i, 2), Err(HilbertError::QOutOfRange { q: 2, max: 1 })));
        let s = s457();
        let i1 = MonomialIdeal::from_values(&s, &[4, 10]).unwrap();
        let m2 = MonomialIdeal::maximal_ideal(&s).power(2).unwrap();
        assert_eq!(e.e_q_pair(&i1, &m2, 0).unwrap(), n(4));
    }

    #[test]
    fn query_validation() {
        let (_, m, i) = poly2();
        assert!(matches!(
            MixedMultiplicityQuery::new(vec![m.clone(), i.clone()], vec![1, 2]),
            Err(HilbertError::WeightSum { expected: 2, got: 3 })
        ));
        assert!(matches!(
            MixedMultiplicityQuery::new(vec![m.clone()], vec![1, 1]),
            Err(HilbertError::LengthMismatch { .. })
        ));
        assert!(matches!(MixedMultiplicityQuery::new(vec![], vec![]), Err(HilbertError::EmptyQuery)));
        let xy = MonomialIdeal::from_exponents(m.ring(), &[&[1, 1]]).unwrap();
        assert!(matches!(
            MixedMultiplicityQuery::new(vec![xy], vec![2]),
            Err(HilbertError::NotMPrimary(_))
        ));
        let ms = MonomialIdeal::maximal_ideal(&s457());
        assert!(matches!(
            MixedMultiplicityQuery::new(vec![m, ms], vec![1, 1]),
            Err(HilbertError::Lattice(LatticeError::RingMismatch(..)))
        ));
    }

    #[test]
    fn stabilization_failure_reports_candidates() {
        // base point 1 only: first differences of 1,4,8 are 3 then 4
        let e = HilbertEngine::new(StabilizationConfig { window: 2, cap: 1 });
        let ms = MonomialIdeal::maximal_ideal(&s457());
        match e.multiplicity(&ms).unwrap_err() {
            HilbertError::StabilizationFailure { base, previous, last } => {
                assert_eq!((base, previous, last), (1, BigInt::from(3), BigInt::from(4)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transient_plateau_is_not_accepted() {
        // Δ at b = 1, 2, 3, 4.. reads 9, 9, 7, 3, 3, ..: e(𝔪^{[2]}|I^{[1]}) is the
        // least order of I, 3
        let r = Ring::polynomial_local(3).unwrap();
        let m = MonomialIdeal::maximal_ideal(&r);
        let i = MonomialIdeal::from_exponents(&r, &[&[3, 0, 0], &[0, 4, 0], &[0, 0, 3]]).unwrap();
        let e = HilbertEngine::default();
        let raw: Vec<BigInt> =
            (1..=4).map(|b| e.difference_at(&[m.clone(), i.clone()], &[2, 1], b).unwrap()).collect();
        assert_eq!(raw, [9, 9, 7, 3].map(BigInt::from));
        assert_eq!(e.e_q_pair(&m, &i, 1).unwrap(), n(3));
    }

    #[test]
    fn raw_difference_includes_zero_weights() {
        let e = HilbertEngine::default();
        let (_, m, i) = poly2();
        for b in 2..5 {
            assert_eq!(e.difference_at(&[m.clone(), i.clone()], &[2, 0], b).unwrap(), BigInt::from(1));
        }
    }
}
