use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::{
    check_equation_strict_g3, check_isw, check_kv2, check_necessary_conditions_g2, check_nog,
    check_scaling,
};
use super::{CheckResult, CheckStatus, TheoremError};
use crate::hilbert::HilbertEngine;
use crate::lattice::{Monomial, MonomialIdeal, Ring};
use crate::rees::ReesInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingFamily {
    Polynomial,
    Semigroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Nog,
    Kv2,
    Isw,
    Scaling,
    G3,
    G2,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] =
        [CheckKind::Nog, CheckKind::Kv2, CheckKind::Isw, CheckKind::Scaling, CheckKind::G3, CheckKind::G2];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Nog => "nog",
            CheckKind::Kv2 => "kv2",
            CheckKind::Isw => "isw",
            CheckKind::Scaling => "scaling",
            CheckKind::G3 => "g3",
            CheckKind::G2 => "g2",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown theorem {s:?}; expected one of nog, kv2, isw, scaling, g3, g2"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreConfig {
    pub family: RingFamily,
    pub d: usize,
    pub g: usize,
    /// Inclusive range for the number of random generators per ideal.
    pub gen_count: (usize, usize),
    pub exponent_bound: u32,
    pub trials: u32,
    pub seed: u64,
    pub checks: Vec<CheckKind>,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        Self {
            family: RingFamily::Polynomial,
            d: 2,
            g: 2,
            gen_count: (1, 3),
            exponent_bound: 4,
            trials: 100,
            seed: 0,
            checks: CheckKind::ALL.to_vec(),
        }
    }
}

// keeps random instances at desk scale
const MAX_EXPLORE_DIM: usize = 4;
const MAX_EXPLORE_G: usize = 4;
const MAX_EXPLORE_BOUND: u32 = 12;
const MAX_EXPLORE_GENS: usize = 8;

impl ExploreConfig {
    pub fn validate(&self) -> Result<(), TheoremError> {
        let bad = |m: String| Err(TheoremError::InvalidArgument(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.d == 0 || self.d > MAX_EXPLORE_DIM {
            return bad(format!("d must be in 1..={MAX_EXPLORE_DIM}"));
        }
        if self.g == 0 || self.g > MAX_EXPLORE_G {
            return bad(format!("g must be in 1..={MAX_EXPLORE_G}"));
        }
        if self.family == RingFamily::Semigroup && self.d != 1 {
            return bad("semigroup rings have dimension 1".into());
        }
        let (lo, hi) = self.gen_count;
        if lo == 0 || lo > hi || hi > MAX_EXPLORE_GENS {
            return bad(format!("generator count range must satisfy 1 <= lo <= hi <= {MAX_EXPLORE_GENS}"));
        }
        if self.exponent_bound == 0 || self.exponent_bound > MAX_EXPLORE_BOUND {
            return bad(format!("exponent bound must be in 1..={MAX_EXPLORE_BOUND}"));
        }
        if self.checks.is_empty() {
            return bad("select at least one check".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub vacuous: usize,
    pub unknown: usize,
    pub violations: usize,
    pub stabilization_failures: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreSummary {
    pub config: ExploreConfig,
    /// Per checker name.
    pub tallies: BTreeMap<String, Tally>,
    /// Violated checks, sorted by instance then name.
    pub violations: Vec<CheckResult>,
    /// Unexpected (non-stabilization) errors, sorted; each is a bug witness.
    pub errors: Vec<String>,
}

impl ExploreSummary {
    pub fn total_violations(&self) -> usize {
        self.violations.len() + self.errors.len()
    }

    pub fn stabilization_failures(&self) -> usize {
        self.tallies.values().map(|t| t.stabilization_failures).sum()
    }
}

type TrialOutcome = Vec<(CheckKind, Result<Vec<CheckResult>, TheoremError>)>;

struct Trial {
    ideals: Vec<MonomialIdeal>,
    composition: Vec<u32>,
    r: u32,
    q: usize,
}

/// Generates `trials` random instances from a seeded ChaCha stream, runs the
/// selected checkers on each and aggregates. Instance generation is
/// sequential, evaluation parallel; output is identical for identical
/// configs.
pub fn explore_random(
    engine: &HilbertEngine,
    config: &ExploreConfig,
) -> Result<ExploreSummary, TheoremError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let trials = (0..config.trials)
        .map(|_| random_trial(&mut rng, config))
        .collect::<Result<Vec<_>, _>>()?;

    let outcomes: Vec<TrialOutcome> =
        trials.par_iter().map(|t| run_trial(engine, config, t)).collect();

    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut errors = Vec::new();
    for (kind, outcome) in outcomes.into_iter().flatten() {
        match outcome {
            Ok(results) => {
                for r in results {
                    let t = tallies.entry(r.name.clone()).or_default();
                    match r.status {
                        CheckStatus::Checked => t.checked += 1,
                        CheckStatus::Vacuous => t.vacuous += 1,
                        CheckStatus::Unknown => t.unknown += 1,
                    }
                    if r.is_violation() || !r.consistent() {
                        t.violations += 1;
                        violations.push(r);
                    }
                }
            }
            Err(e) => {
                let t = tallies.entry(kind.name().to_string()).or_default();
                if e.is_stabilization_failure() {
                    t.stabilization_failures += 1;
                } else {
                    t.errors += 1;
                    errors.push(format!("{kind}: {e}"));
                }
            }
        }
    }
    violations.sort_by(|a, b| (&a.instance, &a.name).cmp(&(&b.instance, &b.name)));
    errors.sort();
    Ok(ExploreSummary { config: config.clone(), tallies, violations, errors })
}

fn run_trial(
    engine: &HilbertEngine,
    config: &ExploreConfig,
    trial: &Trial,
) -> Vec<(CheckKind, Result<Vec<CheckResult>, TheoremError>)> {
    let mut out = Vec::new();
    let ideals = &trial.ideals;
    let g = ideals.len();
    for &kind in &config.checks {
        let result = match kind {
            CheckKind::Nog => ideals.iter().map(|i| check_nog(engine, i)).collect(),
            CheckKind::Kv2 => check_kv2(engine, ideals, &trial.composition).map(|r| vec![r]),
            CheckKind::Isw => isw_for(engine, ideals).map(|r| vec![r]),
            CheckKind::Scaling => check_scaling(engine, &ideals[0], trial.r, trial.q),
            CheckKind::G3 if g >= 3 => ReesInstance::new(ideals.clone())
                .map_err(TheoremError::from)
                .and_then(|inst| check_equation_strict_g3(engine, &inst))
                .map(|r| vec![r]),
            CheckKind::G2 if g == 2 => ReesInstance::new(ideals.clone())
                .map_err(TheoremError::from)
                .and_then(|inst| check_necessary_conditions_g2(engine, &inst)),
            CheckKind::G3 | CheckKind::G2 => continue,
        };
        out.push((kind, result));
    }
    out
}

// d ideals taken cyclically from the instance, each paired with a monomial
// making up a system of parameters: the least pure power of the matching
// variable (polynomial rings) or the least generator (dimension one)
fn isw_for(engine: &HilbertEngine, ideals: &[MonomialIdeal]) -> Result<CheckResult, TheoremError> {
    let ring = ideals[0].ring();
    let d = ring.dim();
    let chosen: Vec<MonomialIdeal> = (0..d).map(|i| ideals[i % ideals.len()].clone()).collect();
    let elements = chosen
        .iter()
        .enumerate()
        .map(|(i, ideal)| {
            if ring.semigroup().is_some() || d == 1 {
                ideal.gens().iter().min_by_key(|m| m.total_degree()).cloned()
            } else {
                ideal
                    .gens()
                    .iter()
                    .filter_map(|m| m.as_pure_power().filter(|(v, _)| *v == i).map(|(_, e)| e))
                    .min()
                    .map(|e| Monomial::pure_power(d, i, e))
            }
            .expect("m-primary ideals contain pure powers")
        })
        .collect::<Vec<_>>();
    check_isw(engine, &chosen, &elements)
}

fn random_trial(rng: &mut ChaCha8Rng, config: &ExploreConfig) -> Result<Trial, TheoremError> {
    let ring = match config.family {
        RingFamily::Polynomial => Ring::polynomial_local(config.d)?,
        RingFamily::Semigroup => random_semigroup(rng)?,
    };
    let ideals = (0..config.g)
        .map(|_| random_ideal(rng, &ring, config))
        .collect::<Result<Vec<_>, _>>()?;
    let composition = random_composition(rng, config.d - 1, config.g);
    let r = rng.random_range(1..=3);
    let q = rng.random_range(0..config.d);
    Ok(Trial { ideals, composition, r, q })
}

fn random_semigroup(rng: &mut ChaCha8Rng) -> Result<Arc<Ring>, TheoremError> {
    loop {
        let k = rng.random_range(2..=3);
        let gens: Vec<u32> = (0..k).map(|_| rng.random_range(2..=9)).collect();
        if gens.iter().fold(0u32, |a, &b| a.gcd(&b)) == 1 {
            return Ok(Ring::numerical_semigroup(&gens)?);
        }
    }
}

fn random_ideal(
    rng: &mut ChaCha8Rng,
    ring: &Arc<Ring>,
    config: &ExploreConfig,
) -> Result<MonomialIdeal, TheoremError> {
    let k = rng.random_range(config.gen_count.0..=config.gen_count.1);
    let bound = config.exponent_bound;
    let gens: Vec<Monomial> = match ring.semigroup() {
        Some(s) => {
            // nonzero semigroup elements up to bound · multiplicity
            let top = bound * s.multiplicity();
            let pool: Vec<u32> = (1..=top).filter(|&v| s.contains(v as u64)).collect();
            (0..k).map(|_| Monomial::value(pool[rng.random_range(0..pool.len())])).collect()
        }
        None => {
            let d = ring.dim();
            let mut gens: Vec<Monomial> = Vec::with_capacity(k + d);
            while gens.len() < k {
                let e: Vec<u32> = (0..d).map(|_| rng.random_range(0..=bound)).collect();
                if e.iter().any(|&x| x > 0) {
                    gens.push(Monomial::new(e));
                }
            }
            // pure powers force m-primariness
            for i in 0..d {
                gens.push(Monomial::pure_power(d, i, rng.random_range(1..=bound)));
            }
            gens
        }
    };
    Ok(MonomialIdeal::from_gens(ring, gens)?)
}

fn random_composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<u32> {
    let mut comp = vec![0u32; parts];
    for _ in 0..total {
        comp[rng.random_range(0..parts)] += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        let eng = HilbertEngine::default();
        let cfg = ExploreConfig { trials: 0, ..ExploreConfig::default() };
        assert!(explore_random(&eng, &cfg).is_err());
        let cfg = ExploreConfig { family: RingFamily::Semigroup, d: 2, ..ExploreConfig::default() };
        assert!(explore_random(&eng, &cfg).is_err());
    }

    #[test]
    fn plane_pairs_are_clean_and_deterministic() {
        let eng = HilbertEngine::default();
        let cfg = ExploreConfig { d: 2, g: 2, trials: 20, seed: 42, ..ExploreConfig::default() };
        let a = explore_random(&eng, &cfg).unwrap();
        assert_eq!(a.total_violations(), 0, "{:?} {:?}", a.violations, a.errors);
        let b = explore_random(&HilbertEngine::default(), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.tallies["nog"].checked >= 40);
    }

    #[test]
    fn semigroup_triples_are_clean() {
        let eng = HilbertEngine::default();
        let cfg = ExploreConfig {
            family: RingFamily::Semigroup,
            d: 1,
            g: 3,
            trials: 20,
            seed: 7,
            ..ExploreConfig::default()
        };
        let s = explore_random(&eng, &cfg).unwrap();
        assert_eq!(s.total_violations(), 0, "{:?} {:?}", s.violations, s.errors);
        assert_eq!(s.tallies["g3"].checked, 20);
    }

    #[test]
    fn check_names_parse() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert!("bogus".parse::<CheckKind>().is_err());
    }
}
