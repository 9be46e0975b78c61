use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::{CheckMode, CheckResult, Relation, TheoremError};
use crate::hilbert::HilbertEngine;
use crate::lattice::{Monomial, MonomialIdeal};
use crate::rees::{joint_reduction_check, reduction_number_dim1, ReesInstance};

const JOINT_REDUCTION_NMAX: u32 = 20;

fn int(v: impl Into<BigUint>) -> BigInt {
    BigInt::from(v.into())
}

fn require_m_primary(i: &MonomialIdeal) -> Result<(), TheoremError> {
    if i.is_m_primary() {
        Ok(())
    } else {
        Err(TheoremError::NotMPrimary(i.to_string()))
    }
}

fn require_family(ideals: &[MonomialIdeal]) -> Result<(), TheoremError> {
    let first = ideals
        .first()
        .ok_or_else(|| TheoremError::InvalidArgument("at least one ideal is required".into()))?;
    for i in ideals {
        if **i.ring() != **first.ring() {
            return Err(TheoremError::InvalidArgument(format!(
                "ideals live in different rings: {} and {}",
                first.ring(),
                i.ring()
            )));
        }
        require_m_primary(i)?;
    }
    Ok(())
}

fn describe(ideals: &[MonomialIdeal]) -> String {
    let mut s = ideals.first().map(|i| i.ring().to_string()).unwrap_or_default();
    for (j, i) in ideals.iter().enumerate() {
        s.push_str(&format!("; I{}={i}", j + 1));
    }
    s
}

/// `μ(I) ≤ e_{d−1}(𝔪|I) + d − 1`.
pub fn check_nog(engine: &HilbertEngine, i: &MonomialIdeal) -> Result<CheckResult, TheoremError> {
    require_m_primary(i)?;
    let d = i.ring().dim();
    let m = MonomialIdeal::maximal_ideal(i.ring());
    let rhs = int(engine.e_q_pair(&m, i, d - 1)?) + (d - 1);
    Ok(CheckResult::checked(
        "nog",
        &describe(std::slice::from_ref(i)),
        CheckMode::Inequality,
        BigInt::from(i.mu()),
        Relation::Le,
        rhs,
    ))
}

/// `e(I₁^{[q₁+1]}|I₂^{[q₂]}|⋯|I_g^{[q_g]}) ≥ e(I₁ + ⋯ + I_g)` for `Σqⱼ = d − 1`.
pub fn check_kv2(
    engine: &HilbertEngine,
    ideals: &[MonomialIdeal],
    q: &[u32],
) -> Result<CheckResult, TheoremError> {
    require_family(ideals)?;
    let d = ideals[0].ring().dim();
    if q.len() != ideals.len() {
        return Err(TheoremError::InvalidArgument(format!(
            "composition has {} parts for {} ideals",
            q.len(),
            ideals.len()
        )));
    }
    if q.iter().map(|&x| x as usize).sum::<usize>() != d - 1 {
        return Err(TheoremError::InvalidArgument(format!("composition must sum to d - 1 = {}", d - 1)));
    }
    let mut weights = q.to_vec();
    weights[0] += 1;
    let lhs = engine.mixed(ideals, &weights)?;
    let mut sum = ideals[0].clone();
    for i in &ideals[1..] {
        sum = sum.sum(i)?;
    }
    let rhs = engine.multiplicity(&sum)?;
    let q_txt: Vec<String> = q.iter().map(u32::to_string).collect();
    Ok(CheckResult::checked(
        "kv2",
        &format!("{}; q=({})", describe(ideals), q_txt.join(",")),
        CheckMode::Inequality,
        int(lhs),
        Relation::Ge,
        int(rhs),
    ))
}

/// `e(I₁|⋯|I_d) ≤ e(x₁,…,x_d)` for `xᵢ ∈ Iᵢ` generating an m-primary ideal.
/// On equality, whether the elements form a joint reduction is reported in
/// the note (the converse direction, informational only).
pub fn check_isw(
    engine: &HilbertEngine,
    ideals: &[MonomialIdeal],
    elements: &[Monomial],
) -> Result<CheckResult, TheoremError> {
    require_family(ideals)?;
    let ring = ideals[0].ring().clone();
    let d = ring.dim();
    if ideals.len() != d || elements.len() != d {
        return Err(TheoremError::InvalidArgument(format!(
            "need exactly d = {d} ideals and elements, got {} and {}",
            ideals.len(),
            elements.len()
        )));
    }
    for (x, i) in elements.iter().zip(ideals) {
        if x.arity() != ring.arity() || !i.contains(x) {
            return Err(TheoremError::ElementNotInIdeal {
                element: x.render(ring.kind()),
                ideal: i.to_string(),
            });
        }
    }
    let rendered: Vec<String> = elements.iter().map(|x| x.render(ring.kind())).collect();
    let rendered = rendered.join(",");
    let params = MonomialIdeal::from_gens(&ring, elements.to_vec())?;
    if !params.is_m_primary() {
        return Err(TheoremError::NotParameterSystem(rendered));
    }
    let lhs = int(engine.mixed(ideals, &vec![1; d])?);
    let rhs = int(engine.multiplicity(&params)?);
    let equal = lhs == rhs;
    let mut result = CheckResult::checked(
        "isw",
        &format!("{}; x=({rendered})", describe(ideals)),
        CheckMode::Inequality,
        lhs,
        Relation::Le,
        rhs,
    );
    if equal {
        let inst = ReesInstance::new(ideals.to_vec())?;
        let joint = joint_reduction_check(elements, &inst, JOINT_REDUCTION_NMAX)?;
        result = result.with_note(if joint {
            "equality; elements form a joint reduction"
        } else {
            "equality; no joint reduction witnessed"
        });
    }
    Ok(result)
}

/// `e(𝔪^r) = r^d e(𝔪)` and `e_q(𝔪^r|I) = r^{d−q} e_q(𝔪|I)`.
pub fn check_scaling(
    engine: &HilbertEngine,
    i: &MonomialIdeal,
    r: u32,
    q: usize,
) -> Result<Vec<CheckResult>, TheoremError> {
    require_m_primary(i)?;
    let ring = i.ring();
    let d = ring.dim();
    if r == 0 {
        return Err(TheoremError::InvalidArgument("r must be at least 1".into()));
    }
    if q >= d {
        return Err(TheoremError::InvalidArgument(format!("q must be at most d - 1 = {}", d - 1)));
    }
    let m = MonomialIdeal::maximal_ideal(ring);
    let mr = m.power(r)?;
    let inst = format!("{}; r={r}; q={q}", describe(std::slice::from_ref(i)));
    let rb = BigInt::from(r);
    let power = CheckResult::checked(
        "scaling.power",
        &inst,
        CheckMode::Equality,
        int(engine.multiplicity(&mr)?),
        Relation::Eq,
        Pow::pow(&rb, d as u32) * int(engine.multiplicity(&m)?),
    );
    let mixed = CheckResult::checked(
        "scaling.mixed",
        &inst,
        CheckMode::Equality,
        int(engine.e_q_pair(&mr, i, q)?),
        Relation::Eq,
        Pow::pow(&rb, (d - q) as u32) * int(engine.e_q_pair(&m, i, q)?),
    );
    Ok(vec![power, mixed])
}

/// For `g ≥ 3`: `e(𝒩) > μ(𝒩) − dim ℬ + 1`, so the minimal-multiplicity
/// equation must fail.
pub fn check_equation_strict_g3(
    engine: &HilbertEngine,
    instance: &ReesInstance,
) -> Result<CheckResult, TheoremError> {
    if instance.g() < 3 {
        return Err(TheoremError::InvalidArgument(format!("needs g >= 3, got {}", instance.g())));
    }
    let lhs = int(instance.e_n_formula(engine)?);
    let rhs = int(instance.mu_n()?) - instance.rees_dim() + 1;
    Ok(CheckResult::checked(
        "g3",
        &instance.to_string(),
        CheckMode::Inequality,
        lhs,
        Relation::Gt,
        rhs,
    ))
}

// Collects implication results: checked when the hypothesis holds, vacuous
// otherwise.
struct Implications<'a> {
    instance: String,
    active: bool,
    engine: &'a HilbertEngine,
    out: Vec<CheckResult>,
}

impl Implications<'_> {
    fn push(
        &mut self,
        name: &str,
        relation: Relation,
        sides: impl FnOnce(&HilbertEngine) -> Result<(BigInt, BigInt), TheoremError>,
    ) -> Result<(), TheoremError> {
        let r = if self.active {
            let (l, r) = sides(self.engine)?;
            CheckResult::checked(name, &self.instance, CheckMode::Implication, l, relation, r)
        } else {
            CheckResult::vacuous(name, &self.instance, CheckMode::Implication, relation)
        };
        self.out.push(r);
        Ok(())
    }

    fn vacuous(&mut self, name: &str, relation: Relation, note: &str) {
        self.out.push(
            CheckResult::vacuous(name, &self.instance, CheckMode::Implication, relation).with_note(note),
        );
    }

    fn unknown(&mut self, name: &str, relation: Relation, note: &str) {
        self.out.push(
            CheckResult::unknown(name, &self.instance, CheckMode::Implication, relation).with_note(note),
        );
    }
}

/// Consequences of the minimal-multiplicity equation for `g = 2`. When the
/// equation fails every result is vacuous.
pub fn check_necessary_conditions_g2(
    engine: &HilbertEngine,
    instance: &ReesInstance,
) -> Result<Vec<CheckResult>, TheoremError> {
    if instance.g() != 2 {
        return Err(TheoremError::InvalidArgument(format!("needs g = 2, got {}", instance.g())));
    }
    let d = instance.d();
    let e_n = int(instance.e_n_formula(engine)?);
    let bound = int(instance.mu_n()?) - instance.rees_dim() + 1;
    let m = instance.maximal_ideal().clone();
    let l = instance.l().clone();
    let ell = int(MonomialIdeal::length_quotient(&m.power(2)?, &l)?);
    let mut imp = Implications {
        instance: instance.to_string(),
        active: e_n == bound,
        engine,
        out: Vec::new(),
    };

    imp.push("g2.length_positive", Relation::Gt, |_| Ok((ell.clone(), BigInt::zero())))?;
    if d >= 3 {
        imp.push("g2.length_equals_d", Relation::Eq, |_| Ok((ell.clone(), BigInt::from(d))))?;
        imp.push("g2.regular", Relation::Eq, |e| Ok((int(e.multiplicity(&m)?), BigInt::one())))?;
    } else if d == 2 {
        imp.push("g2.length_at_most_d", Relation::Le, |_| Ok((ell.clone(), BigInt::from(d))))?;
    }
    let ell_is_two = ell == BigInt::from(2);
    if d == 2 && !ell_is_two {
        imp.vacuous("g2.minimal_multiplicity", Relation::Eq, "requires l(L/m^2) = 2");
    } else if d == 2 {
        imp.push("g2.minimal_multiplicity", Relation::Eq, |e| {
            Ok((int(e.multiplicity(&m)?), BigInt::from(m.mu()) - 1))
        })?;
    }
    for (name, ideal) in instance.names().iter().zip(instance.ideals()) {
        let gens_name = format!("g2.generators.{name}");
        if d >= 3 || (d == 2 && ell_is_two) {
            imp.push(&gens_name, Relation::Eq, |e| {
                Ok((BigInt::from(ideal.mu()), int(e.e_q_pair(&m, ideal, d - 1)?) + (d - 1)))
            })?;
        } else if d == 2 {
            imp.vacuous(&gens_name, Relation::Eq, "requires l(L/m^2) = 2");
        }
        if d >= 3 {
            for q in 0..=d - 2 {
                imp.push(&format!("g2.mixed_L.{name}.q{q}"), Relation::Eq, |e| {
                    Ok((int(e.e_q_pair(&l, ideal, q)?), BigInt::one()))
                })?;
            }
        }
        let red_name = format!("g2.reduction.{name}");
        if d == 1 {
            imp.push(&red_name, Relation::Le, |_| {
                Ok((BigInt::from(reduction_number_dim1(ideal)?), BigInt::one()))
            })?;
        } else if imp.active {
            imp.unknown(&red_name, Relation::Le, "r(I) is not computable exactly for d >= 2");
        } else {
            imp.vacuous(&red_name, Relation::Le, "");
        }
    }
    Ok(imp.out)
}
