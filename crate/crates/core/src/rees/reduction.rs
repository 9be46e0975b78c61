use crate::lattice::{LatticeError, Monomial, MonomialIdeal};

use super::{ReesError, ReesInstance};

/// Safety cap for the dimension-one search, which always terminates well
/// before it for admissible rings.
const DIM1_SEARCH_CAP: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionNumber {
    Exact(u32),
    NotReduction,
}

/// `r_J(I) = min{n ≥ 0 : J·Iⁿ = Iⁿ⁺¹}`, searched up to `n_max`.
pub fn reduction_number_monomial(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    n_max: u32,
) -> Result<ReductionNumber, ReesError> {
    if !j.is_subideal(i)? {
        return Err(LatticeError::NotContained { inner: j.to_string(), outer: i.to_string() }.into());
    }
    // a reduction of an m-primary ideal is itself m-primary
    if !j.is_m_primary() || !i.is_m_primary() {
        return Ok(ReductionNumber::NotReduction);
    }
    Ok(match first_stable(j, i, n_max)? {
        Some(n) => ReductionNumber::Exact(n),
        None => ReductionNumber::NotReduction,
    })
}

// smallest n ≤ n_max with k·pⁿ = pⁿ⁺¹ (k ⊆ p), where p⁰·k means k itself
fn first_stable(k: &MonomialIdeal, p: &MonomialIdeal, n_max: u32) -> Result<Option<u32>, LatticeError> {
    if k == p {
        return Ok(Some(0));
    }
    let mut pn = p.clone();
    for n in 1..=n_max {
        let next = pn.product(p)?;
        if k.product(&pn)? == next {
            return Ok(Some(n));
        }
        pn = next;
    }
    Ok(None)
}

/// `r(I)` in a one-dimensional ring: the principal ideal of the generator of
/// least value (least degree for `k[x]`) is a minimal reduction.
pub fn reduction_number_dim1(i: &MonomialIdeal) -> Result<u32, ReesError> {
    let ring = i.ring();
    if ring.dim() != 1 {
        return Err(ReesError::NotOneDimensional(ring.dim()));
    }
    let least = i.gens().iter().min_by_key(|m| m.total_degree()).expect("ideals are nonempty");
    let j = MonomialIdeal::from_gens(ring, vec![least.clone()])?;
    first_stable(&j, i, DIM1_SEARCH_CAP)?.ok_or(ReesError::ReductionSearchExhausted(DIM1_SEARCH_CAP))
}

/// Whether `K = Σⱼ xⱼ·∏_{k≠j} I_k` is a reduction of `P = ∏ⱼ Iⱼ`, i.e. the
/// monomials `x₁,…,x_g` form a joint reduction of the instance's ideals.
/// Reports `false` when no `n ≤ n_max` witnesses `K·Pⁿ = Pⁿ⁺¹`.
pub fn joint_reduction_check(
    elements: &[Monomial],
    instance: &ReesInstance,
    n_max: u32,
) -> Result<bool, ReesError> {
    let ideals = instance.ideals();
    if elements.len() != ideals.len() {
        return Err(ReesError::ElementCount { expected: ideals.len(), got: elements.len() });
    }
    let kind = instance.ring().kind();
    for (x, ideal) in elements.iter().zip(ideals) {
        if x.arity() != instance.ring().arity() || !ideal.contains(x) {
            return Err(ReesError::ElementNotInIdeal {
                element: x.render(kind),
                ideal: ideal.to_string(),
            });
        }
    }
    let mut k: Option<MonomialIdeal> = None;
    for (j, x) in elements.iter().enumerate() {
        let mut term = MonomialIdeal::from_gens(instance.ring(), vec![x.clone()])?;
        for (l, ideal) in ideals.iter().enumerate() {
            if l != j {
                term = term.product(ideal)?;
            }
        }
        k = Some(match k {
            None => term,
            Some(acc) => acc.sum(&term)?,
        });
    }
    let k = k.expect("at least one ideal");
    if !k.is_m_primary() {
        return Ok(false);
    }
    let mut p = ideals[0].clone();
    for ideal in &ideals[1..] {
        p = p.product(ideal)?;
    }
    Ok(first_stable(&k, &p, n_max)?.is_some())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::Ring;

    fn sg() -> Arc<Ring> {
        Ring::numerical_semigroup(&[4, 5, 7]).unwrap()
    }

    #[test]
    fn semigroup_reduction_numbers() {
        let r = sg();
        let m = MonomialIdeal::maximal_ideal(&r);
        let j = MonomialIdeal::from_values(&r, &[4]).unwrap();
        assert_eq!(reduction_number_monomial(&m, &j, 20).unwrap(), ReductionNumber::Exact(2));
        let i = MonomialIdeal::from_values(&r, &[4, 10]).unwrap();
        assert_eq!(reduction_number_monomial(&i, &j, 20).unwrap(), ReductionNumber::Exact(1));
        assert_eq!(reduction_number_dim1(&i).unwrap(), 1);
        assert_eq!(reduction_number_dim1(&m.power(2).unwrap()).unwrap(), 1);
        assert_eq!(reduction_number_dim1(&j).unwrap(), 0);
        assert_eq!(reduction_number_dim1(&m).unwrap(), 2);
    }

    #[test]
    fn non_reductions() {
        let r = Ring::polynomial_local(2).unwrap();
        let m = MonomialIdeal::maximal_ideal(&r);
        let x = MonomialIdeal::from_exponents(&r, &[&[1, 0]]).unwrap();
        assert_eq!(reduction_number_monomial(&m, &x, 20).unwrap(), ReductionNumber::NotReduction);
        assert!(matches!(
            reduction_number_monomial(&x, &m, 20).unwrap_err(),
            ReesError::Lattice(LatticeError::NotContained { .. })
        ));
        assert_eq!(reduction_number_dim1(&m).unwrap_err(), ReesError::NotOneDimensional(2));
        // a proper m-primary subideal can still fail to be a reduction
        let m2 = m.power(2).unwrap();
        let sq = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(reduction_number_monomial(&m2, &sq, 10).unwrap(), ReductionNumber::Exact(1));
        let thin = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(reduction_number_monomial(&m2, &thin, 10).unwrap(), ReductionNumber::NotReduction);
    }

    #[test]
    fn polynomial_dim1() {
        let r = Ring::polynomial_local(1).unwrap();
        let i = MonomialIdeal::from_exponents(&r, &[&[3]]).unwrap();
        assert_eq!(reduction_number_dim1(&i).unwrap(), 0);
    }

    #[test]
    fn joint_reductions() {
        let r = Ring::polynomial_local(2).unwrap();
        let m = MonomialIdeal::maximal_ideal(&r);
        let inst = ReesInstance::new(vec![m.clone(), m]).unwrap();
        let x = Monomial::new(vec![1, 0]);
        let y = Monomial::new(vec![0, 1]);
        assert!(joint_reduction_check(&[x.clone(), y.clone()], &inst, 20).unwrap());
        assert!(!joint_reduction_check(&[y.clone(), y.clone()], &inst, 20).unwrap());
        assert!(matches!(
            joint_reduction_check(&[Monomial::new(vec![0, 0]), y], &inst, 20).unwrap_err(),
            ReesError::ElementNotInIdeal { .. }
        ));

        let s = sg();
        let i1 = MonomialIdeal::from_values(&s, &[4, 10]).unwrap();
        let i2 = MonomialIdeal::maximal_ideal(&s).power(2).unwrap();
        let inst = ReesInstance::new(vec![i1, i2]).unwrap();
        let els = [Monomial::value(4), Monomial::value(8)];
        assert!(joint_reduction_check(&els, &inst, 20).unwrap());
    }
}
