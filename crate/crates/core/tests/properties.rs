//! Structural invariants of the lattice layer, the engine, the Rees analyzer
//! and the checkers, as property tests.

mod common;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use proptest::prelude::*;
use reesmult::hilbert::HilbertEngine;
use reesmult::lattice::{MonomialIdeal, Ring};
use reesmult::rees::{e_n_direct, mu_n_direct, GradedPowers, OracleConfig, Piece, ReesError, ReesInstance};
use reesmult::theorems::{
    check_equation_strict_g3, check_necessary_conditions_g2, check_nog, explore_random, CheckKind, ExploreConfig,
    RingFamily,
};

use common::{desk_rings, ideal_in, plane, small_instance};

fn ring_and_two_ideals() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    prop::sample::select(desk_rings()).prop_flat_map(|r| (ideal_in(r.clone(), 4), ideal_in(r, 4)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_is_idempotent((i, _) in ring_and_two_ideals()) {
        let again = MonomialIdeal::from_gens(i.ring(), i.gens().to_vec()).unwrap();
        prop_assert_eq!(again, i);
    }

    #[test]
    fn colength_is_monotone((i, j) in ring_and_two_ideals()) {
        let s = i.sum(&j).unwrap();
        let li = i.colength().finite().unwrap();
        let ls = s.colength().finite().unwrap();
        prop_assert!(li >= ls);
        if s != i {
            prop_assert!(li > ls);
        }
        let p = i.product(&j).unwrap();
        prop_assert!(p.is_subideal(&i).unwrap());
        prop_assert!(p.colength().finite().unwrap() > li);
    }

    #[test]
    fn powers_add((i, _) in ring_and_two_ideals(), a in 1u32..4, b in 1u32..4) {
        prop_assert_eq!(i.power(a + b).unwrap(), i.power(a).unwrap().product(&i.power(b).unwrap()).unwrap());
    }

    #[test]
    fn product_is_commutative_and_associative((i, j) in ring_and_two_ideals()) {
        let k = MonomialIdeal::maximal_ideal(i.ring()).sum(&j).unwrap();
        prop_assert_eq!(i.product(&j).unwrap(), j.product(&i).unwrap());
        prop_assert_eq!(
            i.product(&j).unwrap().product(&k).unwrap(),
            i.product(&j.product(&k).unwrap()).unwrap()
        );
    }

    #[test]
    fn length_quotients_add((i, j) in ring_and_two_ideals()) {
        let mid = i.product(&j).unwrap();
        let low = mid.product(&MonomialIdeal::maximal_ideal(i.ring())).unwrap();
        let whole = MonomialIdeal::length_quotient(&low, &i).unwrap();
        let parts = MonomialIdeal::length_quotient(&mid, &i).unwrap()
            + MonomialIdeal::length_quotient(&low, &mid).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn mixed_is_permutation_equivariant((i, j) in ring_and_two_ideals(), w in 0u32..3) {
        let d = i.ring().dim() as u32;
        prop_assume!(w <= d);
        let eng = HilbertEngine::default();
        prop_assert_eq!(
            eng.mixed(&[i.clone(), j.clone()], &[w, d - w]).unwrap(),
            eng.mixed(&[j, i], &[d - w, w]).unwrap()
        );
    }

    #[test]
    fn degenerate_weights_give_multiplicity((i, j) in ring_and_two_ideals()) {
        let d = i.ring().dim() as u32;
        let eng = HilbertEngine::default();
        prop_assert_eq!(eng.mixed(&[i.clone(), j], &[d, 0]).unwrap(), eng.multiplicity(&i).unwrap());
    }

    #[test]
    fn scaling_laws((i, _) in ring_and_two_ideals(), r in 1u32..4) {
        let ring = i.ring();
        let d = ring.dim();
        let m = MonomialIdeal::maximal_ideal(ring);
        let mr = m.power(r).unwrap();
        let eng = HilbertEngine::default();
        prop_assert_eq!(eng.multiplicity(&mr).unwrap(), eng.multiplicity(&m).unwrap() * BigUint::from(r).pow(d as u32));
        for q in 0..d {
            prop_assert_eq!(
                eng.e_q_pair(&mr, &i, q).unwrap(),
                eng.e_q_pair(&m, &i, q).unwrap() * BigUint::from(r).pow((d - q) as u32)
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn formula_agrees_with_graded_oracle(inst in small_instance()) {
        let eng = HilbertEngine::default();
        prop_assert_eq!(inst.e_n_formula(&eng).unwrap(), e_n_direct(&inst, OracleConfig::default()).unwrap());
        prop_assert_eq!(inst.mu_n().unwrap(), mu_n_direct(&inst).unwrap());
    }

    #[test]
    fn dimension_one_closed_form(inst in small_instance()) {
        prop_assume!(inst.d() == 1);
        let eng = HilbertEngine::default();
        let e_l = eng.multiplicity(inst.l()).unwrap();
        prop_assert_eq!(inst.e_n_formula(&eng).unwrap(), e_l << (inst.g() - 1));
    }

    /// The bracketed sum is divisible by 2^d: the formula never reports a
    /// non-integral result.
    #[test]
    fn formula_is_integral(inst in small_instance()) {
        let eng = HilbertEngine::default();
        let r = inst.e_n_formula(&eng);
        prop_assert!(!matches!(r, Err(ReesError::NonIntegralResult { .. })), "{:?}", r);
    }

    #[test]
    fn graded_pieces_match_brute_force(inst in small_instance()) {
        prop_assume!(inst.g() <= 2);
        let mut powers = GradedPowers::new(&inst);
        for n in 0..=3u32 {
            for b in cube(inst.g(), n as i64 + 1) {
                let piece = powers.piece(n, &b).unwrap();
                prop_assert_eq!(&piece, &brute_piece(&inst, n, &b), "n={} b={:?}", n, b);
                if n > 0 {
                    prop_assert!(piece.is_subpiece(&powers.piece(n - 1, &b).unwrap()).unwrap());
                }
                if b.iter().all(|&x| x <= -(n as i64)) {
                    prop_assert_eq!(piece, Piece::Unit);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// `holds` is reproducible from the stored sides alone.
    #[test]
    fn check_results_are_consistent(inst in small_instance()) {
        let eng = HilbertEngine::default();
        let mut results = Vec::new();
        for i in inst.ideals() {
            results.push(check_nog(&eng, i).unwrap());
        }
        match inst.g() {
            2 => results.extend(check_necessary_conditions_g2(&eng, &inst).unwrap()),
            g if g >= 3 => results.push(check_equation_strict_g3(&eng, &inst).unwrap()),
            _ => {}
        }
        for r in &results {
            prop_assert!(r.consistent(), "{}", r);
            prop_assert!(!r.is_violation(), "{}", r);
        }
    }
}

fn cube(g: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..g {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// `ℬ_a = ∏ Iⱼ^{max(aⱼ, 0)}`.
fn ambient(inst: &ReesInstance, a: &[i64]) -> Piece {
    let mut acc = Piece::Unit;
    for (i, &x) in inst.ideals().iter().zip(a) {
        if x > 0 {
            let p = i.power(x as u32).unwrap();
            acc = match acc {
                Piece::Unit => Piece::Ideal(p),
                Piece::Ideal(q) => Piece::Ideal(q.product(&p).unwrap()),
            };
        }
    }
    acc
}

fn join(a: Piece, b: Piece) -> Piece {
    match (a, b) {
        (Piece::Unit, _) | (_, Piece::Unit) => Piece::Unit,
        (Piece::Ideal(x), Piece::Ideal(y)) => Piece::Ideal(x.sum(&y).unwrap()),
    }
}

/// `𝒩ⁿ_b` straight from the definition: every product of `n` generators
/// (`uⱼ` copies of `tⱼ⁻¹`, `c` of `𝔪`, `vⱼ` of `Iⱼtⱼ`) times `ℬ` in the
/// complementary degree.
type Frame = (usize, Vec<(u32, u32)>, u32);

fn brute_piece(inst: &ReesInstance, n: u32, b: &[i64]) -> Piece {
    let g = inst.g();
    let mut result: Option<Piece> = None;
    // (u, v) pairs per ideal, c = n − Σ(u + v)
    let mut stack: Vec<Frame> = vec![(0, Vec::new(), 0)];
    while let Some((k, uv, used)) = stack.pop() {
        if k < g {
            for u in 0..=(n - used) {
                for v in 0..=(n - used - u) {
                    let mut next = uv.clone();
                    next.push((u, v));
                    stack.push((k + 1, next, used + u + v));
                }
            }
            continue;
        }
        let c = n - used;
        let rest: Vec<i64> = (0..g).map(|j| b[j] - (uv[j].1 as i64 - uv[j].0 as i64)).collect();
        let mut factor = ambient(inst, &rest);
        let mut gens: Vec<MonomialIdeal> = Vec::new();
        if c > 0 {
            gens.push(inst.maximal_ideal().power(c).unwrap());
        }
        for (j, &(_, v)) in uv.iter().enumerate() {
            if v > 0 {
                gens.push(inst.ideals()[j].power(v).unwrap());
            }
        }
        for p in gens {
            factor = match factor {
                Piece::Unit => Piece::Ideal(p),
                Piece::Ideal(q) => Piece::Ideal(q.product(&p).unwrap()),
            };
        }
        result = Some(match result {
            None => factor,
            Some(acc) => join(acc, factor),
        });
    }
    result.expect("c = n is always a choice")
}

#[test]
fn maximal_ideal_powers_have_binomial_generator_counts() {
    for d in 1..=4 {
        let ring = Ring::polynomial_local(d).unwrap();
        let m = MonomialIdeal::maximal_ideal(&ring);
        for r in 1..=5u32 {
            let want = binomial(r as u64 + d as u64 - 1, d as u64 - 1);
            assert_eq!(m.power(r).unwrap().mu() as u64, want, "d={d} r={r}");
        }
    }
}

#[test]
fn semigroup_colength_of_maximal_powers_is_eventually_linear() {
    for gens in [vec![2u32, 3], vec![3, 5], vec![4, 5, 7], vec![5, 6, 9]] {
        let ring = Ring::numerical_semigroup(&gens).unwrap();
        let m = MonomialIdeal::maximal_ideal(&ring);
        assert_eq!(m.colength().finite().unwrap(), BigUint::from(1u32));
        let len = |n: u32| BigInt::from(m.power(n).unwrap().colength().finite().unwrap());
        let a1 = BigInt::from(gens[0]);
        for n in 20..23 {
            assert_eq!(len(n + 1) - len(n), a1, "{gens:?} at {n}");
        }
    }
}

#[test]
fn plane_ideal_round_trips_through_the_session_language() {
    let i = common::plane_ideal(&[(1, 1), (3, 0)], 4, 2);
    let text = format!("ring R = polynomial_local(2); ideal I = {i} in R;");
    let s = reesmult::dsl::parse_session(&text).unwrap();
    assert_eq!(s.ideal("I").unwrap(), &i);
    assert_eq!(*s.ring("R").unwrap(), plane());
}

#[test]
fn explorer_is_deterministic_and_consistent() {
    let eng = HilbertEngine::default();
    for (family, d, g) in [(RingFamily::Polynomial, 2, 2), (RingFamily::Semigroup, 1, 3), (RingFamily::Polynomial, 3, 1)] {
        let config = ExploreConfig { family, d, g, trials: 12, seed: 99, checks: CheckKind::ALL.to_vec(), ..ExploreConfig::default() };
        let a = explore_random(&eng, &config).unwrap();
        let b = explore_random(&HilbertEngine::default(), &config).unwrap();
        assert_eq!(a, b);
        assert!(a.violations.iter().all(|c| c.consistent()));
        assert_eq!(a.total_violations(), 0, "{:?}", a.violations);
    }
}
