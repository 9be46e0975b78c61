//! Shared builders and strategies for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use reesmult::lattice::{Monomial, MonomialIdeal, Ring};
use reesmult::rees::ReesInstance;

pub fn plane() -> Arc<Ring> {
    Ring::polynomial_local(2).unwrap()
}

/// `(x^a, y^b)` plus the listed extra generators.
pub fn plane_ideal(extra: &[(u32, u32)], a: u32, b: u32) -> MonomialIdeal {
    let mut gens: Vec<Monomial> = extra.iter().map(|&(x, y)| Monomial::new(vec![x, y])).collect();
    gens.push(Monomial::new(vec![a, 0]));
    gens.push(Monomial::new(vec![0, b]));
    MonomialIdeal::from_gens(&plane(), gens).unwrap()
}

pub fn values(ring: &Arc<Ring>, vals: &[u32]) -> MonomialIdeal {
    MonomialIdeal::from_values(ring, vals).unwrap()
}

/// Random m-primary ideal of `ring`: pure powers (polynomial rings) or a
/// guaranteed low value (semigroup rings) plus up to three random elements.
pub fn ideal_in(ring: Arc<Ring>, bound: u32) -> impl Strategy<Value = MonomialIdeal> {
    let arity = ring.arity();
    (
        prop::collection::vec(1..=bound, arity),
        prop::collection::vec(prop::collection::vec(0..=bound, arity), 0..3),
    )
        .prop_map(move |(powers, extra)| match ring.semigroup() {
            Some(s) => {
                let mut vals: Vec<u32> = extra
                    .iter()
                    .map(|v| v[0] + s.multiplicity())
                    .chain([powers[0] * s.multiplicity()])
                    .filter(|&v| s.contains(v as u64))
                    .collect();
                vals.dedup();
                values(&ring, &vals)
            }
            None => {
                let mut gens: Vec<Monomial> =
                    (0..arity).map(|k| Monomial::pure_power(arity, k, powers[k])).collect();
                gens.extend(extra.into_iter().filter(|v| v.iter().any(|&e| e > 0)).map(Monomial::new));
                MonomialIdeal::from_gens(&ring, gens).unwrap()
            }
        })
}

pub fn desk_rings() -> Vec<Arc<Ring>> {
    vec![
        Ring::polynomial_local(1).unwrap(),
        Ring::polynomial_local(2).unwrap(),
        Ring::numerical_semigroup(&[4, 5, 7]).unwrap(),
        Ring::numerical_semigroup(&[2, 3]).unwrap(),
    ]
}

/// Small instances over the desk rings with `g ∈ {1, 2}`.
pub fn small_instance() -> impl Strategy<Value = ReesInstance> {
    (prop::sample::select(desk_rings()), 1usize..=2).prop_flat_map(|(ring, g)| {
        prop::collection::vec(ideal_in(ring, 3), g).prop_map(|ideals| ReesInstance::new(ideals).unwrap())
    })
}
