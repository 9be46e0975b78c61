use std::fmt::Write;

use super::{LatticeError, RingKind};

/// Exponent vector of a monomial. In a numerical semigroup ring the vector has
/// a single entry, the semigroup value `s` of `t^s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `t^s` in a semigroup ring.
    pub fn value(s: u32) -> Self {
        Monomial(vec![s])
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// `x_i^e` in a polynomial ring with `arity` variables.
    pub fn pure_power(arity: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; arity];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Monomial product (exponent sum).
    pub fn mul(&self, other: &Monomial) -> Result<Monomial, LatticeError> {
        debug_assert_eq!(self.arity(), other.arity());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(LatticeError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    /// If the monomial is a pure power `x_i^e` with `e > 0`, returns `(i, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut hit = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if hit.is_some() {
                    return None;
                }
                hit = Some((i, e));
            }
        }
        hit
    }

    /// Canonical decimal form: `(a,b,c)` for polynomial rings, `s` for semigroup rings.
    pub fn render(&self, kind: RingKind) -> String {
        match kind {
            RingKind::NumericalSemigroup => self.0[0].to_string(),
            RingKind::PolynomialLocal => {
                let mut s = String::from("(");
                for (i, e) in self.0.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    write!(s, "{e}").unwrap();
                }
                s.push(')');
                s
            }
        }
    }
}
