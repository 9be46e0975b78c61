use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graded::{open_box, GradedPowers};
use super::{ReesError, ReesInstance};
use crate::lattice::Monomial;

/// Largest `|bⱼ|` accepted in a generator term's multidegree.
const MAX_TERM_DEGREE: u64 = 64;

/// `c · m · t^b`: a rational multiple of a ring monomial in multidegree `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coeff: BigRational,
    pub monomial: Monomial,
    pub degree: Vec<i64>,
}

impl LaurentTerm {
    pub fn new(coeff: BigRational, monomial: Monomial, degree: Vec<i64>) -> Self {
        Self { coeff, monomial, degree }
    }

    pub fn unit(monomial: Monomial, degree: Vec<i64>) -> Self {
        Self::new(BigRational::one(), monomial, degree)
    }
}

/// A finite sum of terms; terms may sit in different multidegrees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentElement {
    terms: Vec<LaurentTerm>,
}

impl LaurentElement {
    pub fn new(terms: Vec<LaurentTerm>) -> Self {
        Self { terms }
    }

    pub fn term(monomial: Monomial, degree: Vec<i64>) -> Self {
        Self::new(vec![LaurentTerm::unit(monomial, degree)])
    }

    pub fn plus(mut self, other: LaurentElement) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn terms(&self) -> &[LaurentTerm] {
        &self.terms
    }
}

impl fmt::Display for LaurentTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg: Vec<String> = self.degree.iter().map(i64::to_string).collect();
        let exps: Vec<String> = self.monomial.exponents().iter().map(u32::to_string).collect();
        if !self.coeff.is_one() {
            write!(f, "{}*", self.coeff)?;
        }
        write!(f, "({})t^({})", exps.join(","), deg.join(","))
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(LaurentTerm::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxVerdict {
    /// Every component of `𝒩²/𝒩³` with `|bⱼ| ≤ radius` is spanned.
    HoldsOnBox { radius: u32 },
    /// First multidegree (lexicographic) where the span falls short.
    FailsAt(Vec<i64>),
}

/// Tests `J𝒩 = 𝒩²` for `J` generated by `gens ⊆ 𝒩`, degree by degree over
/// the box `|bⱼ| ≤ radius`, with exact rational linear algebra.
///
/// By Nakayama's lemma in the local ring `ℬ_𝒩` the equation holds iff `J𝒩`
/// spans the `k`-space `𝒩²/𝒩³`, which is spanned by the products `γ·β` of
/// generators with the monomial basis of `𝒩/𝒩²`. Both quotients vanish
/// outside `|bⱼ| ≤ 2`, so for `radius ≥ 2` the verdict is exact; for smaller
/// boxes it only covers the listed degrees. Generators need not be
/// homogeneous: the comparison happens in the whole associated graded piece,
/// not one multidegree at a time.
pub fn check_reduction_equation_bounded(
    instance: &ReesInstance,
    gens: &[LaurentElement],
    radius: u32,
    max_cells: usize,
) -> Result<BoxVerdict, ReesError> {
    let g = instance.g();
    let cells = (2 * radius as usize + 1).checked_pow(g as u32).unwrap_or(usize::MAX);
    if cells > max_cells {
        return Err(ReesError::BoxTooLarge { cells, limit: max_cells });
    }
    let ring = instance.ring();
    let mut graded = GradedPowers::new(instance);

    for (index, gen) in gens.iter().enumerate() {
        for term in gen.terms() {
            let bad = |reason: String| ReesError::MalformedGenerator { index, reason };
            if term.degree.len() != g {
                return Err(bad(format!("multidegree {:?} needs {g} entries", term.degree)));
            }
            if term.degree.iter().any(|x| x.unsigned_abs() > MAX_TERM_DEGREE) {
                return Err(bad(format!("multidegree entries are limited to ±{MAX_TERM_DEGREE}")));
            }
            if term.monomial.arity() != ring.arity() {
                return Err(bad(format!("monomial needs {} exponents", ring.arity())));
            }
            if let Some(s) = ring.semigroup() {
                if !s.contains(term.monomial.exponents()[0] as u64) {
                    return Err(bad(format!("{} is not in the semigroup", term.monomial.exponents()[0])));
                }
            }
            if !graded.piece(1, &term.degree)?.contains(&term.monomial) {
                return Err(ReesError::GeneratorOutsideN { index, term: term.to_string() });
            }
        }
    }

    // monomial basis of 𝒩/𝒩², supported on |bⱼ| ≤ 1
    let mut low: Vec<(Vec<i64>, Monomial)> = Vec::new();
    for b in open_box(g, 1) {
        let (one, two) = (graded.piece(1, &b)?, graded.piece(2, &b)?);
        for m in two.standard_monomials().expect("components are m-primary") {
            if one.contains(&m) {
                low.push((b.clone(), m));
            }
        }
    }

    // monomial basis of 𝒩²/𝒩³ inside the box, supported on |bⱼ| ≤ 2
    let mut columns: Vec<(Vec<i64>, Monomial)> = Vec::new();
    for b in open_box(g, radius.min(2) as i64) {
        let (two, three) = (graded.piece(2, &b)?, graded.piece(3, &b)?);
        for m in three.standard_monomials().expect("components are m-primary") {
            if two.contains(&m) {
                columns.push((b.clone(), m));
            }
        }
    }
    if columns.is_empty() {
        return Ok(BoxVerdict::HoldsOnBox { radius });
    }
    let index: HashMap<(&[i64], &Monomial), usize> =
        columns.iter().enumerate().map(|(i, (b, m))| ((b.as_slice(), m), i)).collect();

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for gen in gens {
        for (b, beta) in &low {
            let mut row = vec![BigRational::zero(); columns.len()];
            let mut nonzero = false;
            for term in gen.terms() {
                let deg: Vec<i64> = term.degree.iter().zip(b).map(|(x, y)| x + y).collect();
                let mono = term.monomial.mul(beta)?;
                if let Some(&c) = index.get(&(deg.as_slice(), &mono)) {
                    row[c] += &term.coeff;
                    nonzero = true;
                }
            }
            if nonzero && row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }

    let pivots = row_reduce(&mut rows);
    if pivots.len() == columns.len() {
        return Ok(BoxVerdict::HoldsOnBox { radius });
    }
    for (c, (b, _)) in columns.iter().enumerate() {
        if !in_row_space(&rows, &pivots, c, columns.len()) {
            return Ok(BoxVerdict::FailsAt(b.clone()));
        }
    }
    unreachable!("rank deficit implies some unit vector lies outside the row space")
}

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row, in order, and truncates the zero rows.
fn row_reduce(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

// whether the unit vector e_c lies in the span of RREF rows
fn in_row_space(rows: &[Vec<BigRational>], pivots: &[usize], c: usize, ncols: usize) -> bool {
    let mut v = vec![BigRational::zero(); ncols];
    v[c] = BigRational::one();
    for (row, &p) in rows.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    v.iter().all(Zero::is_zero)
}
