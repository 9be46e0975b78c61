//! Independent oracles for multiplicities: Newton-polygon areas in the plane,
//! minimum values in semigroup rings, products of exponents for diagonal
//! ideals, and raw finite differences deep in the stable range.

mod common;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use reesmult::hilbert::HilbertEngine;
use reesmult::lattice::{Monomial, MonomialIdeal, Ring};
use reesmult::rees::ReesInstance;

use common::{plane, plane_ideal};

/// Twice the area of the region under the Newton polygon of an m-primary
/// monomial ideal in two variables (lower convex hull, shoelace formula).
fn doubled_coarea(points: &[(i64, i64)]) -> i64 {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        // points dominated on the right-hand side are not on the lower chain
        if hull.last().is_some_and(|&(_, y)| p.1 >= y) {
            continue;
        }
        hull.push(p);
    }
    assert_eq!(hull[0].0, 0, "needs a pure power of y");
    assert_eq!(hull.last().unwrap().1, 0, "needs a pure power of x");
    // polygon (0,0) -> hull points (left to right) -> back to (0,0)
    let mut poly = vec![(0, 0)];
    poly.extend(hull.iter().rev());
    let mut twice = 0;
    for w in 0..poly.len() {
        let (a, b) = (poly[w], poly[(w + 1) % poly.len()]);
        twice += a.0 * b.1 - a.1 * b.0;
    }
    twice.abs()
}

fn points(i: &MonomialIdeal) -> Vec<(i64, i64)> {
    i.gens().iter().map(|m| (m.exponents()[0] as i64, m.exponents()[1] as i64)).collect()
}

fn minkowski(p: &[(i64, i64)], q: &[(i64, i64)]) -> Vec<(i64, i64)> {
    p.iter().flat_map(|a| q.iter().map(move |b| (a.0 + b.0, a.1 + b.1))).collect()
}

fn plane_ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
    (prop::collection::vec((0u32..6, 0u32..6), 0..4), 1u32..7, 1u32..7)
        .prop_filter_map("unit generator", |(extra, a, b)| {
            if extra.iter().any(|&(x, y)| x + y == 0) {
                return None;
            }
            Some(plane_ideal(&extra, a, b))
        })
}

#[test]
fn coarea_by_hand() {
    assert_eq!(doubled_coarea(&[(1, 0), (0, 1)]), 1);
    assert_eq!(doubled_coarea(&[(2, 0), (1, 1), (0, 2)]), 4);
    assert_eq!(doubled_coarea(&[(3, 0), (0, 2)]), 6);
    // (1,1) cuts the corner of the triangle (4,0)-(0,4)
    assert_eq!(doubled_coarea(&[(4, 0), (1, 1), (0, 4)]), 8);
    assert_eq!(doubled_coarea(&[(4, 0), (3, 3), (0, 4)]), 16);
}

#[test]
fn plane_examples() {
    let eng = HilbertEngine::default();
    let m = MonomialIdeal::maximal_ideal(&plane());
    let i = plane_ideal(&[], 1, 2);
    assert_eq!(eng.mixed(&[m.clone(), i.clone()], &[1, 1]).unwrap(), BigUint::from(1u32));
    let j = plane_ideal(&[(1, 1)], 4, 4);
    assert_eq!(eng.multiplicity(&j).unwrap(), BigUint::from(8u32));
    assert_eq!(eng.mixed(&[m, j], &[1, 1]).unwrap(), BigUint::from(2u32));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn plane_multiplicity_is_twice_the_coarea(i in plane_ideal_strategy()) {
        let eng = HilbertEngine::default();
        prop_assert_eq!(eng.multiplicity(&i).unwrap(), BigUint::from(doubled_coarea(&points(&i)) as u64));
    }

    #[test]
    fn plane_mixed_is_the_mixed_area(i in plane_ideal_strategy(), j in plane_ideal_strategy()) {
        let eng = HilbertEngine::default();
        let (pi, pj) = (points(&i), points(&j));
        let twice = doubled_coarea(&minkowski(&pi, &pj)) - doubled_coarea(&pi) - doubled_coarea(&pj);
        prop_assert!(twice >= 0 && twice % 2 == 0);
        prop_assert_eq!(eng.mixed(&[i, j], &[1, 1]).unwrap(), BigUint::from((twice / 2) as u64));
    }

    #[test]
    fn semigroup_multiplicity_is_the_least_value(
        gens in prop::sample::select(vec![vec![2u32, 3], vec![3, 5], vec![4, 5, 7], vec![5, 6, 9]]),
        values in prop::collection::vec(1u32..30, 1..4),
    ) {
        let ring = Ring::numerical_semigroup(&gens).unwrap();
        let s = ring.semigroup().unwrap();
        let vals: Vec<u32> = values.into_iter().filter(|&v| s.contains(v as u64)).collect();
        prop_assume!(!vals.is_empty());
        let i = MonomialIdeal::from_values(&ring, &vals).unwrap();
        let eng = HilbertEngine::default();
        prop_assert_eq!(eng.multiplicity(&i).unwrap(), BigUint::from(*vals.iter().min().unwrap()));
    }

    /// In dimension one every term of the e(N) sum is e(L), and e(L) is the
    /// least value of L = 𝔪² + I₁ + ⋯ + I_g.
    #[test]
    fn dimension_one_rees_multiplicity(
        mins in prop::collection::vec(prop::sample::select(vec![4u32, 5, 7, 8, 9, 10, 11, 12]), 1..4),
    ) {
        let ring = Ring::numerical_semigroup(&[4, 5, 7]).unwrap();
        let s = ring.semigroup().unwrap();
        let ideals: Vec<MonomialIdeal> = mins
            .iter()
            .map(|&v| {
                let vals: Vec<u32> = (v..v + 4).filter(|&w| s.contains(w as u64)).collect();
                MonomialIdeal::from_values(&ring, &vals).unwrap()
            })
            .collect();
        let g = ideals.len();
        let inst = ReesInstance::new(ideals).unwrap();
        let eng = HilbertEngine::default();
        let least = mins.iter().copied().chain([2 * s.multiplicity()]).min().unwrap();
        let expected = BigUint::from(least) << (g - 1);
        prop_assert_eq!(inst.e_n_formula(&eng).unwrap(), expected);
    }
}

/// For `I = (x₁^{a₁}, …, x_d^{a_d})` with `a₁ ≤ ⋯ ≤ a_d`, the mixed
/// multiplicity `e(𝔪^{[d−q]}|I^{[q]})` is `a₁⋯a_q`.
#[test]
fn diagonal_ideals_in_three_space() {
    let ring = Ring::polynomial_local(3).unwrap();
    let m = MonomialIdeal::maximal_ideal(&ring);
    let eng = HilbertEngine::default();
    for exps in [[1u32, 2, 3], [2, 2, 5], [3, 4, 3], [1, 1, 4], [2, 3, 4]] {
        let gens = (0..3).map(|k| Monomial::pure_power(3, k, exps[k])).collect();
        let i = MonomialIdeal::from_gens(&ring, gens).unwrap();
        let mut sorted = exps;
        sorted.sort_unstable();
        for q in 0..3 {
            let want: u32 = sorted[..q].iter().product();
            assert_eq!(eng.e_q_pair(&m, &i, q).unwrap(), BigUint::from(want), "{exps:?} q={q}");
        }
        assert_eq!(eng.multiplicity(&i).unwrap(), BigUint::from(sorted.iter().product::<u32>()));
    }
}

/// Stabilized values agree with the raw difference far beyond the point
/// where the length function has become polynomial.
#[test]
fn deep_base_differences() {
    let eng = HilbertEngine::default();
    let r3 = Ring::polynomial_local(3).unwrap();
    let m3 = MonomialIdeal::maximal_ideal(&r3);
    let tricky = MonomialIdeal::from_gens(
        &r3,
        vec![Monomial::new(vec![3, 0, 0]), Monomial::new(vec![0, 4, 0]), Monomial::new(vec![0, 0, 3])],
    )
    .unwrap();
    let j = plane_ideal(&[(1, 2), (3, 1)], 5, 4);
    let m2 = MonomialIdeal::maximal_ideal(&plane());
    let cases: Vec<(Vec<MonomialIdeal>, Vec<u32>)> = vec![
        (vec![m3.clone(), tricky.clone()], vec![2, 1]),
        (vec![m3, tricky], vec![1, 2]),
        (vec![m2.clone(), j.clone()], vec![1, 1]),
        (vec![j], vec![2]),
    ];
    for (ideals, weights) in cases {
        let stable = BigInt::from(eng.mixed(&ideals, &weights).unwrap());
        for base in [24, 25] {
            assert_eq!(eng.difference_at(&ideals, &weights, base).unwrap(), stable, "{weights:?} at {base}");
        }
    }
}

/// `ℓ(R/Iⁿ)` is eventually a polynomial of degree `d` whose leading
/// coefficient is `e(I)/d!`; recover it by Lagrange interpolation through
/// `d + 1` late samples.
#[test]
fn lagrange_leading_coefficient() {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    let cases = vec![
        plane_ideal(&[(1, 1)], 3, 4),
        plane_ideal(&[(2, 1)], 5, 2),
        MonomialIdeal::from_values(&Ring::numerical_semigroup(&[4, 5, 7]).unwrap(), &[4, 10]).unwrap(),
        MonomialIdeal::from_values(&Ring::numerical_semigroup(&[3, 5]).unwrap(), &[5, 6]).unwrap(),
    ];
    let eng = HilbertEngine::default();
    for i in cases {
        let d = i.ring().dim();
        let xs: Vec<i64> = (10..=(10 + d as i64)).collect();
        let ys: Vec<BigRational> = xs
            .iter()
            .map(|&n| {
                let len = i.power(n as u32).unwrap().colength().finite().unwrap();
                BigRational::from_integer(BigInt::from(len))
            })
            .collect();
        // leading coefficient = Σ yᵢ / ∏_{j≠i}(xᵢ − xⱼ)
        let mut lead = BigRational::zero();
        for (k, y) in ys.iter().enumerate() {
            let mut den = BigRational::one();
            for (j, x) in xs.iter().enumerate() {
                if j != k {
                    den *= BigRational::from_integer(BigInt::from(xs[k] - x));
                }
            }
            lead += y / den;
        }
        let factorial: u64 = (1..=d as u64).product();
        let e = lead * BigRational::from_integer(BigInt::from(factorial));
        assert!(e.is_integer(), "{i}");
        assert_eq!(e.to_integer(), BigInt::from(eng.multiplicity(&i).unwrap()), "{i}");
    }
}

/// Monomial coefficients of the polynomial of degree `< xs.len()` through
/// `(xs[k], ys[k])`, by exact Gaussian elimination on the Vandermonde system.
fn interpolate(xs: &[i64], ys: &[num_rational::BigRational]) -> Vec<num_rational::BigRational> {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    let n = xs.len();
    let mut a: Vec<Vec<BigRational>> = xs
        .iter()
        .zip(ys)
        .map(|(&x, y)| {
            let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
            let mut p = BigRational::one();
            for _ in 0..n {
                row.push(p.clone());
                p *= BigRational::from_integer(BigInt::from(x));
            }
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).unwrap();
        a.swap(col, pivot);
        let inv = BigRational::one() / a[col][col].clone();
        for v in a[col].iter_mut() {
            *v *= inv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot) {
                    *x -= p * f.clone();
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

/// Tensor-product Lagrange interpolation of `(r₁, r₂) ↦ ℓ(R/I₁^{r₁}I₂^{r₂})`
/// over a full grid; the top coefficients carry the mixed multiplicities.
fn grid_coefficients(i1: &MonomialIdeal, i2: &MonomialIdeal, grid: &[i64]) -> Vec<Vec<num_rational::BigRational>> {
    use num_rational::BigRational;

    let sample = |r1: i64, r2: i64| {
        let p = i1.power(r1 as u32).unwrap().product(&i2.power(r2 as u32).unwrap()).unwrap();
        BigRational::from_integer(BigInt::from(p.colength().finite().unwrap()))
    };
    // coefficients in r1 for each fixed r2, then interpolate each in r2
    let rows: Vec<Vec<BigRational>> =
        grid.iter().map(|&r2| interpolate(grid, &grid.iter().map(|&r1| sample(r1, r2)).collect::<Vec<_>>())).collect();
    (0..grid.len())
        .map(|i| interpolate(grid, &rows.iter().map(|row| row[i].clone()).collect::<Vec<_>>()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn plane_mixed_by_grid_interpolation(i in plane_ideal_strategy(), j in plane_ideal_strategy()) {
        use num_rational::BigRational;

        let c = grid_coefficients(&i, &j, &[10, 11, 12]);
        let eng = HilbertEngine::default();
        let two = BigRational::from_integer(BigInt::from(2));
        let as_int = |v: BigUint| BigRational::from_integer(BigInt::from(v));
        prop_assert_eq!(c[2][0].clone() * two.clone(), as_int(eng.mixed(&[i.clone(), j.clone()], &[2, 0]).unwrap()));
        prop_assert_eq!(c[1][1].clone(), as_int(eng.mixed(&[i.clone(), j.clone()], &[1, 1]).unwrap()));
        prop_assert_eq!(c[0][2].clone() * two, as_int(eng.mixed(&[i, j], &[0, 2]).unwrap()));
    }

    #[test]
    fn semigroup_pair_by_grid_interpolation(
        a in prop::collection::vec(prop::sample::select(vec![4u32, 5, 7, 8, 9, 11]), 1..3),
        b in prop::collection::vec(prop::sample::select(vec![5u32, 7, 8, 10, 12]), 1..3),
    ) {
        use num_rational::BigRational;

        let ring = Ring::numerical_semigroup(&[4, 5, 7]).unwrap();
        let (i, j) = (common::values(&ring, &a), common::values(&ring, &b));
        let c = grid_coefficients(&i, &j, &[10, 11]);
        let eng = HilbertEngine::default();
        let as_int = |v: BigUint| BigRational::from_integer(BigInt::from(v));
        prop_assert_eq!(c[1][0].clone(), as_int(eng.mixed(&[i.clone(), j.clone()], &[1, 0]).unwrap()));
        prop_assert_eq!(c[0][1].clone(), as_int(eng.mixed(&[i, j], &[0, 1]).unwrap()));
    }
}
