#![allow(dead_code, clippy::needless_range_loop)]

use std::sync::Arc;

use frobext::finring::build_ring;
use frobext::sgring::WeightFn;
use frobext::{Cyclo, FiniteRing, FrobeniusBimodule, RingSpec};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn dual(ring: FiniteRing) -> Arc<FrobeniusBimodule> {
    Arc::new(FrobeniusBimodule::dual(Arc::new(ring)).unwrap())
}

pub fn f4() -> FiniteRing {
    let spec = RingSpec::from_json(include_str!("../fixtures/f4.json")).unwrap();
    build_ring(&spec, 16).unwrap()
}

pub fn u2f2() -> Arc<FrobeniusBimodule> {
    dual(FiniteRing::upper_triangular(2, 2).unwrap())
}

/// The rings exercised by the corpus-wide checks.
pub fn corpus() -> Vec<(&'static str, Arc<FrobeniusBimodule>)> {
    vec![
        ("Z4", dual(FiniteRing::zn(4).unwrap())),
        ("Z6", dual(FiniteRing::zn(6).unwrap())),
        ("Z8", dual(FiniteRing::zn(8).unwrap())),
        ("Z9", dual(FiniteRing::zn(9).unwrap())),
        ("F4", dual(f4())),
        ("M2(F2)", dual(FiniteRing::matrix(2, 2).unwrap())),
        ("U2(F2)", u2f2()),
        (
            "Z2xZ4",
            dual(FiniteRing::product(&FiniteRing::zn(2).unwrap(), &FiniteRing::zn(4).unwrap()).unwrap()),
        ),
    ]
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// A random rational weight, constant on two-sided unit orbits, zero at 0.
pub fn random_bi_invariant_weight(m: &Arc<FrobeniusBimodule>, rng: &mut impl Rng) -> WeightFn {
    let mut values = vec![BigRational::zero(); m.size()];
    for orbit in m.two_sided_unit_orbits() {
        if orbit[0] == m.zero() {
            continue;
        }
        let v = random_rational(rng);
        for a in orbit {
            values[a] = v.clone();
        }
    }
    WeightFn::from_rationals(Arc::clone(m), &values).unwrap()
}

pub fn label(m: &FrobeniusBimodule, l: &str) -> usize {
    m.element_by_label(l).unwrap_or_else(|| panic!("no element {l}"))
}

pub fn rational(c: &Cyclo) -> BigRational {
    c.as_rational().expect("rational value")
}

/// Solves a square-or-tall rational system; `None` unless the solution is
/// unique.
pub fn unique_rational_solution(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let cols = a[0].len();
    let mut row = 0;
    for col in 0..cols {
        let p = (row..a.len()).find(|&i| !a[i][col].is_zero())?;
        a.swap(row, p);
        b.swap(row, p);
        let pivot = a[row][col].clone();
        for j in 0..cols {
            a[row][j] = &a[row][j] / &pivot;
        }
        b[row] = &b[row] / &pivot;
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let d = &f * &a[row][j];
                    a[i][j] = &a[i][j] - &d;
                }
                let d = &f * &b[row];
                b[i] = &b[i] - &d;
            }
        }
        row += 1;
    }
    if b[row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    debug_assert!(a[0][0].is_one() || cols == 0);
    Some(b[..cols].to_vec())
}
