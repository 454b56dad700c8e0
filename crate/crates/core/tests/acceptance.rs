//! Acceptance suite. Runs every criterion at exact (zero) tolerance, prints
//! one PASS/FAIL line per criterion, and exits nonzero if any fails.

#![allow(clippy::needless_range_loop)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use frobext::codes::{check_extension_property, enumerate_codes, Alphabet, Caps, CodeSpace};
use frobext::extension::{
    all_right_submodules, certify, check_condition, construct_gamma, epsilon, homogeneous_weight,
    homogeneous_weight_via_epsilon, proof_identity_violation, TieBreak, DEFAULT_LATTICE_CAP,
};
use frobext::mobius::{build_cyclic_poset, mobius_by_character, mobius_by_recursion};
use frobext::sgring::{convolve, correlate, fourier, inverse_fourier, SgFn, WeightFn};
use frobext::{generating_character_search, Cyclo, FiniteRing, FrobeniusBimodule};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Check = fn() -> String;

fn main() {
    let criteria: [(u32, &str, u64, Check); 10] = [
        (1, "Möbius table of the U_2(F_2) dual", 1, mobius_table),
        (2, "submodule lattice of the U_2(F_2) dual", 1, submodule_lattice),
        (3, "bi-invariance classes on the U_2(F_2) dual", 1, bi_invariance_classes),
        (4, "condition expressions on the U_2(F_2) dual", 5, condition_expressions),
        (5, "gamma pipeline and certificates", 60, gamma_pipeline),
        (6, "homogeneous weight and character sums", 10, homogeneous_oracle),
        (7, "proof identity", 10, proof_identity),
        (8, "brute-force extension over Z_4", 300, brute_force),
        (9, "Fourier and module laws", 30, module_laws),
        (10, "Frobenius detection", 5, frobenius_detection),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match outcome {
            Ok(detail) if within => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; exceeded time limit")),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                ("FAIL", msg)
            }
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {status}: {name} — {detail} ({:.2}s, limit {limit}s)",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

const U2F2_REPS: [&str; 6] = ["(0,0,0)", "(0,0,1)", "(1,0,0)", "(0,1,0)", "(1,0,1)", "(1,1,0)"];

fn mobius_table() -> String {
    let m = u2f2();
    let poset = build_cyclic_poset(&m).unwrap();
    let reps: Vec<&str> = poset.nodes().iter().map(|n| m.label(n.representative)).collect();
    assert_eq!(reps, U2F2_REPS);
    let expected = vec![1, -1, -1, 0, 1, 0];
    let by_recursion = mobius_by_recursion(&poset, m.exponent()).as_integers();
    let by_character = mobius_by_character(&m, &poset).unwrap().as_integers();
    assert_eq!(by_recursion, expected);
    assert_eq!(by_character, expected);
    format!("μ = {expected:?} by recursion and by character sums")
}

fn submodule_lattice() -> String {
    let m = u2f2();
    let subs = all_right_submodules(&m, DEFAULT_LATTICE_CAP).unwrap();
    assert_eq!(subs.len(), 7);
    let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
    assert_eq!(sizes, vec![1, 2, 2, 4, 4, 4, 8]);
    let cyclic = |l: &str| m.cyclic_right_submodule(label(&m, l));
    // the six proper submodules are exactly the six cyclic ones
    let poset = build_cyclic_poset(&m).unwrap();
    for (s, node) in subs.iter().zip(poset.nodes()) {
        assert_eq!(s.elements, node.submodule.elements);
    }
    assert!(!poset.module_is_cyclic());
    let x100 = cyclic("(1,0,0)");
    let x101 = cyclic("(1,0,1)");
    assert!(x100.is_subset_of(&x101) && x100.len() < x101.len());
    let x001 = cyclic("(0,0,1)");
    for s in subs.iter().filter(|s| s.len() == 4) {
        assert!(x001.is_subset_of(s));
    }
    "7 submodules, containments as stated, A not cyclic".into()
}

fn bi_invariance_classes() -> String {
    let m = u2f2();
    let y_one: Vec<usize> = ["(0,1,0)", "(0,1,1)", "(1,1,0)", "(1,1,1)"].iter().map(|l| label(&m, l)).collect();
    let mut invariant = 0;
    for pattern in 0u32..256 {
        let values: Vec<i64> = (0..8).map(|a| i64::from(pattern >> a & 1)).collect();
        let w = WeightFn::from_integers(Arc::clone(&m), &values).unwrap();
        let predicted = y_one.iter().all(|&a| values[a] == values[y_one[0]]);
        assert_eq!(w.is_bi_invariant(), predicted, "pattern {pattern:08b}");
        invariant += usize::from(predicted);
    }
    format!("256 patterns, {invariant} bi-invariant, all as predicted")
}

fn condition_expressions() -> String {
    let m = u2f2();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (a001, a100, a101, a010) = (
        label(&m, "(0,0,1)"),
        label(&m, "(1,0,0)"),
        label(&m, "(1,0,1)"),
        label(&m, "(0,1,0)"),
    );
    for _ in 0..100 {
        let w = random_bi_invariant_weight(&m, &mut rng);
        let (x, y, z) = (rational(w.value(a001)), rational(w.value(a100)), rational(w.value(a101)));
        let mixed = -&x - &y + &z;
        let expected = [-x.clone(), -y.clone(), -x.clone(), mixed.clone(), -x.clone(), mixed];
        let report = check_condition(&w, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(report.rows.len(), 6);
        for (row, want) in report.rows.iter().zip(&expected) {
            assert_eq!(&rational(&row.character_sum), want);
            assert_eq!(&rational(&row.mobius_sum), want);
        }
        // changing the weight of the (0,1,0) class leaves every value, in
        // particular S = A, unchanged
        let mut shifted: Vec<Cyclo> = w.values().to_vec();
        for b in m.two_sided_unit_orbit(a010) {
            shifted[b] = &shifted[b] + &Cyclo::from_integer(7, m.exponent());
        }
        let shifted = WeightFn::new(Arc::clone(&m), shifted).unwrap();
        let again = check_condition(&shifted, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(again.rows.last().unwrap().character_sum, report.rows.last().unwrap().character_sum);
    }
    "100 random weights match all six expressions".into()
}

/// `w̃` for a rational weight on `Z_4`, from `ζ₄ = i` directly.
fn z4_inverse_transform(w: &[i64; 4]) -> Vec<BigRational> {
    (0..4)
        .map(|r| {
            let (mut re, mut im) = (0i64, 0i64);
            for (a, &wa) in w.iter().enumerate() {
                match (4 - (r * a) % 4) % 4 {
                    0 => re += wa,
                    1 => im += wa,
                    2 => re -= wa,
                    _ => im -= wa,
                }
            }
            assert_eq!(im, 0);
            q(re, 4)
        })
        .collect()
}

fn gamma_pipeline() -> String {
    // Z_4 with the Lee weight, against an exact linear-system oracle
    let m = dual(FiniteRing::zn(4).unwrap());
    let lee = WeightFn::from_integers(Arc::clone(&m), &[0, 1, 2, 1]).unwrap();
    let gamma = construct_gamma(&lee, TieBreak::MinIndex).unwrap();
    let ring = m.ring();
    assert_eq!(convolve(&inverse_fourier(&lee), &gamma).unwrap(), epsilon(ring));
    assert_eq!(correlate(&lee, &gamma).unwrap(), homogeneous_weight(&m));
    let wt = z4_inverse_transform(&[0, 1, 2, 1]);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..4 {
        let mut row = vec![BigRational::zero(); 4];
        for s in 0..4 {
            for t in 0..4 {
                if s * t % 4 == r {
                    row[t] = &row[t] + &wt[s];
                }
            }
        }
        rows.push(row);
        rhs.push(match r {
            0 => q(1, 1),
            1 | 3 => q(-1, 2),
            _ => q(0, 1),
        });
    }
    rows.push(vec![q(1, 1); 4]);
    rhs.push(q(0, 1));
    // bi-invariance: γ(1) = γ(3); without it the system has a line of solutions
    rows.push(vec![q(0, 1), q(1, 1), q(0, 1), q(-1, 1)]);
    rhs.push(q(0, 1));
    let oracle = unique_rational_solution(rows, rhs).expect("unique bi-invariant solution");
    let produced: Vec<BigRational> = gamma.values().iter().map(rational).collect();
    assert_eq!(produced, oracle);
    assert_eq!(oracle, vec![q(-1, 1), q(1, 2), q(0, 1), q(1, 2)]);

    // random condition-passing weights across the ring corpus
    let rings: Vec<(&str, Arc<FrobeniusBimodule>)> = vec![
        ("Z4", m),
        ("Z8", dual(FiniteRing::zn(8).unwrap())),
        ("Z9", dual(FiniteRing::zn(9).unwrap())),
        ("F4", dual(f4())),
        ("M2(F2)", dual(FiniteRing::matrix(2, 2).unwrap())),
        ("U2(F2)", u2f2()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut rejected = 0;
    for (name, module) in &rings {
        let mut accepted = 0;
        while accepted < 50 {
            let w = random_bi_invariant_weight(module, &mut rng);
            let cert = certify(&w, DEFAULT_LATTICE_CAP).unwrap();
            if !cert.condition.holds {
                rejected += 1;
                continue;
            }
            let checks = cert.checks.as_ref().unwrap();
            assert!(
                checks.convolution_is_epsilon
                    && checks.correlation_is_homogeneous
                    && checks.gamma_bi_invariant
                    && checks.gamma_in_r0
                    && checks.proof_identity,
                "{name}: {checks:?}"
            );
            assert!(cert.valid());
            // independent re-evaluation of the headline identity
            let gamma = cert.gamma().unwrap();
            assert_eq!(correlate(&w, gamma).unwrap(), homogeneous_weight(module), "{name}");
            accepted += 1;
        }
    }
    format!("Z_4 Lee γ matches oracle; 300 certificates valid ({rejected} samples failed the condition)")
}

fn homogeneous_oracle() -> String {
    let mut checked = 0;
    for (name, m) in corpus() {
        let hom = homogeneous_weight_via_epsilon(&m).unwrap();
        assert_eq!(hom, homogeneous_weight(&m), "{name}");
        for s in all_right_submodules(&m, DEFAULT_LATTICE_CAP).unwrap() {
            let total = Cyclo::sum(m.exponent(), s.elements.iter().map(|&a| hom.value(a)));
            let chi_total = m.chi_sum_over(&s);
            if s.is_zero() {
                assert!(chi_total.is_one());
            } else {
                assert_eq!(total, Cyclo::from_integer(s.len() as i64, m.exponent()), "{name}");
                assert!(chi_total.is_zero(), "{name}");
            }
            checked += 1;
        }
        // left submodules, as the length-one codes over the full alphabet
        let space = Arc::new(CodeSpace::new(Arc::new(Alphabet::full(Arc::clone(&m))), 1, &Caps::default()).unwrap());
        for code in enumerate_codes(&space, &Caps::default()).unwrap() {
            let chi_total = Cyclo::sum(m.exponent(), code.elements().iter().map(|w| m.chi(w[0])));
            if code.size() == 1 {
                assert!(chi_total.is_one());
            } else {
                assert!(chi_total.is_zero(), "{name}");
            }
            checked += 1;
        }
    }
    format!("{checked} submodules across {} rings", corpus().len())
}

fn proof_identity() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut weights = 0;
    for (name, m) in corpus() {
        let mut ws = vec![homogeneous_weight(&m)];
        ws.extend((0..5).map(|_| random_bi_invariant_weight(&m, &mut rng)));
        for w in ws {
            assert_eq!(proof_identity_violation(&w), None, "{name}");
            weights += 1;
        }
    }
    format!("{weights} weights, every nonzero non-unit r")
}

fn brute_force() -> String {
    let m = dual(FiniteRing::zn(4).unwrap());
    let lee = WeightFn::from_integers(Arc::clone(&m), &[0, 1, 2, 1]).unwrap();
    let mut summary = Vec::new();
    for (name, w) in [("Lee", lee), ("w_Hom", homogeneous_weight(&m))] {
        for n in [1, 2] {
            let report = check_extension_property(&w, n, &Caps::default(), 8).unwrap();
            assert!(report.all_extend, "{name}, n = {n}");
            summary.push(format!("{name} n={n}: {} codes/{} isometries", report.codes.len(), report.total_isometries));
        }
    }
    summary.join("; ")
}

fn random_sg(ring: &Arc<FiniteRing>, rng: &mut impl Rng) -> SgFn {
    let values = ring.elements().map(|_| Cyclo::from_integer(rng.gen_range(-3..=3), ring.exponent())).collect();
    SgFn::new(Arc::clone(ring), values).unwrap()
}

fn random_bi_invariant_sg(ring: &Arc<FiniteRing>, rng: &mut impl Rng) -> SgFn {
    let mut values = vec![Cyclo::zero(ring.exponent()); ring.size()];
    for orbit in ring.two_sided_unit_orbits() {
        let v = Cyclo::from_integer(rng.gen_range(-3..=3), ring.exponent());
        for r in orbit {
            values[r] = v.clone();
        }
    }
    SgFn::new(Arc::clone(ring), values).unwrap()
}

fn module_laws() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut instances = 0;
    for (name, m) in corpus() {
        let ring = Arc::clone(m.ring());
        let e = m.exponent();
        for r in ring.elements() {
            let delta = SgFn::delta(Arc::clone(&ring), r);
            assert_eq!(inverse_fourier(&fourier(&delta, &m).unwrap()), delta, "{name}");
        }
        for a in m.elements() {
            let mut values = vec![Cyclo::zero(e); m.size()];
            values[a] = Cyclo::one(e);
            let w = WeightFn::new(Arc::clone(&m), values).unwrap();
            assert_eq!(fourier(&inverse_fourier(&w), &m).unwrap(), w, "{name}");
        }
        for _ in 0..200 {
            let values: Vec<i64> = m.elements().map(|_| rng.gen_range(-3..=3)).collect();
            let w = WeightFn::from_integers(Arc::clone(&m), &values).unwrap();
            let (alpha, beta) = (random_sg(&ring, &mut rng), random_sg(&ring, &mut rng));
            let lhs = correlate(&correlate(&w, &alpha).unwrap(), &beta).unwrap();
            let rhs = correlate(&w, &convolve(&alpha, &beta).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{name}");

            let (a, b) = (random_bi_invariant_sg(&ring, &mut rng), random_bi_invariant_sg(&ring, &mut rng));
            assert!(convolve(&a, &b).unwrap().is_bi_invariant(), "{name}");
            let wb = random_bi_invariant_weight(&m, &mut rng);
            assert!(correlate(&wb, &a).unwrap().is_bi_invariant(), "{name}");
            instances += 1;
        }
    }
    format!("{instances} random instances plus full-basis round trips")
}

fn frobenius_detection() -> String {
    for (name, ring) in [
        ("Z4", FiniteRing::zn(4).unwrap()),
        ("F4", f4()),
        ("M2(F2)", FiniteRing::matrix(2, 2).unwrap()),
    ] {
        assert!(generating_character_search(&ring).is_some(), "{name}");
    }
    assert!(generating_character_search(&FiniteRing::upper_triangular(2, 2).unwrap()).is_none());
    "found for Z_4, F_4, M_2(F_2); none for U_2(F_2)".into()
}
