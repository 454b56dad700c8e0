//! The extension-property pipeline: homogeneous weight, `ε`, the submodule
//! condition in both of its forms, the recursive construction of `γ` with
//! `w̃ ∗ γ = ε`, and the resulting certificate `w ⊛ γ = w_Hom`.

use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::cyclo::Cyclo;
use crate::dualmod::FrobeniusBimodule;
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, Submodule};
use crate::linalg;
use crate::mobius::{build_cyclic_poset, mobius_by_character};
use crate::sgring::{convolve, correlate, fourier, inverse_fourier, FnEntry, SgFn, WeightFn};

/// Default cap on the number of right submodules enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new((n as i64).into(), (d as i64).into())
}

/// `w_Hom(a) = 1 − (1/|𝒰|) Σ_u χ(ua)`.
pub fn homogeneous_weight(module: &Arc<FrobeniusBimodule>) -> WeightFn {
    let e = module.exponent();
    let units = module.ring().units();
    let scale = ratio(1, units.len());
    let values = module
        .elements()
        .map(|a| {
            let s = Cyclo::sum(e, units.iter().map(|&u| module.chi(module.left_act(u, a))));
            &Cyclo::one(e) - &s.scale(&scale)
        })
        .collect();
    WeightFn::new(Arc::clone(module), values).expect("one value per element")
}

/// `ε = δ₀ − (1/|𝒰|) Σ_u δ_u`.
pub fn epsilon(ring: &Arc<FiniteRing>) -> SgFn {
    let e = ring.exponent();
    let minus = Cyclo::from_rational(&-ratio(1, ring.units().len()), e);
    let values = ring
        .elements()
        .map(|r| {
            if r == ring.zero() {
                Cyclo::one(e)
            } else if ring.is_unit(r) {
                minus.clone()
            } else {
                Cyclo::zero(e)
            }
        })
        .collect();
    SgFn::new(Arc::clone(ring), values).expect("one value per element")
}

/// Every right submodule of `A`, ordered by size and then elements.
pub fn all_right_submodules(module: &FrobeniusBimodule, cap: usize) -> Result<Vec<Submodule>> {
    module.all_right_submodules(cap)
}

/// `S_r = {a ∈ A : ann_lt(r)·a = 0}`.
pub fn s_r(module: &FrobeniusBimodule, r: usize) -> Submodule {
    let ann = module.ring().left_annihilator(r);
    let elements = module
        .elements()
        .filter(|&a| ann.elements.iter().all(|&q| module.left_act(q, a) == module.zero()))
        .collect();
    module.right_span(elements)
}

fn submodule_name(module: &FrobeniusBimodule, s: &Submodule) -> String {
    if s.len() == module.size() {
        return "A".to_string();
    }
    let gens: Vec<&str> = s.generators.iter().map(|&g| module.label(g)).collect();
    format!("span{{{}}}R", gens.join(", "))
}

/// Rejects weights outside the domain of the theory.
fn validate_weight(w: &WeightFn) -> Result<()> {
    let m = w.module();
    if let Some((a, b)) = w.bi_invariance_violation() {
        return Err(Error::Input(format!(
            "weight is not bi-invariant: w{} = {} but w{} = {}",
            m.label(a),
            w.value(a),
            m.label(b),
            w.value(b)
        )));
    }
    if !w.in_a0() {
        return Err(Error::Input(format!("weight must vanish at zero, got {}", w.value(m.zero()))));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionRow {
    pub generators: Vec<String>,
    pub size: usize,
    /// `Σ_{a∈S} w(a)χ(a)`.
    pub character_sum: Cyclo,
    /// `Σ_{aR⊆S} w(a)μ(0,aR)`.
    pub mobius_sum: Cyclo,
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub rows: Vec<ConditionRow>,
    pub holds: bool,
}

impl ConditionReport {
    pub fn failing(&self) -> impl Iterator<Item = &ConditionRow> {
        self.rows.iter().filter(|r| !r.nonzero)
    }
}

/// Evaluates the condition on every nonzero right submodule, in both forms.
pub fn check_condition(w: &WeightFn, cap: usize) -> Result<ConditionReport> {
    validate_weight(w)?;
    let m = w.module();
    let e = m.exponent();
    let poset = build_cyclic_poset(m)?;
    let mu = mobius_by_character(m, &poset)?;
    let mut rows = Vec::new();
    for s in m.all_right_submodules(cap)? {
        if s.is_zero() {
            continue;
        }
        let character_sum = Cyclo::sum(
            e,
            s.elements.iter().map(|&a| w.value(a) * m.chi(a)).collect::<Vec<_>>().iter(),
        );
        let terms: Vec<Cyclo> = poset
            .nodes()
            .iter()
            .enumerate()
            .filter(|(_, node)| node.submodule.is_subset_of(&s))
            .map(|(i, node)| w.value(node.representative) * mu.value(i))
            .collect();
        let mobius_sum = Cyclo::sum(e, &terms);
        if character_sum != mobius_sum {
            return Err(Error::Internal(format!(
                "condition forms disagree on {}: {character_sum} vs {mobius_sum}",
                submodule_name(m, &s)
            )));
        }
        rows.push(ConditionRow {
            generators: s.generators.iter().map(|&g| m.label(g).to_string()).collect(),
            size: s.len(),
            nonzero: !character_sum.is_zero(),
            character_sum,
            mobius_sum,
        });
    }
    let holds = rows.iter().all(|r| r.nonzero);
    Ok(ConditionReport { rows, holds })
}

/// Order in which orbits with equal `|Rr|` are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    MinIndex,
    MaxIndex,
}

/// Builds a bi-invariant `γ ∈ ℛ₀` with `w̃ ∗ γ = ε`.
///
/// Only the condition instances the recursion actually divides by are
/// required; a vanishing divisor is reported as a condition violation on
/// the corresponding submodule.
pub fn construct_gamma(w: &WeightFn, tie_break: TieBreak) -> Result<SgFn> {
    validate_weight(w)?;
    let m = w.module();
    let ring = Arc::clone(m.ring());
    let e = m.exponent();
    let wt = inverse_fourier(w);
    let units = ring.units();
    let n_units = units.len();
    let mut gamma: Vec<Option<Cyclo>> = vec![None; ring.size()];

    // units
    let w1 = wt.value(ring.one());
    if w1.is_zero() {
        return Err(Error::ConditionViolated {
            submodule: "A".into(),
            stage: "units".into(),
        });
    }
    let denom = w1.scale(&ratio(n_units * n_units, 1));
    let g_unit = -&denom.inv()?;
    for &u in units {
        gamma[u] = Some(g_unit.clone());
    }

    // remaining nonzero non-units, by decreasing |Rr|
    let left_size: Vec<usize> = ring.elements().map(|r| ring.principal_left_ideal(r).len()).collect();
    let mut orbits: Vec<(usize, Vec<usize>)> = ring
        .two_sided_unit_orbits()
        .into_iter()
        .filter(|o| !o.contains(&ring.zero()) && !ring.is_unit(o[0]))
        .map(|o| {
            let rep = match tie_break {
                TieBreak::MinIndex => o[0],
                TieBreak::MaxIndex => *o.last().expect("orbits are nonempty"),
            };
            (rep, o)
        })
        .collect();
    orbits.sort_by(|(a, _), (b, _)| {
        let by_size = left_size[*b].cmp(&left_size[*a]);
        match tie_break {
            TieBreak::MinIndex => by_size.then(a.cmp(b)),
            TieBreak::MaxIndex => by_size.then(b.cmp(a)),
        }
    });

    let one = ring.one();
    for (r, orbit) in orbits {
        let mut numerator = Vec::new();
        let mut same_ideal = Vec::new();
        for &(s, t) in &ring.factorizations()[r] {
            if left_size[t] > left_size[r] {
                let gt = gamma[t].as_ref().ok_or_else(|| {
                    Error::Internal(format!("gamma({}) used before it was defined", ring.label(t)))
                })?;
                numerator.push(wt.value(s) * gt);
            } else {
                same_ideal.push(wt.value(s).clone());
            }
        }
        let numerator = Cyclo::sum(e, &numerator);
        let coefficient = Cyclo::sum(e, &same_ideal);

        let ann = ring.left_annihilator(r);
        let ann_sum = Cyclo::sum(e, ann.elements.iter().map(|&q| wt.value(ring.add(one, q))));
        if ann_sum.is_zero() {
            return Err(Error::ConditionViolated {
                submodule: submodule_name(m, &s_r(m, r)),
                stage: format!("r = {}", ring.label(r)),
            });
        }
        // each factorization st = r with Rt = Rr is t = ur, s ∈ (1 + ann)u⁻¹,
        // counted once per element of the left orbit 𝒰r
        let mut left_orbit: Vec<usize> = units.iter().map(|&u| ring.mul(u, r)).collect();
        left_orbit.sort_unstable();
        left_orbit.dedup();
        if coefficient != ann_sum.scale(&ratio(left_orbit.len(), 1)) {
            return Err(Error::Internal(format!(
                "factorization count mismatch at r = {}",
                ring.label(r)
            )));
        }
        let value = -&numerator.checked_div(&coefficient)?;
        for x in orbit {
            gamma[x] = Some(value.clone());
        }
    }

    // zero
    let rest = Cyclo::sum(e, gamma.iter().flatten());
    gamma[ring.zero()] = Some(-&rest);

    let values: Vec<Cyclo> = gamma
        .into_iter()
        .map(|g| g.ok_or_else(|| Error::Internal("gamma left undefined".into())))
        .collect::<Result<_>>()?;
    let gamma = SgFn::new(Arc::clone(&ring), values)?;

    if convolve(&wt, &gamma)? != epsilon(&ring) {
        return Err(Error::Internal("constructed gamma does not solve w~ * gamma = epsilon".into()));
    }
    if !gamma.is_bi_invariant() || !gamma.in_r0() {
        return Err(Error::Internal("constructed gamma is not a bi-invariant element of R_0".into()));
    }
    Ok(gamma)
}

/// `|A|·Σ_{q∈ann_lt(r)} w̃(1+q) = |ann_lt(r)|·Σ_{a∈S_r} w(a)χ(a)` for every
/// nonzero non-unit `r`. Returns the first failing `r`, if any.
pub fn proof_identity_violation(w: &WeightFn) -> Option<usize> {
    let m = w.module();
    let ring = m.ring();
    let e = m.exponent();
    let wt = inverse_fourier(w);
    ring.elements()
        .filter(|&r| r != ring.zero() && !ring.is_unit(r))
        .find(|&r| {
            let ann = ring.left_annihilator(r);
            let lhs = Cyclo::sum(e, ann.elements.iter().map(|&q| wt.value(ring.add(ring.one(), q))))
                .scale(&ratio(m.size(), 1));
            let sr = s_r(m, r);
            let products: Vec<Cyclo> = sr.elements.iter().map(|&a| w.value(a) * m.chi(a)).collect();
            let rhs = Cyclo::sum(e, &products).scale(&ratio(ann.len(), 1));
            lhs != rhs
        })
}

/// Checks `{((1+q)u⁻¹, ur) : q ∈ ann_lt(r), u ∈ 𝒰} = {(s,t) : st = r, Rt = Rr}`.
pub fn factorizations_complete(ring: &FiniteRing, r: usize) -> bool {
    let ideal = ring.principal_left_ideal(r);
    let mut expected: Vec<(usize, usize)> = ring.factorizations()[r]
        .iter()
        .copied()
        .filter(|&(_, t)| ring.principal_left_ideal(t).elements == ideal.elements)
        .collect();
    let mut produced: Vec<(usize, usize)> = ring
        .left_annihilator(r)
        .elements
        .iter()
        .flat_map(|&q| {
            ring.units().iter().map(move |&u| {
                let inv = ring.inverse(u).expect("units are invertible");
                (ring.mul(ring.add(ring.one(), q), inv), ring.mul(u, r))
            })
        })
        .collect();
    expected.sort_unstable();
    expected.dedup();
    produced.sort_unstable();
    produced.dedup();
    expected == produced
}

/// Whether `w̃ ∗ γ = ε` has exactly one bi-invariant solution in `ℛ₀`.
/// `None` when it has none.
pub fn bi_invariant_solution_unique(w: &WeightFn) -> Option<bool> {
    let m = w.module();
    let ring = m.ring();
    let e = m.exponent();
    let wt = inverse_fourier(w);
    let eps = epsilon(ring);
    let orbits = ring.two_sided_unit_orbits();
    let mut class = vec![0; ring.size()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            class[x] = i;
        }
    }
    let k = orbits.len();
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for r in ring.elements() {
        let mut row = vec![Cyclo::zero(e); k];
        for &(s, t) in &ring.factorizations()[r] {
            row[class[t]] = &row[class[t]] + wt.value(s);
        }
        matrix.push(row);
        rhs.push(eps.value(r).clone());
    }
    matrix.push(orbits.iter().map(|o| Cyclo::from_integer(o.len() as i64, e)).collect());
    rhs.push(Cyclo::zero(e));
    let sol = linalg::solve(matrix, rhs, k, e);
    sol.particular.map(|_| sol.rank == k)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateChecks {
    pub convolution_is_epsilon: bool,
    pub correlation_is_homogeneous: bool,
    pub gamma_bi_invariant: bool,
    pub gamma_in_r0: bool,
    pub proof_identity: bool,
}

impl CertificateChecks {
    fn all(&self) -> bool {
        self.convolution_is_epsilon
            && self.correlation_is_homogeneous
            && self.gamma_bi_invariant
            && self.gamma_in_r0
            && self.proof_identity
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCertificate {
    pub weight: Vec<FnEntry>,
    pub condition: ConditionReport,
    pub gamma: Option<Vec<FnEntry>>,
    pub checks: Option<CertificateChecks>,
    /// Open question: is the bi-invariant solution unique?
    pub gamma_unique: Option<bool>,
    pub character: &'static str,
    pub valid: bool,
    #[serde(skip)]
    gamma_fn: Option<SgFn>,
}

impl ExtensionCertificate {
    pub fn valid(&self) -> bool {
        self.valid
    }

    pub fn gamma(&self) -> Option<&SgFn> {
        self.gamma_fn.as_ref()
    }
}

/// Runs the whole pipeline and re-verifies every claimed identity.
///
/// A weight failing the condition yields a certificate with `valid = false`
/// and the failing submodules listed in the condition report.
pub fn certify(w: &WeightFn, cap: usize) -> Result<ExtensionCertificate> {
    let m = w.module();
    let condition = check_condition(w, cap)?;
    let mut cert = ExtensionCertificate {
        weight: w.entries(),
        condition,
        gamma: None,
        checks: None,
        gamma_unique: None,
        character: m.chi_provenance(),
        valid: false,
        gamma_fn: None,
    };
    if !cert.condition.holds {
        return Ok(cert);
    }
    let gamma = construct_gamma(w, TieBreak::MinIndex)?;
    let ring = m.ring();
    let checks = CertificateChecks {
        convolution_is_epsilon: convolve(&inverse_fourier(w), &gamma)? == epsilon(ring),
        correlation_is_homogeneous: correlate(w, &gamma)? == homogeneous_weight(m),
        gamma_bi_invariant: gamma.is_bi_invariant(),
        gamma_in_r0: gamma.in_r0(),
        proof_identity: proof_identity_violation(w).is_none(),
    };
    cert.valid = checks.all();
    cert.checks = Some(checks);
    cert.gamma = Some(gamma.entries());
    cert.gamma_unique = bi_invariant_solution_unique(w);
    cert.gamma_fn = Some(gamma);
    Ok(cert)
}

/// `fourier(ε)`, which equals the homogeneous weight.
pub fn homogeneous_weight_via_epsilon(module: &Arc<FrobeniusBimodule>) -> Result<WeightFn> {
    fourier(&epsilon(module.ring()), module)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z4() -> Arc<FrobeniusBimodule> {
        Arc::new(FrobeniusBimodule::dual(Arc::new(FiniteRing::zn(4).unwrap())).unwrap())
    }

    fn u2f2() -> Arc<FrobeniusBimodule> {
        Arc::new(FrobeniusBimodule::dual(Arc::new(FiniteRing::upper_triangular(2, 2).unwrap())).unwrap())
    }

    #[test]
    fn z4_homogeneous_and_epsilon() {
        let m = z4();
        let hom = homogeneous_weight(&m);
        assert_eq!(hom, WeightFn::from_integers(Arc::clone(&m), &[0, 1, 2, 1]).unwrap());
        let eps = epsilon(m.ring());
        let expect = SgFn::from_rationals(Arc::clone(m.ring()), &[q(1, 1), q(-1, 2), q(0, 1), q(-1, 2)]).unwrap();
        assert_eq!(eps, expect);
        assert_eq!(homogeneous_weight_via_epsilon(&m).unwrap(), hom);
    }

    #[test]
    fn u2f2_homogeneous_weight() {
        let m = u2f2();
        let hom = homogeneous_weight(&m);
        for a in m.elements() {
            let want = match m.label(a) {
                "(0,0,0)" | "(1,0,1)" => 0,
                "(0,0,1)" | "(1,0,0)" => 2,
                _ => 1,
            };
            assert_eq!(hom.value(a), &Cyclo::from_integer(want, m.exponent()), "{}", m.label(a));
        }
    }

    #[test]
    fn z4_lee_condition_and_gamma() {
        let m = z4();
        let lee = WeightFn::from_integers(Arc::clone(&m), &[0, 1, 2, 1]).unwrap();
        let report = check_condition(&lee, DEFAULT_LATTICE_CAP).unwrap();
        let values: Vec<Cyclo> = report.rows.iter().map(|r| r.character_sum.clone()).collect();
        assert_eq!(values, vec![Cyclo::from_integer(-2, 4); 2]);
        assert!(report.holds);
        let gamma = construct_gamma(&lee, TieBreak::MinIndex).unwrap();
        let expect = SgFn::from_rationals(Arc::clone(m.ring()), &[q(-1, 1), q(1, 2), q(0, 1), q(1, 2)]).unwrap();
        assert_eq!(gamma, expect);
        let cert = certify(&lee, DEFAULT_LATTICE_CAP).unwrap();
        assert!(cert.valid());
        assert_eq!(cert.gamma_unique, Some(true));
    }

    #[test]
    fn zero_weight_fails_everywhere() {
        let m = z4();
        let zero = WeightFn::zero(Arc::clone(&m));
        let report = check_condition(&zero, DEFAULT_LATTICE_CAP).unwrap();
        assert!(!report.holds);
        assert_eq!(report.failing().count(), 2);
        match construct_gamma(&zero, TieBreak::MinIndex) {
            Err(Error::ConditionViolated { submodule, stage }) => {
                assert_eq!(submodule, "A");
                assert_eq!(stage, "units");
            }
            other => panic!("expected a condition violation, got {other:?}"),
        }
        let cert = certify(&zero, DEFAULT_LATTICE_CAP).unwrap();
        assert!(!cert.valid() && cert.gamma.is_none());
    }

    #[test]
    fn invalid_weights_are_input_errors() {
        let m = z4();
        let skew = WeightFn::from_integers(Arc::clone(&m), &[0, 1, 2, 3]).unwrap();
        assert_eq!(check_condition(&skew, 100).unwrap_err().kind(), "input");
        let nonzero_at_zero = WeightFn::from_integers(Arc::clone(&m), &[1, 1, 2, 1]).unwrap();
        assert_eq!(construct_gamma(&nonzero_at_zero, TieBreak::MinIndex).unwrap_err().kind(), "input");
    }

    #[test]
    fn s_r_examples() {
        let m = z4();
        assert_eq!(s_r(&m, 1).len(), 4);
        assert_eq!(s_r(&m, 2).elements, vec![0, 2]);
        assert_eq!(s_r(&m, 0).elements, vec![0]);
    }

    #[test]
    fn z8_needs_orbit_corrected_divisor() {
        // r = 2 has a nontrivial unit stabilizer and a nonzero numerator
        let m = Arc::new(FrobeniusBimodule::dual(Arc::new(FiniteRing::zn(8).unwrap())).unwrap());
        let w = WeightFn::from_integers(Arc::clone(&m), &[0, 1, 3, 1, 5, 1, 3, 1]).unwrap();
        let cert = certify(&w, DEFAULT_LATTICE_CAP).unwrap();
        assert!(cert.condition.holds);
        assert!(cert.valid());
    }

    #[test]
    fn tie_break_order_does_not_change_gamma() {
        let m = Arc::new(FrobeniusBimodule::dual(Arc::new(FiniteRing::matrix(2, 2).unwrap())).unwrap());
        let hom = homogeneous_weight(&m);
        let a = construct_gamma(&hom, TieBreak::MinIndex).unwrap();
        let b = construct_gamma(&hom, TieBreak::MaxIndex).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn factorization_completeness_on_small_rings() {
        for ring in [
            FiniteRing::zn(12).unwrap(),
            FiniteRing::matrix(2, 2).unwrap(),
            FiniteRing::upper_triangular(2, 2).unwrap(),
        ] {
            for r in ring.elements() {
                assert!(factorizations_complete(&ring, r), "{} at {}", ring.name(), ring.label(r));
            }
        }
    }
}
