//! The character bimodule `A = R̂` and generating characters.
//!
//! A character `π` of `(R, +)` is stored by its exponent vector against the
//! ring's cyclic decomposition: `π(r) = ζ_e^{Σ x_i c_i(r) e/d_i}` where
//! `c(r)` are the coordinates of `r`. The index of a character is the
//! big-endian mixed-radix number of its exponents, so index 0 is the trivial
//! character (the zero of `A`).
//!
//! Scalar actions: `(r·π)(t) = π(tr)` on the left, `(π·r)(t) = π(rt)` on the
//! right. The generating character is evaluation at one, `χ(π) = π(1)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::finring::{greedy_generators, normalize_label, FiniteRing, Side, Submodule};
use crate::lattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub exponents: Vec<u64>,
}

/// Value exponent `k` with `π(r) = ζ_e^k`.
fn pairing(ring: &FiniteRing, exponents: &[u64], r: usize) -> u64 {
    let dec = ring.decomposition();
    let e = dec.exponent();
    dec.orders()
        .iter()
        .zip(exponents)
        .zip(dec.coords(r))
        .map(|((&d, &x), &c)| x * c % d * (e / d))
        .sum::<u64>()
        % e
}

fn decode(orders: &[u64], mut index: usize) -> Vec<u64> {
    let mut out = vec![0; orders.len()];
    for (slot, &d) in out.iter_mut().zip(orders).rev() {
        *slot = index as u64 % d;
        index /= d as usize;
    }
    out
}

fn encode(orders: &[u64], exps: &[u64]) -> usize {
    exps.iter()
        .zip(orders)
        .fold(0u64, |acc, (&x, &d)| acc * d + x % d) as usize
}

/// Exponent vector of the character `t ↦ ζ_e^{value(b_i)}` read off on the
/// basis elements `b_i`.
fn exponents_from_basis_values(ring: &FiniteRing, value: impl Fn(usize) -> u64) -> Vec<u64> {
    let dec = ring.decomposition();
    let e = dec.exponent();
    dec.orders()
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let v = value(dec.basis_element(i));
            debug_assert_eq!(v % (e / d), 0);
            v / (e / d) % d
        })
        .collect()
}

/// Searches the characters of `(R, +)` for one whose kernel contains no
/// nonzero left and no nonzero right ideal. `None` means `R` is not Frobenius.
pub fn generating_character_search(ring: &FiniteRing) -> Option<Character> {
    let orders = ring.decomposition().orders();
    let nonzero: Vec<usize> = ring.elements().filter(|&r| r != ring.zero()).collect();
    (0..ring.size()).map(|idx| decode(orders, idx)).find(|exps| {
        nonzero.iter().all(|&r| {
            let left = ring.elements().any(|s| pairing(ring, exps, ring.mul(s, r)) != 0);
            let right = ring.elements().any(|s| pairing(ring, exps, ring.mul(r, s)) != 0);
            left && right
        })
    })
    .map(|exponents| Character { exponents })
}

/// The Frobenius bimodule `R̂` with its generating character.
pub struct FrobeniusBimodule {
    ring: Arc<FiniteRing>,
    exponent: u64,
    characters: Vec<Character>,
    add: Vec<usize>,
    neg: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    chi_exp: Vec<u64>,
    zeta: Vec<Cyclo>,
    labels: Vec<String>,
}

impl std::fmt::Debug for FrobeniusBimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrobeniusBimodule")
            .field("ring", &self.ring.name())
            .field("size", &self.size())
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// Serializable snapshot of the bimodule tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleTables {
    pub ring: String,
    pub exponent: u64,
    pub labels: Vec<String>,
    /// `left[r][a] = r·a`
    pub left: Vec<Vec<usize>>,
    /// `right[a][r] = a·r`
    pub right: Vec<Vec<usize>>,
    /// `χ(a) = ζ_e^{chi_exponents[a]}`
    pub chi_exponents: Vec<u64>,
    pub chi: String,
}

impl FrobeniusBimodule {
    /// Builds `R̂` with both actions tabulated and checks the bimodule and
    /// generating-character axioms exhaustively.
    pub fn dual(ring: Arc<FiniteRing>) -> Result<Self> {
        let n = ring.size();
        let dec = ring.decomposition().clone();
        let orders = dec.orders().to_vec();
        let e = dec.exponent();
        let characters: Vec<Character> = (0..n)
            .map(|i| Character {
                exponents: decode(&orders, i),
            })
            .collect();

        let mut add = vec![0; n * n];
        let mut neg = vec![0; n];
        for a in 0..n {
            let xa = &characters[a].exponents;
            let minus: Vec<u64> = xa.iter().zip(&orders).map(|(&x, &d)| (d - x) % d).collect();
            neg[a] = encode(&orders, &minus);
            for b in 0..n {
                let sum: Vec<u64> = xa
                    .iter()
                    .zip(&characters[b].exponents)
                    .map(|(x, y)| x + y)
                    .collect();
                add[a * n + b] = encode(&orders, &sum);
            }
        }

        let mut left = vec![0; n * n];
        let mut right = vec![0; n * n];
        for r in 0..n {
            for a in 0..n {
                let xa = &characters[a].exponents;
                let l = exponents_from_basis_values(&ring, |b| pairing(&ring, xa, ring.mul(b, r)));
                let rt = exponents_from_basis_values(&ring, |b| pairing(&ring, xa, ring.mul(r, b)));
                left[r * n + a] = encode(&orders, &l);
                right[a * n + r] = encode(&orders, &rt);
            }
        }

        let chi_exp = (0..n)
            .map(|a| pairing(&ring, &characters[a].exponents, ring.one()))
            .collect();
        let zeta = (0..e as i64).map(|k| Cyclo::root_of_unity(e, k)).collect();
        let labels = characters
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.exponents.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();

        let module = FrobeniusBimodule {
            ring,
            exponent: e,
            characters,
            add,
            neg,
            left,
            right,
            chi_exp,
            zeta,
            labels,
        };
        module.verify()?;
        Ok(module)
    }

    fn verify(&self) -> Result<()> {
        let ring = &*self.ring;
        let n = self.size();
        let internal = |msg: String| Err(Error::Internal(msg));

        // homomorphism property, checked against every basis element
        let dec = ring.decomposition();
        for c in &self.characters {
            for x in ring.elements() {
                for i in 0..dec.orders().len() {
                    let b = dec.basis_element(i);
                    let lhs = pairing(ring, &c.exponents, ring.add(x, b));
                    let rhs = (pairing(ring, &c.exponents, x) + pairing(ring, &c.exponents, b))
                        % self.exponent;
                    if lhs != rhs {
                        return internal(format!("character {:?} is not additive", c.exponents));
                    }
                }
            }
        }

        for a in 0..n {
            if self.left_act(ring.one(), a) != a || self.right_act(a, ring.one()) != a {
                return internal(format!("action of one moves {}", self.labels[a]));
            }
        }
        for r in ring.elements() {
            for a in 0..n {
                let ra = self.left_act(r, a);
                let ar = self.right_act(a, r);
                for t in ring.elements() {
                    let xa = &self.characters[a].exponents;
                    if self.value_exp(ra, t) != pairing(ring, xa, ring.mul(t, r))
                        || self.value_exp(ar, t) != pairing(ring, xa, ring.mul(r, t))
                    {
                        return internal(format!("action table wrong at r={r}, a={a}, t={t}"));
                    }
                }
                for s in ring.elements() {
                    if self.left_act(ring.mul(r, s), a) != self.left_act(r, self.left_act(s, a)) {
                        return internal(format!("left action not associative at ({r}, {s}, {a})"));
                    }
                    if self.right_act(a, ring.mul(r, s)) != self.right_act(self.right_act(a, r), s) {
                        return internal(format!("right action not associative at ({a}, {r}, {s})"));
                    }
                    if self.right_act(ra, s) != self.left_act(r, self.right_act(a, s)) {
                        return internal(format!("actions do not commute at ({r}, {a}, {s})"));
                    }
                }
            }
        }

        // ker χ contains no nonzero cyclic left or right submodule
        for a in (0..n).filter(|&a| a != self.zero()) {
            let left_ok = ring.elements().any(|r| self.chi_exp[self.left_act(r, a)] != 0);
            let right_ok = ring.elements().any(|r| self.chi_exp[self.right_act(a, r)] != 0);
            if !(left_ok && right_ok) {
                return internal(format!(
                    "kernel of χ contains a nonzero submodule generated by {}",
                    self.labels[a]
                ));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// `|A|`, always equal to `|R|`.
    pub fn size(&self) -> usize {
        self.characters.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// Exponent `e` of `(A, +)`; every character value lies in `Q(ζ_e)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn character(&self, a: usize) -> &Character {
        &self.characters[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Accepts labels with or without the surrounding parentheses.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        let strip = |s: &str| {
            normalize_label(s)
                .trim_start_matches('(')
                .trim_end_matches(')')
                .to_string()
        };
        let wanted = strip(label);
        self.labels.iter().position(|l| strip(l) == wanted)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `r·a`, i.e. the character `t ↦ a(tr)`.
    #[inline]
    pub fn left_act(&self, r: usize, a: usize) -> usize {
        self.left[r * self.size() + a]
    }

    /// `a·r`, i.e. the character `t ↦ a(rt)`.
    #[inline]
    pub fn right_act(&self, a: usize, r: usize) -> usize {
        self.right[a * self.size() + r]
    }

    /// Exponent `k` with `a(r) = ζ_e^k`.
    pub fn value_exp(&self, a: usize, r: usize) -> u64 {
        pairing(&self.ring, &self.characters[a].exponents, r)
    }

    /// `ζ_e^k`.
    pub fn zeta(&self, k: u64) -> &Cyclo {
        &self.zeta[(k % self.exponent) as usize]
    }

    /// Exponent of `χ(a)`.
    pub fn chi_exp(&self, a: usize) -> u64 {
        self.chi_exp[a]
    }

    /// `χ(a) = a(1)`.
    pub fn chi(&self, a: usize) -> &Cyclo {
        self.zeta(self.chi_exp[a])
    }

    /// Which generating character is in use.
    pub fn chi_provenance(&self) -> &'static str {
        "evaluation at one: chi(pi) = pi(1)"
    }

    /// `Σ_{s∈S} χ(s)`.
    pub fn chi_sum_over(&self, s: &Submodule) -> Cyclo {
        Cyclo::sum(self.exponent, s.elements.iter().map(|&x| self.chi(x)))
    }

    /// `aR`.
    pub fn cyclic_right_submodule(&self, a: usize) -> Submodule {
        let elements = self.ring.elements().map(|r| self.right_act(a, r)).collect();
        Submodule::new(Side::Right, elements, vec![a])
    }

    /// `Ra`.
    pub fn cyclic_left_submodule(&self, a: usize) -> Submodule {
        let elements = self.ring.elements().map(|r| self.left_act(r, a)).collect();
        Submodule::new(Side::Left, elements, vec![a])
    }

    /// `a𝒰`, sorted.
    pub fn right_unit_orbit(&self, a: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = self.ring.units().iter().map(|&u| self.right_act(a, u)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// `𝒰a𝒰`, sorted.
    pub fn two_sided_unit_orbit(&self, a: usize) -> Vec<usize> {
        let units = self.ring.units();
        let mut orbit: Vec<usize> = units
            .iter()
            .flat_map(|&u| units.iter().map(move |&v| (u, v)))
            .map(|(u, v)| self.right_act(self.left_act(u, a), v))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// Partition of `A` into two-sided unit orbits, ordered by smallest member.
    pub fn two_sided_unit_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for a in self.elements() {
            if !seen[a] {
                let orbit = self.two_sided_unit_orbit(a);
                for &x in &orbit {
                    seen[x] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// Right submodule spanned by `elements`, with greedy generators.
    pub fn right_span(&self, elements: Vec<usize>) -> Submodule {
        let generators = greedy_generators(
            &elements,
            self.size(),
            |x| self.cyclic_right_submodule(x).elements,
            |a, b| self.add(a, b),
            self.zero(),
        );
        Submodule::new(Side::Right, elements, generators)
    }

    /// Every right submodule of `A`, ordered by size then elements.
    pub fn all_right_submodules(&self, cap: usize) -> Result<Vec<Submodule>> {
        let all: Vec<usize> = self.elements().collect();
        let subs = lattice::all_submodules(
            self.size(),
            &all,
            |a, b| self.add(a, b),
            |x| self.cyclic_right_submodule(x).elements,
            cap,
        )?;
        Ok(subs
            .into_iter()
            .map(|elements| {
                // prefer a single generator when the submodule is cyclic
                let single = elements
                    .iter()
                    .copied()
                    .find(|&a| self.cyclic_right_submodule(a).elements == elements);
                match single {
                    Some(a) => Submodule::new(Side::Right, elements, vec![a]),
                    None => self.right_span(elements),
                }
            })
            .collect())
    }

    /// For each unit `u`, a unit `u'` with `χ(u·b) = χ(b·u')` for all `b`.
    pub fn unit_twist_partners(&self) -> Option<Vec<(usize, usize)>> {
        let units = self.ring.units();
        units
            .iter()
            .map(|&u| {
                units
                    .iter()
                    .find(|&&v| {
                        self.elements()
                            .all(|b| self.chi_exp[self.left_act(u, b)] == self.chi_exp[self.right_act(b, v)])
                    })
                    .map(|&v| (u, v))
            })
            .collect()
    }

    /// Whether `{b ↦ χ(r·b)}` and `{b ↦ χ(b·r)}` each run through all `|A|`
    /// characters of `A` as `r` ranges over `R`.
    pub fn chi_generates_dual(&self) -> bool {
        let distinct = |f: &dyn Fn(usize, usize) -> usize| {
            let mut seen = std::collections::HashSet::new();
            self.ring.elements().all(|r| {
                let values: Vec<u64> = self.elements().map(|b| self.chi_exp[f(r, b)]).collect();
                seen.insert(values)
            })
        };
        distinct(&|r, b| self.left_act(r, b)) && distinct(&|r, b| self.right_act(b, r))
    }

    pub fn tables(&self) -> BimoduleTables {
        let n = self.size();
        let rows = |t: &[usize]| t.chunks(n).map(<[usize]>::to_vec).collect();
        BimoduleTables {
            ring: self.ring.name().to_string(),
            exponent: self.exponent,
            labels: self.labels.clone(),
            left: rows(&self.left),
            right: rows(&self.right),
            chi_exponents: self.chi_exp.clone(),
            chi: self.chi_provenance().to_string(),
        }
    }
}

/// Shorthand for [`FrobeniusBimodule::dual`].
pub fn dual_bimodule(ring: Arc<FiniteRing>) -> Result<FrobeniusBimodule> {
    FrobeniusBimodule::dual(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_of(ring: FiniteRing) -> FrobeniusBimodule {
        FrobeniusBimodule::dual(Arc::new(ring)).unwrap()
    }

    /// Parses "(x,y,z)".
    fn xyz(m: &FrobeniusBimodule, s: &str) -> usize {
        m.element_by_label(s).unwrap()
    }

    #[test]
    fn u2f2_action_formulas() {
        let m = dual_of(FiniteRing::upper_triangular(2, 2).unwrap());
        let ring = m.ring().clone();
        assert_eq!(m.size(), 8);
        assert_eq!(m.exponent(), 2);
        for r in ring.elements() {
            let abc: Vec<u64> = ring.decomposition().coords(r).to_vec();
            let (a, b, c) = (abc[0], abc[1], abc[2]);
            for p in m.elements() {
                let e = &m.character(p).exponents;
                let (x, y, z) = (e[0], e[1], e[2]);
                let left = &m.character(m.left_act(r, p)).exponents;
                assert_eq!(left, &vec![(a * x + b * y) % 2, c * y % 2, c * z % 2]);
                let right = &m.character(m.right_act(p, r)).exponents;
                assert_eq!(right, &vec![a * x % 2, a * y % 2, (b * y + c * z) % 2]);
            }
        }
    }

    #[test]
    fn z4_dual_is_z4() {
        let m = dual_of(FiniteRing::zn(4).unwrap());
        for a in 0..4 {
            assert_eq!(m.chi(a), &Cyclo::root_of_unity(4, a as i64));
            for r in 0..4 {
                assert_eq!(m.left_act(r, a), r * a % 4);
                assert_eq!(m.right_act(a, r), r * a % 4);
            }
        }
        assert_eq!(m.label(3), "(3)");
        assert_eq!(m.element_by_label("3"), Some(3));
    }

    #[test]
    fn trivial_ring_dual() {
        let m = dual_of(FiniteRing::zn(1).unwrap());
        assert_eq!(m.size(), 1);
        assert!(m.chi(0).is_one());
    }

    #[test]
    fn generating_character_search_decides_frobenius() {
        let z4 = FiniteRing::zn(4).unwrap();
        let found = generating_character_search(&z4).unwrap();
        assert_eq!(found.exponents, vec![1]);
        assert!(generating_character_search(&FiniteRing::matrix(2, 2).unwrap()).is_some());
        assert!(generating_character_search(&FiniteRing::zn(7).unwrap()).is_some());
        assert!(generating_character_search(&FiniteRing::upper_triangular(2, 2).unwrap()).is_none());
    }

    #[test]
    fn chi_sums_over_small_submodules() {
        let m = dual_of(FiniteRing::upper_triangular(2, 2).unwrap());
        let zero = Submodule::new(Side::Right, vec![0], vec![0]);
        assert!(m.chi_sum_over(&zero).is_one());
        let all = Submodule::new(Side::Right, m.elements().collect(), vec![]);
        assert!(m.chi_sum_over(&all).is_zero());
        let s = m.cyclic_right_submodule(xyz(&m, "(0,0,1)"));
        assert_eq!(s.len(), 2);
        assert!(m.chi_sum_over(&s).is_zero());
    }

    #[test]
    fn right_unit_orbits_u2f2() {
        let m = dual_of(FiniteRing::upper_triangular(2, 2).unwrap());
        let orbit: Vec<&str> = m
            .right_unit_orbit(xyz(&m, "(0,1,0)"))
            .iter()
            .map(|&a| m.label(a))
            .collect();
        assert_eq!(orbit, vec!["(0,1,0)", "(0,1,1)"]);
    }

    #[test]
    fn twist_partners_and_generation() {
        for ring in [
            FiniteRing::zn(9).unwrap(),
            FiniteRing::matrix(2, 2).unwrap(),
            FiniteRing::upper_triangular(2, 2).unwrap(),
        ] {
            let m = dual_of(ring);
            let partners = m.unit_twist_partners().expect("every unit has a partner");
            assert_eq!(partners.len(), m.ring().units().len());
            assert!(m.chi_generates_dual());
        }
    }
}
