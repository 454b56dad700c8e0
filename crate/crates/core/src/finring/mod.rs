//! Finite unital rings given by complete addition and multiplication tables.
//!
//! Elements are dense indices `0..size`. Every constructor funnels through
//! [`FiniteRing::assemble`], which checks the ring axioms exhaustively before
//! handing out a value; after that the ring is immutable.

mod abelian;
mod spec;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use abelian::AdditiveDecomposition;
pub use spec::{build_ring, RingSpec};

/// Default upper bound on `|R|`.
pub const DEFAULT_SIZE_CAP: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// An additive subgroup closed under the scalar action(s) named by `side`.
///
/// The same type describes ideals of a ring and submodules of a bimodule;
/// `elements` index into whichever structure produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Submodule {
    pub side: Side,
    /// Sorted, duplicate free, always contains the zero index.
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Submodule {
    pub(crate) fn new(side: Side, mut elements: Vec<usize>, generators: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Submodule {
            side,
            elements,
            generators,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the zero submodule.
    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

pub struct FiniteRing {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    inverse: Vec<Option<usize>>,
    units: Vec<usize>,
    decomposition: AdditiveDecomposition,
    labels: Vec<String>,
    name: String,
    factorizations: OnceLock<Vec<Vec<(usize, usize)>>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("orders", &self.decomposition.orders())
            .finish()
    }
}

/// Table equality under the given labeling.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Integers modulo `n`.
    pub fn zn(n: usize) -> Result<Self> {
        build_ring(&RingSpec::Zn { n }, DEFAULT_SIZE_CAP)
    }

    /// Full matrix ring `M_k(F_p)`.
    pub fn matrix(k: usize, p: usize) -> Result<Self> {
        build_ring(&RingSpec::Matrix { k, p }, DEFAULT_SIZE_CAP)
    }

    /// Upper-triangular matrices `U_k(F_p)`.
    pub fn upper_triangular(k: usize, p: usize) -> Result<Self> {
        build_ring(&RingSpec::UpperTriangular { k, p }, DEFAULT_SIZE_CAP)
    }

    /// Direct product of two rings, elements ordered lexicographically.
    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<Self> {
        spec::product(a, b, DEFAULT_SIZE_CAP)
    }

    /// Ring from explicit row-major tables. The additive structure is
    /// recovered with [`AdditiveDecomposition::compute`].
    pub fn from_tables(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        build_ring(&RingSpec::Tables { add, mul, labels }, DEFAULT_SIZE_CAP)
    }

    /// Verifies the ring axioms and derives units and negation.
    pub(crate) fn assemble(
        name: String,
        size: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        labels: Vec<String>,
        decomposition: Option<AdditiveDecomposition>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Construction("ring must have at least one element".into()));
        }
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::Construction("tables must be size x size".into()));
        }
        if let Some(bad) = add.iter().chain(mul.iter()).find(|&&x| x >= size) {
            return Err(Error::Construction(format!("table entry {bad} out of range")));
        }
        if labels.len() != size {
            return Err(Error::Construction(format!(
                "expected {size} labels, got {}",
                labels.len()
            )));
        }
        let at = |t: &[usize], a: usize, b: usize| t[a * size + b];

        let zero = (0..size)
            .find(|&z| (0..size).all(|x| at(&add, z, x) == x && at(&add, x, z) == x))
            .ok_or_else(|| Error::Construction("addition has no identity".into()))?;
        let one = (0..size)
            .find(|&e| (0..size).all(|x| at(&mul, e, x) == x && at(&mul, x, e) == x))
            .ok_or_else(|| Error::Construction("multiplication has no identity".into()))?;

        let mut neg = vec![usize::MAX; size];
        for x in 0..size {
            for y in 0..size {
                if at(&add, x, y) != at(&add, y, x) {
                    return Err(Error::Construction(format!(
                        "addition not commutative at ({x}, {y})"
                    )));
                }
                if at(&add, x, y) == zero {
                    neg[x] = y;
                }
            }
            if neg[x] == usize::MAX {
                return Err(Error::Construction(format!("element {x} has no additive inverse")));
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab_sum = at(&add, a, b);
                let ab_prod = at(&mul, a, b);
                for c in 0..size {
                    if at(&add, ab_sum, c) != at(&add, a, at(&add, b, c)) {
                        return Err(Error::Construction(format!(
                            "addition not associative at ({a}, {b}, {c})"
                        )));
                    }
                    if at(&mul, ab_prod, c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(Error::Construction(format!(
                            "multiplication not associative at ({a}, {b}, {c})"
                        )));
                    }
                    let bc_sum = at(&add, b, c);
                    if at(&mul, a, bc_sum) != at(&add, ab_prod, at(&mul, a, c)) {
                        return Err(Error::Construction(format!(
                            "left distributivity fails at ({a}, {b}, {c})"
                        )));
                    }
                    if at(&mul, bc_sum, a) != at(&add, at(&mul, b, a), at(&mul, c, a)) {
                        return Err(Error::Construction(format!(
                            "right distributivity fails at ({b}, {c}, {a})"
                        )));
                    }
                }
            }
        }

        let decomposition = match decomposition {
            Some(d) => d,
            None => AdditiveDecomposition::compute(size, &add, zero)?,
        };
        decomposition.verify(size, &add)?;

        let mut inverse = vec![None; size];
        for r in 0..size {
            inverse[r] = (0..size).find(|&s| at(&mul, r, s) == one && at(&mul, s, r) == one);
        }
        let units = (0..size).filter(|&r| inverse[r].is_some()).collect();

        Ok(FiniteRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            inverse,
            units,
            decomposition,
            labels,
            name,
            factorizations: OnceLock::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverse[a]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse[a].is_some()
    }

    /// The group of units, in increasing index order.
    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn decomposition(&self) -> &AdditiveDecomposition {
        &self.decomposition
    }

    /// Exponent of `(R, +)`; 1 for the zero ring.
    pub fn exponent(&self) -> u64 {
        self.decomposition.exponent()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        let wanted = normalize_label(label);
        self.labels
            .iter()
            .position(|l| normalize_label(l) == wanted)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub(crate) fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub(crate) fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// For every `r`, all pairs `(s, t)` with `st = r`.
    pub fn factorizations(&self) -> &[Vec<(usize, usize)>] {
        self.factorizations.get_or_init(|| {
            let mut out = vec![Vec::new(); self.size];
            for s in 0..self.size {
                for t in 0..self.size {
                    out[self.mul(s, t)].push((s, t));
                }
            }
            out
        })
    }

    /// `Rr = {sr : s in R}`.
    pub fn principal_left_ideal(&self, r: usize) -> Submodule {
        let elements = (0..self.size).map(|s| self.mul(s, r)).collect();
        Submodule::new(Side::Left, elements, vec![r])
    }

    /// `rR = {rs : s in R}`.
    pub fn principal_right_ideal(&self, r: usize) -> Submodule {
        let elements = (0..self.size).map(|s| self.mul(r, s)).collect();
        Submodule::new(Side::Right, elements, vec![r])
    }

    /// `ann_lt(r) = {q : qr = 0}`, a left ideal.
    pub fn left_annihilator(&self, r: usize) -> Submodule {
        let elements: Vec<usize> = (0..self.size)
            .filter(|&q| self.mul(q, r) == self.zero)
            .collect();
        let generators = greedy_generators(&elements, self.size, |x| {
            (0..self.size).map(|s| self.mul(s, x)).collect()
        }, |a, b| self.add(a, b), self.zero);
        Submodule::new(Side::Left, elements, generators)
    }

    /// `UrU`, the orbit of `r` under two-sided multiplication by units.
    pub fn two_sided_unit_orbit(&self, r: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = self
            .units
            .iter()
            .flat_map(|&u| self.units.iter().map(move |&v| (u, v)))
            .map(|(u, v)| self.mul(self.mul(u, r), v))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// Partition of `R` into two-sided unit orbits, each sorted, ordered by
    /// smallest member.
    pub fn two_sided_unit_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for r in 0..self.size {
            if seen[r] {
                continue;
            }
            let orbit = self.two_sided_unit_orbit(r);
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// Labels compare ignoring whitespace.
pub(crate) fn normalize_label(label: &str) -> String {
    label.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Picks generators in increasing index order, keeping each element that is
/// not already in the span of the earlier picks. `cyclic(x)` must return the
/// cyclic submodule generated by `x`.
pub(crate) fn greedy_generators(
    elements: &[usize],
    universe: usize,
    cyclic: impl Fn(usize) -> Vec<usize>,
    add: impl Fn(usize, usize) -> usize,
    zero: usize,
) -> Vec<usize> {
    let mut span = vec![false; universe];
    span[zero] = true;
    let mut members = vec![zero];
    let mut gens = Vec::new();
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    for &x in &sorted {
        if span[x] {
            continue;
        }
        gens.push(x);
        let cyc = cyclic(x);
        let mut next = Vec::new();
        for &m in &members {
            for &c in &cyc {
                let s = add(m, c);
                if !span[s] {
                    span[s] = true;
                    next.push(s);
                }
            }
        }
        members.extend(next);
    }
    gens
}
