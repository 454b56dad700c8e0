//! Functions on `R` under multiplicative convolution, functions on `A` under
//! right correlation, and the Fourier transform between them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::cyclo::{parse_rational, Cyclo};
use crate::dualmod::FrobeniusBimodule;
use crate::error::{Error, Result};
use crate::finring::FiniteRing;

/// An element of the semigroup ring: a `Cyclo`-valued function on `R`.
#[derive(Clone, Debug)]
pub struct SgFn {
    ring: Arc<FiniteRing>,
    values: Vec<Cyclo>,
}

/// A `Cyclo`-valued function on the alphabet `A`.
#[derive(Clone, Debug)]
pub struct WeightFn {
    module: Arc<FrobeniusBimodule>,
    values: Vec<Cyclo>,
}

fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for SgFn {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.values == other.values
    }
}

impl PartialEq for WeightFn {
    fn eq(&self, other: &Self) -> bool {
        same_ring(self.module.ring(), other.module.ring()) && self.values == other.values
    }
}

impl SgFn {
    pub fn new(ring: Arc<FiniteRing>, values: Vec<Cyclo>) -> Result<Self> {
        if values.len() != ring.size() {
            return Err(Error::Input(format!(
                "function on R needs {} values, got {}",
                ring.size(),
                values.len()
            )));
        }
        Ok(SgFn { ring, values })
    }

    pub fn zero(ring: Arc<FiniteRing>) -> Self {
        let e = ring.exponent();
        let values = vec![Cyclo::zero(e); ring.size()];
        SgFn { ring, values }
    }

    /// Indicator of the single element `r`.
    pub fn delta(ring: Arc<FiniteRing>, r: usize) -> Self {
        let mut f = Self::zero(ring);
        f.values[r] = Cyclo::one(f.ring.exponent());
        f
    }

    pub fn from_rationals(ring: Arc<FiniteRing>, values: &[BigRational]) -> Result<Self> {
        let e = ring.exponent();
        Self::new(ring, values.iter().map(|q| Cyclo::from_rational(q, e)).collect())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, r: usize) -> &Cyclo {
        &self.values[r]
    }

    pub fn sum(&self) -> Cyclo {
        Cyclo::sum(self.ring.exponent(), &self.values)
    }

    /// Membership in `ℛ₀`: values sum to zero.
    pub fn in_r0(&self) -> bool {
        self.sum().is_zero()
    }

    /// First `(r, urv)` with `α(urv) ≠ α(r)`, if any.
    pub fn bi_invariance_violation(&self) -> Option<(usize, usize)> {
        let ring = &*self.ring;
        for r in ring.elements() {
            for &u in ring.units() {
                for &v in ring.units() {
                    let x = ring.mul(ring.mul(u, r), v);
                    if self.values[x] != self.values[r] {
                        return Some((r, x));
                    }
                }
            }
        }
        None
    }

    pub fn is_bi_invariant(&self) -> bool {
        self.bi_invariance_violation().is_none()
    }

    pub fn try_add(&self, other: &SgFn) -> Result<SgFn> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(SgFn {
            ring: Arc::clone(&self.ring),
            values,
        })
    }

    pub fn scale(&self, c: &Cyclo) -> SgFn {
        SgFn {
            ring: Arc::clone(&self.ring),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

impl WeightFn {
    pub fn new(module: Arc<FrobeniusBimodule>, values: Vec<Cyclo>) -> Result<Self> {
        if values.len() != module.size() {
            return Err(Error::Input(format!(
                "function on A needs {} values, got {}",
                module.size(),
                values.len()
            )));
        }
        Ok(WeightFn { module, values })
    }

    pub fn zero(module: Arc<FrobeniusBimodule>) -> Self {
        let values = vec![Cyclo::zero(module.exponent()); module.size()];
        WeightFn { module, values }
    }

    pub fn from_rationals(module: Arc<FrobeniusBimodule>, values: &[BigRational]) -> Result<Self> {
        let e = module.exponent();
        Self::new(module, values.iter().map(|q| Cyclo::from_rational(q, e)).collect())
    }

    pub fn from_integers(module: Arc<FrobeniusBimodule>, values: &[i64]) -> Result<Self> {
        let e = module.exponent();
        Self::new(module, values.iter().map(|&v| Cyclo::from_integer(v, e)).collect())
    }

    /// The generating character as an element of `𝒜`.
    pub fn chi(module: Arc<FrobeniusBimodule>) -> Self {
        let values = module.elements().map(|a| module.chi(a).clone()).collect();
        WeightFn { module, values }
    }

    /// Reads a weight table: a JSON object mapping element labels to
    /// rational strings (or integers). Every element must be listed.
    pub fn from_json(module: Arc<FrobeniusBimodule>, text: &str) -> Result<Self> {
        let table: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("weight table: {e}")))?;
        let mut values: Vec<Option<BigRational>> = vec![None; module.size()];
        for (label, raw) in &table {
            let a = module
                .element_by_label(label)
                .ok_or_else(|| Error::Input(format!("unknown element label {label:?}")))?;
            let q = match raw {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(n) if n.is_i64() => {
                    BigRational::from_integer(n.as_i64().unwrap().into())
                }
                other => {
                    return Err(Error::Input(format!(
                        "weight of {label:?} must be an integer or rational string, got {other}"
                    )))
                }
            };
            if values[a].replace(q).is_some() {
                return Err(Error::Input(format!("element {label:?} listed twice")));
            }
        }
        let values: Vec<BigRational> = values
            .into_iter()
            .enumerate()
            .map(|(a, v)| v.ok_or_else(|| Error::Input(format!("missing weight for {}", module.label(a)))))
            .collect::<Result<_>>()?;
        Self::from_rationals(module, &values)
    }

    /// Label → rational string table; fails if some value is not rational.
    pub fn to_table(&self) -> Result<BTreeMap<String, String>> {
        self.module
            .elements()
            .map(|a| {
                let q = self.values[a]
                    .as_rational()
                    .ok_or_else(|| Error::Input("weight is not rational-valued".into()))?;
                Ok((self.module.label(a).to_string(), q.to_string()))
            })
            .collect()
    }

    pub fn module(&self) -> &Arc<FrobeniusBimodule> {
        &self.module
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, a: usize) -> &Cyclo {
        &self.values[a]
    }

    /// Membership in `𝒜₀`: `w(0) = 0`.
    pub fn in_a0(&self) -> bool {
        self.values[self.module.zero()].is_zero()
    }

    /// First `(a, uav)` with `w(uav) ≠ w(a)`, if any.
    pub fn bi_invariance_violation(&self) -> Option<(usize, usize)> {
        let m = &*self.module;
        let units = m.ring().units();
        for a in m.elements() {
            for &u in units {
                for &v in units {
                    let x = m.right_act(m.left_act(u, a), v);
                    if self.values[x] != self.values[a] {
                        return Some((a, x));
                    }
                }
            }
        }
        None
    }

    pub fn is_bi_invariant(&self) -> bool {
        self.bi_invariance_violation().is_none()
    }

    /// Whether every value is rational.
    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.as_rational().is_some())
    }

    pub fn try_sub(&self, other: &WeightFn) -> Result<WeightFn> {
        if !same_ring(self.module.ring(), other.module.ring()) {
            return Err(Error::RingMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(WeightFn {
            module: Arc::clone(&self.module),
            values,
        })
    }

    /// Extended weight `Σ w(x_i)` of a word.
    pub fn word_weight(&self, word: &[usize]) -> Cyclo {
        Cyclo::sum(self.module.exponent(), word.iter().map(|&a| &self.values[a]))
    }
}

/// `(α ∗ β)(r) = Σ_{st=r} α(s)β(t)`.
pub fn convolve(alpha: &SgFn, beta: &SgFn) -> Result<SgFn> {
    if !same_ring(&alpha.ring, &beta.ring) {
        return Err(Error::RingMismatch);
    }
    let ring = &alpha.ring;
    let e = ring.exponent();
    let values = ring
        .factorizations()
        .iter()
        .map(|pairs| {
            pairs.iter().fold(Cyclo::zero(e), |acc, &(s, t)| {
                let (x, y) = (&alpha.values[s], &beta.values[t]);
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    &acc + &(x * y)
                }
            })
        })
        .collect();
    Ok(SgFn {
        ring: Arc::clone(ring),
        values,
    })
}

/// `(w ⊛ α)(a) = Σ_r w(ra)α(r)`.
pub fn correlate(w: &WeightFn, alpha: &SgFn) -> Result<WeightFn> {
    let m = &w.module;
    if !same_ring(m.ring(), &alpha.ring) {
        return Err(Error::RingMismatch);
    }
    let e = m.exponent();
    let support: Vec<usize> = alpha
        .ring
        .elements()
        .filter(|&r| !alpha.values[r].is_zero())
        .collect();
    let values = m
        .elements()
        .map(|a| {
            support.iter().fold(Cyclo::zero(e), |acc, &r| {
                let wv = &w.values[m.left_act(r, a)];
                if wv.is_zero() {
                    acc
                } else {
                    &acc + &(wv * &alpha.values[r])
                }
            })
        })
        .collect();
    Ok(WeightFn {
        module: Arc::clone(m),
        values,
    })
}

/// `α̂ = χ ⊛ α`.
pub fn fourier(alpha: &SgFn, module: &Arc<FrobeniusBimodule>) -> Result<WeightFn> {
    correlate(&WeightFn::chi(Arc::clone(module)), alpha)
}

/// `w̃(r) = (1/|A|) Σ_a w(a) χ(−ra)`.
pub fn inverse_fourier(w: &WeightFn) -> SgFn {
    let m = &w.module;
    let ring = m.ring();
    let e = m.exponent();
    let scale = BigRational::new(1.into(), (m.size() as i64).into());
    let values = ring
        .elements()
        .map(|r| {
            let total = m.elements().fold(Cyclo::zero(e), |acc, a| {
                let wv = &w.values[a];
                if wv.is_zero() {
                    return acc;
                }
                let k = m.chi_exp(m.left_act(r, a));
                &acc + &(wv * m.zeta(e - k))
            });
            total.scale(&scale)
        })
        .collect();
    SgFn {
        ring: Arc::clone(ring),
        values,
    }
}

/// Serializable view of a function, keyed by element label.
#[derive(Clone, Debug, Serialize)]
pub struct FnEntry {
    pub label: String,
    pub value: Cyclo,
}

impl SgFn {
    pub fn entries(&self) -> Vec<FnEntry> {
        self.ring
            .elements()
            .map(|r| FnEntry {
                label: self.ring.label(r).to_string(),
                value: self.values[r].clone(),
            })
            .collect()
    }
}

impl WeightFn {
    pub fn entries(&self) -> Vec<FnEntry> {
        self.module
            .elements()
            .map(|a| FnEntry {
                label: self.module.label(a).to_string(),
                value: self.values[a].clone(),
            })
            .collect()
    }
}
