//! Exact arithmetic in the cyclotomic fields `Q(ζ_e)`.
//!
//! An element of order `e` is a polynomial in `ζ_e` of degree `< φ(e)`,
//! reduced modulo the `e`-th cyclotomic polynomial. Coefficients share one
//! positive denominator; the representation is kept in lowest terms so that
//! equality is coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = exact_monic_div(&poly, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

fn exact_monic_div(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let dd = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let mut quot = vec![BigInt::zero(); dividend.len() - dd];
    for i in (dd..dividend.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, d) in divisor.iter().enumerate() {
            rem[i - dd + j] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Reduces an integer polynomial modulo `Φ_order`.
fn reduce(mut poly: Vec<BigInt>, order: u64) -> Vec<BigInt> {
    let phi_poly = cyclotomic_polynomial(order);
    let deg = phi_poly.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi_poly[..deg].iter().enumerate() {
                if !p.is_zero() {
                    poly[i - deg + j] -= &c * p;
                }
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

impl Cyclo {
    fn normalized(order: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        Cyclo { order, num, den }
    }

    pub fn zero(order: u64) -> Self {
        Cyclo {
            order,
            num: vec![BigInt::zero(); phi(order) as usize],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(1, order)
    }

    pub fn from_integer(value: i64, order: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(value.into()), order)
    }

    /// Embeds a rational at the given order.
    pub fn from_rational(q: &BigRational, order: u64) -> Self {
        let mut num = vec![BigInt::zero(); phi(order) as usize];
        num[0] = q.numer().clone();
        Self::normalized(order, num, q.denom().clone())
    }

    /// `ζ_e^k`, with `k` reduced mod `e`.
    pub fn root_of_unity(e: u64, k: i64) -> Self {
        assert!(e >= 1, "root of unity of order 0");
        let k = k.rem_euclid(e as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        Cyclo {
            order: e,
            num: reduce(poly, e),
            den: BigInt::one(),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients in the power basis `1, ζ, …, ζ^{φ(e)-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Re-expresses the element in `Q(ζ_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyclo {
            order: target,
            num: reduce(poly, target),
            den: self.den.clone(),
        }
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    fn add_same(a: &Cyclo, b: &Cyclo) -> Cyclo {
        debug_assert_eq!(a.order, b.order);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return Self::normalized(a.order, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Self::normalized(a.order, num, &a.den * &b.den)
    }

    fn mul_same(a: &Cyclo, b: &Cyclo) -> Cyclo {
        debug_assert_eq!(a.order, b.order);
        if a.is_zero() || b.is_zero() {
            return Cyclo::zero(a.order);
        }
        let n = a.num.len();
        let mut poly = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::normalized(a.order, reduce(poly, a.order), &a.den * &b.den)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Cyclo {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.order, num, &self.den * q.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclo::from_rational(&q.recip(), self.order));
        }
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut r0 = to_q(&cyclotomic_polynomial(self.order));
        let mut r1 = trim(to_q(&self.num));
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ is irreducible
        let c = r0[0].clone();
        let lcm_den = s0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        // self = num / den, so self^{-1} = den * num^{-1}
        let scale = &c * BigRational::new(lcm_den.clone(), self.den.clone());
        let poly: Vec<BigInt> = s0
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let base = Cyclo {
            order: self.order,
            num: reduce(poly, self.order),
            den: BigInt::one(),
        };
        Ok(base.scale(&scale.recip()))
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Cyclo> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one(self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Sum of an iterator of values, all at `order`.
    pub fn sum<'a>(order: u64, items: impl IntoIterator<Item = &'a Cyclo>) -> Cyclo {
        items
            .into_iter()
            .fold(Cyclo::zero(order), |acc, x| &acc + x)
    }

    /// Approximate complex value, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let den = big_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            let v = big_to_f64(c) / den;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if self.order == rhs.order {
            return Cyclo::add_same(self, rhs);
        }
        let (a, b) = Cyclo::common(self, rhs);
        Cyclo::add_same(&a, &b)
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.order == rhs.order {
            return Cyclo::mul_same(self, rhs);
        }
        let (a, b) = Cyclo::common(self, rhs);
        Cyclo::mul_same(&a, &b)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo { (&self).$m(&rhs) }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

/// Value equality across orders: both sides are lifted to a common field.
pub fn same_value(a: &Cyclo, b: &Cyclo) -> bool {
    if a.order == b.order {
        return a == b;
    }
    let (x, y) = Cyclo::common(a, b);
    x == y
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{k}", self.order),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.order,
            coeffs: self.coeffs().iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        if repr.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        if repr.coeffs.len() as u64 != phi(repr.order) {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients",
                repr.order,
                phi(repr.order)
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs
            .iter()
            .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Ok(Cyclo::normalized(repr.order, num, den))
    }
}

/// Parses `"p"` or `"p/q"` with integer `p`, `q`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}
