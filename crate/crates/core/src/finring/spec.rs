//! JSON ring descriptions and the constructors behind them.

use serde::{Deserialize, Serialize};

use super::abelian::AdditiveDecomposition;
use super::FiniteRing;
use crate::error::{Error, Result};

/// A ring description as read from a ring file.
///
/// ```json
/// {"kind": "upper_triangular", "k": 2, "p": 2}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    Zn {
        n: usize,
    },
    Matrix {
        k: usize,
        p: usize,
    },
    UpperTriangular {
        k: usize,
        p: usize,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

impl RingSpec {
    /// Explicit-table description of an existing ring. Building it again
    /// reproduces identical tables and labels.
    pub fn from_ring(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let rows = |t: &[usize]| t.chunks(n).map(<[usize]>::to_vec).collect();
        RingSpec::Tables {
            add: rows(ring.add_table()),
            mul: rows(ring.mul_table()),
            labels: Some(ring.labels().to_vec()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("ring spec: {e}")))
    }
}

/// Builds and verifies the ring described by `spec`, refusing anything
/// larger than `cap` elements.
pub fn build_ring(spec: &RingSpec, cap: usize) -> Result<FiniteRing> {
    let size = spec_size(spec)
        .filter(|&s| s <= cap)
        .ok_or_else(|| Error::resource("ring size", spec_size(spec).unwrap_or(usize::MAX), cap))?;
    match spec {
        RingSpec::Zn { n } => zn(*n),
        RingSpec::Matrix { k, p } => matrix_ring(*k, *p, false, size),
        RingSpec::UpperTriangular { k, p } => matrix_ring(*k, *p, true, size),
        RingSpec::Product { factors } => {
            let mut iter = factors.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::Input("product needs at least one factor".into()))?;
            let mut acc = build_ring(first, cap)?;
            for f in iter {
                let next = build_ring(f, cap)?;
                acc = product(&acc, &next, cap)?;
            }
            Ok(acc)
        }
        RingSpec::Tables { add, mul, labels } => {
            let n = add.len();
            if mul.len() != n || add.iter().chain(mul.iter()).any(|row| row.len() != n) {
                return Err(Error::Construction("tables must be square and equal size".into()));
            }
            let labels = labels
                .clone()
                .unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
            FiniteRing::assemble(
                format!("tables({n})"),
                n,
                add.concat(),
                mul.concat(),
                labels,
                None,
            )
        }
    }
}

fn spec_size(spec: &RingSpec) -> Option<usize> {
    match spec {
        RingSpec::Zn { n } => Some(*n),
        RingSpec::Matrix { k, p } => p.checked_pow(u32::try_from(k * k).ok()?),
        RingSpec::UpperTriangular { k, p } => p.checked_pow(u32::try_from(k * (k + 1) / 2).ok()?),
        RingSpec::Product { factors } => factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(spec_size(f)?)),
        RingSpec::Tables { add, .. } => Some(add.len()),
    }
}

fn zn(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::Input("Z_n needs n >= 1".into()));
    }
    let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    let orders = if n == 1 { vec![] } else { vec![n as u64] };
    let coords = (0..n)
        .map(|i| if n == 1 { vec![] } else { vec![i as u64] })
        .collect();
    let decomposition = AdditiveDecomposition::new(orders, coords)?;
    FiniteRing::assemble(format!("Z_{n}"), n, add, mul, labels, Some(decomposition))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `M_k(F_p)` or `U_k(F_p)`. Elements are entry vectors (row-major, only
/// `i <= j` for the triangular case) read as big-endian base-`p` numbers.
fn matrix_ring(k: usize, p: usize, triangular: bool, size: usize) -> Result<FiniteRing> {
    if k == 0 {
        return Err(Error::Input("matrix size k must be >= 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::Input(format!("p = {p} is not prime")));
    }
    let positions: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !triangular || i <= j)
        .collect();
    let m = positions.len();
    let decode = |x: usize| -> Vec<usize> {
        let mut digits = vec![0; m];
        let mut rest = x;
        for slot in digits.iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().fold(0, |acc, &d| acc * p + d);
    let to_matrix = |digits: &[usize]| {
        let mut mat = vec![vec![0usize; k]; k];
        for (&(i, j), &d) in positions.iter().zip(digits) {
            mat[i][j] = d;
        }
        mat
    };
    let from_matrix =
        |mat: &[Vec<usize>]| -> Vec<usize> { positions.iter().map(|&(i, j)| mat[i][j]).collect() };

    let entries: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let mats: Vec<Vec<Vec<usize>>> = entries.iter().map(|d| to_matrix(d)).collect();
    let mut add = vec![0; size * size];
    let mut mul = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            let sum: Vec<usize> = entries[x]
                .iter()
                .zip(&entries[y])
                .map(|(a, b)| (a + b) % p)
                .collect();
            add[x * size + y] = encode(&sum);
            let prod: Vec<Vec<usize>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| (0..k).map(|l| mats[x][i][l] * mats[y][l][j]).sum::<usize>() % p)
                        .collect()
                })
                .collect();
            mul[x * size + y] = encode(&from_matrix(&prod));
        }
    }
    let labels = entries
        .iter()
        .map(|d| {
            if triangular {
                format!("[{}]", join(d, ","))
            } else {
                let rows: Vec<String> = d.chunks(k).map(|r| join(r, ",")).collect();
                format!("[{}]", rows.join(";"))
            }
        })
        .collect();
    let orders = vec![p as u64; m];
    let coords = entries
        .iter()
        .map(|d| d.iter().map(|&v| v as u64).collect())
        .collect();
    let decomposition = AdditiveDecomposition::new(orders, coords)?;
    let name = if triangular {
        format!("U_{k}(F_{p})")
    } else {
        format!("M_{k}(F_{p})")
    };
    FiniteRing::assemble(name, size, add, mul, labels, Some(decomposition))
}

fn join(values: &[usize], sep: &str) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

pub(super) fn product(a: &FiniteRing, b: &FiniteRing, cap: usize) -> Result<FiniteRing> {
    let (na, nb) = (a.size(), b.size());
    let size = na
        .checked_mul(nb)
        .filter(|&s| s <= cap)
        .ok_or_else(|| Error::resource("ring size", na.saturating_mul(nb), cap))?;
    let split = |x: usize| (x / nb, x % nb);
    let mut add = vec![0; size * size];
    let mut mul = vec![0; size * size];
    for x in 0..size {
        let (x1, x2) = split(x);
        for y in 0..size {
            let (y1, y2) = split(y);
            add[x * size + y] = a.add(x1, y1) * nb + b.add(x2, y2);
            mul[x * size + y] = a.mul(x1, y1) * nb + b.mul(x2, y2);
        }
    }
    let labels = (0..size)
        .map(|x| {
            let (x1, x2) = split(x);
            format!("({},{})", a.label(x1), b.label(x2))
        })
        .collect();
    let orders = [a.decomposition().orders(), b.decomposition().orders()].concat();
    let coords = (0..size)
        .map(|x| {
            let (x1, x2) = split(x);
            [a.decomposition().coords(x1), b.decomposition().coords(x2)].concat()
        })
        .collect();
    let decomposition = AdditiveDecomposition::new(orders, coords)?;
    FiniteRing::assemble(
        format!("{} x {}", a.name(), b.name()),
        size,
        add,
        mul,
        labels,
        Some(decomposition),
    )
}
