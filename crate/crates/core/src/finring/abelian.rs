//! Cyclic decomposition of the additive group `(R, +)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An explicit isomorphism `(R, +) ≅ Z_{d_1} ⊕ … ⊕ Z_{d_k}`.
///
/// Constructors supply their natural coordinates (matrix entries, product
/// components). Raw tables go through [`AdditiveDecomposition::compute`],
/// which returns invariant factors `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveDecomposition {
    orders: Vec<u64>,
    coords: Vec<Vec<u64>>,
    /// Element index for each mixed-radix coordinate index.
    by_coords: Vec<usize>,
}

impl AdditiveDecomposition {
    /// Builds from per-element coordinates. Fails unless the map is a bijection.
    pub(crate) fn new(orders: Vec<u64>, coords: Vec<Vec<u64>>) -> Result<Self> {
        let size = coords.len();
        let total: u64 = orders.iter().product();
        if total as usize != size {
            return Err(Error::Construction(format!(
                "cyclic orders {orders:?} do not multiply to {size}"
            )));
        }
        let mut by_coords = vec![usize::MAX; size];
        for (x, c) in coords.iter().enumerate() {
            if c.len() != orders.len() || c.iter().zip(&orders).any(|(v, d)| v >= d) {
                return Err(Error::Construction(format!("bad coordinates for element {x}")));
            }
            let idx = mixed_radix(&orders, c);
            if by_coords[idx] != usize::MAX {
                return Err(Error::Construction("coordinate map is not injective".into()));
            }
            by_coords[idx] = x;
        }
        Ok(AdditiveDecomposition {
            orders,
            coords,
            by_coords,
        })
    }

    /// Invariant-factor decomposition of an abelian group given by its table.
    ///
    /// Greedily picks generators (largest order first), records the triangular
    /// relation lattice, and reads coordinates off its Smith normal form.
    pub fn compute(size: usize, add: &[usize], zero: usize) -> Result<Self> {
        let sum = |a: usize, b: usize| add[a * size + b];
        let order_of = |x: usize| {
            let mut acc = x;
            let mut m = 1u64;
            while acc != zero {
                acc = sum(acc, x);
                m += 1;
            }
            m
        };
        let mut candidates: Vec<(u64, usize)> = (0..size).map(|x| (order_of(x), x)).collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        // coefficient vector of every element of the current span
        let mut coef: Vec<Option<Vec<i128>>> = vec![None; size];
        coef[zero] = Some(Vec::new());
        let mut members = vec![zero];
        let mut relations: Vec<Vec<i128>> = Vec::new();

        for &(_, x) in &candidates {
            if coef[x].is_some() {
                continue;
            }
            let j = relations.len();
            for c in coef.iter_mut().flatten() {
                c.push(0);
            }
            for row in relations.iter_mut() {
                row.push(0);
            }
            // smallest m with m·x in the span
            let mut multiple = x;
            let mut m = 1i128;
            while coef[multiple].is_none() {
                multiple = sum(multiple, x);
                m += 1;
            }
            let mut rel: Vec<i128> = coef[multiple].clone().unwrap();
            for v in rel.iter_mut() {
                *v = -*v;
            }
            rel[j] += m;
            relations.push(rel);

            let mut added = Vec::new();
            for &s in &members {
                let mut acc = s;
                for t in 1..m {
                    acc = sum(acc, x);
                    let mut c = coef[s].clone().unwrap();
                    c[j] += t;
                    debug_assert!(coef[acc].is_none());
                    coef[acc] = Some(c);
                    added.push(acc);
                }
            }
            members.extend(added);
        }

        let k = relations.len();
        let (diag, v) = smith_normal_form(relations);
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
        let orders: Vec<u64> = keep.iter().map(|&i| diag[i] as u64).collect();
        let coords = (0..size)
            .map(|x| {
                let c = coef[x].as_ref().expect("span covers the group");
                keep.iter()
                    .map(|&col| {
                        let y: i128 = (0..k).map(|row| c[row] * v[row][col]).sum();
                        y.rem_euclid(diag[col]) as u64
                    })
                    .collect()
            })
            .collect();
        Self::new(orders, coords)
    }

    /// Checks `coords(x + y) = coords(x) + coords(y)` for all pairs.
    pub(crate) fn verify(&self, size: usize, add: &[usize]) -> Result<()> {
        if self.coords.len() != size {
            return Err(Error::Construction("decomposition size mismatch".into()));
        }
        for x in 0..size {
            for y in 0..size {
                let s = add[x * size + y];
                let ok = self.orders.iter().enumerate().all(|(i, &d)| {
                    (self.coords[x][i] + self.coords[y][i]) % d == self.coords[s][i]
                });
                if !ok {
                    return Err(Error::Construction(format!(
                        "additive decomposition does not preserve {x} + {y}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cyclic orders `d_i`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Least common multiple of the orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &d| acc.lcm(&d))
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    /// Element with the given coordinates (each reduced mod its order).
    pub fn element(&self, coords: &[u64]) -> usize {
        let reduced: Vec<u64> = coords
            .iter()
            .zip(&self.orders)
            .map(|(c, d)| c % d)
            .collect();
        self.by_coords[mixed_radix(&self.orders, &reduced)]
    }

    /// Element whose only nonzero coordinate is a 1 in slot `i`.
    pub fn basis_element(&self, i: usize) -> usize {
        let mut c = vec![0; self.orders.len()];
        c[i] = 1;
        self.element(&c)
    }
}

/// Big-endian mixed-radix index.
pub(crate) fn mixed_radix(orders: &[u64], coords: &[u64]) -> usize {
    coords
        .iter()
        .zip(orders)
        .fold(0u64, |acc, (&c, &d)| acc * d + c) as usize
}

/// Smith normal form of a square nonsingular integer matrix.
///
/// Returns the diagonal (positive, each dividing the next) and the column
/// transform `V` with `U·M·V = D` for some unimodular `U`.
fn smith_normal_form(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>) {
    let n = a.len();
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();

    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for i in 0..n {
                        a[i][j] -= q * a[i][t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block
            let bad_row = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad_row {
                Some(i) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            // row negation keeps V untouched
            for j in 0..n {
                a[t][j] = -a[t][j];
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}
