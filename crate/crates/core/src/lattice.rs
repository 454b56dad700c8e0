//! Submodule enumeration shared by the bimodule and code searches.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// `{x + y : x in a, y in b}`, sorted.
pub(crate) fn sum_of(a: &[usize], b: &[usize], universe: usize, add: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut seen = vec![false; universe];
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for &x in a {
        for &y in b {
            let s = add(x, y);
            if !seen[s] {
                seen[s] = true;
                out.push(s);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every submodule of a finite module, as sorted element lists.
///
/// `cyclic(x)` returns the cyclic submodule generated by `x`. Starting from
/// the distinct cyclic submodules, sums with cyclic submodules are added
/// until nothing new appears. Output order: by size, then lexicographic.
pub(crate) fn all_submodules(
    universe: usize,
    elements: &[usize],
    add: impl Fn(usize, usize) -> usize,
    cyclic: impl Fn(usize) -> Vec<usize>,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclics: Vec<Vec<usize>> = Vec::new();
    for &x in elements {
        let mut c = cyclic(x);
        c.sort_unstable();
        c.dedup();
        if seen.insert(c.clone()) {
            cyclics.push(c);
        }
    }
    let mut all = cyclics.clone();
    let mut i = 0;
    while i < all.len() {
        for c in &cyclics {
            let s = sum_of(&all[i], c, universe, &add);
            if !seen.contains(&s) {
                seen.insert(s.clone());
                all.push(s);
                if all.len() > cap {
                    return Err(Error::resource("submodule lattice", all.len(), cap));
                }
            }
        }
        i += 1;
    }
    if all.len() > cap {
        return Err(Error::resource("submodule lattice", all.len(), cap));
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroups_of_z12() {
        let n = 12;
        let subs = all_submodules(
            n,
            &(0..n).collect::<Vec<_>>(),
            |a, b| (a + b) % n,
            |x| (0..n).map(|k| k * x % n).collect(),
            100,
        )
        .unwrap();
        // one subgroup per divisor of 12
        assert_eq!(subs.len(), 6);
        assert_eq!(subs[0], vec![0]);
        assert_eq!(subs[5].len(), 12);
    }

    #[test]
    fn klein_four_has_five_subgroups() {
        let subs = all_submodules(4, &[0, 1, 2, 3], |a, b| a ^ b, |x| vec![0, x], 100).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(all_submodules(4, &[0, 1, 2, 3], |a, b| a ^ b, |x| vec![0, x], 3).is_err());
    }
}
