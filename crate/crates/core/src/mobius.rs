//! The poset of cyclic right submodules `aR ⊆ A` and its Möbius function
//! `μ(0, aR)`, computed by the defining recursion and, independently, as the
//! character sum over the unit orbit `a𝒰`.

use serde::Serialize;

use crate::cyclo::Cyclo;
use crate::dualmod::FrobeniusBimodule;
use crate::error::{Error, Result};
use crate::finring::Submodule;

#[derive(Clone, Debug)]
pub struct PosetNode {
    /// Smallest element index generating the node.
    pub representative: usize,
    pub submodule: Submodule,
    /// All generators of the node; by the Bass lemma this is `a𝒰`.
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CyclicPoset {
    nodes: Vec<PosetNode>,
    /// `leq[i][j]` iff node `i` ⊆ node `j`.
    leq: Vec<Vec<bool>>,
    node_of: Vec<usize>,
    module_size: usize,
}

impl CyclicPoset {
    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Node index of `aR`.
    pub fn node_of(&self, a: usize) -> usize {
        self.node_of[a]
    }

    /// Whether `A` itself is cyclic.
    pub fn module_is_cyclic(&self) -> bool {
        self.nodes.iter().any(|n| n.submodule.len() == self.module_size)
    }
}

/// Builds the poset of cyclic right submodules, ordered by size and then
/// representative, and checks `aR = bR ⇔ a𝒰 = b𝒰`.
pub fn build_cyclic_poset(module: &FrobeniusBimodule) -> Result<CyclicPoset> {
    let n = module.size();
    let mut nodes: Vec<PosetNode> = Vec::new();
    let mut node_of = vec![usize::MAX; n];
    for a in module.elements() {
        let sub = module.cyclic_right_submodule(a);
        match nodes.iter().position(|node| node.submodule.elements == sub.elements) {
            Some(i) => {
                nodes[i].generators.push(a);
                node_of[a] = i;
            }
            None => {
                node_of[a] = nodes.len();
                nodes.push(PosetNode {
                    representative: a,
                    submodule: sub,
                    generators: vec![a],
                });
            }
        }
    }
    for node in &nodes {
        let orbit = module.right_unit_orbit(node.representative);
        if orbit != node.generators {
            return Err(Error::Internal(format!(
                "Bass lemma fails for {}R: generators {:?} but unit orbit {:?}",
                module.label(node.representative),
                node.generators,
                orbit
            )));
        }
    }

    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by_key(|&i| (nodes[i].submodule.len(), nodes[i].representative));
    let mut rank = vec![0; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let nodes: Vec<PosetNode> = order.iter().map(|&i| nodes[i].clone()).collect();
    let node_of = node_of.iter().map(|&i| rank[i]).collect();

    let leq = nodes
        .iter()
        .map(|x| nodes.iter().map(|y| x.submodule.is_subset_of(&y.submodule)).collect())
        .collect();
    Ok(CyclicPoset {
        nodes,
        leq,
        node_of,
        module_size: n,
    })
}

/// `μ(0, aR)` per poset node, in node order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    values: Vec<Cyclo>,
}

impl MobiusTable {
    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, node: usize) -> &Cyclo {
        &self.values[node]
    }

    /// The values as machine integers. Every Möbius value is an integer.
    pub fn as_integers(&self) -> Vec<i64> {
        self.values
            .iter()
            .map(|v| {
                let z = v.as_integer().expect("Möbius values are integers");
                i64::try_from(z).expect("Möbius value fits in i64")
            })
            .collect()
    }
}

/// `μ(0,0) = 1` and `Σ_{bR ⊆ cR} μ(0, bR) = 0` for every nonzero `cR`.
pub fn mobius_by_recursion(poset: &CyclicPoset, order: u64) -> MobiusTable {
    let mut mu: Vec<i64> = Vec::with_capacity(poset.len());
    for c in 0..poset.len() {
        if poset.nodes[c].submodule.is_zero() {
            mu.push(1);
        } else {
            // nodes are sorted by size, so every proper subnode comes earlier
            let below: i64 = (0..c).filter(|&b| poset.leq(b, c)).map(|b| mu[b]).sum();
            mu.push(-below);
        }
    }
    MobiusTable {
        values: mu.into_iter().map(|m| Cyclo::from_integer(m, order)).collect(),
    }
}

/// `μ(0, aR) = Σ_{b∈a𝒰} χ(b)`, cross-checked against the recursion.
pub fn mobius_by_character(module: &FrobeniusBimodule, poset: &CyclicPoset) -> Result<MobiusTable> {
    let e = module.exponent();
    let values: Vec<Cyclo> = poset
        .nodes
        .iter()
        .map(|node| Cyclo::sum(e, node.generators.iter().map(|&b| module.chi(b))))
        .collect();
    for (node, v) in poset.nodes.iter().zip(&values) {
        if v.as_integer().is_none() {
            return Err(Error::Internal(format!(
                "orbit character sum for {}R is not an integer: {v}",
                module.label(node.representative)
            )));
        }
    }
    let table = MobiusTable { values };
    let recursive = mobius_by_recursion(poset, e);
    if table != recursive {
        return Err(Error::Internal(format!(
            "Möbius tables disagree: character {:?} vs recursion {:?}",
            table.as_integers(),
            recursive.as_integers()
        )));
    }
    Ok(table)
}

/// Orbits of `a ↦ au`, `u ∈ 𝒰`, ordered by smallest member.
pub fn right_u_orbits(module: &FrobeniusBimodule) -> Vec<Vec<usize>> {
    let mut seen = vec![false; module.size()];
    let mut out = Vec::new();
    for a in module.elements() {
        if !seen[a] {
            let orbit = module.right_unit_orbit(a);
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusRow {
    pub representative: String,
    pub size: usize,
    pub mu: i64,
}

/// Report rows `(representative, |aR|, μ(0,aR))` in node order.
pub fn mobius_report(module: &FrobeniusBimodule, poset: &CyclicPoset, table: &MobiusTable) -> Vec<MobiusRow> {
    poset
        .nodes
        .iter()
        .zip(table.as_integers())
        .map(|(node, mu)| MobiusRow {
            representative: module.label(node.representative).to_string(),
            size: node.submodule.len(),
            mu,
        })
        .collect()
}
