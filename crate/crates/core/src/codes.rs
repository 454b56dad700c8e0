//! Linear codes over an alphabet `A ⊆ R̂`, their weight-preserving maps, and
//! exhaustive checks that every such map extends to a monomial
//! transformation of the ambient space.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::Cyclo;
use crate::dualmod::FrobeniusBimodule;
use crate::error::{Error, Result};
use crate::extension::{certify, DEFAULT_LATTICE_CAP};
use crate::finring::greedy_generators;
use crate::lattice;
use crate::sgring::{correlate, SgFn, WeightFn};

/// A word of `Aⁿ`, as bimodule element indices.
pub type Word = Vec<usize>;

/// A left `R`-submodule of `R̂` used as a code alphabet.
#[derive(Debug)]
pub struct Alphabet {
    module: Arc<FrobeniusBimodule>,
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
    /// `add[i][j]` on positions.
    add: Vec<Vec<usize>>,
    /// `act[r][i]` = position of `r·elements[i]`.
    act: Vec<Vec<usize>>,
}

impl Alphabet {
    /// The whole bimodule.
    pub fn full(module: Arc<FrobeniusBimodule>) -> Self {
        let elements = module.elements().collect();
        Self::from_elements(module, elements).expect("the whole module is a submodule")
    }

    /// The left submodule generated by `generators`.
    pub fn generated_by(module: Arc<FrobeniusBimodule>, generators: &[usize]) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= module.size()) {
            return Err(Error::Input(format!("element index {g} out of range")));
        }
        let mut span = vec![false; module.size()];
        span[module.zero()] = true;
        let mut members = vec![module.zero()];
        for &g in generators {
            let cyc = module.cyclic_left_submodule(g).elements;
            let mut next = Vec::new();
            for &m in &members {
                for &c in &cyc {
                    let s = module.add(m, c);
                    if !span[s] {
                        span[s] = true;
                        next.push(s);
                    }
                }
            }
            members.extend(next);
        }
        Self::from_elements(module, members)
    }

    /// Checks that `elements` is a left submodule.
    pub fn from_elements(module: Arc<FrobeniusBimodule>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let mut position = vec![None; module.size()];
        for (i, &a) in elements.iter().enumerate() {
            if a >= module.size() {
                return Err(Error::Input(format!("element index {a} out of range")));
            }
            position[a] = Some(i);
        }
        if position[module.zero()].is_none() {
            return Err(Error::Input("alphabet must contain zero".into()));
        }
        let pos = |x: usize, what: &str| {
            position[x].ok_or_else(|| Error::Input(format!("alphabet is not a left submodule: {what} leaves it")))
        };
        let mut add = Vec::with_capacity(elements.len());
        for &a in &elements {
            let row = elements
                .iter()
                .map(|&b| pos(module.add(a, b), "a sum"))
                .collect::<Result<Vec<_>>>()?;
            add.push(row);
        }
        let mut act = Vec::with_capacity(module.ring().size());
        for r in module.ring().elements() {
            let row = elements
                .iter()
                .map(|&a| pos(module.left_act(r, a), "a scalar multiple"))
                .collect::<Result<Vec<_>>>()?;
            act.push(row);
        }
        Ok(Alphabet {
            module,
            elements,
            position,
            add,
            act,
        })
    }

    pub fn module(&self) -> &Arc<FrobeniusBimodule> {
        &self.module
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.position.len() && self.position[a].is_some()
    }

    pub fn is_whole_module(&self) -> bool {
        self.elements.len() == self.module.size()
    }
}

/// Resource limits for the brute-force searches.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_codes: usize,
    pub max_isometries: usize,
    pub max_n: usize,
    /// Bound on `|A|ⁿ`.
    pub max_space: usize,
    /// Bound on generator-image candidates tried per code.
    pub max_search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_codes: 10_000,
            max_isometries: 1_000_000,
            max_n: 4,
            max_space: 1 << 16,
            max_search: 1 << 24,
        }
    }
}

/// `Aⁿ`, with words encoded as mixed-radix integers over alphabet positions.
#[derive(Debug)]
pub struct CodeSpace {
    alphabet: Arc<Alphabet>,
    n: usize,
    size: usize,
}

impl CodeSpace {
    pub fn new(alphabet: Arc<Alphabet>, n: usize, caps: &Caps) -> Result<Self> {
        if n > caps.max_n {
            return Err(Error::resource("code length", n, caps.max_n));
        }
        let size = (0..n)
            .try_fold(1usize, |acc, _| acc.checked_mul(alphabet.len()))
            .filter(|&s| s <= caps.max_space)
            .ok_or(Error::Resource {
                what: "ambient space size",
                actual: alphabet.len().saturating_pow(n as u32),
                cap: caps.max_space,
            })?;
        Ok(CodeSpace { alphabet, n, size })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn positions(&self, mut x: usize) -> Vec<usize> {
        let k = self.alphabet.len();
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = x % k;
            x /= k;
        }
        out
    }

    fn index_of_positions(&self, p: &[usize]) -> usize {
        let k = self.alphabet.len();
        p.iter().fold(0, |acc, &d| acc * k + d)
    }

    pub fn decode(&self, x: usize) -> Word {
        self.positions(x).into_iter().map(|p| self.alphabet.elements[p]).collect()
    }

    pub fn encode(&self, word: &[usize]) -> Result<usize> {
        if word.len() != self.n {
            return Err(Error::Input(format!("word of length {} in a space of length {}", word.len(), self.n)));
        }
        let p = word
            .iter()
            .map(|&a| {
                self.alphabet
                    .position
                    .get(a)
                    .copied()
                    .flatten()
                    .ok_or_else(|| Error::Input(format!("element {a} is not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.index_of_positions(&p))
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.positions(x), self.positions(y));
        let s: Vec<usize> = a.iter().zip(&b).map(|(&i, &j)| self.alphabet.add[i][j]).collect();
        self.index_of_positions(&s)
    }

    fn act(&self, r: usize, x: usize) -> usize {
        let row = &self.alphabet.act[r];
        let s: Vec<usize> = self.positions(x).into_iter().map(|i| row[i]).collect();
        self.index_of_positions(&s)
    }

    fn cyclic(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.alphabet.module.ring().elements().map(|r| self.act(r, x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn word_label(&self, word: &[usize]) -> String {
        let parts: Vec<&str> = word.iter().map(|&a| self.alphabet.module.label(a)).collect();
        format!("[{}]", parts.join(" "))
    }

    fn weight(&self, w: &WeightFn, x: usize) -> Cyclo {
        w.word_weight(&self.decode(x))
    }
}

/// A left submodule `C ⊆ Aⁿ`.
#[derive(Clone, Debug)]
pub struct LinearCode {
    space: Arc<CodeSpace>,
    generators: Vec<usize>,
    elements: Vec<usize>,
}

impl LinearCode {
    pub fn space(&self) -> &Arc<CodeSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.n
    }

    pub fn is_empty(&self) -> bool {
        self.space.n == 0
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> Vec<Word> {
        self.generators.iter().map(|&g| self.space.decode(g)).collect()
    }

    pub fn elements(&self) -> Vec<Word> {
        self.elements.iter().map(|&x| self.space.decode(x)).collect()
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        self.space
            .encode(word)
            .map(|x| self.elements.binary_search(&x).is_ok())
            .unwrap_or(false)
    }
}

/// Every left submodule of `Aⁿ`, ordered by size and then elements.
pub fn enumerate_codes(space: &Arc<CodeSpace>, caps: &Caps) -> Result<Vec<LinearCode>> {
    let all: Vec<usize> = (0..space.size).collect();
    let subs = lattice::all_submodules(
        space.size,
        &all,
        |x, y| space.add(x, y),
        |x| space.cyclic(x),
        caps.max_codes,
    )?;
    Ok(subs
        .into_iter()
        .map(|elements| LinearCode {
            generators: greedy_generators(&elements, space.size, |x| space.cyclic(x), |x, y| space.add(x, y), 0),
            elements,
            space: Arc::clone(space),
        })
        .collect())
}

/// A left-linear map from a submodule of a code space into the same space.
#[derive(Clone, Debug)]
pub struct LinearMap {
    generator_images: Vec<usize>,
    map: HashMap<usize, usize>,
}

impl LinearMap {
    /// Images of the domain's generators, in generator order.
    pub fn generator_images(&self, space: &CodeSpace) -> Vec<Word> {
        self.generator_images.iter().map(|&y| space.decode(y)).collect()
    }

    pub fn apply(&self, space: &CodeSpace, word: &[usize]) -> Option<Word> {
        let x = space.encode(word).ok()?;
        self.map.get(&x).map(|&y| space.decode(y))
    }
}

/// Extends `f(gᵢ) = imagesᵢ` to the span of the generators, or `None` when
/// the assignment is not well defined.
fn extend_linearly(space: &CodeSpace, gens: &[usize], images: &[usize]) -> Option<HashMap<usize, usize>> {
    let ring = space.alphabet.module.ring();
    let mut map = HashMap::new();
    map.insert(0usize, 0usize);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        let fx = map[&x];
        for (&g, &img) in gens.iter().zip(images) {
            for r in ring.elements() {
                let x2 = space.add(x, space.act(r, g));
                let y2 = space.add(fx, space.act(r, img));
                match map.get(&x2) {
                    Some(&y) if y != y2 => return None,
                    Some(_) => {}
                    None => {
                        map.insert(x2, y2);
                        queue.push(x2);
                    }
                }
            }
        }
    }
    Some(map)
}

fn is_linear_on(space: &CodeSpace, domain: &[usize], map: &HashMap<usize, usize>) -> bool {
    let ring = space.alphabet.module.ring();
    domain.iter().all(|&x| {
        domain
            .iter()
            .all(|&y| map.get(&space.add(x, y)) == Some(&space.add(map[&x], map[&y])))
            && ring
                .elements()
                .all(|r| map.get(&space.act(r, x)) == Some(&space.act(r, map[&x])))
    })
}

/// Every left-linear map from the span of `gens` into the space passing
/// `accept`, which sees the fully extended map.
fn homomorphisms(
    space: &CodeSpace,
    gens: &[usize],
    domain: &[usize],
    candidates: &dyn Fn(usize) -> Vec<usize>,
    accept: &mut dyn FnMut(&HashMap<usize, usize>) -> bool,
    caps: &Caps,
    max_found: usize,
) -> Result<Vec<LinearMap>> {
    let ring = space.alphabet.module.ring();
    // an image must be killed by everything that kills its generator
    let options: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let killers: Vec<usize> = ring.elements().filter(|&r| space.act(r, g) == 0).collect();
            candidates(g)
                .into_iter()
                .filter(|&y| killers.iter().all(|&r| space.act(r, y) == 0))
                .collect()
        })
        .collect();
    let search: usize = options.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.len())).unwrap_or(usize::MAX);
    if search > caps.max_search {
        return Err(Error::resource("homomorphism candidates", search, caps.max_search));
    }
    let mut found = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
        if options.iter().all(|o| !o.is_empty()) {
            if let Some(map) = extend_linearly(space, gens, &images) {
                if map.len() == domain.len() && accept(&map) {
                    if !is_linear_on(space, domain, &map) {
                        return Err(Error::Internal("generator extension produced a non-linear map".into()));
                    }
                    found.push(LinearMap {
                        generator_images: images,
                        map,
                    });
                    if found.len() > max_found {
                        return Err(Error::resource("isometries", found.len(), max_found));
                    }
                }
            }
        } else {
            break;
        }
        // odometer increment
        let mut i = gens.len();
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
    Ok(found)
}

/// Every injective left-linear `f: C → Aⁿ` with `w(f(x)) = w(x)`.
pub fn isometries(code: &LinearCode, w: &WeightFn, caps: &Caps) -> Result<Vec<LinearMap>> {
    let space = &code.space;
    let weights: HashMap<usize, Cyclo> = code.elements.iter().map(|&x| (x, space.weight(w, x))).collect();
    let all: Vec<usize> = (0..space.size).collect();
    let candidates = |g: usize| {
        all.iter()
            .copied()
            .filter(|&y| space.weight(w, y) == weights[&g])
            .collect::<Vec<_>>()
    };
    let mut accept = |map: &HashMap<usize, usize>| {
        let injective = map.iter().all(|(&x, &y)| y != 0 || x == 0);
        injective && map.iter().all(|(&x, &y)| space.weight(w, y) == weights[&x])
    };
    homomorphisms(
        space,
        &code.generators,
        &code.elements,
        &candidates,
        &mut accept,
        caps,
        caps.max_isometries,
    )
}

/// Invertible self-maps of the alphabet applied coordinatewise, as position
/// tables.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    alphabet: Arc<Alphabet>,
    maps: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    /// Right multiplication by the units of `R`.
    pub fn right_units(alphabet: Arc<Alphabet>) -> Result<Self> {
        let m = Arc::clone(&alphabet.module);
        let mut maps = Vec::new();
        for &u in m.ring().units() {
            let table = alphabet
                .elements
                .iter()
                .map(|&a| {
                    alphabet.position[m.right_act(a, u)]
                        .ok_or_else(|| Error::Input("alphabet is not closed under right unit multiplication".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(table);
        }
        maps.sort();
        maps.dedup();
        Ok(SymmetryGroup { alphabet, maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// The image of bimodule element `a` under the `g`-th map.
    pub fn image(&self, g: usize, a: usize) -> usize {
        let p = self.alphabet.position[a].expect("element of the alphabet");
        self.alphabet.elements[self.maps[g][p]]
    }

    /// The maps as sorted element tables, for comparisons.
    pub fn tables(&self) -> Vec<Vec<usize>> {
        let mut t: Vec<Vec<usize>> = (0..self.maps.len())
            .map(|g| self.alphabet.elements.iter().map(|&a| self.image(g, a)).collect())
            .collect();
        t.sort();
        t
    }

    pub fn contains_identity(&self) -> bool {
        self.maps.iter().any(|m| m.iter().enumerate().all(|(i, &j)| i == j))
    }

    fn apply_position(&self, g: usize, p: usize) -> usize {
        self.maps[g][p]
    }
}

/// `x ↦ (φ₁(x_{σ(1)}), …, φₙ(x_{σ(n)}))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialTransform {
    pub permutation: Vec<usize>,
    /// Index into the symmetry group, per output coordinate.
    pub scalars: Vec<usize>,
}

impl MonomialTransform {
    pub fn apply(&self, space: &CodeSpace, group: &SymmetryGroup, word: &[usize]) -> Result<Word> {
        let p = space.positions(space.encode(word)?);
        let out: Vec<usize> = (0..space.n)
            .map(|j| group.apply_position(self.scalars[j], p[self.permutation[j]]))
            .collect();
        Ok(space.decode(space.index_of_positions(&out)))
    }
}

/// A monomial transformation agreeing with `f` on all of `C`, if one exists.
pub fn extends_to_monomial(f: &LinearMap, code: &LinearCode, group: &SymmetryGroup) -> Option<MonomialTransform> {
    let space = &code.space;
    let n = space.n;
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = code
        .elements
        .iter()
        .map(|&x| (space.positions(x), space.positions(f.map[&x])))
        .collect();
    // compatible[j] = (i, g) with φ_g(x_i) = f(x)_j on every codeword
    let compatible: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|j| {
            (0..n)
                .flat_map(|i| (0..group.len()).map(move |g| (i, g)))
                .filter(|&(i, g)| pairs.iter().all(|(x, y)| group.apply_position(g, x[i]) == y[j]))
                .collect()
        })
        .collect();

    fn assign(
        j: usize,
        compatible: &[Vec<(usize, usize)>],
        used: &mut [bool],
        perm: &mut [usize],
        scalars: &mut [usize],
    ) -> bool {
        if j == compatible.len() {
            return true;
        }
        for &(i, g) in &compatible[j] {
            if !used[i] {
                used[i] = true;
                perm[j] = i;
                scalars[j] = g;
                if assign(j + 1, compatible, used, perm, scalars) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }

    let mut used = vec![false; n];
    let mut permutation = vec![0; n];
    let mut scalars = vec![0; n];
    assign(0, &compatible, &mut used, &mut permutation, &mut scalars)
        .then_some(MonomialTransform { permutation, scalars })
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub generators: Vec<String>,
    pub size: usize,
    pub isometries: usize,
    pub extended: usize,
    /// Generator images of isometries that do not extend (at most ten).
    pub failures: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub n: usize,
    pub alphabet_size: usize,
    pub scalar_group_size: usize,
    /// Whether the weight passed certification; `None` outside its domain.
    pub certified: Option<bool>,
    pub codes: Vec<CodeReport>,
    pub total_isometries: usize,
    pub all_extend: bool,
}

const MAX_LISTED_FAILURES: usize = 10;

fn random_sgfn(module: &FrobeniusBimodule, rng: &mut ChaCha8Rng) -> SgFn {
    let ring = module.ring();
    let values = ring
        .elements()
        .map(|_| Cyclo::from_integer(rng.gen_range(-3..=3), ring.exponent()))
        .collect();
    SgFn::new(Arc::clone(ring), values).expect("one value per element")
}

fn run_extension_check(
    space: &Arc<CodeSpace>,
    w: &WeightFn,
    group: &SymmetryGroup,
    certified: Option<bool>,
    caps: &Caps,
    seed: u64,
) -> Result<ExtensionReport> {
    let module = Arc::clone(&space.alphabet.module);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes: Vec<WeightFn> = (0..3)
        .map(|_| correlate(w, &random_sgfn(&module, &mut rng)))
        .collect::<Result<_>>()?;

    let mut codes = Vec::new();
    let mut total = 0usize;
    for code in enumerate_codes(space, caps)? {
        let maps = isometries(&code, w, caps)?;
        total += maps.len();
        if total > caps.max_isometries {
            return Err(Error::resource("isometries", total, caps.max_isometries));
        }
        let mut extended = 0;
        let mut failures = Vec::new();
        for f in &maps {
            // a w-isometry also preserves every w ⊛ α
            for probe in &probes {
                if code
                    .elements
                    .iter()
                    .any(|&x| space.weight(probe, x) != space.weight(probe, f.map[&x]))
                {
                    return Err(Error::Internal("an isometry fails to preserve a correlated weight".into()));
                }
            }
            if extends_to_monomial(f, &code, group).is_some() {
                extended += 1;
            } else if failures.len() < MAX_LISTED_FAILURES {
                failures.push(f.generator_images.iter().map(|&y| space.word_label(&space.decode(y))).collect());
            }
        }
        codes.push(CodeReport {
            generators: code.generators().iter().map(|g| space.word_label(g)).collect(),
            size: code.size(),
            isometries: maps.len(),
            extended,
            failures,
        });
    }
    let all_extend = codes.iter().all(|c| c.extended == c.isometries);
    Ok(ExtensionReport {
        n: space.n,
        alphabet_size: space.alphabet.len(),
        scalar_group_size: group.len(),
        certified,
        codes,
        total_isometries: total,
        all_extend,
    })
}

/// Exhaustively checks that every isometry of every code in `Aⁿ` extends to
/// a monomial transformation with unit scalars.
pub fn check_extension_property(w: &WeightFn, n: usize, caps: &Caps, seed: u64) -> Result<ExtensionReport> {
    let module = Arc::clone(w.module());
    let certified = match certify(w, DEFAULT_LATTICE_CAP) {
        Ok(cert) => Some(cert.valid()),
        Err(Error::Input(_)) => None,
        Err(e) => return Err(e),
    };
    let alphabet = Arc::new(Alphabet::full(module));
    let space = Arc::new(CodeSpace::new(Arc::clone(&alphabet), n, caps)?);
    let group = SymmetryGroup::right_units(alphabet)?;
    run_extension_check(&space, w, &group, certified, caps, seed)
}

/// The socle of the alphabet as a left module.
#[derive(Clone, Debug, Serialize)]
pub struct Socle {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
    pub is_cyclic: bool,
}

fn left_cyclic(alphabet: &Alphabet, a: usize) -> Vec<usize> {
    alphabet.module.cyclic_left_submodule(a).elements
}

/// Sum of all minimal nonzero left submodules.
pub fn socle(alphabet: &Alphabet) -> Socle {
    let m = &alphabet.module;
    // every minimal submodule is cyclic
    let cyclics: Vec<Vec<usize>> = alphabet.elements.iter().map(|&a| left_cyclic(alphabet, a)).collect();
    let mut minimal: Vec<&Vec<usize>> = cyclics
        .iter()
        .filter(|c| c.len() > 1)
        .filter(|c| {
            !cyclics
                .iter()
                .any(|d| d.len() > 1 && d.len() < c.len() && d.iter().all(|x| c.binary_search(x).is_ok()))
        })
        .collect();
    minimal.sort();
    minimal.dedup();
    let mut elements = vec![m.zero()];
    for c in minimal {
        elements = lattice::sum_of(&elements, c, m.size(), |a, b| m.add(a, b));
    }
    let generators = greedy_generators(&elements, m.size(), |x| left_cyclic(alphabet, x), |a, b| m.add(a, b), m.zero());
    let is_cyclic = elements.iter().any(|&a| left_cyclic(alphabet, a) == elements);
    Socle {
        elements,
        generators,
        is_cyclic,
    }
}

/// All left-linear self-maps of the alphabet.
fn endomorphisms(alphabet: &Arc<Alphabet>, caps: &Caps) -> Result<(Arc<CodeSpace>, Vec<usize>, Vec<LinearMap>)> {
    let space = Arc::new(CodeSpace::new(Arc::clone(alphabet), 1, caps)?);
    let all: Vec<usize> = (0..space.size).collect();
    let gens = greedy_generators(&all, space.size, |x| space.cyclic(x), |x, y| space.add(x, y), 0);
    let everything = |_: usize| all.clone();
    let maps = homomorphisms(&space, &gens, &all, &everything, &mut |_| true, caps, caps.max_isometries)?;
    Ok((space, all, maps))
}

/// Whether every injection of a submodule into the alphabet extends to an
/// endomorphism of the alphabet.
pub fn is_pseudo_injective(alphabet: &Arc<Alphabet>, caps: &Caps) -> Result<bool> {
    let (space, all, endos) = endomorphisms(alphabet, caps)?;
    let subs = lattice::all_submodules(space.size, &all, |x, y| space.add(x, y), |x| space.cyclic(x), caps.max_codes)?;
    for sub in subs {
        let gens = greedy_generators(&sub, space.size, |x| space.cyclic(x), |x, y| space.add(x, y), 0);
        let everything = |_: usize| all.clone();
        let mut injective = |map: &HashMap<usize, usize>| map.iter().all(|(&x, &y)| y != 0 || x == 0);
        let injections = homomorphisms(&space, &gens, &sub, &everything, &mut injective, caps, caps.max_isometries)?;
        for inj in injections {
            let extends = endos.iter().any(|e| sub.iter().all(|x| e.map[x] == inj.map[x]));
            if !extends {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Invertible left-linear self-maps of the alphabet preserving `w`.
pub fn right_symmetry_group(alphabet: &Arc<Alphabet>, w: &WeightFn, caps: &Caps) -> Result<SymmetryGroup> {
    let (space, all, endos) = endomorphisms(alphabet, caps)?;
    let mut maps: Vec<Vec<usize>> = endos
        .into_iter()
        .filter(|e| {
            let mut image: Vec<usize> = all.iter().map(|x| e.map[x]).collect();
            image.sort_unstable();
            image.dedup();
            image.len() == all.len() && all.iter().all(|&x| space.weight(w, e.map[&x]) == space.weight(w, x))
        })
        .map(|e| all.iter().map(|x| e.map[x]).collect())
        .collect();
    maps.sort();
    Ok(SymmetryGroup {
        alphabet: Arc::clone(alphabet),
        maps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OtherAlphabetReport {
    pub alphabet: Vec<String>,
    pub socle: Vec<String>,
    pub socle_cyclic: bool,
    pub pseudo_injective: bool,
    pub symmetry_group_size: usize,
    pub extension: ExtensionReport,
}

/// The extension check over a submodule alphabet, with scalars from the
/// right symmetry group of the restricted weight.
pub fn check_other_alphabet(
    alphabet: &Arc<Alphabet>,
    w: &WeightFn,
    n: usize,
    caps: &Caps,
    seed: u64,
) -> Result<OtherAlphabetReport> {
    let m = alphabet.module();
    let soc = socle(alphabet);
    if !soc.is_cyclic {
        return Err(Error::Input("alphabet has a non-cyclic socle".into()));
    }
    if !is_pseudo_injective(alphabet, caps)? {
        return Err(Error::Input("alphabet is not pseudo-injective".into()));
    }
    let cert = certify(w, DEFAULT_LATTICE_CAP)?;
    if !cert.valid() {
        return Err(Error::Input("weight does not satisfy the extension condition on the full dual".into()));
    }
    let group = right_symmetry_group(alphabet, w, caps)?;
    let space = Arc::new(CodeSpace::new(Arc::clone(alphabet), n, caps)?);
    let extension = run_extension_check(&space, w, &group, Some(true), caps, seed)?;
    Ok(OtherAlphabetReport {
        alphabet: alphabet.elements.iter().map(|&a| m.label(a).to_string()).collect(),
        socle: soc.elements.iter().map(|&a| m.label(a).to_string()).collect(),
        socle_cyclic: soc.is_cyclic,
        pseudo_injective: true,
        symmetry_group_size: group.len(),
        extension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::homogeneous_weight;
    use crate::finring::FiniteRing;

    fn z4() -> Arc<FrobeniusBimodule> {
        Arc::new(FrobeniusBimodule::dual(Arc::new(FiniteRing::zn(4).unwrap())).unwrap())
    }

    fn lee(m: &Arc<FrobeniusBimodule>) -> WeightFn {
        WeightFn::from_integers(Arc::clone(m), &[0, 1, 2, 1]).unwrap()
    }

    fn space(m: &Arc<FrobeniusBimodule>, n: usize) -> Arc<CodeSpace> {
        Arc::new(CodeSpace::new(Arc::new(Alphabet::full(Arc::clone(m))), n, &Caps::default()).unwrap())
    }

    #[test]
    fn z4_codes_of_length_one_and_two() {
        let m = z4();
        assert_eq!(enumerate_codes(&space(&m, 1), &Caps::default()).unwrap().len(), 3);
        let codes = enumerate_codes(&space(&m, 2), &Caps::default()).unwrap();
        // oracle: additive subgroups of Z_4², which are automatically submodules
        let mut subgroups = 0;
        for mask in 1u32..(1 << 16) {
            let set: Vec<(usize, usize)> = (0..16).filter(|i| mask >> i & 1 == 1).map(|i| (i / 4, i % 4)).collect();
            let has = |p: (usize, usize)| set.contains(&p);
            if has((0, 0))
                && set
                    .iter()
                    .all(|&a| set.iter().all(|&b| has(((a.0 + b.0) % 4, (a.1 + b.1) % 4))))
            {
                subgroups += 1;
            }
        }
        assert_eq!(codes.len(), subgroups);
        assert_eq!(codes[0].size(), 1);
        assert_eq!(codes.last().unwrap().size(), 16);
    }

    #[test]
    fn diagonal_code_isometry_count() {
        let m = z4();
        let w = lee(&m);
        let sp = space(&m, 2);
        let codes = enumerate_codes(&sp, &Caps::default()).unwrap();
        let code = codes.iter().find(|c| c.contains(&[1, 1]) && c.size() == 4).unwrap();
        let maps = isometries(code, &w, &Caps::default()).unwrap();
        // oracle: images y of (1,1) with k·(1,1) ↦ k·y injective and weight-preserving
        let lee_val = |a: usize| [0, 1, 2, 1][a % 4];
        let expected = (0..16)
            .filter(|&y| {
                let (y0, y1) = (y / 4, y % 4);
                (1..4).all(|k| {
                    let (a, b) = (k * y0 % 4, k * y1 % 4);
                    (a, b) != (0, 0) && lee_val(a) + lee_val(b) == 2 * lee_val(k)
                })
            })
            .count();
        assert_eq!(maps.len(), expected);
        assert!(maps.iter().any(|f| f.apply(&sp, &[1, 1]) == Some(vec![1, 1])));
    }

    #[test]
    fn lee_and_homogeneous_extend_on_z4() {
        let m = z4();
        for w in [lee(&m), homogeneous_weight(&m)] {
            for n in 0..=2 {
                let report = check_extension_property(&w, n, &Caps::default(), 7).unwrap();
                assert!(report.all_extend, "n = {n}");
                assert_eq!(report.certified, Some(true));
            }
        }
    }

    #[test]
    fn non_invariant_weight_is_recorded_as_uncertified() {
        let m = z4();
        let skew = WeightFn::from_integers(Arc::clone(&m), &[0, 1, 2, 3]).unwrap();
        let report = check_extension_property(&skew, 1, &Caps::default(), 1).unwrap();
        assert_eq!(report.certified, None);
    }

    #[test]
    fn full_dual_symmetry_group_is_right_units() {
        for ring in [FiniteRing::zn(4).unwrap(), FiniteRing::upper_triangular(2, 2).unwrap()] {
            let m = Arc::new(FrobeniusBimodule::dual(Arc::new(ring)).unwrap());
            let alphabet = Arc::new(Alphabet::full(Arc::clone(&m)));
            let w = homogeneous_weight(&m);
            let g = right_symmetry_group(&alphabet, &w, &Caps::default()).unwrap();
            let units = SymmetryGroup::right_units(Arc::clone(&alphabet)).unwrap();
            assert_eq!(g.tables(), units.tables());
            assert!(g.contains_identity());
        }
    }

    #[test]
    fn socle_and_pseudo_injectivity() {
        let m = z4();
        let full = Arc::new(Alphabet::full(Arc::clone(&m)));
        let s = socle(&full);
        assert_eq!(s.elements, vec![0, 2]);
        assert!(s.is_cyclic);
        assert!(is_pseudo_injective(&full, &Caps::default()).unwrap());
        let small = Arc::new(Alphabet::generated_by(Arc::clone(&m), &[2]).unwrap());
        assert_eq!(socle(&small).elements, vec![0, 2]);
        assert!(is_pseudo_injective(&small, &Caps::default()).unwrap());
    }

    #[test]
    fn other_alphabet_pipeline_on_z4_socle() {
        let m = z4();
        let small = Arc::new(Alphabet::generated_by(Arc::clone(&m), &[2]).unwrap());
        let w = homogeneous_weight(&m);
        let report = check_other_alphabet(&small, &w, 2, &Caps::default(), 3).unwrap();
        assert!(report.extension.all_extend);
        assert_eq!(report.symmetry_group_size, 1);
    }

    #[test]
    fn full_alphabet_paths_agree() {
        let m = z4();
        let full = Arc::new(Alphabet::full(Arc::clone(&m)));
        let w = lee(&m);
        let classical = check_extension_property(&w, 2, &Caps::default(), 5).unwrap();
        let other = check_other_alphabet(&full, &w, 2, &Caps::default(), 5).unwrap();
        let counts = |r: &ExtensionReport| r.codes.iter().map(|c| (c.isometries, c.extended)).collect::<Vec<_>>();
        assert_eq!(counts(&classical), counts(&other.extension));
    }

    #[test]
    fn caps_are_enforced() {
        let m = z4();
        let caps = Caps {
            max_n: 2,
            ..Caps::default()
        };
        let alphabet = Arc::new(Alphabet::full(Arc::clone(&m)));
        assert_eq!(CodeSpace::new(Arc::clone(&alphabet), 3, &caps).unwrap_err().kind(), "resource");
        let caps = Caps {
            max_codes: 4,
            ..Caps::default()
        };
        assert_eq!(enumerate_codes(&space(&m, 2), &caps).unwrap_err().kind(), "resource");
    }

    #[test]
    fn non_submodule_alphabet_rejected() {
        let m = z4();
        assert_eq!(Alphabet::from_elements(Arc::clone(&m), vec![0, 1]).unwrap_err().kind(), "input");
    }
}
