//! Abstract simplicial complexes on vertex labels `0..n`.
//!
//! A complex is determined by its minimal nonfaces, which are always stored;
//! facets are computed lazily because complexes built from graphs (one vertex
//! per edge) can have far too many faces to list while their minimal nonfaces
//! stay small.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IntPolynomial;

/// Largest vertex count a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 64;
/// Cap on the number of minimal nonfaces for subset enumerations over `2^r`.
pub const MAX_SUBSET_NONFACES: usize = 24;
/// Cap on the number of minimal nonfaces for the property-I check.
pub const MAX_PROPERTY_I_NONFACES: usize = 20;
/// Cap on the number of faces enumerated for f-vectors and facets.
pub const MAX_FACES: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("{n} vertices exceed the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("invalid minimal nonfaces: {0}")]
    InvalidNonfaces(String),
    #[error("{r} minimal nonfaces exceed the cap of {cap}")]
    TooManyNonfaces { r: usize, cap: usize },
    #[error("complex has more than {MAX_FACES} faces")]
    TooManyFaces,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("witness does not satisfy property I")]
    NotPropertyI,
    #[error("witness records no apex; the auxiliary complex is only defined for apex-augmented complexes")]
    UnsupportedWitness,
}

/// Set of vertex labels below 64, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn try_from_slice(vs: &[usize], n: usize) -> Result<Self, ComplexError> {
        let mut bits = 0u64;
        for &v in vs {
            if v >= n || v >= MAX_VERTICES {
                return Err(ComplexError::InvalidVertex { vertex: v, n });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn remove(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Apply a vertex relabeling.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        VertexSet(self.iter().fold(0u64, |acc, v| acc | 1 << f(v)))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().fold(0u64, |acc, v| acc | 1 << v))
    }
}

/// Cardinality first, then lexicographic on the sorted labels.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// The two accepted input shapes of `complex.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Nonfaces {
        n: usize,
        minimal_nonfaces: Vec<Vec<usize>>,
    },
    Facets {
        n: usize,
        facets: Vec<Vec<usize>>,
    },
}

#[derive(Clone)]
pub struct SimplicialComplex {
    n: usize,
    nonfaces: Vec<VertexSet>,
    facets: OnceLock<Vec<VertexSet>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.nonfaces == other.nonfaces
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n", &self.n)
            .field("minimal_nonfaces", &self.nonfaces)
            .finish()
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("minimal_nonfaces", &self.nonfaces)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = ComplexSpec::deserialize(d)?;
        SimplicialComplex::build(&spec).map_err(serde::de::Error::custom)
    }
}

fn check_n(n: usize) -> Result<(), ComplexError> {
    if n > MAX_VERTICES {
        Err(ComplexError::TooManyVertices { n })
    } else {
        Ok(())
    }
}

impl SimplicialComplex {
    pub fn build(spec: &ComplexSpec) -> Result<Self, ComplexError> {
        match spec {
            ComplexSpec::Facets { n, facets } => {
                let sets = facets
                    .iter()
                    .map(|f| VertexSet::try_from_slice(f, *n))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::from_facets(*n, sets)
            }
            ComplexSpec::Nonfaces { n, minimal_nonfaces } => {
                let sets = minimal_nonfaces
                    .iter()
                    .map(|f| VertexSet::try_from_slice(f, *n))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::from_minimal_nonfaces(*n, sets)
            }
        }
    }

    /// Complex generated by the given faces; contained faces are pruned.
    pub fn from_facets(n: usize, faces: Vec<VertexSet>) -> Result<Self, ComplexError> {
        check_n(n)?;
        for f in &faces {
            if let Some(v) = f.max_vertex().filter(|&v| v >= n) {
                return Err(ComplexError::InvalidVertex { vertex: v, n });
            }
        }
        let mut facets: Vec<VertexSet> = Vec::new();
        let mut sorted = faces;
        sorted.sort_by(|a, b| b.cmp(a));
        sorted.dedup();
        for f in sorted {
            if !facets.iter().any(|g| f.is_subset(*g)) {
                facets.push(f);
            }
        }
        if facets.is_empty() {
            facets.push(VertexSet::EMPTY);
        }
        facets.sort();
        let nonfaces = nonfaces_from_facets(n, &facets)?;
        let facets_cell = OnceLock::new();
        let _ = facets_cell.set(facets);
        Ok(SimplicialComplex {
            n,
            nonfaces,
            facets: facets_cell,
        })
    }

    /// Largest complex on `n` vertices whose faces contain none of `nonfaces`.
    pub fn from_minimal_nonfaces(n: usize, nonfaces: Vec<VertexSet>) -> Result<Self, ComplexError> {
        check_n(n)?;
        for f in &nonfaces {
            if f.is_empty() {
                return Err(ComplexError::InvalidNonfaces("the empty set cannot be a nonface".into()));
            }
            if let Some(v) = f.max_vertex().filter(|&v| v >= n) {
                return Err(ComplexError::InvalidVertex { vertex: v, n });
            }
        }
        for (i, a) in nonfaces.iter().enumerate() {
            for b in &nonfaces[i + 1..] {
                if a.is_subset(*b) || b.is_subset(*a) {
                    return Err(ComplexError::InvalidNonfaces(format!(
                        "{:?} and {:?} are not incomparable",
                        a, b
                    )));
                }
            }
        }
        let mut nonfaces = nonfaces;
        nonfaces.sort();
        Ok(SimplicialComplex {
            n,
            nonfaces,
            facets: OnceLock::new(),
        })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Result<Self, ComplexError> {
        Self::from_minimal_nonfaces(n, Vec::new())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Minimal nonfaces in canonical order (cardinality, then lexicographic).
    pub fn minimal_nonfaces(&self) -> &[VertexSet] {
        &self.nonfaces
    }

    pub fn num_nonfaces(&self) -> usize {
        self.nonfaces.len()
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        s.is_subset(VertexSet::full(self.n)) && !self.nonfaces.iter().any(|nf| nf.is_subset(s))
    }

    /// Faces grouped by cardinality, `faces[k]` holding the faces with `k` vertices.
    pub fn faces_by_size(&self) -> Result<Vec<Vec<VertexSet>>, ComplexError> {
        let mut levels = vec![vec![VertexSet::EMPTY]];
        let mut total = 1usize;
        loop {
            let mut next = Vec::new();
            for &f in levels.last().unwrap() {
                let start = f.max_vertex().map_or(0, |m| m + 1);
                for v in start..self.n {
                    let c = f.insert(v);
                    if self.is_face(c) {
                        next.push(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len();
            if total > MAX_FACES {
                return Err(ComplexError::TooManyFaces);
            }
            levels.push(next);
        }
        Ok(levels)
    }

    /// Maximal faces, sorted canonically.
    pub fn facets(&self) -> Result<&[VertexSet], ComplexError> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        let levels = self.faces_by_size()?;
        let mut facets: Vec<VertexSet> = levels
            .iter()
            .flatten()
            .copied()
            .filter(|&f| (0..self.n).all(|v| f.contains(v) || !self.is_face(f.insert(v))))
            .collect();
        facets.sort();
        Ok(self.facets.get_or_init(|| facets))
    }

    /// Simplicial dimension: largest face cardinality minus one (−1 for `{∅}`).
    pub fn dim(&self) -> Result<i64, ComplexError> {
        Ok(self.krull_dim()? as i64 - 1)
    }

    /// Algebraic dimension `d = dim + 1`: the largest face cardinality.
    pub fn krull_dim(&self) -> Result<usize, ComplexError> {
        Ok(self.facets()?.iter().map(|f| f.len()).max().unwrap_or(0))
    }

    /// `(f_{-1}, f_0, ..., f_{dim})`, `f_i` counting faces with `i + 1` vertices.
    pub fn f_vector(&self) -> Result<Vec<u64>, ComplexError> {
        Ok(self
            .faces_by_size()?
            .iter()
            .map(|level| level.len() as u64)
            .collect())
    }

    /// `h(t) = Σ_{i=0}^{d} f_{i-1} t^i (1 - t)^{d-i}` with `d` the algebraic dimension.
    pub fn h_polynomial(&self) -> Result<IntPolynomial, ComplexError> {
        let f = self.f_vector()?;
        Ok(h_from_f(&f))
    }

    /// `c(I)`: connected components among the nonfaces indexed by `indices`,
    /// two nonfaces being adjacent when they intersect.
    pub fn component_count(&self, indices: &[usize]) -> Result<usize, ComplexError> {
        if indices.is_empty() {
            return Err(ComplexError::InvalidArgument("c(I) needs a nonempty index set".into()));
        }
        let r = self.nonfaces.len();
        let mut uf = crate::unionfind::UnionFind::new(r);
        for (pos, &i) in indices.iter().enumerate() {
            if i >= r {
                return Err(ComplexError::InvalidArgument(format!(
                    "nonface index {i} out of range (r = {r})"
                )));
            }
            for &j in &indices[..pos] {
                if self.nonfaces[i].intersects(self.nonfaces[j]) {
                    uf.union(i, j);
                }
            }
        }
        let roots: BTreeSet<usize> = indices.iter().map(|&i| uf.find(i)).collect();
        Ok(roots.len())
    }

    /// Checks whether `c(I)` is constant over the index sets selected by `mode`.
    pub fn uniform_c_check(&self, mode: UniformMode) -> Result<UniformCReport, ComplexError> {
        let r = self.nonfaces.len();
        if r > MAX_SUBSET_NONFACES {
            return Err(ComplexError::TooManyNonfaces {
                r,
                cap: MAX_SUBSET_NONFACES,
            });
        }
        let adj = self.nonface_adjacency();
        match mode {
            UniformMode::AllOne => {
                let holds = (1u32..1 << r).all(|mask| mask_components(mask, &adj) == 1);
                Ok(UniformCReport {
                    holds,
                    a: holds.then_some(1),
                    a_undefined: false,
                })
            }
            UniformMode::AllEqual => {
                if r <= 1 {
                    return Ok(UniformCReport {
                        holds: true,
                        a: None,
                        a_undefined: true,
                    });
                }
                let mut a = None;
                for mask in (1u32..1 << r).filter(|m| m.count_ones() >= 2) {
                    let c = mask_components(mask, &adj);
                    match a {
                        None => a = Some(c),
                        Some(x) if x != c => {
                            return Ok(UniformCReport {
                                holds: false,
                                a: None,
                                a_undefined: false,
                            })
                        }
                        _ => {}
                    }
                }
                Ok(UniformCReport {
                    holds: true,
                    a,
                    a_undefined: false,
                })
            }
        }
    }

    fn nonface_adjacency(&self) -> Vec<u32> {
        self.nonfaces
            .iter()
            .map(|a| {
                self.nonfaces
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| a.intersects(**b))
                    .fold(0u32, |acc, (j, _)| acc | 1 << j)
            })
            .collect()
    }

    /// Verifies the property-I intersection conditions for `witness`:
    /// `|α_i| = |σ_i| − 1`; for every nonempty `I` and `p ∉ I`,
    /// `σ_I ∩ σ_p = ∅` forces `α_I ∩ α_p = ∅`; and when `|I| ≥ 2` with
    /// `σ_I ∩ σ_p ≠ ∅`, `|α_I ∩ α_p| = |σ_I ∩ σ_p| − 1`.
    pub fn check_property_i(&self, witness: &PropertyIWitness) -> Result<bool, ComplexError> {
        let r = self.nonfaces.len();
        if witness.alphas.len() != r {
            return Err(ComplexError::InvalidWitness(format!(
                "{} alphas for {} minimal nonfaces",
                witness.alphas.len(),
                r
            )));
        }
        if r > MAX_PROPERTY_I_NONFACES {
            return Err(ComplexError::TooManyNonfaces {
                r,
                cap: MAX_PROPERTY_I_NONFACES,
            });
        }
        let sig = &self.nonfaces;
        let alp = &witness.alphas;
        if sig.iter().zip(alp).any(|(s, a)| a.len() + 1 != s.len()) {
            return Ok(false);
        }
        let size = 1usize << r;
        let mut sig_i = vec![VertexSet::EMPTY; size];
        let mut alp_i = vec![VertexSet::EMPTY; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            if rest == 0 {
                sig_i[mask] = sig[low];
                alp_i[mask] = alp[low];
            } else {
                sig_i[mask] = sig_i[rest].intersection(sig[low]);
                alp_i[mask] = alp_i[rest].intersection(alp[low]);
            }
            let big = mask.count_ones() >= 2;
            for p in (0..r).filter(|p| mask >> p & 1 == 0) {
                let s = sig_i[mask].intersection(sig[p]);
                let a = alp_i[mask].intersection(alp[p]);
                if s.is_empty() {
                    if !a.is_empty() {
                        return Ok(false);
                    }
                } else if big && a.len() + 1 != s.len() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Adds one shared fresh apex (label `n`) to every minimal nonface.
    pub fn apex_augment(&self) -> Result<ApexAugmentation, ComplexError> {
        if self.nonfaces.is_empty() {
            return Ok(ApexAugmentation {
                complex: self.clone(),
                witness: PropertyIWitness {
                    alphas: Vec::new(),
                    apex: None,
                },
                degenerate: true,
            });
        }
        let apex = self.n;
        check_n(apex + 1)?;
        let sigma: Vec<VertexSet> = self.nonfaces.iter().map(|nf| nf.insert(apex)).collect();
        // Inserting the same apex everywhere preserves the canonical order.
        let complex = Self::from_minimal_nonfaces(apex + 1, sigma)?;
        Ok(ApexAugmentation {
            complex,
            witness: PropertyIWitness {
                alphas: self.nonfaces.clone(),
                apex: Some(apex),
            },
            degenerate: false,
        })
    }

    /// `T(S)`: the complex on `V(S) ∖ {apex}` with minimal nonfaces `α_i`.
    /// Vertices above the apex shift down by one.
    pub fn auxiliary_complex(&self, witness: &PropertyIWitness) -> Result<SimplicialComplex, ComplexError> {
        if self.nonfaces.is_empty() && witness.alphas.is_empty() {
            return Ok(self.clone());
        }
        if !self.check_property_i(witness)? {
            return Err(ComplexError::NotPropertyI);
        }
        let apex = witness.apex.ok_or(ComplexError::UnsupportedWitness)?;
        if apex >= self.n {
            return Err(ComplexError::InvalidWitness(format!("apex {apex} out of range")));
        }
        let relabel = |v: usize| if v > apex { v - 1 } else { v };
        let mut alphas = Vec::with_capacity(witness.alphas.len());
        for a in &witness.alphas {
            if a.contains(apex) {
                return Err(ComplexError::InvalidWitness("an alpha contains the apex".into()));
            }
            alphas.push(a.map(relabel));
        }
        Self::from_minimal_nonfaces(self.n - 1, alphas)
    }

    /// Abstract isomorphism: a vertex bijection carrying minimal nonfaces onto
    /// minimal nonfaces.
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        if self.n != other.n || self.nonfaces.len() != other.nonfaces.len() {
            return false;
        }
        let mut a_sizes: Vec<usize> = self.nonfaces.iter().map(|s| s.len()).collect();
        let mut b_sizes: Vec<usize> = other.nonfaces.iter().map(|s| s.len()).collect();
        a_sizes.sort_unstable();
        b_sizes.sort_unstable();
        if a_sizes != b_sizes {
            return false;
        }
        let sig = |c: &SimplicialComplex, v: usize| {
            let mut s: Vec<usize> = c.nonfaces.iter().filter(|nf| nf.contains(v)).map(|nf| nf.len()).collect();
            s.sort_unstable();
            s
        };
        let a_sig: Vec<Vec<usize>> = (0..self.n).map(|v| sig(self, v)).collect();
        let b_sig: Vec<Vec<usize>> = (0..other.n).map(|v| sig(other, v)).collect();
        let target: HashSet<VertexSet> = other.nonfaces.iter().copied().collect();
        // Nonfaces whose largest vertex is v become checkable once v is mapped.
        let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); self.n];
        for nf in &self.nonfaces {
            closing[nf.max_vertex().unwrap()].push(*nf);
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        fn search(
            v: usize,
            map: &mut [usize],
            used: &mut [bool],
            a_sig: &[Vec<usize>],
            b_sig: &[Vec<usize>],
            closing: &[Vec<VertexSet>],
            target: &HashSet<VertexSet>,
        ) -> bool {
            if v == map.len() {
                return true;
            }
            for w in 0..map.len() {
                if used[w] || a_sig[v] != b_sig[w] {
                    continue;
                }
                map[v] = w;
                used[w] = true;
                let ok = closing[v].iter().all(|nf| target.contains(&nf.map(|x| map[x])));
                if ok && search(v + 1, map, used, a_sig, b_sig, closing, target) {
                    return true;
                }
                used[w] = false;
            }
            map[v] = usize::MAX;
            false
        }
        search(0, &mut map, &mut used, &a_sig, &b_sig, &closing, &target)
    }
}

/// `h` from the f-vector `(f_{-1}, ..., f_{d-1})`.
pub fn h_from_f(f: &[u64]) -> IntPolynomial {
    let d = f.len().saturating_sub(1);
    let one_minus_t = IntPolynomial::from_i64(&[1, -1]);
    let mut h = IntPolynomial::zero();
    for (i, &fi) in f.iter().enumerate() {
        let term = one_minus_t.pow((d - i) as u32).shift(i).scale(&fi.into());
        h = &h + &term;
    }
    h
}

/// Component count of the nonfaces selected by `mask` (bit-parallel flood fill).
pub(crate) fn mask_components(mask: u32, adj: &[u32]) -> usize {
    let mut rest = mask;
    let mut count = 0;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[j] & mask;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformMode {
    /// `c(I) = 1` for every nonempty `I`.
    AllOne,
    /// `c(I) = a` for every `I` with `|I| ≥ 2`, for some `a`.
    AllEqual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformCReport {
    pub holds: bool,
    pub a: Option<usize>,
    /// Set when `r ≤ 1`, where no `I` with `|I| ≥ 2` exists.
    pub a_undefined: bool,
}

/// Sets `α_i` aligned with the minimal nonfaces, plus the apex vertex when the
/// complex came from [`SimplicialComplex::apex_augment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyIWitness {
    pub alphas: Vec<VertexSet>,
    pub apex: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    alphas: Vec<Vec<usize>>,
    apex: Option<usize>,
}

impl Serialize for PropertyIWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WitnessJson {
            alphas: self.alphas.iter().map(|a| a.to_vec()).collect(),
            apex: self.apex,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PropertyIWitness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = WitnessJson::deserialize(d)?;
        let alphas = raw
            .alphas
            .iter()
            .map(|a| VertexSet::try_from_slice(a, MAX_VERTICES))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PropertyIWitness { alphas, apex: raw.apex })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApexAugmentation {
    pub complex: SimplicialComplex,
    pub witness: PropertyIWitness,
    /// No minimal nonfaces to augment; `complex` is the input itself.
    pub degenerate: bool,
}

/// Inclusion-minimal non-faces of the complex generated by `facets`,
/// found level by level: a candidate `F ∪ {v}` (with `v` above every vertex of
/// the face `F`) is a minimal nonface when it lies in no facet while all its
/// codimension-one subsets do.
fn nonfaces_from_facets(n: usize, facets: &[VertexSet]) -> Result<Vec<VertexSet>, ComplexError> {
    let in_facet = |s: VertexSet| facets.iter().any(|f| s.is_subset(*f));
    let mut out = Vec::new();
    let mut level = vec![VertexSet::EMPTY];
    let mut total = 0usize;
    while !level.is_empty() {
        let mut next = Vec::new();
        for &f in &level {
            let start = f.max_vertex().map_or(0, |m| m + 1);
            for v in start..n {
                let c = f.insert(v);
                if in_facet(c) {
                    next.push(c);
                } else if c.iter().all(|u| in_facet(c.remove(u))) {
                    out.push(c);
                }
            }
        }
        total += next.len();
        if total > MAX_FACES {
            return Err(ComplexError::TooManyFaces);
        }
        level = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn by_nonfaces(n: usize, nf: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_minimal_nonfaces(n, nf.iter().map(|s| vs(s)).collect()).unwrap()
    }

    fn by_facets(n: usize, f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, f.iter().map(|s| vs(s)).collect()).unwrap()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn build_from_nonfaces() {
        let tri = by_nonfaces(3, &[&[0, 1, 2]]);
        assert_eq!(tri.facets().unwrap(), &[vs(&[0, 1]), vs(&[0, 2]), vs(&[1, 2])]);
        let s = by_nonfaces(4, &[&[0, 2, 3]]);
        assert_eq!(
            s.facets().unwrap(),
            &[vs(&[0, 1, 2]), vs(&[0, 1, 3]), vs(&[1, 2, 3])]
        );
    }

    #[test]
    fn build_from_facets() {
        let path = by_facets(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(path.minimal_nonfaces(), &[vs(&[0, 2])]);
        let tri = by_facets(3, &[&[0, 1], &[0, 2], &[1, 2], &[0]]);
        assert_eq!(tri.minimal_nonfaces(), &[vs(&[0, 1, 2])]);
        assert_eq!(by_facets(3, &[&[0, 1, 2]]).minimal_nonfaces(), &[] as &[VertexSet]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            SimplicialComplex::from_minimal_nonfaces(3, vec![vs(&[0, 1]), vs(&[0, 1, 2])]),
            Err(ComplexError::InvalidNonfaces(_))
        ));
        assert_eq!(
            SimplicialComplex::build(&ComplexSpec::Facets {
                n: 2,
                facets: vec![vec![0, 2]]
            }),
            Err(ComplexError::InvalidVertex { vertex: 2, n: 2 })
        );
        assert_eq!(
            SimplicialComplex::build(&ComplexSpec::Nonfaces {
                n: 3,
                minimal_nonfaces: vec![vec![5]]
            }),
            Err(ComplexError::InvalidVertex { vertex: 5, n: 3 })
        );
    }

    #[test]
    fn isolated_vertex_is_a_nonface() {
        let c = by_facets(3, &[&[0, 1]]);
        assert_eq!(c.minimal_nonfaces(), &[vs(&[2])]);
        assert_eq!(c.num_vertices(), 3);
    }

    #[test]
    fn f_and_h_vectors() {
        let tri = by_nonfaces(3, &[&[0, 1, 2]]);
        assert_eq!(tri.f_vector().unwrap(), vec![1, 3, 3]);
        assert_eq!(tri.h_polynomial().unwrap(), poly(&[1, 1, 1]));
        let path = by_facets(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(path.f_vector().unwrap(), vec![1, 3, 2]);
        assert_eq!(path.h_polynomial().unwrap(), poly(&[1, 1]));
        let s = by_nonfaces(4, &[&[0, 2, 3]]);
        assert_eq!(s.f_vector().unwrap(), vec![1, 4, 6, 3]);
        for k in 1..6 {
            assert_eq!(SimplicialComplex::simplex(k).unwrap().h_polynomial().unwrap(), poly(&[1]));
        }
        assert_eq!(s.dim().unwrap(), 2);
        assert_eq!(s.krull_dim().unwrap(), 3);
    }

    #[test]
    fn components() {
        let s = by_nonfaces(5, &[&[0, 1, 2], &[0, 3, 4]]);
        assert_eq!(s.component_count(&[0, 1]).unwrap(), 1);
        let d = by_nonfaces(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(d.component_count(&[0, 1]).unwrap(), 2);
        assert_eq!(d.component_count(&[1]).unwrap(), 1);
        assert!(matches!(d.component_count(&[]), Err(ComplexError::InvalidArgument(_))));
        assert!(matches!(d.component_count(&[7]), Err(ComplexError::InvalidArgument(_))));
    }

    #[test]
    fn uniform_c() {
        let a = by_nonfaces(5, &[&[0, 1, 2], &[1, 3, 4]]);
        assert!(a.uniform_c_check(UniformMode::AllOne).unwrap().holds);
        let b = by_nonfaces(4, &[&[0, 1], &[2, 3]]);
        assert!(!b.uniform_c_check(UniformMode::AllOne).unwrap().holds);
        let eq = b.uniform_c_check(UniformMode::AllEqual).unwrap();
        assert!(eq.holds);
        assert_eq!(eq.a, Some(2));
        let c = by_nonfaces(8, &[&[0, 1, 2], &[0, 3, 4], &[5, 6, 7]]);
        assert!(!c.uniform_c_check(UniformMode::AllEqual).unwrap().holds);
        let single = by_nonfaces(3, &[&[0, 1, 2]]);
        let rep = single.uniform_c_check(UniformMode::AllEqual).unwrap();
        assert!(rep.holds && rep.a_undefined && rep.a.is_none());
    }

    #[test]
    fn property_i() {
        let tri = by_nonfaces(3, &[&[0, 1, 2]]);
        let w = PropertyIWitness {
            alphas: vec![vs(&[0, 1])],
            apex: None,
        };
        assert!(tri.check_property_i(&w).unwrap());
        let bad_size = PropertyIWitness {
            alphas: vec![vs(&[0])],
            apex: None,
        };
        assert!(!tri.check_property_i(&bad_size).unwrap());
        assert!(matches!(
            tri.check_property_i(&PropertyIWitness {
                alphas: vec![],
                apex: None
            }),
            Err(ComplexError::InvalidWitness(_))
        ));
        // With r = 2 no |I| >= 2 clause exists, so only the emptiness clause binds.
        let s = by_nonfaces(3, &[&[0, 1], &[1, 2]]);
        let w2 = PropertyIWitness {
            alphas: vec![vs(&[0]), vs(&[2])],
            apex: None,
        };
        assert!(s.check_property_i(&w2).unwrap());
        // Three pairwise-meeting nonfaces: I = {0,1}, p = 2 forces |α_I ∩ α_p| = 0.
        let s3 = by_nonfaces(4, &[&[0, 1], &[1, 2], &[1, 3]]);
        let same = PropertyIWitness {
            alphas: vec![vs(&[0]), vs(&[0]), vs(&[0])],
            apex: None,
        };
        assert!(!s3.check_property_i(&same).unwrap());
        let distinct = PropertyIWitness {
            alphas: vec![vs(&[0]), vs(&[2]), vs(&[3])],
            apex: None,
        };
        assert!(s3.check_property_i(&distinct).unwrap());
        // Disjoint nonfaces need disjoint alphas.
        let d = by_nonfaces(4, &[&[0, 1], &[2, 3]]);
        let overlap = PropertyIWitness {
            alphas: vec![vs(&[0]), vs(&[0])],
            apex: None,
        };
        assert!(!d.check_property_i(&overlap).unwrap());
    }

    #[test]
    fn apex_examples() {
        let two_points = by_facets(2, &[&[0], &[1]]);
        let aug = two_points.apex_augment().unwrap();
        assert_eq!(aug.complex, by_nonfaces(3, &[&[0, 1, 2]]));
        assert_eq!(aug.witness.alphas, vec![vs(&[0, 1])]);
        assert!(aug.complex.check_property_i(&aug.witness).unwrap());

        let path = by_facets(3, &[&[0, 1], &[1, 2]]);
        let aug = path.apex_augment().unwrap();
        assert_eq!(aug.complex.minimal_nonfaces(), &[vs(&[0, 2, 3])]);
        assert_eq!(
            aug.complex.facets().unwrap(),
            &[vs(&[0, 1, 2]), vs(&[0, 1, 3]), vs(&[1, 2, 3])]
        );
        assert_eq!(aug.complex.auxiliary_complex(&aug.witness).unwrap(), path);

        let full = SimplicialComplex::simplex(3).unwrap();
        let aug = full.apex_augment().unwrap();
        assert!(aug.degenerate);
        assert_eq!(aug.complex, full);
        assert_eq!(aug.complex.auxiliary_complex(&aug.witness).unwrap(), full);
    }

    #[test]
    fn eight_cycle_round_trip() {
        let cycle = by_facets(8, &(0..8).map(|i| [i, (i + 1) % 8]).collect::<Vec<_>>().iter().map(|e| &e[..]).collect::<Vec<_>>());
        assert_eq!(cycle.num_nonfaces(), 20);
        assert_eq!(cycle.h_polynomial().unwrap(), poly(&[1, 6, 1]));
        let aug = cycle.apex_augment().unwrap();
        assert_eq!(aug.complex.auxiliary_complex(&aug.witness).unwrap(), cycle);
    }

    #[test]
    fn auxiliary_errors() {
        let tri = by_nonfaces(3, &[&[0, 1, 2]]);
        let no_apex = PropertyIWitness {
            alphas: vec![vs(&[0, 1])],
            apex: None,
        };
        assert_eq!(tri.auxiliary_complex(&no_apex), Err(ComplexError::UnsupportedWitness));
        let bad = PropertyIWitness {
            alphas: vec![vs(&[0])],
            apex: Some(2),
        };
        assert_eq!(tri.auxiliary_complex(&bad), Err(ComplexError::NotPropertyI));
    }

    #[test]
    fn isomorphism() {
        let a = by_facets(3, &[&[0, 1], &[1, 2]]);
        let b = by_facets(3, &[&[0, 2], &[1, 2]]);
        let c = by_nonfaces(3, &[&[0, 1, 2]]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn vertex_set_order() {
        let mut v = vec![vs(&[1, 2]), vs(&[0, 1, 2]), vs(&[0, 3]), vs(&[2])];
        v.sort();
        assert_eq!(v, vec![vs(&[2]), vs(&[0, 3]), vs(&[1, 2]), vs(&[0, 1, 2])]);
    }

    #[test]
    fn json_forms() {
        let c: SimplicialComplex = serde_json_from(r#"{"n": 3, "facets": [[0,1],[1,2]]}"#);
        assert_eq!(c.minimal_nonfaces(), &[vs(&[0, 2])]);
        let d: SimplicialComplex = serde_json_from(r#"{"n": 3, "minimal_nonfaces": [[0,2]]}"#);
        assert_eq!(c, d);
        let w: PropertyIWitness = serde_json_from(r#"{"alphas": [[0,1]], "apex": 2}"#);
        assert_eq!(w.apex, Some(2));
    }

    fn serde_json_from<T: serde::de::DeserializeOwned>(s: &str) -> T {
        serde_json::from_str(s).unwrap()
    }
}
