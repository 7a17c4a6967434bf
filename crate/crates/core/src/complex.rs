//! Finite abstract simplicial complexes with faces stored per dimension.
//!
//! Vertices carry arbitrary `usize` labels (lattice indices, generator
//! indices). Faces are stored as sorted lists of vertex positions, grouped by
//! size and sorted lexicographically. The void complex stores nothing; any
//! other complex stores the empty face.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::DistributiveLattice;

type Face = Vec<u32>;

/// A simplicial complex, possibly truncated above some dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    /// `faces[k]` holds the faces with `k` vertices (dimension `k - 1`).
    faces: Vec<Vec<Face>>,
    /// `Some(d)` when faces above dimension `d` were not generated.
    cap: Option<usize>,
}

/// Complex JSON form; faces are listed as facets and expanded on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// The complex with no faces at all.
    pub fn void() -> SimplicialComplex {
        SimplicialComplex {
            vertices: Vec::new(),
            faces: Vec::new(),
            cap: None,
        }
    }

    /// The complex `{∅}`.
    pub fn empty_face_only() -> SimplicialComplex {
        SimplicialComplex {
            vertices: Vec::new(),
            faces: vec![vec![Vec::new()]],
            cap: None,
        }
    }

    /// The full simplex on the given vertex labels.
    pub fn simplex(labels: &[usize]) -> SimplicialComplex {
        Self::from_facets(&[labels.to_vec()])
    }

    /// Downward closure of the given facets.
    pub fn from_facets(facets: &[Vec<usize>]) -> SimplicialComplex {
        Self::from_facets_capped(facets, None)
    }

    /// Downward closure of the given facets, keeping faces of dimension at
    /// most `cap` when one is given.
    pub fn from_facets_capped(facets: &[Vec<usize>], cap: Option<usize>) -> SimplicialComplex {
        if facets.is_empty() {
            return Self::void();
        }
        let vertices: Vec<usize> = facets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let max_size = cap.map_or(usize::MAX, |c| c + 1);
        let mut sets: Vec<BTreeSet<Face>> = Vec::new();
        for facet in facets {
            let mut local: Face = facet
                .iter()
                .map(|l| vertices.binary_search(l).unwrap() as u32)
                .collect();
            local.sort_unstable();
            local.dedup();
            let k = local.len();
            for mask in 0u64..(1u64 << k) {
                let size = mask.count_ones() as usize;
                if size > max_size {
                    continue;
                }
                if sets.len() <= size {
                    sets.resize_with(size + 1, BTreeSet::new);
                }
                let face: Face = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| local[b])
                    .collect();
                sets[size].insert(face);
            }
        }
        let truncated = cap.is_some_and(|_| {
            facets.iter().any(|f| {
                let distinct: BTreeSet<_> = f.iter().collect();
                distinct.len() > max_size
            })
        });
        SimplicialComplex {
            vertices,
            faces: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            cap: if truncated { cap } else { None },
        }
    }

    /// Builds a complex from faces already known to be downward closed.
    /// `faces[k]` must list the faces with `k` vertices as sorted positions
    /// into `vertices` (itself sorted). Each list is sorted here.
    pub(crate) fn from_raw(
        vertices: Vec<usize>,
        mut faces: Vec<Vec<Face>>,
        cap: Option<usize>,
    ) -> SimplicialComplex {
        for level in faces.iter_mut() {
            level.sort_unstable();
        }
        while faces.len() > 1 && faces.last().is_some_and(|l| l.is_empty()) {
            faces.pop();
        }
        SimplicialComplex {
            vertices,
            faces,
            cap,
        }
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Largest stored face dimension; `-1` for `{∅}`, `-2` for the void complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// `Some(d)` if faces above dimension `d` may be missing.
    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    /// Number of faces of dimension `d` (`d = -1` counts the empty face).
    pub fn face_count(&self, d: isize) -> usize {
        let k = d + 1;
        if k < 0 {
            return 0;
        }
        self.faces.get(k as usize).map_or(0, Vec::len)
    }

    /// `f_{-1}, f_0, …, f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Faces of dimension `d` as sorted label lists.
    pub fn faces(&self, d: isize) -> Vec<Vec<usize>> {
        let k = d + 1;
        if k < 0 {
            return Vec::new();
        }
        self.faces
            .get(k as usize)
            .map(|level| level.iter().map(|f| self.labels(f)).collect())
            .unwrap_or_default()
    }

    pub(crate) fn raw_faces(&self, size: usize) -> &[Face] {
        self.faces.get(size).map_or(&[], Vec::as_slice)
    }

    fn labels(&self, face: &[u32]) -> Vec<usize> {
        face.iter().map(|&p| self.vertices[p as usize]).collect()
    }

    fn local(&self, labels: &[usize]) -> Option<Face> {
        let mut out: Face = Vec::with_capacity(labels.len());
        for l in labels {
            out.push(self.vertices.binary_search(l).ok()? as u32);
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(out)
    }

    /// Whether the label set is a face.
    pub fn contains(&self, labels: &[usize]) -> bool {
        let Some(local) = self.local(labels) else {
            return false;
        };
        self.faces
            .get(local.len())
            .is_some_and(|level| level.binary_search(&local).is_ok())
    }

    /// Inclusion-maximal faces, sorted by size then lexicographically.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (k, level) in self.faces.iter().enumerate() {
            for face in level {
                let extendable = self.faces.get(k + 1).is_some_and(|next| {
                    next.iter()
                        .any(|g| face.iter().all(|v| g.binary_search(v).is_ok()))
                });
                if !extendable {
                    out.push(self.labels(face));
                }
            }
        }
        out
    }

    /// Faces contained in `w` (a set of vertex labels).
    pub fn induced(&self, w: &[usize]) -> SimplicialComplex {
        if self.is_void() {
            return Self::void();
        }
        let keep: BTreeSet<usize> = w.iter().copied().collect();
        let vertices: Vec<usize> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| keep.contains(v))
            .collect();
        let remap: BTreeMap<u32, u32> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| keep.contains(v))
            .enumerate()
            .map(|(new, (old, _))| (old as u32, new as u32))
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|level| {
                level
                    .iter()
                    .filter(|f| f.iter().all(|p| remap.contains_key(p)))
                    .map(|f| f.iter().map(|p| remap[p]).collect())
                    .collect()
            })
            .collect();
        Self::from_raw(vertices, faces, self.cap)
    }

    /// Faces of dimension at most `l`.
    pub fn skeleton(&self, l: usize) -> SimplicialComplex {
        let mut out = self.clone();
        if out.faces.len() > l + 2 {
            out.faces.truncate(l + 2);
        }
        out.cap = match self.cap {
            Some(c) if c <= l => Some(c),
            _ => None,
        };
        out
    }

    /// Union of two complexes (labels identify vertices).
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut facets = self.all_faces_as_labels();
        facets.extend(other.all_faces_as_labels());
        if facets.is_empty() {
            return Self::void();
        }
        let mut out = Self::from_facets(&facets);
        out.cap = match (self.cap, other.cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        out
    }

    fn all_faces_as_labels(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .flat_map(|level| level.iter().map(|f| self.labels(f)))
            .collect()
    }

    /// Whether every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_faces_as_labels().iter().all(|f| other.contains(f))
    }

    /// Every stored face has all its codimension-one faces stored.
    pub fn is_downward_closed(&self) -> bool {
        for (k, level) in self.faces.iter().enumerate().skip(1) {
            for face in level {
                for skip in 0..k {
                    let sub: Face = face
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    if self.faces[k - 1].binary_search(&sub).is_err() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Minimal non-faces: vertex sets that are not faces but all of whose
    /// proper subsets are. Requires an uncapped complex.
    pub fn minimal_nonfaces(&self) -> Result<Vec<Vec<usize>>> {
        if let Some(cap) = self.cap {
            return Err(Error::InsufficientCap {
                cap,
                requested: self.faces.len(),
            });
        }
        let mut out = Vec::new();
        let n = self.vertices.len() as u32;
        for k in 1..=self.faces.len() {
            let smaller = self.raw_faces(k - 1);
            for base in smaller {
                let start = base.last().map_or(0, |&v| v + 1);
                for v in start..n {
                    let mut cand = base.clone();
                    cand.push(v);
                    if self.raw_faces(k).binary_search(&cand).is_ok() {
                        continue;
                    }
                    let all_subfaces = (0..k).all(|skip| {
                        let sub: Face = cand
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        smaller.binary_search(&sub).is_ok()
                    });
                    if all_subfaces {
                        out.push(self.labels(&cand));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.clone(),
            facets: self.facets(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<SimplicialComplex> {
        let known: BTreeSet<usize> = json.vertices.iter().copied().collect();
        if let Some(bad) = json.facets.iter().flatten().find(|v| !known.contains(v)) {
            return Err(Error::Invalid(format!(
                "facet vertex {bad} not in vertex list"
            )));
        }
        let mut facets = json.facets.clone();
        facets.extend(json.vertices.iter().map(|&v| vec![v]));
        Ok(Self::from_facets(&facets))
    }
}

/// The order complex: all chains of the lattice, labeled by element index.
pub fn order_complex(lattice: &DistributiveLattice) -> SimplicialComplex {
    let n = lattice.len();
    let vertices: Vec<usize> = (0..n).collect();
    let mut faces: Vec<Vec<Face>> = vec![vec![Vec::new()]];
    let mut frontier: Vec<Face> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for chain in &frontier {
            // element indices grow along strict inclusion
            let start = chain.last().map_or(0, |&v| v as usize + 1);
            for x in start..n {
                if chain.last().is_none_or(|&top| lattice.leq(top as usize, x)) {
                    let mut c = chain.clone();
                    c.push(x as u32);
                    next.push(c);
                }
            }
        }
        if !next.is_empty() {
            faces.push(next.clone());
        }
        frontier = next;
    }
    SimplicialComplex::from_raw(vertices, faces, None)
}

/// A formal integer combination of oriented faces of one dimension. Faces
/// are keyed by their sorted vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainVector {
    pub dim: isize,
    pub coeffs: BTreeMap<Vec<usize>, i64>,
}

impl ChainVector {
    pub fn zero(dim: isize) -> ChainVector {
        ChainVector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// The oriented simplex `[v_0, …, v_k]` times `coeff`, stored under the
    /// sorted vertex list with the sign of the sorting permutation.
    pub fn oriented(vertices: &[usize], coeff: i64) -> ChainVector {
        let mut c = ChainVector::zero(vertices.len() as isize - 1);
        c.add_oriented(vertices, coeff);
        c
    }

    pub fn add_oriented(&mut self, vertices: &[usize], coeff: i64) {
        let mut v = vertices.to_vec();
        let mut sign = 1;
        // bubble sort, counting transpositions
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        assert!(
            v.windows(2).all(|w| w[0] != w[1]),
            "oriented simplex with repeated vertex"
        );
        self.add_face(v, sign * coeff);
    }

    fn add_face(&mut self, face: Vec<usize>, coeff: i64) {
        let entry = self.coeffs.entry(face).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &ChainVector) -> ChainVector {
        let mut out = self.clone();
        for (f, &c) in &other.coeffs {
            out.add_face(f.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> ChainVector {
        let mut out = ChainVector::zero(self.dim);
        for (f, &c) in &self.coeffs {
            out.add_face(f.clone(), k * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Union of vertices of faces with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs.keys().flatten().copied().collect()
    }

    /// Standard boundary; the boundary of a vertex is the empty face.
    pub fn boundary(&self) -> ChainVector {
        let mut out = ChainVector::zero(self.dim - 1);
        for (face, &c) in &self.coeffs {
            for skip in 0..face.len() {
                let sub: Vec<usize> = face
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                out.add_face(sub, sign * c);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    pub fn is_supported_in(&self, cx: &SimplicialComplex) -> bool {
        self.coeffs.keys().all(|f| cx.contains(f))
    }
}
