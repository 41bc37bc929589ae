//! Finite simplicial complexes on an ordered vertex set.
//!
//! Faces are vertex subsets stored as bit masks; they order
//! lexicographically by their sorted vertex lists, so `∅ < {0} < {0,1} <
//! {1}`. Every enumeration in the crate follows this order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::Error;

/// Vertex cap; flag enumeration is exponential in the number of faces.
pub const MAX_VERTICES: usize = 16;

/// A subset of the vertex set.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Face(u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Face(indices.into_iter().fold(0u32, |acc, i| {
            assert!(i < MAX_VERTICES, "vertex index {i} out of range");
            acc | (1 << i)
        }))
    }

    pub fn from_bits(bits: u32) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Dimension `|σ| - 1`, so the empty face has dimension -1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 & (1 << v) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Face) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        Face(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << v))
    }

    /// Vertex indices in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = usize> + Clone {
        let bits = self.0;
        (0..MAX_VERTICES).filter(move |i| bits & (1 << i) != 0)
    }

    /// All subsets, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Face(cur))
        })
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices().cmp(other.vertices())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

/// A vertex with its position in the global order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub index: usize,
    pub label: String,
}

/// Exponent vector of a monomial `v_M`, indexed by vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiSet {
    exponents: Vec<u32>,
}

impl MultiSet {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiSet { exponents }
    }

    pub fn empty(num_vertices: usize) -> Self {
        MultiSet {
            exponents: vec![0; num_vertices],
        }
    }

    /// Monomial `v_σ`: each vertex of `face` with exponent 1.
    pub fn of_face(num_vertices: usize, face: Face) -> Self {
        let mut m = Self::empty(num_vertices);
        for v in face.vertices() {
            m.exponents[v] = 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn cardinality(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn support(&self) -> Face {
        Face::from_indices(
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    pub fn sum(&self, other: &MultiSet) -> MultiSet {
        assert_eq!(self.exponents.len(), other.exponents.len());
        MultiSet {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Renders as a monomial in the given labels, e.g. `a^2*b`; `1` when empty.
    pub fn monomial(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    labels[i].clone()
                } else {
                    format!("{}^{}", labels[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All multisets of the given cardinality supported inside `face`,
    /// in monomial order.
    pub fn all_within(num_vertices: usize, face: Face, cardinality: u32) -> Vec<MultiSet> {
        let verts: Vec<usize> = face.vertices().collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; num_vertices];
        fn rec(verts: &[usize], k: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<MultiSet>) {
            if k == verts.len() {
                if left == 0 {
                    out.push(MultiSet::new(exps.clone()));
                }
                return;
            }
            let v = verts[k];
            for e in (0..=left).rev() {
                exps[v] = e;
                rec(verts, k + 1, left - e, exps, out);
            }
            exps[v] = 0;
        }
        rec(&verts, 0, cardinality, &mut exps, &mut out);
        out.sort();
        out
    }
}

/// Monomial order: descending exponent vectors, so `v1^2 < v1*v2 < v2^2`.
impl Ord for MultiSet {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exponents.cmp(&self.exponents)
    }
}

impl PartialOrd for MultiSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{:?}", self.exponents)
    }
}

/// A down-closed family of faces on an ordered vertex set.
///
/// The family may be completely empty (not even `∅`); that complex is the
/// boundary of the empty face.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    facets: Vec<Face>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Down-closure of the given facets over the declared labels.
    pub fn from_facets<S: AsRef<str>>(labels: &[S], facets: &[Vec<S>]) -> Result<Self, Error> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        check_labels(&labels)?;
        let lookup: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut gens = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut face = Face::EMPTY;
            for v in facet {
                let v = v.as_ref();
                let i = *lookup
                    .get(v)
                    .ok_or_else(|| Error::UnknownLabel(v.to_string()))?;
                if face.contains(i) {
                    return Err(Error::DuplicateVertex(v.to_string()));
                }
                face = face.with(i);
            }
            gens.push(face);
        }
        Ok(Self::generated_by(labels, gens))
    }

    /// Down-closure of arbitrary generating faces. With no generators the
    /// result is `{∅}`.
    pub fn generated_by(labels: Vec<String>, generators: impl IntoIterator<Item = Face>) -> Self {
        let mut all: Vec<Face> = vec![Face::EMPTY];
        for g in generators {
            all.extend(g.subsets());
        }
        Self::from_face_set(labels, all)
    }

    /// The complex with no faces at all.
    pub fn void(labels: Vec<String>) -> Self {
        Self::from_face_set(labels, Vec::new())
    }

    /// The full simplex on the labels.
    pub fn simplex(labels: Vec<String>) -> Self {
        let full = Face::from_indices(0..labels.len());
        Self::generated_by(labels, [full])
    }

    /// Builds from a family assumed to be down-closed.
    pub(crate) fn from_face_set(labels: Vec<String>, mut faces: Vec<Face>) -> Self {
        assert!(labels.len() <= MAX_VERTICES);
        faces.sort();
        faces.dedup();
        debug_assert!(faces.iter().all(|f| f
            .vertices()
            .all(|v| faces.binary_search(&f.without(v)).is_ok())));
        let index = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let facets = faces
            .iter()
            .copied()
            .filter(|f| !faces.iter().any(|g| f.is_proper_subset(*g)))
            .collect();
        SimplicialComplex {
            labels,
            faces,
            index,
            facets,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.labels
            .iter()
            .enumerate()
            .map(|(index, label)| Vertex {
                index,
                label: label.clone(),
            })
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_set(&self) -> Face {
        Face::from_indices(0..self.labels.len())
    }

    /// All faces, in lexicographic order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Inclusion-maximal faces, in lexicographic order.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn contains(&self, face: Face) -> bool {
        self.index.contains_key(&face)
    }

    /// Position of a face in [`faces`](Self::faces).
    pub fn face_index(&self, face: Face) -> Option<usize> {
        self.index.get(&face).copied()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.faces.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    /// Parses a list of labels into a face; fails on unknown labels.
    pub fn face_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face, Error> {
        let mut face = Face::EMPTY;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            face = face.with(i);
        }
        Ok(face)
    }

    /// `{a,b}` using vertex labels.
    pub fn format_face(&self, face: Face) -> String {
        let vs: Vec<&str> = face.vertices().map(|v| self.labels[v].as_str()).collect();
        format!("{{{}}}", vs.join(","))
    }

    pub fn face_labels(&self, face: Face) -> Vec<String> {
        face.vertices().map(|v| self.labels[v].clone()).collect()
    }

    /// The link `{τ ∖ σ : σ ⊆ τ ∈ K}` on the same vertex set.
    pub fn link(&self, s: Face) -> Result<Self, Error> {
        if !self.contains(s) {
            return Err(Error::NotAFace(self.format_face(s)));
        }
        let faces = self
            .faces
            .iter()
            .filter(|t| s.is_subset(**t))
            .map(|t| t.difference(s))
            .collect();
        Ok(Self::from_face_set(self.labels.clone(), faces))
    }

    /// The boundary of the simplex on `s`: all proper subsets of `s`, on this
    /// complex's vertex set. Empty (no faces at all) when `s = ∅`.
    pub fn boundary_of_face(&self, s: Face) -> Self {
        debug_assert!(s.is_subset(self.vertex_set()));
        let faces = s.subsets().filter(|f| *f != s).collect();
        Self::from_face_set(self.labels.clone(), faces)
    }

    /// `K ∖ {μ}` for a maximal face `μ`.
    pub fn delete_maximal(&self, mu: Face) -> Result<Self, Error> {
        if !self.contains(mu) {
            return Err(Error::NotAFace(self.format_face(mu)));
        }
        if !self.facets.contains(&mu) {
            return Err(Error::NotMaximal(self.format_face(mu)));
        }
        let faces = self.faces.iter().copied().filter(|f| *f != mu).collect();
        Ok(Self::from_face_set(self.labels.clone(), faces))
    }

    /// Subcomplex consisting of the faces of `self` that satisfy `keep`,
    /// which must describe a down-closed family.
    pub fn subcomplex(&self, keep: impl Fn(Face) -> bool) -> Self {
        let faces = self.faces.iter().copied().filter(|f| keep(*f)).collect();
        Self::from_face_set(self.labels.clone(), faces)
    }

    /// Inclusion-minimal vertex subsets that are not faces, in lexicographic
    /// order.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let m = self.labels.len();
        let mut out: Vec<Face> = (0u32..(1u32 << m))
            .map(Face::from_bits)
            .filter(|u| !self.contains(*u))
            .filter(|u| u.vertices().all(|v| self.contains(u.without(v))))
            .collect();
        out.sort();
        out
    }

    /// Chains `σ_0 ⊋ σ_1 ⊋ ... ⊋ σ_n` of distinct faces.
    pub fn flags(&self, n: usize) -> Vec<Vec<Face>> {
        self.flag_indices(n, true)
            .into_iter()
            .map(|chain| chain.into_iter().map(|i| self.faces[i]).collect())
            .collect()
    }

    /// Chains of face positions of length `n + 1`, decreasing under
    /// inclusion; strictly so when `strict`. Ordered lexicographically by
    /// face position.
    pub(crate) fn flag_indices(&self, n: usize, strict: bool) -> Vec<Vec<usize>> {
        let below = self.subface_lists(strict);
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(n + 1);
        fn rec(below: &[Vec<usize>], n: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if chain.len() == n + 1 {
                out.push(chain.clone());
                return;
            }
            let last = *chain.last().expect("chain is seeded");
            for &next in &below[last] {
                chain.push(next);
                rec(below, n, chain, out);
                chain.pop();
            }
        }
        for start in 0..self.faces.len() {
            chain.push(start);
            rec(&below, n, &mut chain, &mut out);
            chain.pop();
        }
        out
    }

    /// For each face position, the positions of its subfaces (proper ones
    /// when `strict`), increasing.
    pub(crate) fn subface_lists(&self, strict: bool) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .map(|t| {
                let mut v: Vec<usize> = t
                    .subsets()
                    .filter(|s| !strict || s != t)
                    .map(|s| self.index[&s])
                    .collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|s| self.format_face(*s)).collect();
        write!(f, "K[{}]({})", self.labels.join(","), facets.join(" "))
    }
}

fn check_labels(labels: &[String]) -> Result<(), Error> {
    if labels.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            max: MAX_VERTICES,
            found: labels.len(),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(labels: &[&str], facets: &[&[&str]]) -> SimplicialComplex {
        let facets: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_facets(labels, &facets).unwrap()
    }

    fn f(v: &[usize]) -> Face {
        Face::from_indices(v.iter().copied())
    }

    #[test]
    fn face_order_is_lexicographic() {
        let mut faces = vec![f(&[1]), f(&[0, 1]), Face::EMPTY, f(&[0])];
        faces.sort();
        assert_eq!(faces, vec![Face::EMPTY, f(&[0]), f(&[0, 1]), f(&[1])]);
    }

    #[test]
    fn from_facets_examples() {
        let point = k(&["a"], &[&["a"]]);
        assert_eq!(point.faces(), &[Face::EMPTY, f(&[0])]);
        let tri = k(&["1", "2", "3"], &[&["1", "2"], &["2", "3"], &["1", "3"]]);
        assert_eq!(tri.num_faces(), 7);
        let full = k(&["1", "2", "3"], &[&["1", "2", "3"]]);
        assert_eq!(full.num_faces(), 8);
        let redundant = k(&["1", "2", "3"], &[&["1", "2", "3"], &["1"]]);
        assert_eq!(redundant.facets(), &[f(&[0, 1, 2])]);
    }

    #[test]
    fn from_facets_errors() {
        let e = SimplicialComplex::from_facets(&["a"], &[vec!["b"]]).unwrap_err();
        assert_eq!(e, Error::UnknownLabel("b".into()));
        let e = SimplicialComplex::from_facets(&["a", "b"], &[vec!["a", "a"]]).unwrap_err();
        assert_eq!(e, Error::DuplicateVertex("a".into()));
        let e = SimplicialComplex::from_facets(&["a", "a"], &[vec!["a"]]).unwrap_err();
        assert_eq!(e, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn link_examples() {
        let tri = k(&["1", "2", "3"], &[&["1", "2"], &["2", "3"], &["1", "3"]]);
        assert_eq!(tri.link(Face::EMPTY).unwrap(), tri);
        let l = tri.link(f(&[0])).unwrap();
        assert_eq!(l.faces(), &[Face::EMPTY, f(&[1]), f(&[2])]);
        let full = k(&["1", "2", "3"], &[&["1", "2", "3"]]);
        assert_eq!(
            full.link(f(&[0, 1])).unwrap().faces(),
            &[Face::EMPTY, f(&[2])]
        );
        assert!(tri.link(f(&[0, 1, 2])).is_err());
    }

    #[test]
    fn boundary_examples() {
        let full = k(&["1", "2", "3"], &[&["1", "2", "3"]]);
        assert!(full.boundary_of_face(Face::EMPTY).is_void());
        assert_eq!(full.boundary_of_face(f(&[0])).faces(), &[Face::EMPTY]);
        assert_eq!(full.boundary_of_face(f(&[0, 1, 2])).num_faces(), 7);
    }

    #[test]
    fn delete_maximal_examples() {
        let edge = k(&["1", "2"], &[&["1", "2"]]);
        let two = edge.delete_maximal(f(&[0, 1])).unwrap();
        assert_eq!(two.facets(), &[f(&[0]), f(&[1])]);
        let point = k(&["1"], &[&["1"]]);
        assert_eq!(
            point.delete_maximal(f(&[0])).unwrap().faces(),
            &[Face::EMPTY]
        );
        let tri = k(&["1", "2", "3"], &[&["1", "2"], &["2", "3"], &["1", "3"]]);
        let path = tri.delete_maximal(f(&[0, 1])).unwrap();
        assert_eq!(path.num_faces(), 6);
        assert_eq!(path.facets(), &[f(&[0, 2]), f(&[1, 2])]);
        assert_eq!(
            tri.delete_maximal(f(&[0])),
            Err(Error::NotMaximal("{1}".into()))
        );
    }

    #[test]
    fn minimal_nonface_examples() {
        let full = k(&["1", "2", "3"], &[&["1", "2", "3"]]);
        assert!(full.minimal_nonfaces().is_empty());
        let tri = k(&["1", "2", "3"], &[&["1", "2"], &["2", "3"], &["1", "3"]]);
        assert_eq!(tri.minimal_nonfaces(), vec![f(&[0, 1, 2])]);
        let square = k(
            &["1", "2", "3", "4"],
            &[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]],
        );
        assert_eq!(square.minimal_nonfaces(), vec![f(&[0, 2]), f(&[1, 3])]);
    }

    #[test]
    fn flag_examples() {
        let point = k(&["1"], &[&["1"]]);
        assert_eq!(point.flags(0), vec![vec![Face::EMPTY], vec![f(&[0])]]);
        assert_eq!(point.flags(1), vec![vec![f(&[0]), Face::EMPTY]]);
        let edge = k(&["1", "2"], &[&["1", "2"]]);
        assert_eq!(
            edge.flags(2),
            vec![
                vec![f(&[0, 1]), f(&[0]), Face::EMPTY],
                vec![f(&[0, 1]), f(&[1]), Face::EMPTY]
            ]
        );
        assert!(edge.flags(4).is_empty());
    }

    #[test]
    fn multisets_in_monomial_order() {
        let ms = MultiSet::all_within(3, f(&[0, 1]), 2);
        let labels: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let names: Vec<String> = ms.iter().map(|m| m.monomial(&labels)).collect();
        assert_eq!(names, vec!["1^2", "1*2", "2^2"]);
    }
}
