//! Abstract simplicial complexes on the ground set `[m] = {1, .., m}`.
//!
//! Faces are stored as bitmasks. The full face family is materialized when a
//! complex is built, so membership tests are a hash lookup.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 64;

/// Largest facet that will be expanded into its `2^k` faces.
pub const MAX_FACET_SIZE: usize = 24;

/// A finite set of 1-based vertex labels.
///
/// Iteration is ascending and the ordering is lexicographic on the ascending
/// member lists, so `{1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, .., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1u64 << (v - 1))
    }

    /// Builds a set from labels, checking each lies in `1..=m`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(m: usize, vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > m || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            bits |= 1u64 << (v - 1);
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
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn insert(&mut self, v: usize) {
        *self = self.union(VertexSet::singleton(v));
    }

    pub fn remove(&mut self, v: usize) {
        *self = self.difference(VertexSet::singleton(v));
    }

    /// Largest member, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(low + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Submask enumeration of a [`VertexSet`], in increasing bit order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            // next submask in increasing numeric order
            Some((cur.wrapping_sub(self.universe)) & self.universe)
        };
        Some(VertexSet(cur))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A downward-closed family of faces on a ground set of labelled vertices.
///
/// The ground set is `{1..m}` for complexes built from facets; full
/// subcomplexes keep the original labels and use `sigma` as their ground set.
/// Vertices of the ground set that lie in no face are ghost vertices.
#[derive(Clone)]
pub struct SimplicialComplex {
    m: usize,
    ground: VertexSet,
    facets: Vec<VertexSet>,
    faces: HashSet<VertexSet>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` on `[m]`. Redundant facets are dropped and
    /// an empty list gives the complex `{∅}`.
    pub fn from_facets(m: usize, facets: &[VertexSet]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::ResourceLimit {
                what: "ground set size",
                actual: m,
                bound: MAX_VERTICES,
            });
        }
        if m == 0 && facets.iter().any(|f| !f.is_empty()) {
            return Err(Error::invalid("m = 0 with nonempty facets"));
        }
        let ground = VertexSet::full(m);
        for f in facets {
            if !f.is_subset(ground) {
                let v = f.difference(ground).iter().next().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            if f.len() > MAX_FACET_SIZE {
                return Err(Error::ResourceLimit {
                    what: "facet size",
                    actual: f.len(),
                    bound: MAX_FACET_SIZE,
                });
            }
        }
        let mut faces = HashSet::new();
        faces.insert(VertexSet::EMPTY);
        for f in facets {
            faces.extend(f.subsets());
        }
        Ok(Self::from_face_set(m, ground, faces))
    }

    /// Convenience wrapper taking facets as label lists.
    pub fn from_facet_lists(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let sets = facets
            .iter()
            .map(|f| VertexSet::from_vertices(m, f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(m, &sets)
    }

    fn from_face_set(m: usize, ground: VertexSet, faces: HashSet<VertexSet>) -> Self {
        let vertices: Vec<usize> = faces.iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f)).to_vec();
        let mut facets: Vec<VertexSet> = faces
            .iter()
            .copied()
            .filter(|f| {
                vertices
                    .iter()
                    .all(|&v| f.contains(v) || !faces.contains(&f.union(VertexSet::singleton(v))))
            })
            .collect();
        facets.sort();
        SimplicialComplex {
            m,
            ground,
            facets,
            faces,
        }
    }

    /// `n` isolated vertices on `[n]`.
    pub fn disjoint_points(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("disjoint_points needs n >= 1"));
        }
        let facets: Vec<VertexSet> = (1..=n).map(VertexSet::singleton).collect();
        Self::from_facets(n, &facets)
    }

    /// Boundary of the `(m-1)`-simplex: every `(m-1)`-subset of `[m]`.
    pub fn simplex_boundary(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("simplex_boundary needs m >= 2"));
        }
        let full = VertexSet::full(m);
        let facets: Vec<VertexSet> = (1..=m).map(|v| full.difference(VertexSet::singleton(v))).collect();
        Self::from_facets(m, &facets)
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Result<Self> {
        Self::from_facets(m, &[VertexSet::full(m)])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.faces.contains(&face)
    }

    pub fn faces(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.faces.iter().copied()
    }

    /// Dimension of the largest face; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// True when every subset of the ground set is a face.
    pub fn is_full_simplex(&self) -> bool {
        self.ground.len() < 64 && self.faces.len() == 1usize << self.ground.len()
    }

    /// Faces with `d + 1` vertices in lexicographic order. `d = -1` gives `[∅]`.
    pub fn faces_of_dim(&self, d: isize) -> Vec<VertexSet> {
        if d < -1 {
            return Vec::new();
        }
        let size = (d + 1) as usize;
        let mut out: Vec<VertexSet> = self.faces.iter().copied().filter(|f| f.len() == size).collect();
        out.sort();
        out
    }

    /// Face counts by dimension, starting at `-1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = (self.dim() + 1) as usize;
        let mut counts = vec![0usize; top + 1];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        counts
    }

    /// The full subcomplex `K_sigma`: every face of `K` contained in `sigma`.
    /// Labels are preserved and `sigma` becomes the ground set.
    pub fn full_subcomplex(&self, sigma: VertexSet) -> Result<Self> {
        if !sigma.is_subset(self.ground) {
            let v = sigma.difference(self.ground).iter().next().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex: v, m: self.m });
        }
        let faces: HashSet<VertexSet> = if sigma.len() < 20 && (1usize << sigma.len()) < self.faces.len() {
            sigma.subsets().filter(|f| self.faces.contains(f)).collect()
        } else {
            self.faces.iter().copied().filter(|f| f.is_subset(sigma)).collect()
        };
        Ok(Self::from_face_set(self.m, sigma, faces))
    }

    /// Parses the facet file format: first line `m`, then one facet per line
    /// as space-separated labels. `#` starts a comment line.
    pub fn parse_facets(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing ground set size"))?;
        let m: usize = header
            .parse()
            .map_err(|_| Error::parse(line_no, 1, format!("expected vertex count, found {header:?}")))?;
        let mut facets = Vec::new();
        for (line_no, line) in lines {
            let mut facet = Vec::new();
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, 1, format!("expected vertex label, found {tok:?}")))?;
                facet.push(v);
            }
            facets.push(VertexSet::from_vertices(m, facet)?);
        }
        Self::from_facets(m, &facets)
    }

    /// Writes the complex in the facet file format.
    pub fn to_facet_file(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for f in &self.facets {
            if f.is_empty() {
                continue;
            }
            let labels: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("ground", &self.ground)
            .field("facets", &self.facets)
            .finish()
    }
}

impl FromStr for SimplicialComplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_facets(s)
    }
}
