//! Finite digraphs viewed as Alexandroff closure spaces.
//!
//! A [`Digraph`] always stores its relation reflexively: every vertex carries
//! a loop. Under that convention the closure of a set is the union of the
//! out-sets of its members, `c(A) = ⋃_{x∈A} {y | x → y}`, and the minimal
//! neighborhood of a point is its in-set, `U_x = {y | y → x}`. Note the two
//! orientations: closure walks edges forwards, neighborhoods walk them
//! backwards. Some authors use the reverse convention.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex identifiers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    /// Complement inside `0..n`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|v| !self.contains(*v)).collect())
    }

    fn from_bits(bits: &FixedBitSet) -> VertexSet {
        VertexSet(bits.ones().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        VertexSet::new(v)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// A finite spatial digraph: vertices `0..n` and a reflexive relation.
///
/// Adjacency is held as bitset rows in both directions so membership and
/// neighborhood intersections are word-parallel. Values are immutable once
/// built.
#[derive(Clone)]
pub struct Digraph {
    out_rows: Vec<FixedBitSet>,
    in_rows: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
    /// Identifier of each vertex in the digraph this one was induced from.
    parent_ids: Vec<usize>,
}

impl Digraph {
    /// Builds the spatial digraph on `n` vertices with the given edges plus
    /// all loops. Duplicate edges and explicit loops are absorbed.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut out_rows = vec![FixedBitSet::with_capacity(n); n];
        let mut in_rows = vec![FixedBitSet::with_capacity(n); n];
        for v in 0..n {
            out_rows[v].insert(v);
            in_rows[v].insert(v);
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u, v, n });
            }
            out_rows[u].insert(v);
            in_rows[v].insert(u);
        }
        Ok(Digraph {
            out_rows,
            in_rows,
            labels: None,
            parent_ids: (0..n).collect(),
        })
    }

    /// Attaches one unique label per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.out_rows.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to its decimal identifier.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Maps each vertex back to its identifier in the parent digraph.
    /// The identity for digraphs that were not induced from another.
    pub fn parent_ids(&self) -> &[usize] {
        &self.parent_ids
    }

    /// `u E v` in the reflexive relation.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_rows[u].contains(v)
    }

    /// At least one direction of edge between `u` and `v`.
    #[inline]
    pub fn semicomplete(&self, u: usize, v: usize) -> bool {
        self.out_rows[u].contains(v) || self.in_rows[u].contains(v)
    }

    pub fn out_row(&self, u: usize) -> &FixedBitSet {
        &self.out_rows[u]
    }

    pub fn in_row(&self, u: usize) -> &FixedBitSet {
        &self.in_rows[u]
    }

    /// Non-loop edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.out_rows[u].ones() {
                if u != v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    pub fn check_set(&self, a: &VertexSet) -> Result<()> {
        match a.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// `c(A)`: everything reachable from `A` along one edge (or none).
    pub fn closure_of(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        let mut acc = FixedBitSet::with_capacity(self.n());
        for x in a.iter() {
            acc.union_with(&self.out_rows[x]);
        }
        Ok(VertexSet::from_bits(&acc))
    }

    /// `i(A) = X ∖ c(X ∖ A)`.
    pub fn interior_of(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        let outside = a.complement(self.n());
        Ok(self.closure_of(&outside)?.complement(self.n()))
    }

    /// `U_x = {y | y E x}`, the smallest neighborhood of `x`.
    pub fn minimal_neighborhood(&self, x: usize) -> Result<VertexSet> {
        self.check_vertex(x)?;
        Ok(VertexSet::from_bits(&self.in_rows[x]))
    }

    /// Whether the interiors of `family` cover every vertex.
    pub fn is_interior_cover(&self, family: &[VertexSet]) -> Result<bool> {
        let mut covered = FixedBitSet::with_capacity(self.n());
        for u in family {
            for v in self.interior_of(u)?.iter() {
                covered.insert(v);
            }
        }
        Ok(covered.count_ones(..) == self.n())
    }

    /// The induced subgraph on `a`, re-indexed to `0..|a|` in ascending
    /// order of parent identifiers. Labels and parent identifiers are
    /// carried through.
    pub fn induced_subgraph(&self, a: &VertexSet) -> Result<Digraph> {
        if a.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        self.check_set(a)?;
        let members = a.as_slice();
        let mut edges = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        let mut sub = Digraph::from_edge_list(members.len(), &edges)?;
        sub.parent_ids = members.iter().map(|&v| self.parent_ids[v]).collect();
        if let Some(labels) = &self.labels {
            sub.labels = Some(members.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(sub)
    }

    pub fn is_symmetric(&self) -> bool {
        self.out_rows
            .iter()
            .zip(&self.in_rows)
            .all(|(o, i)| o == i)
    }
}

/// Equality is by vertex count and edge set; labels are ignored.
impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.out_rows == other.out_rows
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}
