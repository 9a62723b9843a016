//! Directed Vietoris-Rips complexes.
//!
//! A nonempty vertex set `σ` is a simplex of `dVR(X, E)` when its members
//! admit an ordering `v₀, …, vₙ` with `vᵢ E vⱼ` for all `i < j`. For a
//! symmetric relation this is the clique (flag) complex. Each stored
//! simplex keeps the ordering that certified it, its *witness*; simplices
//! are otherwise identified by their sorted vertex tuple.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<usize>,
    witness: Vec<usize>,
}

impl Simplex {
    /// Sorted support.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// The ordering `v₀, …, vₙ` recorded when the simplex was admitted.
    pub fn witness(&self) -> &[usize] {
        &self.witness
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Whether the witness is a valid directed ordering in `g`.
    pub fn witness_valid_in(&self, g: &Digraph) -> bool {
        is_directed_ordering(g, &self.witness)
    }
}

pub(crate) fn is_directed_ordering(g: &Digraph, order: &[usize]) -> bool {
    order
        .iter()
        .enumerate()
        .all(|(i, &a)| order[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// A face-closed family of simplices, graded by dimension.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Vec<usize>, (usize, usize)>,
    truncated: bool,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.by_dim == other.by_dim && self.truncated == other.truncated
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    fn from_levels(by_dim: Vec<Vec<Simplex>>, truncated: bool) -> Self {
        let mut index = HashMap::new();
        for (d, level) in by_dim.iter().enumerate() {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.vertices.clone(), (d, i));
            }
        }
        SimplicialComplex { by_dim, index, truncated }
    }

    /// Builds an abstract complex from simplices given with explicit
    /// witnesses. The family must be face-closed and free of duplicates.
    pub fn from_witnessed(simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        let mut seen = BTreeSet::new();
        for witness in simplices {
            let mut vertices = witness.clone();
            vertices.sort_unstable();
            vertices.dedup();
            if vertices.is_empty() || vertices.len() != witness.len() {
                return Err(Error::InvalidSimplex {
                    simplex: witness,
                    reason: "witness must be a nonempty list of distinct vertices".into(),
                });
            }
            if !seen.insert(vertices.clone()) {
                return Err(Error::InvalidSimplex {
                    simplex: vertices,
                    reason: "duplicate simplex".into(),
                });
            }
            let d = vertices.len() - 1;
            if levels.len() <= d {
                levels.resize_with(d + 1, Vec::new);
            }
            levels[d].push(Simplex { vertices, witness });
        }
        for level in &mut levels {
            level.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        }
        let k = Self::from_levels(levels, false);
        for s in k.iter() {
            for face in facets(&s.vertices) {
                if !face.is_empty() && !k.contains(&face) {
                    return Err(Error::NotFaceClosed {
                        simplex: s.vertices.clone(),
                        face,
                    });
                }
            }
        }
        Ok(k)
    }

    /// The face closure of `facets`, each simplex oriented by its sorted
    /// vertex tuple.
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
        let mut all = BTreeSet::new();
        for f in facets {
            let vs = VertexSet::new(f.iter().copied()).into_vec();
            if vs.is_empty() || vs.len() != f.len() {
                return Err(Error::InvalidSimplex {
                    simplex: f.clone(),
                    reason: "facet must be a nonempty list of distinct vertices".into(),
                });
            }
            if vs.len() > 24 {
                return Err(Error::InvalidSimplex {
                    simplex: f.clone(),
                    reason: "facet too large to expand".into(),
                });
            }
            for mask in 1u32..(1 << vs.len()) {
                let face: Vec<usize> = (0..vs.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| vs[i])
                    .collect();
                all.insert(face);
            }
        }
        Self::from_witnessed(all.into_iter().collect())
    }

    /// Simplices of dimension `d`, sorted by vertex tuple.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All simplices, by dimension then vertex tuple.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Simplex counts per dimension; empty for the empty complex.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Whether a dimension cap removed simplices during construction.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        self.index.contains_key(vertices)
    }

    /// `(dimension, position)` of the simplex with this sorted support.
    pub fn position(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        self.index.get(vertices).copied()
    }

    pub fn get(&self, vertices: &[usize]) -> Option<&Simplex> {
        self.position(vertices).map(|(d, i)| &self.by_dim[d][i])
    }

    /// Vertices of the 0-skeleton.
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s.vertices[0]).collect()
    }

    /// The `d`-skeleton; marked truncated if anything was dropped.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        let dropped = self.by_dim.len() > d + 1;
        let levels = self.by_dim.iter().take(d + 1).cloned().collect();
        Self::from_levels(levels, self.truncated || dropped)
    }

    /// The full subcomplex on `verts`: every simplex whose vertices all lie
    /// in `verts`, with its witness.
    pub fn full_subcomplex(&self, verts: &VertexSet) -> SimplicialComplex {
        let mut levels: Vec<Vec<Simplex>> = self
            .by_dim
            .iter()
            .map(|level| level.iter().filter(|s| s.vertices.iter().all(|&v| verts.contains(v))).cloned().collect())
            .collect();
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        Self::from_levels(levels, self.truncated)
    }

    /// Rewrites vertex identifiers through `map`; used to lift complexes of
    /// induced subgraphs into their parent's numbering.
    pub fn relabel(&self, map: &[usize]) -> SimplicialComplex {
        let mut levels: Vec<Vec<Simplex>> = self
            .by_dim
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        let witness: Vec<usize> = s.witness.iter().map(|&v| map[v]).collect();
                        let mut vertices = witness.clone();
                        vertices.sort_unstable();
                        Simplex { vertices, witness }
                    })
                    .collect()
            })
            .collect();
        for level in &mut levels {
            level.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        }
        Self::from_levels(levels, self.truncated)
    }
}

/// Codimension-one faces of a sorted vertex tuple, in order of the deleted
/// position.
pub fn facets(vertices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..vertices.len()).map(move |i| {
        let mut f = vertices.to_vec();
        f.remove(i);
        f
    })
}

/// Searches for a witness ordering of `s`.
///
/// Depth-first, extending only at the tail: a vertex may be appended when
/// every vertex already placed has an edge to it. Candidates are tried in
/// ascending order, so the result is the lexicographically first witness.
pub fn is_simplex(g: &Digraph, s: &VertexSet) -> Result<Option<Vec<usize>>> {
    if s.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    g.check_set(s)?;
    Ok(find_witness(g, s.as_slice()))
}

fn find_witness(g: &Digraph, members: &[usize]) -> Option<Vec<usize>> {
    fn extend(g: &Digraph, members: &[usize], order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if order.len() == members.len() {
            return true;
        }
        for (i, &w) in members.iter().enumerate() {
            if used[i] || !order.iter().all(|&v| g.has_edge(v, w)) {
                continue;
            }
            // Everything left must still be reachable from w.
            if !members
                .iter()
                .enumerate()
                .all(|(j, &z)| used[j] || j == i || g.has_edge(w, z))
            {
                continue;
            }
            used[i] = true;
            order.push(w);
            if extend(g, members, order, used) {
                return true;
            }
            order.pop();
            used[i] = false;
        }
        false
    }
    let mut order = Vec::with_capacity(members.len());
    let mut used = vec![false; members.len()];
    extend(g, members, &mut order, &mut used).then_some(order)
}

/// Builds `dVR(g)` up to dimension `max_dim` (unbounded when `None`).
///
/// Level `k + 1` is generated from level `k`: each simplex `σ` is extended
/// by vertices `w > max σ` that are semicomplete-adjacent to all of `σ`
/// (one bitset intersection), every facet of `σ ∪ {w}` must already be
/// present, and the survivor is confirmed by a witness search. Extending
/// only past the maximum keeps each level in lexicographic order.
pub fn build_complex(g: &Digraph, max_dim: Option<usize>) -> SimplicialComplex {
    let n = g.n();
    if n == 0 {
        return SimplicialComplex::empty();
    }
    let semi: Vec<FixedBitSet> = (0..n)
        .map(|u| {
            let mut row = g.out_row(u).clone();
            row.union_with(g.in_row(u));
            row
        })
        .collect();

    let mut levels: Vec<Vec<Simplex>> = vec![(0..n)
        .map(|v| Simplex { vertices: vec![v], witness: vec![v] })
        .collect()];
    let mut index: HashMap<Vec<usize>, (usize, usize)> = levels[0]
        .iter()
        .enumerate()
        .map(|(i, s)| (s.vertices.clone(), (0, i)))
        .collect();
    let mut truncated = false;

    loop {
        let d = levels.len() - 1;
        let capped = max_dim.is_some_and(|m| d >= m);
        let mut next = Vec::new();
        'outer: for s in &levels[d] {
            let mut common = semi[s.vertices[0]].clone();
            for &v in &s.vertices[1..] {
                common.intersect_with(&semi[v]);
            }
            let top = *s.vertices.last().unwrap();
            for w in common.ones().filter(|&w| w > top) {
                let mut cand = s.vertices.clone();
                cand.push(w);
                // The facet dropping w is s itself.
                if !facets(&cand).take(d + 1).all(|f| index.contains_key(&f)) {
                    continue;
                }
                if let Some(witness) = find_witness(g, &cand) {
                    if capped {
                        truncated = true;
                        break 'outer;
                    }
                    next.push(Simplex { vertices: cand, witness });
                }
            }
        }
        if capped || next.is_empty() {
            break;
        }
        for (i, s) in next.iter().enumerate() {
            index.insert(s.vertices.clone(), (d + 1, i));
        }
        levels.push(next);
    }

    SimplicialComplex { by_dim: levels, index, truncated }
}

/// Lemma-style check: the simplices of `dVR(g)` supported in `a` are
/// exactly the simplices of `dVR` of the induced subgraph on `a`.
pub fn check_full_subcomplex(g: &Digraph, a: &VertexSet, cap: Option<usize>) -> Result<bool> {
    let sub = g.induced_subgraph(a)?;
    let whole = build_complex(g, cap);
    let local = build_complex(&sub, cap).relabel(a.as_slice());
    let restricted: BTreeSet<&[usize]> = whole
        .iter()
        .map(Simplex::vertices)
        .filter(|vs| vs.iter().all(|v| a.contains(*v)))
        .collect();
    let lifted: BTreeSet<&[usize]> = local.iter().map(Simplex::vertices).collect();
    Ok(restricted == lifted)
}

/// Whether `dVR(U_x)` is a combinatorial cone with apex `x`.
pub fn check_cone(g: &Digraph, x: usize) -> Result<bool> {
    let nbhd = g.minimal_neighborhood(x)?;
    let sub = g.induced_subgraph(&nbhd)?;
    let apex = nbhd.as_slice().binary_search(&x).expect("x ∈ U_x");
    let k = build_complex(&sub, None);
    let coned = k.iter().all(|s| {
        let with_apex = VertexSet::new(s.vertices.iter().copied().chain([apex]));
        k.contains(with_apex.as_slice())
    });
    Ok(coned)
}

/// Image of one source simplex under a vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexImage {
    pub source: Vec<usize>,
    /// Sorted, deduplicated image; shorter than `source` when degenerate.
    pub image: Vec<usize>,
    pub in_target: bool,
}

impl SimplexImage {
    pub fn degenerate(&self) -> bool {
        self.image.len() < self.source.len()
    }

    pub fn image_dim(&self) -> usize {
        self.image.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMapReport {
    pub images: Vec<SimplexImage>,
}

impl SimplicialMapReport {
    pub fn all_in_target(&self) -> bool {
        self.images.iter().all(|i| i.in_target)
    }
}

/// Pushes every simplex of `dVR(source)` through the vertex map `f`.
///
/// `f` must be a digraph morphism; this is checked edge by edge.
pub fn map_complex(f: &[usize], source: &Digraph, target: &Digraph) -> Result<SimplicialMapReport> {
    if f.len() != source.n() {
        return Err(Error::MapLength { expected: source.n(), got: f.len() });
    }
    for &v in f {
        target.check_vertex(v)?;
    }
    for (u, v) in source.edges() {
        if !target.has_edge(f[u], f[v]) {
            return Err(Error::NotAMorphism { u, v, fu: f[u], fv: f[v] });
        }
    }
    let src = build_complex(source, None);
    let cap = src.top_dim();
    let tgt = build_complex(target, cap);
    let images = src
        .iter()
        .map(|s| {
            let image = VertexSet::new(s.vertices.iter().map(|&v| f[v])).into_vec();
            let in_target = tgt.contains(&image);
            SimplexImage { source: s.vertices.clone(), image, in_target }
        })
        .collect();
    Ok(SimplicialMapReport { images })
}
