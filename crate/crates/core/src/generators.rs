//! Deterministic constructors for example spaces and random test corpora.

use std::collections::HashSet;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A point of the integer lattice `ℤ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Digital adjacency: every coordinate differs by at most one.
    pub fn adjacent(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| (a - b).abs() <= 1)
    }
}

/// `(ℤ_n, c_m)`: `u E v` iff `v` lies within circular distance `m` of `u`.
pub fn circulant(n: usize, m: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("circulant needs n >= 1".into()));
    }
    if m > n {
        return Err(Error::InvalidArgument(format!("circulant radius {m} exceeds n = {n}")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let d = (v + n - u) % n;
            if d <= m || d >= n - m {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|v| v.to_string()).collect();
    Digraph::from_edge_list(n, &edges)?.with_labels(labels)
}

/// The digital image on `points` under max-norm adjacency.
pub fn digital_image(points: &[LatticePoint]) -> Result<Digraph> {
    if let Some(first) = points.first() {
        if let Some(p) = points.iter().find(|p| p.dim() != first.dim()) {
            return Err(Error::DimensionMismatch(first.dim(), p.dim()));
        }
    }
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(p) {
            return Err(Error::DuplicatePoint(p.0.clone()));
        }
    }
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j && p.adjacent(q) {
                edges.push((i, j));
            }
        }
    }
    let labels = points
        .iter()
        .map(|p| {
            let coords: Vec<String> = p.0.iter().map(|c| c.to_string()).collect();
            format!("({})", coords.join(","))
        })
        .collect();
    Digraph::from_edge_list(points.len(), &edges)?.with_labels(labels)
}

/// The six points `±e₁, ±e₂, ±e₃` of `ℤ³`, the digital 2-sphere.
pub fn digital_sphere_points() -> Vec<LatticePoint> {
    let mut pts = Vec::with_capacity(6);
    for axis in 0..3 {
        for sign in [1, -1] {
            let mut c = vec![0; 3];
            c[axis] = sign;
            pts.push(LatticePoint(c));
        }
    }
    pts
}

/// The three four-vertex digraphs drawn side by side in the figure, with
/// `A, B, C, D = 0, 1, 2, 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Filled square.
    Left,
    /// Square with an unfilled diagonal.
    Middle,
    /// Hollow square.
    Right,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Figure::Left),
            "middle" => Ok(Figure::Middle),
            "right" => Ok(Figure::Right),
            other => Err(Error::InvalidArgument(format!("unknown figure {other:?}"))),
        }
    }
}

pub fn figure_digraph(which: Figure) -> Digraph {
    let edges: &[(usize, usize)] = match which {
        Figure::Left => &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)],
        Figure::Middle => &[(0, 1), (0, 2), (3, 0), (1, 3), (2, 3)],
        Figure::Right => &[(0, 1), (0, 2), (1, 3), (2, 3)],
    };
    let labels = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
    Digraph::from_edge_list(4, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("fixture is well formed")
}

/// Each ordered pair `u ≠ v` gets an edge independently with probability
/// `p`. The generator is ChaCha8 seeded from `seed`, so output is stable
/// across platforms.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::from_edge_list(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism search over all vertex permutations.
    fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
        fn search(a: &Digraph, b: &Digraph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = perm.len();
            if k == a.n() {
                return true;
            }
            for cand in 0..b.n() {
                if used[cand] {
                    continue;
                }
                let ok = (0..k).all(|i| {
                    a.has_edge(i, k) == b.has_edge(perm[i], cand)
                        && a.has_edge(k, i) == b.has_edge(cand, perm[i])
                });
                if ok {
                    perm.push(cand);
                    used[cand] = true;
                    if search(a, b, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[cand] = false;
                }
            }
            false
        }
        a.n() == b.n() && search(a, b, &mut Vec::new(), &mut vec![false; b.n()])
    }

    #[test]
    fn octahedron_adjacency() {
        let g = circulant(6, 2).unwrap();
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(g.has_edge(u, v), (u + 3) % 6 != v, "{u} {v}");
            }
        }
    }

    #[test]
    fn circulant_radius_zero_is_loops_only() {
        assert!(circulant(7, 0).unwrap().edges().is_empty());
        assert!(circulant(0, 0).is_err());
        assert!(circulant(3, 4).is_err());
    }

    #[test]
    fn five_cycle() {
        let g = circulant(5, 1).unwrap();
        assert_eq!(g.edges().len(), 10);
        assert!(g.is_symmetric());
    }

    #[test]
    fn digital_sphere_matches_octahedron() {
        let s2 = digital_image(&digital_sphere_points()).unwrap();
        assert!(s2.is_symmetric());
        assert!(isomorphic(&s2, &circulant(6, 2).unwrap()));
        assert_eq!(s2.label(0), "(1,0,0)");
    }

    #[test]
    fn digital_image_errors() {
        let p = LatticePoint(vec![0, 0]);
        assert_eq!(
            digital_image(&[p.clone(), p.clone()]).unwrap_err(),
            Error::DuplicatePoint(vec![0, 0])
        );
        assert_eq!(
            digital_image(&[p, LatticePoint(vec![1])]).unwrap_err(),
            Error::DimensionMismatch(2, 1)
        );
        assert_eq!(digital_image(&[LatticePoint(vec![4])]).unwrap().n(), 1);
    }

    #[test]
    fn grid_uses_diagonals() {
        let pts: Vec<_> = (0..3)
            .flat_map(|x| (0..3).map(move |y| LatticePoint(vec![x, y])))
            .collect();
        let g = digital_image(&pts).unwrap();
        // (0,0) and (1,1) are adjacent, (0,0) and (2,0) are not.
        assert!(g.has_edge(0, 4));
        assert!(!g.has_edge(0, 6));
    }

    #[test]
    fn circulant_is_vertex_transitive_on_edges() {
        let g = circulant(9, 3).unwrap();
        for x in 0..9 {
            assert_eq!(g.minimal_neighborhood(x).unwrap().len(), 7);
        }
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert!(random_digraph(5, 0.0, 1).unwrap().edges().is_empty());
        assert_eq!(random_digraph(5, 1.0, 1).unwrap().edges().len(), 20);
        assert_eq!(random_digraph(8, 0.4, 9).unwrap(), random_digraph(8, 0.4, 9).unwrap());
        assert!(random_digraph(3, 1.5, 0).is_err());
    }

    #[test]
    fn random_snapshot() {
        let g = random_digraph(6, 0.4, 42).unwrap();
        assert_eq!(
            g.edges(),
            vec![
                (0, 5), (1, 0), (1, 2), (1, 5), (3, 0), (3, 2),
                (3, 5), (4, 0), (4, 1), (4, 3), (4, 5), (5, 0),
            ]
        );
    }
}
