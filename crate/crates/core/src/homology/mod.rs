//! Simplicial homology of complexes and pairs.
//!
//! Every simplex is oriented by its sorted vertex tuple, independent of the
//! witness ordering recorded by the complex builder, so boundary signs are
//! reproducible. Integer homology goes through Smith normal form; field
//! homology through Gaussian elimination.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub mod field;
pub mod les;
pub mod matrix;
pub mod pi1;
pub mod snf;

use field::{integer_rank, Coefficients, PrimeField, Rationals};
use matrix::IntegerMatrix;
use snf::invariant_factors;

/// One homology group: `ℤ^betti ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` with `t₁ | t₂ | …`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology groups in degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub groups: Vec<HomologyGroup>,
    pub reduced: bool,
    /// The complex was cut at a dimension cap, so the top degree may be
    /// missing boundaries and overstate its group.
    pub truncated: bool,
}

impl Homology {
    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Whether every group vanishes.
    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }
}

/// Basis cells of a (possibly relative) simplicial chain complex, by degree.
pub(crate) struct Chains {
    cells: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Chains {
    fn from_cells(cells: Vec<Vec<Vec<usize>>>) -> Self {
        let index = cells
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Chains { cells, index }
    }

    pub(crate) fn absolute(k: &SimplicialComplex) -> Self {
        let top = k.top_dim().map_or(0, |t| t + 1);
        Self::from_cells(
            (0..top)
                .map(|d| k.simplices(d).iter().map(|s| s.vertices().to_vec()).collect())
                .collect(),
        )
    }

    /// `C(k) / C(sub)`: the simplices of `k` not in `sub`.
    pub(crate) fn relative(k: &SimplicialComplex, sub: &SimplicialComplex) -> Self {
        let top = k.top_dim().map_or(0, |t| t + 1);
        Self::from_cells(
            (0..top)
                .map(|d| {
                    k.simplices(d)
                        .iter()
                        .filter(|s| !sub.contains(s.vertices()))
                        .map(|s| s.vertices().to_vec())
                        .collect()
                })
                .collect(),
        )
    }

    /// Number of graded levels (top dimension + 1).
    pub(crate) fn levels(&self) -> usize {
        self.cells.len()
    }

    pub(crate) fn rank(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, Vec::len)
    }

    pub(crate) fn cells(&self, n: usize) -> &[Vec<usize>] {
        self.cells.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn position(&self, n: usize, simplex: &[usize]) -> Option<usize> {
        self.index.get(n).and_then(|m| m.get(simplex).copied())
    }

    /// `∂ₙ : Cₙ → Cₙ₋₁`, deleting position `i` with sign `(−1)^i`. Faces
    /// absent from the basis (quotiented out) are dropped.
    pub(crate) fn boundary(&self, n: usize) -> IntegerMatrix {
        if n == 0 {
            return IntegerMatrix::zeros(0, self.rank(0));
        }
        let mut m = IntegerMatrix::zeros(self.rank(n - 1), self.rank(n));
        for (col, s) in self.cells(n).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if let Some(row) = self.position(n - 1, &face) {
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    m.set(row, col, sign);
                }
            }
        }
        m
    }

    fn integer_homology(&self) -> Vec<HomologyGroup> {
        let levels = self.levels();
        // factors[n] = invariant factors of ∂ₙ, for n in 0..=levels.
        let factors: Vec<Vec<BigInt>> = (0..=levels)
            .map(|n| {
                if n == 0 || n == levels {
                    Vec::new()
                } else {
                    invariant_factors(&self.boundary(n))
                }
            })
            .collect();
        (0..levels)
            .map(|n| {
                let rank_n = factors[n].len();
                let rank_up = factors[n + 1].len();
                HomologyGroup {
                    betti: self.rank(n) - rank_n - rank_up,
                    torsion: factors[n + 1].iter().filter(|d| !d.is_one()).cloned().collect(),
                }
            })
            .collect()
    }

    fn field_bettis(&self, coeff: Coefficients) -> Result<Vec<usize>> {
        let levels = self.levels();
        let ranks: Vec<usize> = match coeff {
            Coefficients::Rational => (0..=levels)
                .map(|n| if n == 0 || n == levels { 0 } else { integer_rank(&Rationals, &self.boundary(n)) })
                .collect(),
            Coefficients::Prime(p) => {
                let f = PrimeField::new(p)?;
                (0..=levels)
                    .map(|n| if n == 0 || n == levels { 0 } else { integer_rank(&f, &self.boundary(n)) })
                    .collect()
            }
        };
        Ok((0..levels).map(|n| self.rank(n) - ranks[n] - ranks[n + 1]).collect())
    }
}

/// Matrix of `∂ₙ` with columns indexed by `n`-simplices and rows by
/// `(n−1)`-simplices, both in sorted-tuple order. `∂₀` is the zero map
/// into the zero group.
pub fn boundary_matrix(k: &SimplicialComplex, n: usize) -> IntegerMatrix {
    Chains::absolute(k).boundary(n)
}

/// Integer homology `Hₙ = ker ∂ₙ / im ∂ₙ₊₁` for `n = 0..=top`.
pub fn homology_integer(k: &SimplicialComplex, reduced: bool) -> Homology {
    let mut groups = Chains::absolute(k).integer_homology();
    if reduced {
        if let Some(h0) = groups.first_mut() {
            h0.betti -= 1;
        }
    }
    Homology { groups, reduced, truncated: k.truncated() }
}

/// Betti numbers over a field.
pub fn homology_field(k: &SimplicialComplex, coeff: Coefficients) -> Result<Vec<usize>> {
    Chains::absolute(k).field_bettis(coeff)
}

pub(crate) fn check_subcomplex(k: &SimplicialComplex, sub: &SimplicialComplex) -> Result<()> {
    match sub.iter().find(|s| !k.contains(s.vertices())) {
        Some(s) => Err(Error::NotASubcomplex(s.vertices().to_vec())),
        None => Ok(()),
    }
}

/// Homology of the quotient chain complex `C(k) / C(sub)`.
pub fn relative_homology(k: &SimplicialComplex, sub: &SimplicialComplex) -> Result<Homology> {
    check_subcomplex(k, sub)?;
    Ok(Homology {
        groups: Chains::relative(k, sub).integer_homology(),
        reduced: false,
        truncated: k.truncated(),
    })
}

/// Relative Betti numbers over a field.
pub fn relative_homology_field(
    k: &SimplicialComplex,
    sub: &SimplicialComplex,
    coeff: Coefficients,
) -> Result<Vec<usize>> {
    check_subcomplex(k, sub)?;
    Chains::relative(k, sub).field_bettis(coeff)
}

/// `Σ (−1)ⁿ fₙ`.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.f_vector()
        .iter()
        .enumerate()
        .map(|(n, &f)| if n % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::digraph::{Digraph, VertexSet};
    use crate::generators::{circulant, figure_digraph, Figure};

    /// Six-vertex minimal triangulation of the real projective plane.
    pub(crate) fn projective_plane() -> SimplicialComplex {
        let facets = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        SimplicialComplex::from_facets(&facets.map(|f| f.to_vec())).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn triangle_boundary_column() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let d2 = boundary_matrix(&k, 2);
        // rows: {0,1}, {0,2}, {1,2}
        assert_eq!(d2, IntegerMatrix::from_dense(&[vec![1], vec![-1], vec![1]]));
        let d0 = boundary_matrix(&k, 0);
        assert_eq!((d0.rows(), d0.cols()), (0, 3));
        let d5 = boundary_matrix(&k, 5);
        assert!(d5.is_zero() && d5.cols() == 0);
    }

    #[test]
    fn octahedron_incidence() {
        let k = build_complex(&circulant(6, 2).unwrap(), None);
        let d1 = boundary_matrix(&k, 1);
        assert_eq!((d1.rows(), d1.cols()), (6, 12));
        for c in 0..12 {
            let col: Vec<_> = (0..6).map(|r| d1.get(r, c)).collect();
            assert_eq!(col.iter().sum::<BigInt>(), BigInt::from(0));
            assert_eq!(d1.entries().filter(|(_, cc, _)| *cc == c).count(), 2);
        }
    }

    #[test]
    fn octahedron_snf_of_top_boundary() {
        let k = build_complex(&circulant(6, 2).unwrap(), None);
        let d2 = boundary_matrix(&k, 2);
        let s = snf::smith_normal_form(&d2);
        assert_eq!(s.d, ints(&[1; 7]));
        assert!(s.verify(&d2));
        assert_eq!(integer_rank(&Rationals, &d2), 7);
    }

    #[test]
    fn single_vertex() {
        let k = build_complex(&Digraph::from_edge_list(1, &[]).unwrap(), None);
        let h = homology_integer(&k, false);
        assert_eq!(h.groups, vec![HomologyGroup::free(1)]);
        assert!(homology_integer(&k, true).is_trivial());
    }

    #[test]
    fn octahedron_is_a_sphere() {
        let k = build_complex(&circulant(6, 2).unwrap(), None);
        let h = homology_integer(&k, false);
        assert_eq!(h.bettis(), vec![1, 0, 1]);
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
        assert_eq!(homology_field(&k, Coefficients::Rational).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn figure_middle_has_two_loops() {
        let k = build_complex(&figure_digraph(Figure::Middle), None);
        assert_eq!(homology_integer(&k, false).bettis(), vec![1, 2]);
        assert_eq!(euler_characteristic(&k), -1);
    }

    #[test]
    fn projective_plane_torsion() {
        let k = projective_plane();
        assert_eq!(k.f_vector(), vec![6, 15, 10]);
        let h = homology_integer(&k, false);
        assert_eq!(h.groups[0], HomologyGroup::free(1));
        assert_eq!(h.groups[1], HomologyGroup { betti: 0, torsion: ints(&[2]) });
        assert!(h.groups[2].is_zero());
        assert_eq!(h.groups[1].to_string(), "Z/2");
        assert_eq!(homology_field(&k, Coefficients::Prime(2)).unwrap(), vec![1, 1, 1]);
        assert_eq!(homology_field(&k, Coefficients::Prime(3)).unwrap(), vec![1, 0, 0]);
        assert_eq!(homology_field(&k, Coefficients::Rational).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn composite_modulus_rejected() {
        let k = projective_plane();
        assert_eq!(homology_field(&k, Coefficients::Prime(6)), Err(Error::NotPrime(6)));
    }

    #[test]
    fn relative_trivial_cases() {
        let k = build_complex(&circulant(6, 2).unwrap(), None);
        assert!(relative_homology(&k, &k).unwrap().is_trivial());
        let empty = SimplicialComplex::empty();
        assert_eq!(relative_homology(&k, &empty).unwrap().groups, homology_integer(&k, false).groups);
    }

    #[test]
    fn relative_filled_square_rel_two_edges() {
        let g = figure_digraph(Figure::Left);
        let k = build_complex(&g, None);
        let a = VertexSet::from([1, 2, 3]);
        let sub = build_complex(&g.induced_subgraph(&a).unwrap(), None).relabel(a.as_slice());
        let h = relative_homology(&k, &sub).unwrap();
        assert!(h.is_trivial(), "{h:?}");
    }

    #[test]
    fn relative_requires_subcomplex() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1]]).unwrap();
        let other = SimplicialComplex::from_facets(&[vec![0, 2]]).unwrap();
        assert_eq!(relative_homology(&k, &other).unwrap_err(), Error::NotASubcomplex(vec![2]));
    }

    #[test]
    fn disk_rel_boundary_is_sphere_like() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let rim = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(relative_homology(&k, &rim).unwrap().bettis(), vec![0, 0, 1]);
    }

    #[test]
    fn empty_complex_has_no_groups() {
        let h = homology_integer(&SimplicialComplex::empty(), true);
        assert!(h.groups.is_empty());
    }
}
