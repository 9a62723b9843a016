//! Exactness of the long exact sequence of a pair, over a field.
//!
//! For a subcomplex `A ⊆ X` the sequence
//!
//! ```text
//! ⋯ → Hₙ(A) →i* Hₙ(X) →j* Hₙ(X,A) →∂ Hₙ₋₁(A) → ⋯ → H₀(X,A) → 0
//! ```
//!
//! is assembled from explicit homology bases: `i` is chain inclusion, `j`
//! the quotient projection, and `∂` lifts a relative cycle to `X`, takes its
//! boundary and reads it off in `A`. Each node is then checked for
//! `rank(incoming) + rank(outgoing) = dim` together with vanishing
//! composites, which is exactness.

use std::fmt;

use super::field::{apply, column_space, nullspace, rank, solve_many, to_field, Coefficients, DenseMatrix, Field, PrimeField, Rationals};
use super::{check_subcomplex, Chains};
use crate::complex::SimplicialComplex;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairTerm {
    /// `Hₙ(A)`
    Sub,
    /// `Hₙ(X)`
    Whole,
    /// `Hₙ(X, A)`
    Relative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub term: PairTerm,
    pub degree: usize,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    /// The composite through this node is the zero map.
    pub composite_zero: bool,
    pub exact: bool,
}

impl fmt::Display for LesNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.term {
            PairTerm::Sub => format!("H{}(A)", self.degree),
            PairTerm::Whole => format!("H{}(X)", self.degree),
            PairTerm::Relative => format!("H{}(X,A)", self.degree),
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    /// Nodes in sequence order, from the top degree down to `H₀(X,A)`.
    pub nodes: Vec<LesNode>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

/// Homology of one chain complex in one degree, with chosen
/// representatives.
struct HomologyBasis<E> {
    chain_len: usize,
    boundaries: Vec<Vec<E>>,
    reps: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq + fmt::Debug> HomologyBasis<E> {
    fn compute<F: Field<Elem = E>>(f: &F, chains: &Chains, n: usize) -> Self {
        let chain_len = chains.rank(n);
        let d_n = to_field(f, &chains.boundary(n));
        let d_up = to_field(f, &chains.boundary(n + 1));
        let cycles = nullspace(f, &d_n, chain_len);
        let boundaries = column_space(f, &d_up, chains.rank(n + 1));
        // Extend a basis of the boundaries to one of the cycles.
        let mut span = boundaries.clone();
        let mut reps = Vec::new();
        for z in cycles {
            span.push(z.clone());
            if rank(f, &transpose(&span, chain_len), span.len()) == span.len() {
                reps.push(z);
            } else {
                span.pop();
            }
        }
        HomologyBasis { chain_len, boundaries, reps }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the classes of the given cycles.
    fn classes<F: Field<Elem = E>>(&self, f: &F, cycles: &[Vec<E>]) -> Vec<Vec<E>> {
        let mut cols = self.boundaries.clone();
        cols.extend(self.reps.iter().cloned());
        solve_many(f, &cols, self.chain_len, cycles)
            .into_iter()
            .map(|c| {
                let c = c.expect("image of a cycle is a cycle");
                c[self.boundaries.len()..].to_vec()
            })
            .collect()
    }
}

/// Column vectors to a row-major matrix with `len` rows.
fn transpose<E: Clone>(cols: &[Vec<E>], len: usize) -> DenseMatrix<E> {
    (0..len).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// A linear map between homology spaces, stored as a `target × source`
/// matrix.
struct InducedMap<E> {
    matrix: DenseMatrix<E>,
    source: usize,
}

impl<E: Clone> InducedMap<E> {
    fn from_columns(cols: Vec<Vec<E>>, source: usize, target: usize) -> Self {
        InducedMap { matrix: transpose(&cols, target), source }
    }
}

fn compose_is_zero<F: Field>(f: &F, first: &InducedMap<F::Elem>, second: &InducedMap<F::Elem>) -> bool {
    (0..first.source).all(|c| {
        let col: Vec<F::Elem> = first.matrix.iter().map(|row| row[c].clone()).collect();
        apply(f, &second.matrix, &col).iter().all(|x| f.is_zero(x))
    })
}

fn map_rank<F: Field>(f: &F, m: &InducedMap<F::Elem>) -> usize {
    rank(f, &m.matrix, m.source)
}

/// Moves a chain between bases by simplex support; entries with no
/// counterpart are dropped.
fn transfer<E: Clone>(f: &impl Field<Elem = E>, chain: &[E], from: &Chains, to: &Chains, n: usize) -> Vec<E> {
    let mut out = vec![f.zero(); to.rank(n)];
    for (i, s) in from.cells(n).iter().enumerate() {
        if let Some(j) = to.position(n, s) {
            out[j] = chain[i].clone();
        }
    }
    out
}

/// Checks exactness of the long exact sequence of `(k, sub)` at every node.
pub fn les_exactness_check(k: &SimplicialComplex, sub: &SimplicialComplex, coeff: Coefficients) -> Result<LesReport> {
    check_subcomplex(k, sub)?;
    match coeff {
        Coefficients::Rational => Ok(run(&Rationals, k, sub)),
        Coefficients::Prime(p) => Ok(run(&PrimeField::new(p)?, k, sub)),
    }
}

fn run<F: Field>(f: &F, k: &SimplicialComplex, sub: &SimplicialComplex) -> LesReport {
    let whole = Chains::absolute(k);
    let part = Chains::absolute(sub);
    let rel = Chains::relative(k, sub);
    let levels = whole.levels();

    let h_sub: Vec<_> = (0..levels).map(|n| HomologyBasis::compute(f, &part, n)).collect();
    let h_whole: Vec<_> = (0..levels).map(|n| HomologyBasis::compute(f, &whole, n)).collect();
    let h_rel: Vec<_> = (0..levels).map(|n| HomologyBasis::compute(f, &rel, n)).collect();

    let inclusion: Vec<InducedMap<F::Elem>> = (0..levels)
        .map(|n| {
            let images: Vec<_> = h_sub[n].reps.iter().map(|z| transfer(f, z, &part, &whole, n)).collect();
            InducedMap::from_columns(h_whole[n].classes(f, &images), h_sub[n].dim(), h_whole[n].dim())
        })
        .collect();
    let projection: Vec<InducedMap<F::Elem>> = (0..levels)
        .map(|n| {
            let images: Vec<_> = h_whole[n].reps.iter().map(|z| transfer(f, z, &whole, &rel, n)).collect();
            InducedMap::from_columns(h_rel[n].classes(f, &images), h_whole[n].dim(), h_rel[n].dim())
        })
        .collect();
    // connecting[n] : Hₙ(X,A) → Hₙ₋₁(A), for n ≥ 1.
    let connecting: Vec<Option<InducedMap<F::Elem>>> = (0..levels)
        .map(|n| {
            if n == 0 {
                return None;
            }
            let d = to_field(f, &whole.boundary(n));
            let images: Vec<_> = h_rel[n]
                .reps
                .iter()
                .map(|z| {
                    let lifted = transfer(f, z, &rel, &whole, n);
                    let bd = apply(f, &d, &lifted);
                    debug_assert!(whole
                        .cells(n - 1)
                        .iter()
                        .zip(&bd)
                        .all(|(s, x)| f.is_zero(x) || part.position(n - 1, s).is_some()));
                    transfer(f, &bd, &whole, &part, n - 1)
                })
                .collect();
            Some(InducedMap::from_columns(h_sub[n - 1].classes(f, &images), h_rel[n].dim(), h_sub[n - 1].dim()))
        })
        .collect();

    let mut nodes = Vec::new();
    for n in (0..levels).rev() {
        // Hₙ(A): in from ∂ₙ₊₁, out via i*.
        let incoming = connecting.get(n + 1).and_then(Option::as_ref);
        nodes.push(node(f, PairTerm::Sub, n, h_sub[n].dim(), incoming, Some(&inclusion[n])));
        nodes.push(node(f, PairTerm::Whole, n, h_whole[n].dim(), Some(&inclusion[n]), Some(&projection[n])));
        nodes.push(node(f, PairTerm::Relative, n, h_rel[n].dim(), Some(&projection[n]), connecting[n].as_ref()));
    }
    LesReport { nodes }
}

fn node<F: Field>(
    f: &F,
    term: PairTerm,
    degree: usize,
    dim: usize,
    incoming: Option<&InducedMap<F::Elem>>,
    outgoing: Option<&InducedMap<F::Elem>>,
) -> LesNode {
    let rank_in = incoming.map_or(0, |m| map_rank(f, m));
    let rank_out = outgoing.map_or(0, |m| map_rank(f, m));
    let composite_zero = match (incoming, outgoing) {
        (Some(a), Some(b)) => compose_is_zero(f, a, b),
        _ => true,
    };
    LesNode {
        term,
        degree,
        dim,
        rank_in,
        rank_out,
        composite_zero,
        exact: composite_zero && rank_in + rank_out == dim,
    }
}
