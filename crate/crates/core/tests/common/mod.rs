//! Independent oracles and proptest strategies shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dvrtop_core::{Digraph, SimplicialComplex, VertexSet};
use proptest::prelude::*;

/// Digraph on `1..=max_n` vertices with an arbitrary off-diagonal relation.
pub fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n * n)
                .filter(|&i| bits[i])
                .map(|i| (i / n, i % n))
                .collect();
            Digraph::from_edge_list(n, &edges).unwrap()
        })
    })
}

pub fn symmetric_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    digraph(max_n).prop_map(|g| {
        let mut edges = g.edges();
        edges.extend(g.edges().into_iter().map(|(u, v)| (v, u)));
        Digraph::from_edge_list(g.n(), &edges).unwrap()
    })
}

/// Digraph plus a nonempty vertex subset, given as a bitmask over `0..n`.
pub fn digraph_with_subset(max_n: usize) -> impl Strategy<Value = (Digraph, VertexSet)> {
    digraph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 1u32..(1u32 << n)).prop_map(move |(g, mask)| (g, mask_set(mask, n)))
    })
}

pub fn mask_set(mask: u32, n: usize) -> VertexSet {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

pub fn orders_directed(g: &Digraph, order: &[usize]) -> bool {
    (0..order.len()).all(|i| (i + 1..order.len()).all(|j| g.has_edge(order[i], order[j])))
}

/// Every nonempty subset, kept iff some permutation of it is directed.
pub fn brute_force_simplices(g: &Digraph) -> BTreeSet<Vec<usize>> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << n) {
        let s = mask_set(mask, n).into_vec();
        if permutations(&s).iter().any(|p| orders_directed(g, p)) {
            out.insert(s);
        }
    }
    out
}

/// Bron–Kerbosch with pivoting on the underlying undirected graph.
pub fn maximal_cliques(g: &Digraph) -> Vec<Vec<usize>> {
    fn bk(g: &Digraph, r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let adj = |u: usize, v: usize| u != v && g.has_edge(u, v);
        let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| adj(u, v)).count()).unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj(pivot, v)).collect();
        for v in candidates {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&w| adj(v, w)).collect();
            let x2 = x.iter().copied().filter(|&w| adj(v, w)).collect();
            bk(g, r2, p2, x2, out);
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(g, Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    out
}

pub fn clique_complex_faces(g: &Digraph) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for c in maximal_cliques(g) {
        let mut c = c;
        c.sort_unstable();
        for mask in 1u32..(1u32 << c.len()) {
            out.insert((0..c.len()).filter(|i| mask & (1 << i) != 0).map(|i| c[i]).collect());
        }
    }
    out
}

pub fn supports(k: &SimplicialComplex) -> BTreeSet<Vec<usize>> {
    k.iter().map(|s| s.vertices().to_vec()).collect()
}
