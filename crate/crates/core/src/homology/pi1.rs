//! Edge-path group presentations from the 2-skeleton.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::IntegerMatrix;
use super::snf::invariant_factors;
use super::HomologyGroup;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// A generator raised to `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }
}

pub type Word = Vec<Letter>;

/// A finite group presentation `⟨generators | relators⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.inverse { format!("{g}^-1") } else { g.clone() }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        let gens = self.generators.join(", ");
        match rels.is_empty() {
            true => write!(f, "< {gens} | >"),
            false => write!(f, "< {gens} | {} >", rels.join(", ")),
        }
    }
}

/// Free and cyclic reduction.
fn reduce(word: &mut Word) {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && out[0] == out[out.len() - 1].inv() {
        out.pop();
        out.remove(0);
    }
    *word = out;
}

/// Presentation of the edge-path group of `k` at `basepoint`.
///
/// A breadth-first spanning tree of the 1-skeleton (neighbors visited in
/// ascending order) is contracted; each remaining edge `{u < v}`, read
/// `u → v`, is a generator `e{u}_{v}`, and each triangle `{a < b < c}`
/// contributes `e_ab · e_bc · e_ac⁻¹`. The result is then simplified by
/// Tietze moves: drop trivial relators, and eliminate any generator that
/// occurs exactly once in some relator.
pub fn pi1_presentation(k: &SimplicialComplex, basepoint: usize) -> Result<Presentation> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if !k.contains(&[basepoint]) {
        return Err(Error::InvalidArgument(format!("basepoint {basepoint} is not a vertex")));
    }
    let mut adjacency: BTreeMap<usize, Vec<usize>> = k.vertex_ids().into_iter().map(|v| (v, Vec::new())).collect();
    for e in k.simplices(1) {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        adjacency.get_mut(&u).unwrap().push(v);
        adjacency.get_mut(&v).unwrap().push(u);
    }
    for nbrs in adjacency.values_mut() {
        nbrs.sort_unstable();
    }

    let mut tree = std::collections::HashSet::new();
    let mut seen = std::collections::HashSet::from([basepoint]);
    let mut queue = VecDeque::from([basepoint]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[&u] {
            if seen.insert(v) {
                tree.insert((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }
    if let Some(&other) = adjacency.keys().find(|v| !seen.contains(v)) {
        return Err(Error::Disconnected(basepoint, other));
    }

    let mut generators = Vec::new();
    let mut edge_gen = BTreeMap::new();
    for e in k.simplices(1) {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        if !tree.contains(&(u, v)) {
            edge_gen.insert((u, v), generators.len());
            generators.push(format!("e{u}_{v}"));
        }
    }
    let letter = |u: usize, v: usize, inverse: bool| {
        edge_gen.get(&(u, v)).map(|&generator| Letter { generator, inverse })
    };
    let relators = k
        .simplices(2)
        .iter()
        .map(|t| {
            let (a, b, c) = (t.vertices()[0], t.vertices()[1], t.vertices()[2]);
            [letter(a, b, false), letter(b, c, false), letter(a, c, true)]
                .into_iter()
                .flatten()
                .collect()
        })
        .collect();

    let mut p = Presentation { generators, relators };
    tietze(&mut p);
    Ok(p)
}

fn tietze(p: &mut Presentation) {
    loop {
        for r in &mut p.relators {
            reduce(r);
        }
        p.relators.retain(|r| !r.is_empty());

        // Eliminate through the shortest relator that has a generator
        // occurring exactly once; short substitutions keep words small.
        let candidate = p
            .relators
            .iter()
            .enumerate()
            .filter_map(|(ri, rel)| {
                rel.iter()
                    .position(|l| rel.iter().filter(|m| m.generator == l.generator).count() == 1)
                    .map(|pos| (rel.len(), ri, pos))
            })
            .min();
        let Some((_, ri, pos)) = candidate else { break };
        let rel = &p.relators[ri];
        let l = rel[pos];
        // A · g^ε · B = 1 gives g = (B · A)^(−ε).
        let mut ba: Word = rel[pos + 1..].iter().chain(&rel[..pos]).copied().collect();
        if !l.inverse {
            ba = ba.iter().rev().map(|x| x.inv()).collect();
        }
        let g = l.generator;
        let replacement = ba;
        let mut rels = p.relators.clone();
        rels.remove(ri);
        for r in &mut rels {
            let mut out = Vec::with_capacity(r.len());
            for &m in r.iter() {
                if m.generator == g {
                    if m.inverse {
                        out.extend(replacement.iter().rev().map(|x| x.inv()));
                    } else {
                        out.extend(replacement.iter().copied());
                    }
                } else {
                    out.push(m);
                }
            }
            *r = out;
        }
        // Renumber generators above g.
        for r in &mut rels {
            for m in r.iter_mut() {
                if m.generator > g {
                    m.generator -= 1;
                }
            }
        }
        p.generators.remove(g);
        p.relators = rels;
    }
}

/// Abelianization via the Smith form of the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> HomologyGroup {
    let mut m = IntegerMatrix::zeros(p.relators.len(), p.generators.len());
    for (i, r) in p.relators.iter().enumerate() {
        for l in r {
            let step = if l.inverse { -BigInt::one() } else { BigInt::one() };
            let cur = m.get(i, l.generator);
            m.set(i, l.generator, cur + step);
        }
    }
    let d = invariant_factors(&m);
    HomologyGroup {
        betti: p.generators.len() - d.len(),
        torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
    }
}
