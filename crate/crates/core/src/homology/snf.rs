//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u · a · v = diag(d)` with `u`, `v` unimodular and `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// Checks `u · a · v = diag(d)`, positivity and the divisibility chain.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        let lhs = self.u.mul(a).mul(&self.v);
        lhs == IntegerMatrix::diagonal(a.rows(), a.cols(), &self.d) && divisibility_chain(&self.d)
    }
}

pub(crate) fn divisibility_chain(d: &[BigInt]) -> bool {
    d.iter().all(|x| x.is_positive()) && d.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let mut state = Reduction::new(a, true);
    state.run();
    SmithForm {
        d: state.diagonal(),
        u: IntegerMatrix::from_dense_big(a.rows(), a.rows(), state.u),
        v: IntegerMatrix::from_dense_big(a.cols(), a.cols(), state.v),
    }
}

/// Diagonal of the Smith form without accumulating the transforms.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut state = Reduction::new(a, false);
    state.run();
    state.diagonal()
}

struct Reduction {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    track: bool,
    done: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Reduction {
    fn new(a: &IntegerMatrix, track: bool) -> Self {
        let (rows, cols) = (a.rows(), a.cols());
        Reduction {
            a: a.to_dense(),
            u: if track { identity(rows) } else { Vec::new() },
            v: if track { identity(cols) } else { Vec::new() },
            rows,
            cols,
            track,
            done: 0,
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.done).map(|i| self.a[i][i].clone()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if self.track {
                self.u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if self.track {
                for row in &mut self.v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            if !self.a[src][c].is_zero() {
                let t = &self.a[src][c] * q;
                self.a[dst][c] += t;
            }
        }
        if self.track {
            for c in 0..self.rows {
                if !self.u[src][c].is_zero() {
                    let t = &self.u[src][c] * q;
                    self.u[dst][c] += t;
                }
            }
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            if !self.a[r][src].is_zero() {
                let t = &self.a[r][src] * q;
                self.a[r][dst] += t;
            }
        }
        if self.track {
            for r in 0..self.cols {
                if !self.v[r][src].is_zero() {
                    let t = &self.v[r][src] * q;
                    self.v[r][dst] += t;
                }
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.a[r] {
            *x = -&*x;
        }
        if self.track {
            for x in &mut self.u[r] {
                *x = -&*x;
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block; row-major order
    /// breaks ties, so earlier rows win, then earlier columns.
    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, _, b)| x.magnitude() < b.magnitude()) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest nonzero |entry| in row `t` and column `t` past the pivot.
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        let cells = (t..self.rows).map(|i| (i, t)).chain((t + 1..self.cols).map(|j| (t, j)));
        for (i, j) in cells {
            let x = &self.a[i][j];
            if !x.is_zero() && best.is_none_or(|(_, _, b)| x.magnitude() < b.magnitude()) {
                best = Some((i, j, x));
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((i, j)) = self.min_in_block(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut remainder = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[i][t] / &self.a[t][t]);
                    self.add_row(i, t, &q);
                    remainder |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[t][j] / &self.a[t][t]);
                    self.add_col(j, t, &q);
                    remainder |= !self.a[t][j].is_zero();
                }
                if remainder {
                    let (i, j) = self.min_in_cross(t).expect("pivot is nonzero");
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the block.
                let pivot = self.a[t][t].clone();
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        self.done = t;
    }
}
