//! Dense linear algebra over `ℚ` and `ℤ/p`.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    Prime(u64),
}

impl Coefficients {
    /// `ℤ/p`, rejecting composite or tiny `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `q` or `zp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "q" {
            return Ok(Coefficients::Rational);
        }
        if let Some(p) = s.strip_prefix("zp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad modulus in {s:?}")))?;
            return Coefficients::prime(p);
        }
        Err(Error::InvalidArgument(format!("unknown field {s:?}")))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// `ℤ/p` with `p` prime and below 2³².
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!("modulus {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue fits")
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2).
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

/// Row-major dense matrix over a field.
pub type DenseMatrix<E> = Vec<Vec<E>>;

pub fn to_field<F: Field>(f: &F, a: &IntegerMatrix) -> DenseMatrix<F::Elem> {
    let mut m = vec![vec![f.zero(); a.cols()]; a.rows()];
    for (r, c, v) in a.entries() {
        m[r][c] = f.from_int(v);
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut DenseMatrix<F::Elem>, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..m[i].len() {
                    if !f.is_zero(&m[r][j]) {
                        let t = f.mul(&factor, &m[r][j]);
                        m[i][j] = f.sub(&m[i][j], &t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, cols: usize) -> usize {
    let mut work = m.clone();
    rref(f, &mut work, cols).len()
}

pub fn integer_rank<F: Field>(f: &F, a: &IntegerMatrix) -> usize {
    rank(f, &to_field(f, a), a.cols())
}

/// Basis of the null space of an `rows × cols` matrix, one vector per free
/// column.
pub fn nullspace<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.sub(&f.zero(), &work[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Column vectors of `m` at the pivot columns: a basis of its image.
pub fn column_space<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work, cols);
    pivots
        .into_iter()
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Matrix-vector product `m · x`.
pub fn apply<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter().zip(x).fold(f.zero(), |acc, (a, b)| {
                if f.is_zero(a) || f.is_zero(b) {
                    acc
                } else {
                    f.add(&acc, &f.mul(a, b))
                }
            })
        })
        .collect()
}

/// Solves `[columns] · c = b` for each right-hand side, where `columns`
/// are linearly independent vectors of length `len`. Returns `None` for a
/// right-hand side outside their span.
pub fn solve_many<F: Field>(
    f: &F,
    columns: &[Vec<F::Elem>],
    len: usize,
    rhs: &[Vec<F::Elem>],
) -> Vec<Option<Vec<F::Elem>>> {
    let k = columns.len();
    let mut aug: DenseMatrix<F::Elem> = (0..len)
        .map(|i| {
            columns
                .iter()
                .map(|c| c[i].clone())
                .chain(rhs.iter().map(|b| b[i].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(f, &mut aug, k);
    debug_assert_eq!(pivots.len(), k, "columns must be independent");
    rhs.iter()
        .enumerate()
        .map(|(j, _)| {
            let col = k + j;
            if aug.iter().skip(k).any(|row| !f.is_zero(&row[col])) {
                return None;
            }
            Some((0..k).map(|r| aug[r][col].clone()).collect())
        })
        .collect()
}
