//! Exact coefficient arithmetic: the rationals and prime fields, plus dense
//! matrices over them.
//!
//! Every scalar is a `BigRational`. Over `Z/p` the value is kept as the
//! canonical integer representative in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("coefficients in {0} are not a field")]
    NotAField(CoefficientRing),
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(Field, Field),
}

/// Coefficient ring for homology groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        Field::prime(p).map(|_| CoefficientRing::PrimeField(p))
    }

    pub fn field(self) -> Option<Field> {
        match self {
            CoefficientRing::Integers => None,
            CoefficientRing::Rationals => Some(Field::Rationals),
            CoefficientRing::PrimeField(p) => Some(Field::Prime(p)),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "Z/{p}"),
        }
    }
}

impl From<Field> for CoefficientRing {
    fn from(f: Field) -> Self {
        match f {
            Field::Rationals => CoefficientRing::Rationals,
            Field::Prime(p) => CoefficientRing::PrimeField(p),
        }
    }
}

/// A field of coefficients together with its arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        CoefficientRing::from(*self).fmt(f)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        // Products of two residues must fit in u128 comfortably; cap at u32.
        if is_prime(p) && p <= u32::MAX as u64 {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    fn residue(&self, a: &Scalar) -> u64 {
        debug_assert!(a.is_integer());
        a.numer().to_u64().expect("residue out of range")
    }

    fn from_residue(r: u64) -> Scalar {
        BigRational::from_integer(BigInt::from(r))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.normalize(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        self.normalize(BigRational::from_integer(v.clone()))
    }

    /// Maps an arbitrary rational into the field. For `Z/p` the denominator
    /// must be invertible mod `p`.
    pub fn normalize(&self, a: Scalar) -> Scalar {
        match *self {
            Field::Rationals => a,
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = a.numer().mod_floor(&pb).to_u64().unwrap();
                let den = a.denom().mod_floor(&pb).to_u64().unwrap();
                assert!(den != 0, "denominator divisible by {p}");
                let inv = pow_mod(den, p - 2, p);
                Self::from_residue(mul_mod(num, inv, p))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            Field::Rationals => a + b,
            Field::Prime(p) => Self::from_residue((self.residue(a) + self.residue(b)) % p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            Field::Rationals => a - b,
            Field::Prime(p) => Self::from_residue((self.residue(a) + p - self.residue(b)) % p),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            Field::Rationals => a * b,
            Field::Prime(p) => Self::from_residue(mul_mod(self.residue(a), self.residue(b), p)),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match *self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => Self::from_residue(pow_mod(self.residue(a), p - 2, p)),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn fmt_scalar(&self, a: &Scalar) -> String {
        a.to_string()
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "Matrix{rows:?}")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from integer rows, reduced into `field`.
    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = field.from_int(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Scalar]) {
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    pub fn mul(&self, other: &Matrix, field: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = field.mul(a, b);
                    out[(i, j)] = field.add(&out[(i, j)], &prod);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize, field: &Field) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = field.inv(&m[(r, c)]);
            for j in 0..m.cols {
                m[(r, j)] = field.mul(&m[(r, j)], &inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let t = field.mul(&factor, &m[(r, j)]);
                        m[(i, j)] = field.sub(&m[(i, j)], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (red, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Selects a maximal independent set of columns (the pivot columns).
    pub fn column_space_basis(&self, field: &Field) -> Matrix {
        let (_, pivots) = self.rref(field);
        let mut b = Matrix::zeros(self.rows, pivots.len());
        for (k, &j) in pivots.iter().enumerate() {
            b.set_column(k, &self.column(j));
        }
        b
    }

    /// Solves `self · X = rhs` for a matrix `self` of full column rank.
    /// Returns `None` when some column of `rhs` is outside the column space.
    pub fn solve_full_column_rank(&self, rhs: &Matrix, field: &Field) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let (red, pivots) = aug.rref(field);
        if pivots.iter().take_while(|&&p| p < n).count() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(n, rhs.cols);
        for i in 0..n {
            for j in 0..rhs.cols {
                x[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(x)
    }

    /// Determinant by elimination.
    pub fn determinant(&self, field: &Field) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = field.neg(&det);
            }
            det = field.mul(&det, &m[(c, c)]);
            let inv = field.inv(&m[(c, c)]);
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = field.mul(&m[(i, c)], &inv);
                for j in c..n {
                    let t = field.mul(&factor, &m[(c, j)]);
                    m[(i, j)] = field.sub(&m[(i, j)], &t);
                }
            }
        }
        det
    }
}
