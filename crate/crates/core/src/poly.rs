//! Univariate polynomials over a [`Field`] and the Smith form over `F[t]`,
//! used to decide similarity of automorphisms.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::field::{Field, Matrix, Scalar};

/// Polynomial with ascending coefficients; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                f.add(a, b)
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        self.add(&other.scale(&f.neg(&f.one()), f), f)
    }

    pub fn scale(&self, c: &Scalar, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.lead().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = f.mul(rem.last().unwrap(), &lead_inv);
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, d));
            }
            quot[k] = c;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&f.inv(l), f),
        }
    }

    pub fn divides(&self, other: &Poly, f: &Field) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self, f).1.is_zero()
    }

    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, f).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: &Scalar, f: &Field) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

impl fmt::Display for Poly {
    /// Highest power first, e.g. `t^2-1`, `t+1/2`, `3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Diagonal of the Smith form of a polynomial matrix, monic, in
/// divisibility order. Zero diagonal entries are kept as zero polynomials.
pub fn smith_diagonal(mut m: Vec<Vec<Poly>>, f: &Field) -> Vec<Poly> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Pivot of least degree in the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, p) in row.iter().enumerate().skip(t) {
                    if let Some(d) = p.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                diag.extend((t..rows.min(cols)).map(|_| Poly::zero()));
                return finish(diag, f);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&m[t][t], f);
                for j in t..cols {
                    let sub = q.mul(&m[t][j], f);
                    m[i][j] = m[i][j].sub(&sub, f);
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&m[t][t], f);
                for row in m.iter_mut().skip(t) {
                    let sub = q.mul(&row[t], f);
                    row[j] = row[j].sub(&sub, f);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[t][t].divides(&m[i][j], f)));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = m[t][j].add(&m[i][j], f);
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].clone());
    }
    finish(diag, f)
}

fn finish(diag: Vec<Poly>, f: &Field) -> Vec<Poly> {
    diag.into_iter().map(|p| p.monic(f)).collect()
}

/// Non-unit invariant factors of a square matrix, i.e. the non-constant
/// diagonal entries of the Smith form of `tI − M`. Their degrees sum to the
/// size of `M`, and each divides the next.
pub fn invariant_factors(m: &Matrix, f: &Field) -> Vec<Poly> {
    assert!(m.is_square(), "invariant factors need a square matrix");
    let n = m.rows();
    let char_matrix: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = Poly::constant(f.neg(&m[(i, j)]));
                    if i == j {
                        entry.add(&Poly::t(), f)
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    smith_diagonal(char_matrix, f)
        .into_iter()
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect()
}
