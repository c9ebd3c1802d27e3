//! Dense matrices over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` with `d != 0`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Invalid(format!("malformed fraction {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(n, d))
}

/// Lowest terms, `"n"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
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
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Builds an explicit `rows × cols` matrix even when one side is zero.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, row index `r1 * rhs.rows + r2`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = rhs.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * rhs.rows + i2, j1 * rhs.cols + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        (0..self.data.len())
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Scales to an integer matrix; returns it with the common denominator.
    fn integral(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let l = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        (rows, l)
    }

    /// Fraction-free (Bareiss) elimination on the integer-scaled matrix.
    /// Returns the echelon rows, the pivot columns, and the sign of the
    /// row permutation.
    fn bareiss(rows: &mut [Vec<BigInt>], ncols: usize) -> (Vec<usize>, i32) {
        let nrows = rows.len();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut sign = 1;
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                sign = -sign;
            }
            for i in r + 1..nrows {
                for j in c + 1..ncols {
                    let v = (&rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j]) / &prev;
                    rows[i][j] = v;
                }
                rows[i][c] = BigInt::zero();
            }
            // columns left of c in rows below are already zero
            prev = rows[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (pivots, sign)
    }

    pub fn rank(&self) -> usize {
        let (mut rows, _) = self.integral();
        Self::bareiss(&mut rows, self.cols).0.len()
    }

    pub fn determinant(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Scalar::one());
        }
        let (mut rows, l) = self.integral();
        let (pivots, sign) = Self::bareiss(&mut rows, n);
        if pivots.len() < n {
            return Some(Scalar::zero());
        }
        let det = &rows[n - 1][n - 1] * BigInt::from(sign);
        Some(Scalar::new(det, l.pow(n as u32)))
    }

    /// Exact inverse: fraction-free elimination on `[A | I]`, then
    /// back-substitution.
    pub fn inverse(&self) -> std::result::Result<Matrix, InverseWitness> {
        if self.rows != self.cols {
            return Err(InverseWitness::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let (rows, l) = self.integral();
        let mut aug: Vec<Vec<BigInt>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { l.clone() } else { BigInt::zero() }));
                row
            })
            .collect();
        let (pivots, _) = Self::bareiss(&mut aug, 2 * n);
        let rank = pivots.iter().filter(|&&c| c < n).count();
        if rank < n {
            return Err(InverseWitness::Singular { rank });
        }
        // upper triangular U X = R with U = aug[.., ..n], R = aug[.., n..]
        let mut inv = Matrix::zeros(n, n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = Scalar::from_integer(aug[i][n + col].clone());
                for k in i + 1..n {
                    acc -= Scalar::from_integer(aug[i][k].clone()) * inv.get(k, col);
                }
                inv.set(i, col, acc / Scalar::from_integer(aug[i][i].clone()));
            }
        }
        Ok(inv)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InverseWitness {
    NotSquare { rows: usize, cols: usize },
    Singular { rank: usize },
}

impl fmt::Display for InverseWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InverseWitness::NotSquare { rows, cols } => write!(f, "not square ({rows}x{cols})"),
            InverseWitness::Singular { rank } => write!(f, "singular (rank {rank})"),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Solution set of a linear system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Scalar>),
    /// A particular solution together with the nullity.
    Many(Vec<Scalar>, usize),
    /// Index of an equation that cannot be satisfied.
    Inconsistent(usize),
}

/// Gauss–Jordan over the rationals.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution> {
    if a.rows() != b.len() {
        return Err(Error::Dimension("right-hand side length".into()));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<Scalar>> = (0..m)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut origin: Vec<usize> = (0..m).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        origin.swap(p, r);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..=n {
                    let v = &rows[i][j] - &factor * &rows[r][j];
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if let Some(i) = (r..m).find(|&i| !rows[i][n].is_zero()) {
        return Ok(LinearSolution::Inconsistent(origin[i]));
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    if pivots.len() == n {
        Ok(LinearSolution::Unique(x))
    } else {
        Ok(LinearSolution::Many(x, n - pivots.len()))
    }
}

pub fn is_nonzero(x: &Scalar) -> bool {
    !x.is_zero()
}

pub fn abs_is_one(x: &Scalar) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("6/4").unwrap(), frac(3, 2));
        assert_eq!(format_scalar(&frac(-3, 1)), "-3");
        assert_eq!(format_scalar(&frac(2, -4)), "-1/2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn invert_unipotent() {
        let m = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.inverse().unwrap(), Matrix::from_ints(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn invert_needs_pivoting_and_fractions() {
        let m = Matrix::from_rows(vec![
            vec![int(0), frac(1, 2), int(1)],
            vec![int(2), int(0), int(0)],
            vec![int(1), int(1), int(3)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(3));
        assert_eq!(m.determinant().unwrap(), frac(-1, 1));
    }

    #[test]
    fn singular_and_non_square() {
        let s = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse().unwrap_err(), InverseWitness::Singular { rank: 1 });
        let r = Matrix::zeros(2, 3);
        assert_eq!(
            r.inverse().unwrap_err(),
            InverseWitness::NotSquare { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn kron_index_formula() {
        let mut e = Matrix::zeros(2, 2);
        e.set(1, 0, int(1));
        let mut f = Matrix::zeros(2, 2);
        f.set(0, 1, int(1));
        let k = e.kron(&f);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (2, 1) { 1 } else { 0 };
                assert_eq!(k.get(i, j), &int(expect));
            }
        }
    }

    #[test]
    fn solve_cases() {
        let a = Matrix::from_ints(&[&[1, 1], &[1, -1]]);
        assert_eq!(
            solve(&a, &[int(2), int(0)]).unwrap(),
            LinearSolution::Unique(vec![int(1), int(1)])
        );
        let a = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            solve(&a, &[int(1), int(3)]).unwrap(),
            LinearSolution::Inconsistent(1)
        );
        assert!(matches!(
            solve(&a, &[int(1), int(2)]).unwrap(),
            LinearSolution::Many(_, 1)
        ));
    }
}
