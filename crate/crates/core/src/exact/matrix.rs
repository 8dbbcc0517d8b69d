//! Dense matrices over Q(i) and Z.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Field used by [`Matrix::rank_over`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    /// Rows are read as Q-vectors `(re..., im...)` of twice the length.
    Rationals,
    GaussianRationals,
}

/// Dense row-major matrix over Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, actual: bad.len() });
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn diagonal(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { GaussianRational::zero() })
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

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_gaussian_integral(&self) -> bool {
        self.data.iter().all(GaussianRational::is_gaussian_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: o.rows });
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.data[r * o.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; skips zero entries, which dominate blade images.
    pub fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        if acc.is_zero() {
                            acc = a * x;
                        } else {
                            acc += &(a * x);
                        }
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, n: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rank by exact elimination over the requested field.
    pub fn rank_over(&self, field: Field) -> usize {
        let mut echelon = RowEchelon::new(match field {
            Field::GaussianRationals => self.cols,
            Field::Rationals => 2 * self.cols,
        });
        for r in 0..self.rows {
            let row = match field {
                Field::GaussianRationals => self.row(r).to_vec(),
                Field::Rationals => realify_row(self.row(r)),
            };
            echelon.insert(row);
        }
        echelon.rank()
    }

    pub fn rank(&self) -> usize {
        self.rank_over(Field::GaussianRationals)
    }

    /// Determinant by Gaussian elimination with first-nonzero pivoting.
    pub fn det(&self) -> Result<GaussianRational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: self.cols });
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] -= &t;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut b = Matrix::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, col);
            b.swap(p, col);
            let inv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &inv;
                b[col][c] = &b[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let ta = &f * &a[col][c];
                    a[r][c] -= &ta;
                    let tb = &f * &b[col][c];
                    b[r][c] -= &tb;
                }
            }
        }
        Matrix::from_rows(b)
    }

    /// Flattens row-major into one vector.
    pub fn flatten(&self) -> Vec<GaussianRational> {
        self.data.clone()
    }
}

fn realify_row(row: &[GaussianRational]) -> Vec<GaussianRational> {
    row.iter()
        .map(|x| GaussianRational::real(x.re().clone()))
        .chain(row.iter().map(|x| GaussianRational::real(x.im().clone())))
        .collect()
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.checked_mul(o).expect("matrix dimensions agree")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental row reduction: rows are inserted one at a time and reduced
/// against the pivots seen so far, so memory is bounded by the rank.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    width: usize,
    // (pivot column, row normalized so the pivot is 1)
    pivots: Vec<(usize, Vec<GaussianRational>)>,
}

impl RowEchelon {
    pub fn new(width: usize) -> Self {
        Self { width, pivots: Vec::new() }
    }

    /// Inserts a row; returns true when it was independent of the previous ones.
    pub fn insert(&mut self, mut row: Vec<GaussianRational>) -> bool {
        assert_eq!(row.len(), self.width);
        for (pc, prow) in &self.pivots {
            if row[*pc].is_zero() {
                continue;
            }
            let f = row[*pc].clone();
            for (x, p) in row.iter_mut().zip(prow).skip(*pc) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pc].inv().expect("nonzero pivot");
        for x in row.iter_mut().skip(pc) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.pivots.push((pc, row));
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "rectangular literal");
        Self::from_fn(rows.len(), cols, |r, c| BigInt::from(rows[r][c]))
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "rectangular literal");
        Self { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        IntMatrix::from_fn(self.rows, o.cols, |r, c| (0..self.cols).map(|k| self.get(r, k) * o.get(k, c)).sum())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            GaussianRational::real(Rational::from_integer(self.get(r, c).clone()))
        })
    }

    /// Converts a matrix whose entries are all rational integers.
    pub fn from_matrix(m: &Matrix) -> Option<IntMatrix> {
        m.entries()
            .iter()
            .all(|x| x.is_real() && x.re().is_integer())
            .then(|| IntMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).re().to_integer()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..self.cols).all(|c| *self.get(r, c) == -self.get(c, r)))
    }

    pub fn abs_det_is_one(&self) -> bool {
        self.det().abs().is_one()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn identity_and_zero_rank() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn rank_over_rationals_counts_real_independence() {
        // (1) and (i) are dependent over Q(i) but independent over Q.
        let m = Matrix::from_rows(vec![vec![gi(1, 0)], vec![gi(0, 1)]]).unwrap();
        assert_eq!(m.rank_over(Field::GaussianRationals), 1);
        assert_eq!(m.rank_over(Field::Rationals), 2);
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(vec![vec![gi(1, 1), gi(2, 0)], vec![gi(0, -1), gi(3, 2)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        // (1+i)(3+2i) - 2(-i) = 1 + 5i + 2i = 1 + 7i
        assert_eq!(m.det().unwrap(), gi(1, 7));
        assert_eq!(Matrix::zeros(2, 2).inverse(), Err(Error::Singular));
    }

    #[test]
    fn bareiss_det_small() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det(), BigInt::zero());
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(m.det(), BigInt::one());
    }
}
