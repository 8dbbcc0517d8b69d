//! Smith normal form and unimodular solves modulo 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::gaussian::frac;
use super::{IntMatrix, Rational};
use crate::error::{Error, Result};

/// Diagonal invariants `d_1 | d_2 | ...` of the Smith normal form, one per
/// diagonal slot (`min(rows, cols)` entries). Zero divisors come last.
pub fn smith_form(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);

    for t in 0..n {
        loop {
            // Smallest nonzero magnitude in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                        if x.abs() == BigInt::from(1) {
                            break;
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), n - t));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                let (top, rest) = a.split_at_mut(i);
                for (x, p) in rest[0].iter_mut().zip(&top[t]).skip(t) {
                    *x -= &q * p;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot must divide the whole trailing block.
            let offender = (t + 1..rows).find(|&i| a[i].iter().skip(t + 1).any(|x| !(x % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(&rest[0]).skip(t) {
                        *x += y;
                    }
                }
                None => {
                    diag.push(pivot.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// Solves `A·x ≡ c (mod 1)` for unimodular integer `A`, returning `x` with
/// entries in `[0, 1)`.
pub fn solve_mod1(a: &IntMatrix, c: &[Rational]) -> Result<Vec<Rational>> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.rows(), actual: a.cols() });
    }
    if c.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), actual: c.len() });
    }
    let det = a.det();
    if det.abs() != BigInt::from(1) {
        return Err(Error::NonUnimodular(det.abs().to_string()));
    }
    let inv = unimodular_inverse(a)?;
    Ok((0..inv.rows())
        .map(|r| {
            let s: Rational = inv.row(r).iter().zip(c).map(|(m, x)| Rational::from_integer(m.clone()) * x).sum();
            frac(&s)
        })
        .collect())
}

/// Exact inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    let inv = a.to_matrix().inverse()?;
    IntMatrix::from_matrix(&inv).ok_or_else(|| Error::NonUnimodular(a.det().abs().to_string()))
}
