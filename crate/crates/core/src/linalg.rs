//! Exact integer and rational matrices. Every operation is checked; an
//! overflow surfaces as [`ArithmeticOverflow`] instead of wrapping.

use num_rational::Rational64;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("exact arithmetic overflow")]
pub struct ArithmeticOverflow;

type Result<T> = std::result::Result<T, ArithmeticOverflow>;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> Vec<i64> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn neg(&self) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.checked_neg().ok_or(ArithmeticOverflow))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    let term = self
                        .get(r, k)
                        .checked_mul(other.get(k, c))
                        .ok_or(ArithmeticOverflow)?;
                    acc = acc.checked_add(term).ok_or(ArithmeticOverflow)?;
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).try_fold(0i64, |acc, c| {
                    self.get(r, c)
                        .checked_mul(v[c])
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(ArithmeticOverflow)
                })
            })
            .collect()
    }

    /// Exact inverse via rational Gauss-Jordan. `Ok(None)` when singular or
    /// when the inverse has non-integer entries.
    pub fn inverse(&self) -> Result<Option<IntMatrix>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, Rational64::from_integer(self.get(r, c)));
            }
            aug.set(r, n + r, Rational64::one());
        }
        let pivots = aug.rref()?;
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Ok(None);
        }
        let mut inv = IntMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let x = aug.get(r, n + c);
                if !x.is_integer() {
                    return Ok(None);
                }
                inv.set(r, c, x.to_integer());
            }
        }
        Ok(Some(inv))
    }
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational64>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational64::zero(); rows * cols],
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, Rational64::from_integer(x));
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Rational64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational64) {
        self.data[r * self.cols + c] = x;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let pivot = self.get(row, col);
            for c in col..self.cols {
                let x = self
                    .get(row, c)
                    .checked_div(&pivot)
                    .ok_or(ArithmeticOverflow)?;
                self.set(row, c, x);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let delta = factor
                        .checked_mul(&self.get(row, c))
                        .ok_or(ArithmeticOverflow)?;
                    let x = self
                        .get(r, c)
                        .checked_sub(&delta)
                        .ok_or(ArithmeticOverflow)?;
                    self.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        let mut m = self.clone();
        Ok(m.rref()?.len())
    }

    /// A basis of `{x : M x = 0}`, one vector per free column, each with a 1
    /// in its free coordinate.
    pub fn nullspace(&self) -> Result<Vec<Vec<Rational64>>> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational64::zero(); self.cols];
            v[f] = Rational64::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, f);
            }
            basis.push(v);
        }
        Ok(basis)
    }
}

/// Dot product with overflow checking.
pub fn checked_dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y)
            .and_then(|t| acc.checked_add(t))
            .ok_or(ArithmeticOverflow)
    })
}
