//! Dense integer matrices with arbitrary-precision entries.
//!
//! Adjacency matrices, the recurrence matrix and their powers are all exact;
//! no floating point enters any walk or vertex count.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A dense `rows x cols` matrix over the integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of `i64` values; handy for literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| BigInt::from(v)))
            .collect();
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
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

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.entries[r * self.cols + c].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Result<BigInt> {
        self.require_square()?;
        let mut t = BigInt::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// Sum of every entry; equals `j A j^T` for the all-1 vector `j`.
    pub fn entry_sum(&self) -> BigInt {
        let mut s = BigInt::zero();
        for e in &self.entries {
            s += e;
        }
        s
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows)
            .map(|r| {
                let mut s = BigInt::zero();
                for c in 0..self.cols {
                    s += self.get(r, c);
                }
                s
            })
            .collect()
    }

    pub fn col_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|c| {
                let mut s = BigInt::zero();
                for r in 0..self.rows {
                    s += self.get(r, c);
                }
                s
            })
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        self.get(r, c)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact `A^m` by repeated squaring; entry `(u, v)` of the result counts
/// the `m`-walks from `u` to `v` when `A` is an adjacency matrix.
pub fn matrix_power(a: &IntMatrix, m: u64) -> Result<IntMatrix> {
    a.require_square()?;
    let mut result = IntMatrix::identity(a.rows());
    let mut base = a.clone();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(result)
}
