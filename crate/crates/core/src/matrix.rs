//! Dense matrices over F_q with exact Gaussian elimination.
//!
//! This is the slow, obviously-correct route. The circulant module solves its
//! systems through the polynomial ring instead and is cross-checked against
//! the elimination results here, so keep the two paths independent.

use crate::field::{FieldElement, FieldParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldParams,
    rows: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn from_rows(field: FieldParams, rows: Vec<Vec<FieldElement>>) -> Self {
        let width = rows.first().map(|r| r.len()).unwrap_or(0);
        for row in &rows {
            assert_eq!(row.len(), width, "ragged rows");
            for e in row {
                assert_eq!(e.modulus(), field.q(), "entry from a different field");
            }
        }
        Self { field, rows }
    }

    pub fn identity(field: FieldParams, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Self { field, rows }
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.rows[i][j]
    }

    pub fn matvec(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(x.len(), self.n_cols(), "dimension mismatch");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (a, b) in row.iter().zip(x) {
                    acc += *a * *b;
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n_cols(), rhs.n_rows(), "dimension mismatch");
        let rows = (0..self.n_rows())
            .map(|i| {
                (0..rhs.n_cols())
                    .map(|j| {
                        let mut acc = self.field.zero();
                        for k in 0..self.n_cols() {
                            acc += self.rows[i][k] * rhs.rows[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Matrix {
            field: self.field,
            rows,
        }
    }

    /// Rank by forward elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let (m, n) = (self.n_rows(), self.n_cols());
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].inv().unwrap();
            for r in rank + 1..m {
                let factor = rows[r][col] * inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor * rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
            rank += 1;
            if rank == m {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.n_rows() == self.n_cols() && self.rank() == self.n_rows()
    }

    /// Unique solution of the square system self * x = rhs, or None if singular.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, rhs: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let n = self.n_rows();
        assert_eq!(self.n_cols(), n, "solve requires a square matrix");
        assert_eq!(rhs.len(), n, "dimension mismatch");
        let mut aug: Vec<Vec<FieldElement>> = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(row, &b)| {
                let mut r = row.clone();
                r.push(b);
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].inv().unwrap();
            for c in col..=n {
                aug[col][c] *= inv;
            }
            for r in 0..n {
                if r == col || aug[r][col].is_zero() {
                    continue;
                }
                let factor = aug[r][col];
                for c in col..=n {
                    let sub = factor * aug[col][c];
                    aug[r][c] -= sub;
                }
            }
        }
        Some(aug.into_iter().map(|row| row[n]).collect())
    }
}
