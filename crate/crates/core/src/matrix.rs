use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// A rectangular matrix of polynomials sharing one variable count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    num_vars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, num_vars: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            num_vars,
            entries: vec![Polynomial::zero(num_vars); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let height = rows.len();
        if height == 0 {
            return Err(Error::RaggedMatrix {
                expected: 1,
                found: 0,
            });
        }
        let width = rows[0].len();
        let mut entries = Vec::with_capacity(height * width);
        let mut num_vars = None;
        for row in rows {
            if row.len() != width {
                return Err(Error::RaggedMatrix {
                    expected: width,
                    found: row.len(),
                });
            }
            for p in row {
                match num_vars {
                    None => num_vars = Some(p.num_vars()),
                    Some(n) if n != p.num_vars() => {
                        return Err(Error::VariableMismatch(n, p.num_vars()))
                    }
                    _ => {}
                }
                entries.push(p);
            }
        }
        Ok(Self {
            rows: height,
            cols: width,
            num_vars: num_vars.unwrap_or(0),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Polynomial) {
        assert_eq!(value.num_vars(), self.num_vars);
        self.entries[row * self.cols + col] = value;
    }

    pub fn delete_row(&self, row: usize) -> Self {
        assert!(self.rows > 1 && row < self.rows);
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx / self.cols != row)
            .map(|(_, p)| p.clone())
            .collect();
        Self {
            rows: self.rows - 1,
            cols: self.cols,
            num_vars: self.num_vars,
            entries,
        }
    }

    pub fn delete_col(&self, col: usize) -> Self {
        assert!(self.cols > 1 && col < self.cols);
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx % self.cols != col)
            .map(|(_, p)| p.clone())
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols - 1,
            num_vars: self.num_vars,
            entries,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact determinant by cofactor expansion. Matrices here are small
    /// (at most ~12x12) and sparse, so expansion along the emptiest line
    /// wins over fraction-free elimination.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.det_inner())
    }

    fn det_inner(&self) -> Polynomial {
        let n = self.rows;
        match n {
            1 => self.entry(0, 0).clone(),
            2 => {
                let ad = self.entry(0, 0).mul(self.entry(1, 1));
                let bc = self.entry(0, 1).mul(self.entry(1, 0));
                ad.sub(&bc)
            }
            _ => {
                let (best_row, row_nonzero) = (0..n)
                    .map(|r| (r, (0..n).filter(|&c| !self.entry(r, c).is_zero()).count()))
                    .min_by_key(|&(_, count)| count)
                    .unwrap();
                let (best_col, col_nonzero) = (0..n)
                    .map(|c| (c, (0..n).filter(|&r| !self.entry(r, c).is_zero()).count()))
                    .min_by_key(|&(_, count)| count)
                    .unwrap();
                let mut acc = Polynomial::zero(self.num_vars);
                if row_nonzero <= col_nonzero {
                    let minor_rows = self.delete_row(best_row);
                    for c in 0..n {
                        let e = self.entry(best_row, c);
                        if e.is_zero() {
                            continue;
                        }
                        let cofactor = minor_rows.delete_col(c).det_inner();
                        let signed = e.mul(&cofactor);
                        if (best_row + c) % 2 == 0 {
                            acc = acc.add(&signed);
                        } else {
                            acc = acc.sub(&signed);
                        }
                    }
                } else {
                    let minor_cols = self.delete_col(best_col);
                    for r in 0..n {
                        let e = self.entry(r, best_col);
                        if e.is_zero() {
                            continue;
                        }
                        let cofactor = minor_cols.delete_row(r).det_inner();
                        let signed = e.mul(&cofactor);
                        if (r + best_col) % 2 == 0 {
                            acc = acc.add(&signed);
                        } else {
                            acc = acc.sub(&signed);
                        }
                    }
                }
                acc
            }
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
