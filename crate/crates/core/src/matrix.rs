//! Dense matrices over [`Scalar`].

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::sparse::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch {
                left: format!("row of length {}", bad.len()),
                right: format!("row of length {}", c),
            });
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose `j`-th column holds the coordinates of `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(*i, j, c.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| (i, self.get(i, j).clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", rhs.rows, rhs.cols),
            });
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
                        let idx = i * out.cols + j;
                        out.entries[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a sparse column vector `v`.
    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (j, c) in v.iter() {
            for i in 0..self.rows {
                let m = self.get(i, *j);
                if !m.is_zero() {
                    out.add_term(i, &(m * c));
                }
            }
        }
        out
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_of_product(&self, rhs: &Matrix) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    let b = rhs.get(k, i);
                    if !b.is_zero() {
                        acc += &(a * b);
                    }
                }
            }
        }
        acc
    }

    /// Row-reduces `[self | id]` and returns `(determinant, inverse)`.
    fn eliminate(&self) -> Result<(Scalar, Option<Matrix>), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok((Scalar::zero(), None));
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col).clone();
            det *= &p;
            let p_inv = p.inv().expect("pivot is nonzero");
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok((det, Some(inv)))
    }

    pub fn determinant(&self) -> Result<Scalar, MatrixError> {
        Ok(self.eliminate()?.0)
    }

    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        self.eliminate()?.1.ok_or(MatrixError::Singular)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.entries[idx].is_zero() {
                self.entries[idx] *= k;
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.entries[target * self.cols + j] -= &delta;
        }
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    /// Panics on shape mismatch; see [`Matrix::checked_mul`].
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&["1", "i"], &["sqrt2", "2"]]);
        assert_eq!(a.determinant().unwrap(), "2 - i*sqrt2".parse().unwrap());
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert_eq!(&inv * &a, Matrix::identity(2));
    }

    #[test]
    fn singular_matrix() {
        let a = m(&[&["1", "sqrt2"], &["sqrt2", "2"]]);
        assert_eq!(a.determinant().unwrap(), Scalar::zero());
        assert_eq!(a.inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn row_swap_flips_determinant_sign() {
        let a = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(a.determinant().unwrap(), Scalar::integer(-1));
    }

    #[test]
    fn trace_of_product_matches_product_trace() {
        let a = m(&[&["1", "i"], &["0", "sqrt2"]]);
        let b = m(&[&["2", "1"], &["i", "-1"]]);
        assert_eq!(a.trace_of_product(&b), (&a * &b).trace());
    }
}
