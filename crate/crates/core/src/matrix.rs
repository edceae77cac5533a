use std::fmt;

use crate::error::{MatrixError, Result};
use crate::field::{FieldElement, FromElement, OrderedField};

/// Dense row-major matrix over an ordered field backend.
///
/// Zero rows are permitted (the empty echelon form of the zero class), zero
/// columns are not.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F> Matrix<F> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<F: OrderedField> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Matrix<F>> {
        if cols == 0 {
            return Err(MatrixError::NoColumns);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::Ragged {
                row: data.len() / cols,
                expected: cols,
                found: data.len() % cols,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Matrix<F>> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Matrix::new(nrows, cols, data)
    }

    /// Small-integer literal matrices, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Matrix<F> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
                .collect(),
        )
        .expect("literal matrix must be rectangular")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Matrix<F> {
        assert!(cols > 0, "matrix must have at least one column");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix<F> {
        Matrix::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Matrix<F> {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(entries: &[F]) -> Matrix<F> {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    /// The matrix unit `E_ij` (zero-based indices) of size `n × n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Matrix<F> {
        Matrix::from_fn(n, n, |a, b| if a == i && b == j { F::one() } else { F::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.data.iter()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        if self.rows == 0 {
            // A 0×n matrix transposes to n×0, which is not representable; the
            // callers only ever multiply such transposes into Gram matrices.
            panic!("transpose of a matrix with no rows");
        }
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `AᵀA`, defined also for matrices with no rows (giving `0ₙ`).
    pub fn gram(&self) -> Matrix<F> {
        let n = self.cols;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = F::zero();
                for k in 0..self.rows {
                    let a = self.get(k, i);
                    let b = self.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(j, i, acc.clone());
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(self.size_mismatch(rhs));
        }
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product. Panics on incompatible sizes; see [`Matrix::try_mul`].
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).expect("incompatible matrix product")
    }

    pub fn try_add(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(rhs, |a, b| a.add(b))
    }

    pub fn try_sub(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(rhs, |a, b| a.sub(b))
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_add(rhs).expect("incompatible matrix sum")
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_sub(rhs).expect("incompatible matrix difference")
    }

    pub fn neg(&self) -> Matrix<F> {
        self.map(F::neg)
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        self.map(|a| a.mul(c))
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Vertical stack `[self; below]`.
    pub fn stack(&self, below: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != below.cols {
            return Err(MatrixError::ColumnMismatch {
                left: self.cols,
                right: below.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Matrix<F> {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Drops all zero rows, keeping the order of the others.
    pub fn without_zero_rows(&self) -> Matrix<F> {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|x| !x.is_zero()))
            .collect();
        let mut data = Vec::with_capacity(keep.len() * self.cols);
        for &i in &keep {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            rows: keep.len(),
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn to_elements(&self) -> Matrix<FieldElement>
    where
        F: FromElement,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone().into_element()).collect(),
        }
    }

    pub(crate) fn size_mismatch(&self, rhs: &Matrix<F>) -> MatrixError {
        MatrixError::SizeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }

    pub(crate) fn require_same_size(&self, rhs: &Matrix<F>) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            Err(self.size_mismatch(rhs))
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn zip_with(&self, rhs: &Matrix<F>, f: impl Fn(&F, &F) -> F) -> Result<Matrix<F>> {
        self.require_same_size(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl Matrix<FieldElement> {
    /// Converts a tagged matrix into a concrete backend; `None` if any entry
    /// belongs to another backend.
    pub fn to_backend<F: OrderedField + FromElement>(&self) -> Option<Matrix<F>> {
        let data = self
            .data
            .iter()
            .map(F::from_element)
            .collect::<Option<Vec<F>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn from_element_rows(cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Matrix<FieldElement>> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        if cols == 0 {
            return Err(MatrixError::NoColumns);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }
}

pub(crate) fn dot<F: OrderedField>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc.add(&x.mul(y))
        }
    })
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}
