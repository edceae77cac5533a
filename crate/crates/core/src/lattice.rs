//! Lattice operations on archimedean classes, through representatives.
//!
//! Class equalities are `sim` equalities; the functions here only build
//! representative matrices.

use crate::archimedean::with_rows;
use crate::error::{MatrixError, Result};
use crate::field::OrderedField;
use crate::linalg::{is_psd, kernel, max_norm, moore_penrose_symmetric, parallel_sum, Subspace};
use crate::matrix::Matrix;

fn require_same_cols<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<()> {
    if a.cols() != b.cols() {
        return Err(MatrixError::ColumnMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    Ok(())
}

/// Greatest lower bound: the stack `[A; B]`.
pub fn meet<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.stack(b)
}

/// Least upper bound: `[A(AᵀA+BᵀB)⁺BᵀB; B(AᵀA+BᵀB)⁺AᵀA]`.
pub fn join<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    require_same_cols(a, b)?;
    let (a, b) = (with_rows(a), with_rows(b));
    let (ga, gb) = (a.gram(), b.gram());
    let pinv = moore_penrose_symmetric(&ga.add(&gb)).expect("sum of Gram matrices is symmetric");
    let top = a.mul(&pinv).mul(&gb);
    let bottom = b.mul(&pinv).mul(&ga);
    top.stack(&bottom)
}

fn require_psd_pair<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<()> {
    a.require_same_size(b)?;
    if !is_psd(a)? || !is_psd(b)? {
        return Err(MatrixError::NotPsd);
    }
    Ok(())
}

/// Greatest lower bound of positive semidefinite classes: `A + B`.
pub fn psd_meet<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    require_psd_pair(a, b)?;
    Ok(a.add(b))
}

/// Least upper bound of positive semidefinite classes: the parallel sum.
pub fn psd_join<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    parallel_sum(a, b)
}

/// `ker A`, which depends only on the class of `A`.
pub fn class_kernel<F: OrderedField>(a: &Matrix<F>) -> Subspace<F> {
    kernel(&with_rows(a))
}

/// `A □ B = ‖A‖∞‖B‖∞·Iₙ` for matrices with `n` columns each.
pub fn box_mult<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    require_same_cols(a, b)?;
    let n = a.cols();
    Ok(Matrix::identity(n).scale(&max_norm(a).mul(&max_norm(b))))
}
