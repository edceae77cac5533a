//! Elementary row operations and their matrices.

use std::fmt;

use crate::field::OrderedField;
use crate::matrix::Matrix;

/// An elementary matrix, identified by the row operation it performs when
/// multiplied from the left. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryOp<F> {
    /// `E_ij(α) = I + α·e_i e_jᵀ`: adds `α` times row `source` to row `target`.
    AddMultiple { target: usize, source: usize, alpha: F },
    /// `E_i(α)`: multiplies row `row` by the nonzero scalar `α`.
    Scale { row: usize, alpha: F },
    /// `P_ij`: exchanges two rows.
    Swap(usize, usize),
}

impl<F: OrderedField> ElementaryOp<F> {
    /// Bibounded iff the multiplier of an addition is bounded and the
    /// factor of a scaling is bibounded. Swaps always are.
    pub fn is_bibounded(&self) -> bool {
        match self {
            ElementaryOp::AddMultiple { target, source, alpha } => {
                target != source && alpha.is_bounded()
            }
            ElementaryOp::Scale { alpha, .. } => alpha.is_bibounded(),
            ElementaryOp::Swap(..) => true,
        }
    }

    /// Whether the operation is a well-formed invertible elementary matrix of size `n`.
    pub fn is_valid(&self, n: usize) -> bool {
        match self {
            ElementaryOp::AddMultiple { target, source, .. } => {
                *target < n && *source < n && target != source
            }
            ElementaryOp::Scale { row, alpha } => *row < n && !alpha.is_zero(),
            ElementaryOp::Swap(i, j) => *i < n && *j < n && i != j,
        }
    }

    pub fn matrix(&self, n: usize) -> Matrix<F> {
        self.apply(&Matrix::identity(n))
    }

    /// The product `op · m`.
    pub fn apply(&self, m: &Matrix<F>) -> Matrix<F> {
        let mut out = m.clone();
        self.apply_in_place(&mut out);
        out
    }

    pub fn apply_in_place(&self, m: &mut Matrix<F>) {
        match self {
            ElementaryOp::AddMultiple { target, source, alpha } => {
                for j in 0..m.cols() {
                    let v = m.get(*source, j).mul(alpha);
                    if !v.is_zero() {
                        let cur = m.get(*target, j).add(&v);
                        m.set(*target, j, cur);
                    }
                }
            }
            ElementaryOp::Scale { row, alpha } => {
                for x in m.row_mut(*row) {
                    *x = x.mul(alpha);
                }
            }
            ElementaryOp::Swap(i, j) => m.swap_rows(*i, *j),
        }
    }

    pub fn inverse(&self) -> ElementaryOp<F> {
        match self {
            ElementaryOp::AddMultiple { target, source, alpha } => ElementaryOp::AddMultiple {
                target: *target,
                source: *source,
                alpha: alpha.neg(),
            },
            ElementaryOp::Scale { row, alpha } => ElementaryOp::Scale {
                row: *row,
                alpha: alpha.inv().expect("scale factor is nonzero"),
            },
            ElementaryOp::Swap(i, j) => ElementaryOp::Swap(*i, *j),
        }
    }
}

/// `ops[0] · ops[1] · … · ops[k-1]` as an `n × n` matrix.
pub fn product<F: OrderedField>(ops: &[ElementaryOp<F>], n: usize) -> Matrix<F> {
    let mut m = Matrix::identity(n);
    for op in ops.iter().rev() {
        op.apply_in_place(&mut m);
    }
    m
}

/// Applies `ops` to `m` in order, so `ops[0]` acts first.
pub fn replay<F: OrderedField>(ops: &[ElementaryOp<F>], m: &Matrix<F>) -> Matrix<F> {
    let mut out = m.clone();
    for op in ops {
        op.apply_in_place(&mut out);
    }
    out
}

impl<F: fmt::Display> fmt::Display for ElementaryOp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryOp::AddMultiple { target, source, alpha } => {
                write!(f, "E_{},{}({})", target + 1, source + 1, alpha)
            }
            ElementaryOp::Scale { row, alpha } => write!(f, "E_{}({})", row + 1, alpha),
            ElementaryOp::Swap(i, j) => write!(f, "P_{},{}", i + 1, j + 1),
        }
    }
}
