//! Row echelon invariants of archimedean classes.
//!
//! QR with ℓ∞-normalized orthogonal columns, the staircase shape and pivot
//! valuations of the echelon factor, Gaussian elimination restricted to
//! bibounded row operations, and the canonical echelon representative over
//! Laurent-type fields.

use std::collections::BTreeSet;
use std::fmt;

use crate::archimedean::{bibounded_obstruction, with_rows};
use crate::elementary::{replay, ElementaryOp};
use crate::error::{MatrixError, Result};
use crate::field::{LaurentField, OrderedField, Valuation};
use crate::linalg::orthogonal_basis;
use crate::matrix::{dot, Matrix};

/// `A = Q·R` with orthogonal ℓ∞-normalized columns in `Q` and `R` a row
/// echelon form with positive pivots and no zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrPair<F> {
    pub q: Matrix<F>,
    pub r: Matrix<F>,
}

pub fn qr_decompose<F: OrderedField>(a: &Matrix<F>) -> Result<QrPair<F>> {
    let basis = orthogonal_basis(a);
    let rank = basis.vectors.len();
    if rank == 0 {
        return Err(MatrixError::ZeroMatrix);
    }
    let q = Matrix::from_fn(a.rows(), rank, |i, j| basis.vectors[j][i].clone());
    let norms: Vec<F> = basis
        .vectors
        .iter()
        .map(|w| dot(w, w).inv().unwrap())
        .collect();
    let columns: Vec<Vec<F>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let r = Matrix::from_fn(rank, a.cols(), |i, j| {
        if j < basis.source_columns[i] {
            F::zero()
        } else {
            dot(&columns[j], &basis.vectors[i]).mul(&norms[i])
        }
    });
    debug_assert_eq!(q.mul(&r), *a);
    Ok(QrPair { q, r })
}

/// Column of the leading entry of each row, `None` for zero rows.
fn leading_columns<F: OrderedField>(c: &Matrix<F>) -> Vec<Option<usize>> {
    (0..c.rows())
        .map(|i| c.row(i).iter().position(|x| !x.is_zero()))
        .collect()
}

pub fn is_row_echelon<F: OrderedField>(c: &Matrix<F>) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for lead in leading_columns(c) {
        match lead {
            None => seen_zero = true,
            Some(k) => {
                if seen_zero || last.is_some_and(|l| k <= l) {
                    return false;
                }
                last = Some(k);
            }
        }
    }
    true
}

/// The staircase of a row echelon form. Indices are zero-based; `Display`
/// prints them one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Shape {
    /// `(i, j)` with `j ≥ k_i` for every nonzero row `i`.
    pub positions: BTreeSet<(usize, usize)>,
    /// `(i, k_i)` for every nonzero row.
    pub pivots: Vec<(usize, usize)>,
}

impl Shape {
    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_subset(&self, other: &Shape) -> bool {
        self.positions.is_subset(&other.positions)
    }

    pub fn union(&self, other: &Shape) -> BTreeSet<(usize, usize)> {
        self.positions.union(&other.positions).copied().collect()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, j)) in self.positions.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", i + 1, j + 1)?;
        }
        f.write_str("}")
    }
}

pub fn shape_of<F: OrderedField>(c: &Matrix<F>) -> Result<Shape> {
    if !is_row_echelon(c) {
        return Err(MatrixError::NotEchelon);
    }
    let mut shape = Shape::default();
    for (i, lead) in leading_columns(c).into_iter().enumerate() {
        let Some(k) = lead else { break };
        shape.pivots.push((i, k));
        shape.positions.extend((k..c.cols()).map(|j| (i, j)));
    }
    Ok(shape)
}

/// Shape of the QR echelon factor together with the valuations of its
/// pivots. The zero class has the empty descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClassDescriptor {
    pub shape: Shape,
    pub pivot_valuations: Vec<Valuation>,
}

fn echelon_descriptor<F: OrderedField>(c: &Matrix<F>) -> Result<ClassDescriptor> {
    let shape = shape_of(c)?;
    let pivot_valuations = shape
        .pivots
        .iter()
        .map(|&(i, k)| c.get(i, k).valuation())
        .collect();
    Ok(ClassDescriptor {
        shape,
        pivot_valuations,
    })
}

pub fn class_descriptor<F: OrderedField>(a: &Matrix<F>) -> ClassDescriptor {
    match qr_decompose(a) {
        Ok(qr) => echelon_descriptor(&qr.r).expect("R is a row echelon form"),
        Err(_) => ClassDescriptor::default(),
    }
}

/// Gaussian elimination that pivots on an entry of largest absolute value
/// (smallest row index among ties), so every row operation is bibounded.
/// Replaying `ops` on `a` yields the returned echelon form.
pub fn bibounded_gauss<F: OrderedField>(a: &Matrix<F>) -> (Vec<ElementaryOp<F>>, Matrix<F>) {
    let mut m = a.clone();
    let mut ops = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let mut best: Option<(usize, F)> = None;
        for i in row..m.rows() {
            let x = m.get(i, col).abs();
            if !x.is_zero() && best.as_ref().is_none_or(|(_, b)| x.cmp_field(b).is_gt()) {
                best = Some((i, x));
            }
        }
        let Some((p, _)) = best else { continue };
        if p != row {
            let op = ElementaryOp::Swap(row, p);
            op.apply_in_place(&mut m);
            ops.push(op);
        }
        let pivot_inv = m.get(row, col).inv().unwrap();
        for i in row + 1..m.rows() {
            let x = m.get(i, col);
            if x.is_zero() {
                continue;
            }
            let op = ElementaryOp::AddMultiple {
                target: i,
                source: row,
                alpha: x.mul(&pivot_inv).neg(),
            };
            op.apply_in_place(&mut m);
            ops.push(op);
        }
        row += 1;
    }
    (ops, m)
}

/// Bibounded elementary matrices whose product, in list order, is `a`.
pub fn elementary_factorization<F: OrderedField>(a: &Matrix<F>) -> Result<Vec<ElementaryOp<F>>> {
    a.require_square()?;
    if bibounded_obstruction(a).is_some() {
        return Err(MatrixError::NotBibounded);
    }
    let n = a.rows();
    let (mut reduce, mut e) = bibounded_gauss(a);
    for i in 0..n {
        let d = e.get(i, i);
        debug_assert!(d.is_bibounded());
        if !d.is_one() {
            let op = ElementaryOp::Scale {
                row: i,
                alpha: d.inv().unwrap(),
            };
            op.apply_in_place(&mut e);
            reduce.push(op);
        }
    }
    for j in (1..n).rev() {
        for i in (0..j).rev() {
            let u = e.get(i, j);
            if u.is_zero() {
                continue;
            }
            let op = ElementaryOp::AddMultiple {
                target: i,
                source: j,
                alpha: u.neg(),
            };
            op.apply_in_place(&mut e);
            reduce.push(op);
        }
    }
    debug_assert_eq!(e, Matrix::identity(n));
    // reduce_k ⋯ reduce_1 · A = I, so A = reduce_1⁻¹ ⋯ reduce_k⁻¹.
    Ok(reduce.iter().map(ElementaryOp::inverse).collect())
}

/// Decides `A ≽ₙ B` for an echelon form `B` by bibounded elimination on the
/// stack `[B; A]`.
///
/// The stack always satisfies `B ≽ₙ [B; A]`, so `A ≽ₙ B` holds exactly when
/// elimination returns a form of the class of `B`. Two echelon forms related
/// by a bounded multiplier are equivalent iff their shapes and pivot
/// valuations agree, which is what is compared.
pub fn succeq_via_gauss<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(MatrixError::ColumnMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    let target = echelon_descriptor(b)?;
    let stacked = with_rows(b).stack(&with_rows(a))?;
    let (_, e) = bibounded_gauss(&stacked);
    Ok(echelon_descriptor(&e)? == target)
}

/// The canonical echelon representative of the class of `a`: pivots are
/// monomials `t^{m_i}` and every entry above a pivot has only Laurent terms
/// of exponent below `m_i`.
pub fn archimedean_canonical_form<F: LaurentField>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let mut r = qr_decompose(a)?.r;
    let pivots = shape_of(&r)?.pivots;
    let mut exponents = Vec::with_capacity(pivots.len());
    for &(i, k) in &pivots {
        let (unit, m) = r.get(i, k).unit_decompose().expect("pivots are nonzero");
        ElementaryOp::Scale {
            row: i,
            alpha: unit.inv().unwrap(),
        }
        .apply_in_place(&mut r);
        exponents.push(m);
    }
    for &(i, k) in &pivots {
        let m = exponents[i];
        let shift = F::monomial(-m);
        for j in (0..i).rev() {
            let c = r.get(j, k);
            let q = c.sub(&c.truncate_below(m)).mul(&shift);
            if q.is_zero() {
                continue;
            }
            debug_assert!(q.is_bounded());
            ElementaryOp::AddMultiple {
                target: j,
                source: i,
                alpha: q.neg(),
            }
            .apply_in_place(&mut r);
        }
    }
    Ok(r)
}

/// Whether `c` has the syntactic form of a canonical representative.
pub fn is_canonical_form<F: LaurentField>(c: &Matrix<F>) -> bool {
    let Ok(shape) = shape_of(c) else {
        return false;
    };
    if shape.pivots.len() != c.rows() || c.rows() == 0 {
        return false;
    }
    shape.pivots.iter().all(|&(i, k)| {
        let Some((unit, m)) = c.get(i, k).unit_decompose() else {
            return false;
        };
        unit.is_one() && (0..i).all(|j| c.get(j, k).truncate_below(m) == *c.get(j, k))
    })
}

/// Replays the bibounded elimination of `a`; exposed for checking.
pub fn gauss_replay_matches<F: OrderedField>(a: &Matrix<F>) -> bool {
    let (ops, e) = bibounded_gauss(a);
    ops.iter().all(ElementaryOp::is_bibounded) && replay(&ops, a) == e && is_row_echelon(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archimedean::sim;
    use crate::elementary::product;
    use crate::field::{Rational, RationalFunction};

    type Q = Rational;
    type Qt = RationalFunction;

    fn t() -> Qt {
        Qt::t()
    }

    fn tp(k: i64) -> Qt {
        Qt::monomial(k)
    }

    fn qt(rows: Vec<Vec<Qt>>) -> Matrix<Qt> {
        let cols = rows[0].len();
        Matrix::from_rows(cols, rows).unwrap()
    }

    fn c(n: i64) -> Qt {
        Qt::from_i64(n)
    }

    #[test]
    fn qr_examples() {
        let a = qt(vec![vec![t(), c(1)], vec![c(0), tp(2)]]);
        let qr = qr_decompose(&a).unwrap();
        assert_eq!(qr.q, Matrix::identity(2));
        assert_eq!(qr.r, a);

        let b = Matrix::<Q>::from_i64(&[&[0, 1], &[0, 0]]);
        let qr = qr_decompose(&b).unwrap();
        assert_eq!(qr.q, Matrix::from_i64(&[&[1], &[0]]));
        assert_eq!(qr.r, Matrix::from_i64(&[&[0, 1]]));

        let v = Matrix::<Q>::from_i64(&[&[3], &[4]]);
        let qr = qr_decompose(&v).unwrap();
        assert_eq!(qr.q, Matrix::from_rows(1, vec![vec![Q::new(3.into(), 4.into()).unwrap()], vec![Q::from(1)]]).unwrap());
        assert_eq!(qr.r, Matrix::from_i64(&[&[4]]));

        assert_eq!(qr_decompose(&Matrix::<Q>::zeros(2, 2)), Err(MatrixError::ZeroMatrix));
    }

    #[test]
    fn shape_examples() {
        let s = shape_of(&Matrix::<Q>::identity(2)).unwrap();
        assert_eq!(s.positions, BTreeSet::from([(0, 0), (0, 1), (1, 1)]));
        assert_eq!(s.pivots, vec![(0, 0), (1, 1)]);
        assert_eq!(s.to_string(), "{(1, 1), (1, 2), (2, 2)}");

        let s = shape_of(&Matrix::<Q>::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(s.positions, BTreeSet::from([(0, 1)]));
        assert_eq!(s.pivots, vec![(0, 1)]);

        assert!(shape_of(&Matrix::<Q>::zeros(2, 3)).unwrap().is_empty());
        assert_eq!(
            shape_of(&Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]])),
            Err(MatrixError::NotEchelon)
        );
    }

    #[test]
    fn descriptor_examples() {
        let d = class_descriptor(&Matrix::<Q>::identity(2));
        assert_eq!(d.pivot_valuations, vec![Valuation::Finite(0); 2]);
        let a = qt(vec![vec![t(), c(1)], vec![c(0), tp(2)]]);
        assert_eq!(
            class_descriptor(&a).pivot_valuations,
            vec![Valuation::Finite(1), Valuation::Finite(2)]
        );
        assert_eq!(class_descriptor(&Matrix::<Q>::zeros(1, 2)), ClassDescriptor::default());
    }

    #[test]
    fn gauss_prefers_largest_pivot() {
        let a = qt(vec![vec![t(), c(0)], vec![c(1), c(0)]]);
        let (ops, e) = bibounded_gauss(&a);
        assert_eq!(e, qt(vec![vec![c(1), c(0)], vec![c(0), c(0)]]));
        assert_eq!(ops[0], ElementaryOp::Swap(0, 1));
        assert!(ops.iter().all(ElementaryOp::is_bibounded));
        assert!(gauss_replay_matches(&a));

        let (ops, _) = bibounded_gauss(&Matrix::<Q>::from_i64(&[&[2, 1], &[0, 3]]));
        assert!(ops.is_empty());
    }

    #[test]
    fn factorization_examples() {
        assert!(elementary_factorization(&Matrix::<Q>::identity(2)).unwrap().is_empty());
        let p = Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(elementary_factorization(&p).unwrap(), vec![ElementaryOp::Swap(0, 1)]);
        let a = Matrix::from_rows(
            2,
            vec![
                vec![Q::from(2), Q::from(10)],
                vec![Q::from(0), Q::new(1.into(), 3.into()).unwrap()],
            ],
        )
        .unwrap();
        let ops = elementary_factorization(&a).unwrap();
        assert_eq!(product(&ops, 2), a);
        assert!(ops.iter().all(ElementaryOp::is_bibounded));
        let d = Matrix::diagonal(&[c(1), t()]);
        assert_eq!(elementary_factorization(&d), Err(MatrixError::NotBibounded));
    }

    #[test]
    fn gauss_decider_examples() {
        let b = qt(vec![vec![c(1), t()], vec![c(0), c(2)]]);
        assert!(succeq_via_gauss(&b, &b).unwrap());
        let tb = b.scale(&t());
        assert!(succeq_via_gauss(&tb, &b).unwrap());
        assert!(!succeq_via_gauss(&b, &tb).unwrap());
        let a = Matrix::<Q>::from_i64(&[&[0, 1], &[0, 0]]);
        let at = a.transpose();
        assert!(!succeq_via_gauss(&at, &a).unwrap());
        assert!(!succeq_via_gauss(&a, &Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap());
        assert_eq!(succeq_via_gauss(&a, &at), Err(MatrixError::NotEchelon));
    }

    #[test]
    fn canonical_form_examples() {
        let a = qt(vec![vec![t(), tp(3)], vec![c(0), tp(2)]]);
        let canon = archimedean_canonical_form(&a).unwrap();
        assert_eq!(canon, qt(vec![vec![t(), c(0)], vec![c(0), tp(2)]]));
        assert!(is_canonical_form(&canon) && sim(&canon, &a).unwrap().holds);

        let b = qt(vec![vec![t().mul(&c(2)), c(2)], vec![c(0), tp(2).mul(&c(3))]]);
        let canon = archimedean_canonical_form(&b).unwrap();
        assert_eq!(canon, qt(vec![vec![t(), c(1)], vec![c(0), tp(2)]]));

        let i = Matrix::<Qt>::identity(3);
        assert_eq!(archimedean_canonical_form(&i).unwrap(), i);
        assert_eq!(archimedean_canonical_form(&Matrix::<Qt>::zeros(2, 2)), Err(MatrixError::ZeroMatrix));
    }
}
