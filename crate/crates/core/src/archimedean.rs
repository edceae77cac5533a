//! Archimedean comparison of matrices.
//!
//! `A ≽ₙ B` holds when `AᵀA ≤ₙ r·BᵀB` for some natural number `r`. Every
//! positive verdict carries a [`Certificate`] that [`verify_certificate`]
//! re-checks with plain linear algebra.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::elementary::{product, ElementaryOp};
use crate::error::{MatrixError, Result};
use crate::field::{OrderedField, Rational, Valuation};
use crate::linalg::{
    is_psd, left_inverse, loewner_multiplier, max_norm, minors, rank_factorization,
};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<F> {
    /// `A = C·B` with `C` bounded and `r·BᵀB − AᵀA` positive semidefinite.
    BoundedMultiplier { c: Matrix<F>, r: BigInt },
    /// `A = α·B` with `α` bounded.
    ScalarMultiplier(F),
    /// `A = E₁⋯E_k·B` with every `E_i` a bibounded elementary matrix.
    ElementaryFactors(Vec<ElementaryOp<F>>),
    /// Certificates for `A ≽ B` and for `B ≽ A`.
    Pair(Box<Certificate<F>>, Box<Certificate<F>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVerdict<F> {
    pub holds: bool,
    pub certificate: Option<Certificate<F>>,
}

impl<F> RelationVerdict<F> {
    fn yes(certificate: Certificate<F>) -> Self {
        RelationVerdict {
            holds: true,
            certificate: Some(certificate),
        }
    }

    fn no() -> Self {
        RelationVerdict {
            holds: false,
            certificate: None,
        }
    }
}

fn require_same_cols<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<()> {
    if a.cols() != b.cols() {
        return Err(MatrixError::ColumnMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    Ok(())
}

fn require_square_pair<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<()> {
    a.require_square()?;
    a.require_same_size(b)
}

/// A matrix with at least one row in the same class as `m`.
pub(crate) fn with_rows<F: OrderedField>(m: &Matrix<F>) -> std::borrow::Cow<'_, Matrix<F>> {
    if m.rows() == 0 {
        std::borrow::Cow::Owned(Matrix::zeros(1, m.cols()))
    } else {
        std::borrow::Cow::Borrowed(m)
    }
}

fn sum_of_squares<F: OrderedField>(m: &Matrix<F>) -> F {
    m.entries().fold(F::zero(), |acc, x| acc.add(&x.mul(x)))
}

fn natural<F: OrderedField>(r: &BigInt) -> F {
    F::from_rational(&Rational::from_integer(r.clone()))
}

/// Whether `r·BᵀB − AᵀA` is positive semidefinite.
fn multiplier_bounds<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>, r: &BigInt) -> bool {
    let lhs = b.gram().scale(&natural(r)).sub(&a.gram());
    is_psd(&lhs).expect("difference of Gram matrices is symmetric")
}

/// Decides `A ≽ₙ B` for matrices with the same number of columns.
///
/// Requires `ker B ⊆ ker A`, then takes `C = A·B⁺`, which satisfies `A = C·B`
/// exactly, and checks that every entry of `C` is bounded. The multiplier `r`
/// is the least natural number above the standard part of `s = tr(CᵀC)`, so
/// `r > s` and `AᵀA = BᵀCᵀCB ≤ s·BᵀB ≤ r·BᵀB`.
pub fn succeq<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<RelationVerdict<F>> {
    require_same_cols(a, b)?;
    let (a, b) = (with_rows(a), with_rows(b));
    if a.is_zero() {
        return Ok(RelationVerdict::yes(Certificate::BoundedMultiplier {
            c: Matrix::zeros(a.rows(), b.rows()),
            r: BigInt::one(),
        }));
    }
    if b.is_zero() {
        return Ok(RelationVerdict::no());
    }
    let rf = rank_factorization(&b).expect("B is nonzero");
    // Rows of A lie in the row space of B iff A = X·G for the pivot columns X.
    let x = Matrix::from_fn(a.rows(), rf.pivots.len(), |i, k| a.get(i, rf.pivots[k]).clone());
    if x.mul(&rf.g) != *a {
        return Ok(RelationVerdict::no());
    }
    // A·B⁺ = X·G·G⁺·F⁺ = X·F⁺.
    let c = x.mul(&left_inverse(&rf.f));
    if !c.entries().all(F::is_bounded) {
        return Ok(RelationVerdict::no());
    }
    let s = sum_of_squares(&c);
    let s0 = s.standard_part().expect("trace of CᵀC is bounded");
    let mut r = (s0.floor() + BigInt::one()).max(BigInt::one());
    while !natural::<F>(&r).sub(&s).is_positive() {
        r *= 2;
    }
    Ok(RelationVerdict::yes(Certificate::BoundedMultiplier { c, r }))
}

/// Decides `A ≽ₙ B` straight from the definition, comparing `AᵀA` with
/// multiples of `BᵀB`. Returns the least suitable `r` found by the
/// diagonalization bound, or `None`.
pub fn succeq_by_gram<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<BigInt>> {
    require_same_cols(a, b)?;
    loewner_multiplier(&a.gram(), &b.gram())
}

/// `A ∼ₙ B`: both `A ≽ₙ B` and `B ≽ₙ A`.
pub fn sim<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<RelationVerdict<F>> {
    let ab = succeq(a, b)?;
    if !ab.holds {
        return Ok(RelationVerdict::no());
    }
    let ba = succeq(b, a)?;
    match (ab.certificate, ba.certificate) {
        (Some(x), Some(y)) if ba.holds => {
            Ok(RelationVerdict::yes(Certificate::Pair(Box::new(x), Box::new(y))))
        }
        _ => Ok(RelationVerdict::no()),
    }
}

/// `A ⊒ₙ B` on positive semidefinite matrices: `A ≤ₙ r·B` for some natural `r`.
pub fn psd_succeq<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    Ok(loewner_multiplier(a, b)?.is_some())
}

/// `A ≈ₙ B` on positive semidefinite matrices.
pub fn psd_approx<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    Ok(psd_succeq(a, b)? && psd_succeq(b, a)?)
}

pub fn is_bounded_matrix<F: OrderedField>(a: &Matrix<F>) -> bool {
    a.entries().all(F::is_bounded)
}

/// Why a matrix fails to be bibounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiboundedObstruction {
    /// An entry of negative valuation (zero-based position).
    UnboundedEntry { row: usize, col: usize, valuation: Valuation },
    /// Fewer rows than columns, so the rank is deficient.
    TooFewRows { rows: usize, cols: usize },
    /// Every maximal minor is infinitesimal; the smallest minor valuation.
    NoBiboundedMinor { min_valuation: Valuation },
}

/// `None` if `A` is bibounded, otherwise the reason it is not.
pub fn bibounded_obstruction<F: OrderedField>(a: &Matrix<F>) -> Option<BiboundedObstruction> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if !x.is_bounded() {
                return Some(BiboundedObstruction::UnboundedEntry {
                    row: i,
                    col: j,
                    valuation: x.valuation(),
                });
            }
        }
    }
    if a.rows() < a.cols() {
        return Some(BiboundedObstruction::TooFewRows {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let ms = minors(a, a.cols()).expect("rows ≥ cols ≥ 1");
    if ms.iter().any(F::is_bibounded) {
        return None;
    }
    let min_valuation = ms.iter().map(F::valuation).min().unwrap_or(Valuation::Infinity);
    Some(BiboundedObstruction::NoBiboundedMinor { min_valuation })
}

/// Bounded with some bibounded maximal minor; equivalently `A ∼ₙ Iₙ`.
pub fn is_bibounded_matrix<F: OrderedField>(a: &Matrix<F>) -> bool {
    bibounded_obstruction(a).is_none()
}

/// Decides `A ≫ₙ B` through the scalar characterization `A = αB` with `α`
/// bounded.
pub fn gg<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<RelationVerdict<F>> {
    require_square_pair(a, b)?;
    let Some(pos) = b.entries().position(|x| !x.is_zero()) else {
        return Ok(if a.is_zero() {
            RelationVerdict::yes(Certificate::ScalarMultiplier(F::zero()))
        } else {
            RelationVerdict::no()
        });
    };
    let (i, j) = (pos / b.cols(), pos % b.cols());
    let alpha = a.get(i, j).div(b.get(i, j)).unwrap();
    if alpha.is_bounded() && b.scale(&alpha) == *a {
        Ok(RelationVerdict::yes(Certificate::ScalarMultiplier(alpha)))
    } else {
        Ok(RelationVerdict::no())
    }
}

/// `A ≡ₙ B`: `A ≫ₙ B` and `B ≫ₙ A`.
///
/// Decided by comparing ℓ∞-normalized forms up to a common sign together with
/// the valuations of the norms; this is the statement that `A = αB` with `α`
/// bibounded.
pub fn equiv<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    require_square_pair(a, b)?;
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let (na, nb) = (max_norm(a), max_norm(b));
    if na.valuation() != nb.valuation() {
        return Ok(false);
    }
    let ua = a.scale(&na.inv().unwrap());
    let ub = b.scale(&nb.inv().unwrap());
    Ok(ua == ub || ua == ub.neg())
}

/// `w(A) = v(‖A‖∞)`, the smallest valuation of an entry.
pub fn w_valuation<F: OrderedField>(a: &Matrix<F>) -> Valuation {
    max_norm(a).valuation()
}

/// Re-checks a certificate for the relation it claims between `a` and `b`:
/// `A ≽ B` for multipliers, `A ≫ B` for scalars, `A ∼ B` for elementary
/// factors and pairs.
pub fn verify_certificate<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>, cert: &Certificate<F>) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let (a, b) = (with_rows(a), with_rows(b));
    match cert {
        Certificate::BoundedMultiplier { c, r } => {
            c.rows() == a.rows()
                && c.cols() == b.rows()
                && !r.is_negative()
                && c.mul(&b) == *a
                && is_bounded_matrix(c)
                && multiplier_bounds(&a, &b, r)
        }
        Certificate::ScalarMultiplier(alpha) => {
            a.rows() == b.rows() && alpha.is_bounded() && b.scale(alpha) == *a
        }
        Certificate::ElementaryFactors(ops) => {
            let n = a.rows();
            b.rows() == n
                && ops.iter().all(|op| op.is_valid(n) && op.is_bibounded())
                && product(ops, n).mul(&b) == *a
        }
        Certificate::Pair(ab, ba) => verify_certificate(&a, &b, ab) && verify_certificate(&b, &a, ba),
    }
}
