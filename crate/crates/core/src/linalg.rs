//! Exact dense linear algebra over an ordered field backend.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{MatrixError, Result};
use crate::field::{OrderedField, Rational};
use crate::matrix::{dot, Matrix};

/// Reduced row echelon form, first-nonzero pivoting. Returns the reduced
/// matrix (zero rows at the bottom) and the pivot column of each nonzero row.
pub fn rref<F: OrderedField>(a: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m.get(row, col).inv().unwrap();
        if !inv.is_one() {
            for x in m.row_mut(row)[col..].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m.row(row).to_vec();
        for i in 0..m.rows() {
            if i == row {
                continue;
            }
            let f = m.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in m.row_mut(i)[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank<F: OrderedField>(a: &Matrix<F>) -> usize {
    rref(a).1.len()
}

/// A linear subspace of `Fⁿ`, stored as the nonzero rows of a reduced row
/// echelon basis so that equality of subspaces is equality of the structs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: OrderedField> Subspace<F> {
    /// The span of the rows of `rows`.
    pub fn row_space(rows: &Matrix<F>) -> Subspace<F> {
        let (r, pivots) = rref(rows);
        Subspace {
            ambient: rows.cols(),
            basis: r.row_block(0, pivots.len()),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Subspace<F> {
        let m = Matrix::from_rows(ambient, vectors.to_vec()).expect("vectors of ambient length");
        Subspace::row_space(&m)
    }

    pub fn zero(ambient: usize) -> Subspace<F> {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Subspace<F> {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as the rows of a reduced row echelon matrix.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.iter().all(F::is_zero) {
            return true;
        }
        let row = Matrix::from_rows(self.ambient, vec![v.to_vec()]).unwrap();
        rank(&self.basis.stack(&row).unwrap()) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        Subspace::row_space(&self.basis.stack(&other.basis).unwrap())
    }

    /// `U⊥` with respect to the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace<F> {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        kernel(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        let constraints = self
            .orthogonal_complement()
            .basis
            .stack(&other.orthogonal_complement().basis)
            .unwrap();
        if constraints.rows() == 0 {
            return Subspace::full(self.ambient);
        }
        kernel(&constraints)
    }

    /// Orthogonal projection onto the subspace.
    pub fn projection(&self) -> Matrix<F> {
        if self.dim() == 0 {
            return Matrix::zeros(self.ambient, self.ambient);
        }
        let k = self.basis.transpose();
        let g = inverse(&self.basis.mul(&k)).expect("basis rows are independent");
        k.mul(&g).mul(&self.basis)
    }
}

/// `{x : Ax = 0}`.
pub fn kernel<F: OrderedField>(a: &Matrix<F>) -> Subspace<F> {
    let n = a.cols();
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<F>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}

/// `‖A‖∞ = max |a_ij|`.
pub fn max_norm<F: OrderedField>(a: &Matrix<F>) -> F {
    max_abs(a.entries())
}

fn max_abs<'a, F: OrderedField>(xs: impl Iterator<Item = &'a F>) -> F {
    let mut best = F::zero();
    for x in xs {
        let ax = x.abs();
        if ax.cmp_field(&best).is_gt() {
            best = ax;
        }
    }
    best
}

/// Orthogonal basis of the column space produced column by column: dependent
/// columns are skipped, the others are orthogonalized against the vectors
/// already chosen and divided by their ℓ∞ norm.
#[derive(Clone, Debug)]
pub struct OrthogonalBasis<F> {
    /// The ℓ∞-normalized orthogonal vectors `w_i`.
    pub vectors: Vec<Vec<F>>,
    /// Column `k_i` of the source matrix that produced `w_i`.
    pub source_columns: Vec<usize>,
}

pub fn orthogonal_basis<F: OrderedField>(a: &Matrix<F>) -> OrthogonalBasis<F> {
    let mut vectors: Vec<Vec<F>> = Vec::new();
    let mut norms: Vec<F> = Vec::new();
    let mut source_columns = Vec::new();
    for j in 0..a.cols() {
        let v = a.column(j);
        let mut w = v.clone();
        for (u, uu) in vectors.iter().zip(&norms) {
            let c = dot(&v, u).mul(&uu.inv().unwrap());
            if c.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(u) {
                *x = x.sub(&c.mul(y));
            }
        }
        if w.iter().all(F::is_zero) {
            continue;
        }
        let scale = max_abs(w.iter()).inv().unwrap();
        let w: Vec<F> = w.iter().map(|x| x.mul(&scale)).collect();
        norms.push(dot(&w, &w));
        vectors.push(w);
        source_columns.push(j);
    }
    OrthogonalBasis {
        vectors,
        source_columns,
    }
}

/// Orthogonal ℓ∞-normalized vectors spanning the column space of `a`, as the
/// columns of the returned list.
pub fn gram_schmidt<F: OrderedField>(a: &Matrix<F>) -> Vec<Vec<F>> {
    orthogonal_basis(a).vectors
}

/// `A = Pᵀ D P` with `P` invertible and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceDiag<F> {
    pub p: Matrix<F>,
    pub d: Matrix<F>,
}

/// Symmetric elimination producing `M` invertible and `D` diagonal with
/// `M A Mᵀ = D`.
pub(crate) fn symmetric_elimination<F: OrderedField>(a: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    let n = a.rows();
    let mut s = a.clone();
    let mut m = Matrix::<F>::identity(n);
    for k in 0..n {
        if s.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !s.get(j, j).is_zero()) {
                swap_symmetric(&mut s, k, j);
                m.swap_rows(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !s.get(k, j).is_zero()) {
                // s_kk becomes 2 s_kj + s_jj = 2 s_kj ≠ 0.
                add_symmetric(&mut s, k, j, &F::one());
                add_row(&mut m, k, j, &F::one());
            } else {
                continue;
            }
        }
        let pivot_inv = s.get(k, k).inv().unwrap();
        for i in k + 1..n {
            let f = s.get(i, k).mul(&pivot_inv);
            if f.is_zero() {
                continue;
            }
            let neg = f.neg();
            add_symmetric(&mut s, i, k, &neg);
            add_row(&mut m, i, k, &neg);
        }
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || s.get(i, j).is_zero())));
    (m, s)
}

/// Row `target += f · row source` and the same on columns.
fn add_symmetric<F: OrderedField>(s: &mut Matrix<F>, target: usize, source: usize, f: &F) {
    add_row(s, target, source, f);
    for i in 0..s.rows() {
        let v = s.get(i, source).mul(f);
        if !v.is_zero() {
            let cur = s.get(i, target).add(&v);
            s.set(i, target, cur);
        }
    }
}

fn add_row<F: OrderedField>(m: &mut Matrix<F>, target: usize, source: usize, f: &F) {
    for j in 0..m.cols() {
        let v = m.get(source, j).mul(f);
        if !v.is_zero() {
            let cur = m.get(target, j).add(&v);
            m.set(target, j, cur);
        }
    }
}

fn swap_symmetric<F: OrderedField>(s: &mut Matrix<F>, a: usize, b: usize) {
    s.swap_rows(a, b);
    for i in 0..s.rows() {
        let x = s.get(i, a).clone();
        let y = s.get(i, b).clone();
        s.set(i, a, y);
        s.set(i, b, x);
    }
}

pub fn congruence_diagonalize<F: OrderedField>(a: &Matrix<F>) -> Result<CongruenceDiag<F>> {
    if !a.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let (m, d) = symmetric_elimination(a);
    let p = inverse(&m)?.transpose();
    Ok(CongruenceDiag { p, d })
}

/// Decides `A ∈ Sₙ⁺` by symmetric elimination with positive pivots.
pub fn is_psd<F: OrderedField>(a: &Matrix<F>) -> Result<bool> {
    if !a.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let mut s = a.clone();
    let n = s.rows();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if active.iter().any(|&i| s.get(i, i).is_negative()) {
            return Ok(false);
        }
        // A zero diagonal entry with a nonzero row has a negative 2×2 minor.
        let zero_with_row = active.iter().any(|&i| {
            s.get(i, i).is_zero() && active.iter().any(|&j| !s.get(i, j).is_zero())
        });
        if zero_with_row {
            return Ok(false);
        }
        let Some(pos) = active.iter().position(|&i| s.get(i, i).is_positive()) else {
            return Ok(true);
        };
        let p = active.remove(pos);
        let pivot_inv = s.get(p, p).inv().unwrap();
        for &i in &active {
            let f = s.get(i, p).mul(&pivot_inv);
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = f.mul(s.get(p, j));
                if !v.is_zero() {
                    let cur = s.get(i, j).sub(&v);
                    s.set(i, j, cur);
                }
            }
        }
    }
}

/// `A ≤ₙ B` in the positive semidefinite order.
pub fn psd_leq<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    a.require_same_size(b)?;
    is_psd(&b.sub(a))
}

/// For positive semidefinite `a`, `b`: a natural number `r` with `a ≤ₙ r·b`,
/// or `None` when no such `r` exists.
///
/// Works in the basis diagonalizing `b`: with `M b Mᵀ = diag(e)`, the
/// condition becomes `M a Mᵀ ≤ r·diag(e)`, which holds for some `r` iff the
/// rows of `M a Mᵀ` vanish where `e_i = 0` and `Σ (M a Mᵀ)_ii / e_i` is bounded.
pub fn loewner_multiplier<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<BigInt>> {
    a.require_same_size(b)?;
    if !is_psd(a)? || !is_psd(b)? {
        return Err(MatrixError::NotPsd);
    }
    let (m, e) = symmetric_elimination(b);
    let conj = m.mul(a).mul(&m.transpose());
    let mut ratio_sum = F::zero();
    for i in 0..a.rows() {
        let ei = e.get(i, i);
        let ci = conj.get(i, i);
        if ei.is_zero() {
            if !ci.is_zero() {
                return Ok(None);
            }
        } else {
            ratio_sum = ratio_sum.add(&ci.mul(&ei.inv().unwrap()));
        }
    }
    let Some(standard) = ratio_sum.standard_part() else {
        return Ok(None);
    };
    let r = standard.floor() + BigInt::one();
    debug_assert!(psd_leq(a, &b.scale(&F::from_rational(&Rational::from_integer(r.clone())))).unwrap());
    Ok(Some(r))
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: OrderedField>(a: &Matrix<F>) -> Result<F> {
    a.require_square()?;
    let mut m = a.clone();
    let n = m.rows();
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
            return Ok(F::zero());
        };
        if p != k {
            m.swap_rows(p, k);
            det = det.neg();
        }
        let pivot = m.get(k, k).clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().unwrap();
        for i in k + 1..n {
            let f = m.get(i, k).mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = f.mul(m.get(k, j));
                if !v.is_zero() {
                    let cur = m.get(i, j).sub(&v);
                    m.set(i, j, cur);
                }
            }
        }
    }
    Ok(det)
}

/// Inverse by Gauss–Jordan elimination.
pub fn inverse<F: OrderedField>(a: &Matrix<F>) -> Result<Matrix<F>> {
    a.require_square()?;
    let n = a.rows();
    let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(MatrixError::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

/// Moore–Penrose inverse of a symmetric matrix: the inverse of `C`
/// restricted to `im C`, extended by zero on `ker C`.
pub fn moore_penrose_symmetric<F: OrderedField>(c: &Matrix<F>) -> Result<Matrix<F>> {
    if !c.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    if let Ok(inv) = inverse(c) {
        return Ok(inv);
    }
    Ok(moore_penrose_general(c))
}

/// Rank factorization `B = F·G`: `F` holds the pivot columns of `B` and `G`
/// the nonzero rows of its reduced echelon form. `None` when `B = 0`.
pub(crate) struct RankFactorization<F: OrderedField> {
    pub f: Matrix<F>,
    pub g: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub(crate) fn rank_factorization<F: OrderedField>(b: &Matrix<F>) -> Option<RankFactorization<F>> {
    let (reduced, pivots) = rref(b);
    if pivots.is_empty() {
        return None;
    }
    let f = Matrix::from_fn(b.rows(), pivots.len(), |i, k| b.get(i, pivots[k]).clone());
    let g = Matrix::from_fn(pivots.len(), b.cols(), |i, j| reduced.get(i, j).clone());
    Some(RankFactorization { f, g, pivots })
}

/// `F⁺ = (FᵀF)⁻¹Fᵀ` for `F` of full column rank.
pub(crate) fn left_inverse<F: OrderedField>(f: &Matrix<F>) -> Matrix<F> {
    inverse(&f.gram()).expect("full column rank").mul(&f.transpose())
}

/// `B⁺` for `B ∈ M_{l,n}`, an `n × l` matrix.
///
/// With `B = FG` a rank factorization, `B⁺ = Gᵀ(GGᵀ)⁻¹(FᵀF)⁻¹Fᵀ`, so only
/// `rank B`-sized systems are inverted.
pub fn moore_penrose_general<F: OrderedField>(b: &Matrix<F>) -> Matrix<F> {
    let Some(RankFactorization { f, g, .. }) = rank_factorization(b) else {
        return Matrix::zeros(b.cols(), b.rows());
    };
    let gt = g.transpose();
    let left = inverse(&g.mul(&gt)).expect("G has full row rank");
    gt.mul(&left).mul(&left_inverse(&f))
}

/// Parallel sum `A:B = A(A+B)⁺B` of positive semidefinite matrices.
pub fn parallel_sum<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.require_same_size(b)?;
    if !is_psd(a)? || !is_psd(b)? {
        return Err(MatrixError::NotPsd);
    }
    Ok(parallel_sum_unchecked(a, b))
}

pub(crate) fn parallel_sum_unchecked<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let pinv = moore_penrose_symmetric(&a.add(b)).expect("sum of symmetric matrices");
    a.mul(&pinv).mul(b)
}

/// All `k × k` minors, ordered lexicographically by (row set, column set).
pub fn minors<F: OrderedField>(a: &Matrix<F>, k: usize) -> Result<Vec<F>> {
    if k == 0 || k > a.rows().min(a.cols()) {
        return Err(MatrixError::BadSize {
            k,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let col_sets: Vec<Vec<usize>> = (0..a.cols()).combinations(k).collect();
    let mut out = Vec::new();
    for rows in (0..a.rows()).combinations(k) {
        for cols in &col_sets {
            let sub = Matrix::from_fn(k, k, |i, j| a.get(rows[i], cols[j]).clone());
            out.push(determinant(&sub)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{LaurentField, RationalFunction};

    type Q = Rational;
    type Qt = RationalFunction;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into()).unwrap()
    }

    fn t() -> Qt {
        Qt::t()
    }

    fn tp(k: i64) -> Qt {
        Qt::monomial(k)
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&Matrix::<Q>::from_i64(&[&[1, 1]]));
        assert_eq!(k, Subspace::span(2, &[vec![Q::from(1), Q::from(-1)]]));
        assert_eq!(rank(&Matrix::<Q>::zeros(2, 2)), 0);
        let a = Matrix::from_rows(2, vec![vec![t(), Qt::one()], vec![tp(2), t()]]).unwrap();
        assert_eq!(kernel(&a), Subspace::span(2, &[vec![Qt::one(), t().neg()]]));
    }

    #[test]
    fn subspace_lattice_operations() {
        let x = Subspace::<Q>::span(3, &[vec![1.into(), 0.into(), 0.into()]]);
        let y = Subspace::<Q>::span(3, &[vec![0.into(), 1.into(), 0.into()]]);
        let xy = Subspace::<Q>::span(3, &[vec![1.into(), 1.into(), 0.into()]]);
        assert_eq!(x.sum(&y).dim(), 2);
        assert_eq!(x.intersection(&y), Subspace::zero(3));
        assert!(xy.is_subspace_of(&x.sum(&y)));
        assert_eq!(x.sum(&y).intersection(&xy), xy);
        assert_eq!(Subspace::<Q>::zero(3).orthogonal_complement(), Subspace::full(3));
    }

    #[test]
    fn max_norm_examples() {
        assert_eq!(max_norm(&Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]])), Q::from(1));
        let a = Matrix::from_rows(2, vec![vec![t(), tp(2)], vec![tp(3), t()]]).unwrap();
        assert_eq!(max_norm(&a), t());
        assert_eq!(max_norm(&Matrix::<Q>::from_i64(&[&[-3, 2]])), Q::from(3));
    }

    #[test]
    fn gram_schmidt_examples() {
        let a = Matrix::<Q>::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            gram_schmidt(&a),
            vec![vec![Q::from(1), Q::from(0)], vec![Q::from(0), Q::from(1)]]
        );
        let b = Matrix::<Q>::from_i64(&[&[3], &[4]]);
        assert_eq!(gram_schmidt(&b), vec![vec![q(3, 4), Q::from(1)]]);
        let c = Matrix::from_rows(2, vec![vec![t(), Qt::one()], vec![Qt::zero(), tp(2)]]).unwrap();
        assert_eq!(
            gram_schmidt(&c),
            vec![vec![Qt::one(), Qt::zero()], vec![Qt::zero(), Qt::one()]]
        );
    }

    #[test]
    fn congruence_examples() {
        let d = Matrix::<Q>::diagonal(&[2.into(), 1.into()]);
        let cd = congruence_diagonalize(&d).unwrap();
        assert_eq!(cd.p, Matrix::identity(2));
        assert_eq!(cd.d, d);

        let swap = Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]]);
        let cd = congruence_diagonalize(&swap).unwrap();
        let signs: Vec<i8> = (0..2).map(|i| cd.d.get(i, i).signum()).sorted().collect();
        assert_eq!(signs, vec![-1, 1]);
        assert_eq!(cd.p.transpose().mul(&cd.d).mul(&cd.p), swap);

        let a = Matrix::<Q>::from_i64(&[&[2, 1], &[1, 1]]);
        let cd = congruence_diagonalize(&a).unwrap();
        assert_eq!(cd.d, Matrix::diagonal(&[2.into(), q(1, 2)]));
        assert_eq!(cd.p.transpose().mul(&cd.d).mul(&cd.p), a);

        let asym = Matrix::<Q>::from_i64(&[&[1, 2], &[0, 1]]);
        assert_eq!(congruence_diagonalize(&asym), Err(MatrixError::NotSymmetric));
    }

    #[test]
    fn psd_examples() {
        assert!(!is_psd(&Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]])).unwrap());
        let d = Matrix::diagonal(&[t(), Qt::one()]);
        assert!(is_psd(&d).unwrap());
        assert!(is_psd(&Matrix::<Q>::from_i64(&[&[2, 1], &[1, 1]])).unwrap());
        assert!(!is_psd(&Matrix::<Q>::from_i64(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(is_psd(&Matrix::<Q>::from_i64(&[&[1, 1], &[1, 1]])).unwrap());
        assert!(is_psd(&Matrix::<Q>::zeros(3, 3)).unwrap());
        // det = −t³ < 0
        let a = Matrix::from_rows(2, vec![vec![tp(2), t()], vec![t(), Qt::one().sub(&t())]]).unwrap();
        assert!(!is_psd(&a).unwrap());
    }

    #[test]
    fn psd_order_examples() {
        let a = Matrix::<Q>::from_i64(&[&[2, 1], &[1, 1]]);
        assert!(psd_leq(&a, &a).unwrap());
        assert!(psd_leq(
            &Matrix::<Q>::diagonal(&[1.into(), 0.into()]),
            &Matrix::<Q>::diagonal(&[2.into(), 1.into()])
        )
        .unwrap());
        assert!(psd_leq(&a, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn moore_penrose_examples() {
        let d = Matrix::<Q>::diagonal(&[2.into(), 0.into()]);
        assert_eq!(moore_penrose_symmetric(&d).unwrap(), Matrix::diagonal(&[q(1, 2), 0.into()]));
        let a = Matrix::<Q>::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(moore_penrose_symmetric(&a).unwrap(), inverse(&a).unwrap());
        let ones = Matrix::<Q>::from_i64(&[&[1, 1], &[1, 1]]);
        let quarter = q(1, 4);
        assert_eq!(
            moore_penrose_symmetric(&ones).unwrap(),
            Matrix::from_fn(2, 2, |_, _| quarter.clone())
        );

        assert_eq!(moore_penrose_general(&Matrix::<Q>::identity(2)), Matrix::identity(2));
        assert_eq!(
            moore_penrose_general(&Matrix::<Q>::from_i64(&[&[1, 0]])),
            Matrix::from_i64(&[&[1], &[0]])
        );
        let b = Matrix::from_rows(2, vec![vec![t(), Qt::zero()], vec![Qt::zero(), Qt::zero()]]).unwrap();
        let bp = moore_penrose_general(&b);
        assert_eq!(
            bp,
            Matrix::from_rows(2, vec![vec![tp(-1), Qt::zero()], vec![Qt::zero(), Qt::zero()]]).unwrap()
        );
        assert_eq!(b.mul(&bp).mul(&b), b);
    }

    #[test]
    fn pseudo_inverse_matches_kernel_projection_formula() {
        // C⁺ = (C + P)⁻¹ − P with P the projection onto ker C.
        let cases = [
            Matrix::<Q>::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 3]]),
            Matrix::<Q>::from_i64(&[&[2, -1, 1], &[-1, 2, 1], &[1, 1, 2]]),
            Matrix::<Q>::from_i64(&[&[0, 0], &[0, 5]]),
        ];
        for c in &cases {
            let p = kernel(c).projection();
            let expected = inverse(&c.add(&p)).unwrap().sub(&p);
            assert_eq!(moore_penrose_symmetric(c).unwrap(), expected, "{c}");
        }
    }

    #[test]
    fn parallel_sum_examples() {
        let i = Matrix::<Q>::identity(2);
        assert_eq!(parallel_sum(&i, &i).unwrap(), i.scale(&q(1, 2)));
        let e1 = Matrix::<Q>::diagonal(&[1.into(), 0.into()]);
        let e2 = Matrix::<Q>::diagonal(&[0.into(), 1.into()]);
        assert_eq!(parallel_sum(&e1, &e2).unwrap(), Matrix::zeros(2, 2));
        let a = Matrix::<Q>::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(parallel_sum(&a, &Matrix::zeros(2, 2)).unwrap(), Matrix::zeros(2, 2));
        let indefinite = Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(parallel_sum(&a, &indefinite), Err(MatrixError::NotPsd));
    }

    #[test]
    fn minors_examples() {
        assert_eq!(minors(&Matrix::<Q>::identity(2), 2).unwrap(), vec![Q::from(1)]);
        assert_eq!(
            minors(&Matrix::<Q>::from_i64(&[&[5, 7]]), 1).unwrap(),
            vec![Q::from(5), Q::from(7)]
        );
        let a = Matrix::from_rows(
            2,
            vec![
                vec![Qt::one(), Qt::zero()],
                vec![Qt::zero(), t()],
                vec![Qt::one(), Qt::one()],
            ],
        )
        .unwrap();
        assert_eq!(minors(&a, 2).unwrap(), vec![t(), Qt::one(), t().neg()]);
        assert!(matches!(minors(&a, 3), Err(MatrixError::BadSize { .. })));
    }

    #[test]
    fn loewner_multiplier_examples() {
        let i = Matrix::<Qt>::identity(2);
        let ti = i.scale(&t());
        // tI ≤ 1·I but I ≤ r·tI fails for every r.
        assert!(loewner_multiplier(&ti, &i).unwrap().is_some());
        assert_eq!(loewner_multiplier(&i, &ti).unwrap(), None);
        let e1 = Matrix::<Q>::diagonal(&[1.into(), 0.into()]);
        assert_eq!(loewner_multiplier(&Matrix::identity(2), &e1).unwrap(), None);
        assert_eq!(loewner_multiplier(&e1, &Matrix::identity(2)).unwrap(), Some(BigInt::from(2)));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = Matrix::<Q>::from_i64(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        assert_eq!(determinant(&a).unwrap(), Q::from(-1));
        assert_eq!(a.mul(&inverse(&a).unwrap()), Matrix::identity(3));
        assert_eq!(inverse(&Matrix::<Q>::from_i64(&[&[1, 1], &[1, 1]])), Err(MatrixError::Singular));
    }
}
