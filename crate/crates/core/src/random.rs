//! Seeded random matrices of small height for the law suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elementary::{product, ElementaryOp};
use crate::field::{LaurentField, OrderedField, Poly, Rational, RationalFunction};
use crate::matrix::Matrix;

/// The generator for case `case` of a run seeded with `seed`. Each case has
/// its own stream, so results do not depend on evaluation order.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Backends that can produce random elements.
pub trait Sample: OrderedField {
    /// A random element, possibly zero, of small height.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// A random element of nonnegative valuation.
    fn sample_bounded<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// A random element of valuation zero.
    fn sample_bibounded<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Rational {
    let n = rng.random_range(-height..=height);
    let d = rng.random_range(1..=height.clamp(1, 4));
    Rational::new(n.into(), d.into()).unwrap()
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Rational {
    loop {
        let q = small_rational(rng, height);
        if !q.is_zero() {
            return q;
        }
    }
}

impl Sample for Rational {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng, 5)
    }

    fn sample_bounded<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng, 3)
    }

    fn sample_bibounded<R: Rng + ?Sized>(rng: &mut R) -> Self {
        nonzero_rational(rng, 3)
    }
}

/// `unit · t^k` where `unit` has a nonzero constant term: a polynomial of
/// degree ≤ 1 with small coefficients, occasionally divided by `1 ± t`.
fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> RationalFunction {
    let c0 = if rng.random_bool(0.8) {
        Rational::from(*[-3, -2, -1, 1, 2, 3].get(rng.random_range(0..6)).unwrap())
    } else {
        nonzero_rational(rng, 3)
    };
    let c1 = if rng.random_bool(0.5) {
        Rational::from(rng.random_range(-2..=2))
    } else {
        Rational::zero()
    };
    let num = Poly::from_coeffs(vec![c0, c1]);
    let den = if rng.random_bool(0.1) {
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        Poly::from_coeffs(vec![Rational::one(), Rational::from(sign)])
    } else {
        Poly::one()
    };
    RationalFunction::new(num, den).unwrap()
}

impl Sample for RationalFunction {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.random_bool(0.15) {
            return Self::zero();
        }
        let k = rng.random_range(-1..=2);
        sample_unit(rng).mul(&Self::monomial(k))
    }

    fn sample_bounded<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.random_bool(0.15) {
            return Self::zero();
        }
        let k = rng.random_range(0..=2);
        sample_unit(rng).mul(&Self::monomial(k))
    }

    fn sample_bibounded<R: Rng + ?Sized>(rng: &mut R) -> Self {
        sample_unit(rng)
    }
}

/// A random `rows × cols` matrix: independent sparse entries, or with
/// probability 1/4 a product through a smaller inner dimension so that rank
/// deficiency is common.
pub fn random_matrix<F: Sample, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<F> {
    let inner_max = rows.min(cols);
    if inner_max > 1 && rng.random_bool(0.25) {
        let k = rng.random_range(1..inner_max);
        let left = sparse_matrix::<F, R>(rng, rows, k, 0.2);
        let right = sparse_matrix::<F, R>(rng, k, cols, 0.2);
        return left.mul(&right);
    }
    sparse_matrix(rng, rows, cols, 0.25)
}

pub fn sparse_matrix<F: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    zero_prob: f64,
) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.random_bool(zero_prob) {
            F::zero()
        } else {
            F::sample(rng)
        }
    })
}

/// A random matrix that is not zero.
pub fn random_nonzero_matrix<F: Sample, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<F> {
    loop {
        let m = random_matrix(rng, rows, cols);
        if !m.is_zero() {
            return m;
        }
    }
}

/// A matrix with bounded entries.
pub fn random_bounded_matrix<F: Sample, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.random_bool(0.3) {
            F::zero()
        } else {
            F::sample_bounded(rng)
        }
    })
}

/// Random bibounded elementary operations on `n` rows.
pub fn random_bibounded_ops<F: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
) -> Vec<ElementaryOp<F>> {
    (0..count)
        .map(|_| {
            let i = rng.random_range(0..n);
            match rng.random_range(0..3) {
                0 if n > 1 => {
                    let j = (i + rng.random_range(1..n)) % n;
                    ElementaryOp::Swap(i, j)
                }
                1 => ElementaryOp::Scale {
                    row: i,
                    alpha: F::sample_bibounded(rng),
                },
                _ if n > 1 => {
                    let j = (i + rng.random_range(1..n)) % n;
                    ElementaryOp::AddMultiple {
                        target: i,
                        source: j,
                        alpha: F::sample_bounded(rng),
                    }
                }
                _ => ElementaryOp::Scale {
                    row: i,
                    alpha: F::sample_bibounded(rng),
                },
            }
        })
        .collect()
}

/// A product of a few random bibounded elementary matrices.
pub fn random_bibounded_matrix<F: Sample, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<F> {
    let count = rng.random_range(1..=2 * n + 1);
    product(&random_bibounded_ops::<F, R>(rng, n, count), n)
}

/// `XᵀX` for a random `X` with between 1 and `n + 1` rows.
pub fn random_psd<F: Sample, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<F> {
    let rows = rng.random_range(1..=n + 1);
    random_matrix::<F, R>(rng, rows, n).gram()
}

/// A random row echelon form with nonzero pivots and no zero rows.
pub fn random_echelon<F: Sample, R: Rng + ?Sized>(rng: &mut R, rank: usize, cols: usize) -> Matrix<F> {
    let rank = rank.clamp(1, cols);
    let mut pivots: Vec<usize> = rand::seq::index::sample(rng, cols, rank).into_vec();
    pivots.sort_unstable();
    Matrix::from_fn(rank, cols, |i, j| {
        if j == pivots[i] {
            loop {
                let x = F::sample(rng);
                if !x.is_zero() {
                    break x;
                }
            }
        } else if j > pivots[i] && rng.random_bool(0.6) {
            F::sample(rng)
        } else {
            F::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archimedean::is_bibounded_matrix;
    use crate::linalg::is_psd;

    #[test]
    fn generators_respect_their_contracts() {
        for case in 0..50 {
            let mut rng = case_rng(7, case);
            assert!(RationalFunction::sample_bounded(&mut rng).is_bounded());
            assert!(RationalFunction::sample_bibounded(&mut rng).is_bibounded());
            let q: Matrix<RationalFunction> = random_bibounded_matrix(&mut rng, 3);
            assert!(is_bibounded_matrix(&q));
            let p: Matrix<Rational> = random_psd(&mut rng, 3);
            assert!(is_psd(&p).unwrap());
            let e: Matrix<Rational> = random_echelon(&mut rng, 2, 4);
            assert!(crate::echelon::is_row_echelon(&e) && e.rows() == 2);
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Matrix<RationalFunction> = random_matrix(&mut case_rng(1, 9), 3, 3);
        let b: Matrix<RationalFunction> = random_matrix(&mut case_rng(1, 9), 3, 3);
        assert_eq!(a, b);
    }
}
