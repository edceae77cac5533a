//! Ordered field backends.
//!
//! Two effective backends are provided: the rationals [`Rational`] (an
//! archimedean field) and the rational functions [`RationalFunction`] in a
//! positive infinitesimal `t` (value group `Z`). Both implement
//! [`OrderedField`], so every matrix algorithm in the crate is generic over
//! the backend. [`FieldElement`] is the dynamically tagged wrapper used at the
//! I/O boundary.

mod element;
mod poly;
mod ratfunc;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

pub use element::{Backend, FieldElement, FromElement};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

/// An element of `Γ ∪ {∞}` for the value groups realized here (`Z` or `{0}`).
///
/// `Infinity` is strictly greater than every finite value, which the derived
/// ordering provides through variant order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("infinity"),
        }
    }
}

/// Exact ordered field arithmetic.
///
/// Arithmetic methods take references and return fresh values; all values are
/// kept in a canonical normal form, so `==` is equality of field elements.
pub trait OrderedField:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `-1`, `0` or `+1`.
    fn signum(&self) -> i8;

    /// Natural valuation: the archimedean class of the element.
    fn valuation(&self) -> Valuation;

    /// The rational number infinitely close to a bounded element (the
    /// constant term of its Laurent expansion). `None` if unbounded.
    fn standard_part(&self) -> Option<Rational>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Total order of the field: `a ≤ b` iff `sign(b − a) ≥ 0`.
    fn cmp_field(&self, rhs: &Self) -> Ordering {
        match self.sub(rhs).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    fn is_bounded(&self) -> bool {
        self.valuation() >= Valuation::Finite(0)
    }

    fn is_bibounded(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }
}

/// Backends that embed into Laurent series in `t` and support truncation.
pub trait LaurentField: OrderedField {
    /// `t^m` for any integer `m`.
    fn monomial(m: i64) -> Self;

    /// Splits a nonzero element as `unit · t^m` with `unit` bibounded.
    fn unit_decompose(&self) -> Option<(Self, i64)>;

    /// All terms of the Laurent expansion at `t = 0` with exponent `< m`.
    fn truncate_below(&self, m: i64) -> Self;
}
