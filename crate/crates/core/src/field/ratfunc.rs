use std::fmt;

use super::poly::Poly;
use super::{Backend, LaurentField, OrderedField, Rational, Valuation};

/// Element of `Q(t)` ordered with `t` a positive infinitesimal.
///
/// Normal form: `numerator / denominator` with the two coprime and the
/// lowest-order nonzero coefficient of the denominator equal to 1. The sign of
/// the element is then the sign of the numerator's lowest coefficient and the
/// valuation is a difference of orders at `t = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds `num / den` in normal form; `None` if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<RationalFunction> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(OrderedField::zero());
        }
        let common = num.ord().unwrap().min(den.ord().unwrap());
        let (mut num, mut den) = (num.shift_down(common), den.shift_down(common));
        if !num.is_constant() && !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let lowest = den.lowest().unwrap();
        if !lowest.is_one() {
            let s = lowest.inv().unwrap();
            num = num.scale(&s);
            den = den.scale(&s);
        }
        Some(RationalFunction { num, den })
    }

    /// `num / den` for coprime `num`, `den` with `den` nonzero.
    fn from_coprime(num: Poly, den: Poly) -> RationalFunction {
        if num.is_zero() {
            return OrderedField::zero();
        }
        let lowest = den.lowest().unwrap();
        if lowest.is_one() {
            return RationalFunction { num, den };
        }
        let s = lowest.inv().unwrap();
        RationalFunction {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> RationalFunction {
        Self::monomial(1)
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// True if the element is a Laurent polynomial, i.e. its denominator is a
    /// power of `t`.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn pow(&self, e: i64) -> Option<RationalFunction> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFunction::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = OrderedField::mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = OrderedField::mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    #[cfg(test)]
    pub(crate) fn is_normalized(&self) -> bool {
        if self.den.is_zero() {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        self.den.lowest().is_some_and(|c| c.is_one()) && self.num.gcd(&self.den).is_one()
    }

    fn orders(&self) -> Option<(usize, usize)> {
        Some((self.num.ord()?, self.den.ord()?))
    }
}

impl OrderedField for RationalFunction {
    const BACKEND: Backend = Backend::Qt;

    fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(Poly::constant(q.clone()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num);
            return Self::from_coprime(num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return rhs.add(self);
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self::from_coprime(num, self.den.mul(&rhs.den));
        }
        let (b, d) = (self.den.exact_div(&g), rhs.den.exact_div(&g));
        let num = self.num.mul(&d).add(&rhs.num.mul(&b));
        if num.is_zero() {
            return Self::zero();
        }
        let g2 = num.gcd(&g);
        if g2.is_one() {
            Self::from_coprime(num, b.mul(&rhs.den))
        } else {
            Self::from_coprime(num.exact_div(&g2), b.mul(&rhs.den).exact_div(&g2))
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        let cancel = |p: &Poly, q: &Poly| {
            let g = p.gcd(q);
            if g.is_one() {
                (p.clone(), q.clone())
            } else {
                (p.exact_div(&g), q.exact_div(&g))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::from_coprime(a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }

    fn signum(&self) -> i8 {
        match self.num.lowest() {
            None => 0,
            Some(c) => c.signum(),
        }
    }

    fn valuation(&self) -> Valuation {
        match self.orders() {
            None => Valuation::Infinity,
            Some((n, d)) => Valuation::Finite(n as i64 - d as i64),
        }
    }

    fn standard_part(&self) -> Option<Rational> {
        match self.valuation() {
            Valuation::Infinity => Some(Rational::zero()),
            Valuation::Finite(v) if v > 0 => Some(Rational::zero()),
            Valuation::Finite(0) => {
                let n = self.num.lowest().unwrap();
                let d = self.den.lowest().unwrap();
                Some(n.mul(&d.inv().unwrap()))
            }
            Valuation::Finite(_) => None,
        }
    }
}

impl LaurentField for RationalFunction {
    fn monomial(m: i64) -> Self {
        let k = m.unsigned_abs() as usize;
        let power = Poly::monomial(Rational::one(), k);
        if m >= 0 {
            Self::from_poly(power)
        } else {
            RationalFunction {
                num: Poly::one(),
                den: power,
            }
        }
    }

    fn unit_decompose(&self) -> Option<(Self, i64)> {
        let m = self.valuation().finite()?;
        let unit = self.mul(&Self::monomial(-m));
        debug_assert!(unit.is_bibounded());
        Some((unit, m))
    }

    fn truncate_below(&self, m: i64) -> Self {
        let v = match self.valuation() {
            Valuation::Infinity => return Self::zero(),
            Valuation::Finite(v) => v,
        };
        if m <= v {
            return Self::zero();
        }
        let (n_ord, d_ord) = self.orders().unwrap();
        let p = self.num.shift_down(n_ord);
        let q = self.den.shift_down(d_ord);
        // q(0) = 1 in normal form, so the power series quotient needs no division.
        debug_assert!(q.coeff(0).is_one());
        let terms = (m - v) as usize;
        let mut series: Vec<Rational> = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut s = p.coeff(k);
            for j in 1..=k.min(q.degree().unwrap_or(0)) {
                s = s.sub(&q.coeffs()[j].mul(&series[k - j]));
            }
            series.push(s);
        }
        let body = Poly::from_coeffs(series);
        if v >= 0 {
            Self::from_poly(body.shift_up(v as usize))
        } else {
            Self::new(body, Poly::monomial(Rational::one(), (-v) as usize)).unwrap()
        }
    }
}

fn nonzero_terms(p: &Poly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let simple_num = nonzero_terms(&self.num) == 1
            && self.num.lowest().is_some_and(Rational::is_integer);
        if simple_num {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if nonzero_terms(&self.den) == 1 {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn t() -> RationalFunction {
        RationalFunction::t()
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_i64(n)
    }

    #[test]
    fn arithmetic_matches_unreduced_quotients() {
        let xs = [
            rf(&[1], &[1, 1]),
            rf(&[2, 3], &[1, 2, 1]),
            rf(&[0, 1], &[1, -1]),
            rf(&[1, 1], &[1, 0, -1]),
            rf(&[3], &[0, 1, 1]),
            rf(&[-1, 0, 2], &[1]),
            c(0),
        ];
        for x in &xs {
            for y in &xs {
                let sum = x.add(y);
                let naive = RationalFunction::new(
                    x.num.mul(&y.den).add(&y.num.mul(&x.den)),
                    x.den.mul(&y.den),
                )
                .unwrap();
                assert_eq!(sum, naive, "{x} + {y}");
                assert!(sum.is_normalized());
                let prod = x.mul(y);
                let naive = RationalFunction::new(x.num.mul(&y.num), x.den.mul(&y.den)).unwrap();
                assert_eq!(prod, naive, "{x} · {y}");
                assert!(prod.is_normalized());
            }
        }
    }

    #[test]
    fn t_times_reciprocal_is_one() {
        assert!(t().mul(&RationalFunction::monomial(-1)).is_one());
    }

    #[test]
    fn reciprocal_minus_one() {
        // 1/(1+t) − 1 = −t/(1+t), checked against the hand-reduced form.
        let lhs = rf(&[1], &[1, 1]).sub(&c(1));
        assert_eq!(lhs, rf(&[0, -1], &[1, 1]));
        assert_eq!(lhs.to_string(), "-t/(1 + t)");
    }

    #[test]
    fn normal_form_scales_denominator() {
        let x = rf(&[4, 2], &[2, 0, 6]);
        assert_eq!(x.denom().lowest(), Some(&Rational::one()));
        assert_eq!(x, rf(&[2, 1], &[1, 0, 3]));
        let y = rf(&[0, 0, 3], &[0, 6]);
        assert_eq!(y, RationalFunction::from_poly(Poly::monomial(Rational::new(1.into(), 2.into()).unwrap(), 1)));
    }

    #[test]
    fn sign_follows_lowest_coefficient() {
        let eps = RationalFunction::from_rational(&Rational::new(1.into(), 1_000_000.into()).unwrap());
        assert_eq!(t().sub(&eps).signum(), -1);
        assert_eq!(rf(&[0, 0, 1], &[1, 1]).signum(), 1);
        assert_eq!(RationalFunction::zero().signum(), 0);
        assert_eq!(rf(&[1], &[0, -1]).signum(), -1);
    }

    #[test]
    fn valuations() {
        assert_eq!(rf(&[0, 0, 0, 1], &[2, 1]).valuation(), Valuation::Finite(3));
        assert_eq!(RationalFunction::zero().valuation(), Valuation::Infinity);
        let inv_t = RationalFunction::monomial(-1);
        assert!(!inv_t.is_bounded() && !inv_t.is_bibounded());
        assert!(t().is_bounded() && !t().is_bibounded());
        let x = c(3).add(&t());
        assert!(x.is_bounded() && x.is_bibounded());
    }

    #[test]
    fn unit_decomposition() {
        let two_t2 = c(2).mul(&t()).mul(&t());
        assert_eq!(two_t2.unit_decompose(), Some((c(2), 2)));
        let x = rf(&[0, 1], &[1, 1]);
        assert_eq!(x.unit_decompose(), Some((rf(&[1], &[1, 1]), 1)));
        assert_eq!(c(5).unit_decompose(), Some((c(5), 0)));
        assert_eq!(RationalFunction::zero().unit_decompose(), None);
    }

    #[test]
    fn truncation_examples() {
        // 1/(1 − t) = 1 + t + t^2 + ...
        assert_eq!(rf(&[1], &[1, -1]).truncate_below(2), c(1).add(&t()));
        assert_eq!(t().mul(&t()).mul(&t()).truncate_below(2), RationalFunction::zero());
        let x = RationalFunction::monomial(-1).add(&c(5));
        assert_eq!(x.truncate_below(1), x);
    }

    #[test]
    fn truncation_of_negative_valuation() {
        // 1/(t + t^2) = 1/t − 1 + t − ...
        let x = rf(&[1], &[0, 1, 1]);
        assert_eq!(x.truncate_below(1), RationalFunction::monomial(-1).sub(&c(1)));
    }

    #[test]
    fn standard_parts() {
        assert_eq!(rf(&[3, 1], &[2, 5]).standard_part(), Some(Rational::new(3.into(), 2.into()).unwrap()));
        assert_eq!(t().standard_part(), Some(Rational::zero()));
        assert_eq!(RationalFunction::monomial(-2).standard_part(), None);
    }

    #[test]
    fn powers() {
        assert_eq!(t().pow(-2), Some(RationalFunction::monomial(-2)));
        assert_eq!(c(1).add(&t()).pow(2).unwrap(), rf(&[1, 2, 1], &[1]));
        assert!(RationalFunction::zero().pow(-1).is_none());
    }
}
