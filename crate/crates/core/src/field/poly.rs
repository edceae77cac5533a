use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{OrderedField, Rational};

/// Dense univariate polynomial in `t` with rational coefficients, stored
/// lowest degree first with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(c: Rational, k: usize) -> Poly {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0`.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The coefficient at [`Poly::ord`].
    pub fn lowest(&self) -> Option<&Rational> {
        self.ord().map(|k| &self.coeffs[k])
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(OrderedField::neg).collect(),
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Convolve over Z and divide once per coefficient.
        let (a, da) = integer_form(self);
        let (b, db) = integer_form(rhs);
        let mut acc = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Poly::from_coeffs(
            acc.into_iter()
                .map(|c| Rational::new(c, den.clone()).unwrap())
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `t^k`; the low `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(Rational::is_zero));
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[d].inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] = rem[k + j].sub(&c.mul(b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; `divisor` must divide `self`.
    ///
    /// Runs over `Z`: with `divisor = κ·G` for primitive integral `G`, Gauss's
    /// lemma makes `G` divide the integral form of `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let d = divisor.degree().expect("polynomial division by zero");
        if self.is_zero() {
            return Poly::zero();
        }
        let (mut rem, den) = integer_form(self);
        let g = primitive_integer_part(divisor);
        let lead = &g[d];
        if rem.len() <= d {
            debug_assert!(false, "inexact polynomial division");
            return Poly::zero();
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + d];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            debug_assert!(r.is_zero(), "inexact polynomial division");
            for (j, b) in g.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        // self / divisor = (Q / den) / κ with κ = lc(divisor) / lc(G).
        let kappa = divisor.coeffs[d].mul(&Rational::from_integer(lead.clone()).inv().unwrap());
        let factor = kappa.mul(&Rational::from_integer(den)).inv().unwrap();
        Poly::from_coeffs(
            quot.into_iter()
                .map(|c| Rational::from_integer(c).mul(&factor))
                .collect(),
        )
    }

    /// Greatest common divisor, normalized to have leading coefficient 1.
    ///
    /// Computed over `Z[t]` with a primitive remainder sequence to keep
    /// coefficient growth in check.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        if self.is_constant() || rhs.is_constant() {
            return Poly::one();
        }
        let a = primitive_integer_part(self);
        let b = primitive_integer_part(rhs);
        if coprime_mod_p(&a, &b) {
            return Poly::one();
        }
        let g = if a.len() >= b.len() {
            integer_gcd(a, b)
        } else {
            integer_gcd(b, a)
        };
        let lead = Rational::from_integer(g.last().unwrap().clone());
        Poly::from_coeffs(g.into_iter().map(Rational::from_integer).collect())
            .scale(&lead.inv().unwrap())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => Poly::zero(),
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc.mul(x).add(c))
    }
}

/// `(q, d)` with `p = q / d` and `q` integral, `d` the lcm of the
/// coefficient denominators.
fn integer_form(p: &Poly) -> (Vec<BigInt>, BigInt) {
    if p.coeffs.iter().all(Rational::is_integer) {
        return (p.coeffs.iter().map(|c| c.numer().clone()).collect(), BigInt::one());
    }
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (ints, lcm)
}

fn primitive_integer_part(p: &Poly) -> Vec<BigInt> {
    primitive(integer_form(p).0)
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return p;
    }
    let sign_fix = p.last().unwrap().is_negative();
    for c in p.iter_mut() {
        *c = &*c / &content;
        if sign_fix {
            *c = -&*c;
        }
    }
    p
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn reduce_mod(p: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(PRIME);
    p.iter()
        .map(|c| {
            let r = c.mod_floor(&m);
            r.iter_u64_digits().next().unwrap_or(0)
        })
        .collect()
}

/// Degree of `gcd(a mod p, b mod p)` over `GF(p)`.
fn gcd_degree_mod_p(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = pow_mod(b[db], PRIME - 2);
        while a.len() > db {
            let da = a.len() - 1;
            let c = mul_mod(a[da], inv);
            let shift = da - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + PRIME - mul_mod(c, bj)) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// A cheap sufficient test for coprimality of primitive integer polynomials:
/// when neither leading coefficient vanishes mod `p`, a common factor over
/// `Z` survives reduction with its degree intact.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let (ra, rb) = (reduce_mod(a), reduce_mod(b));
    if ra.last() == Some(&0) || rb.last() == Some(&0) {
        return false;
    }
    gcd_degree_mod_p(ra, rb) == 0
}

/// Pseudo-remainder of `a` by `b` over `Z`: `lc(b)^(deg a − deg b + 1) · a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lead;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

fn integer_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    primitive(a)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_laurent_terms(f, self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `Σ c_k t^k` in increasing exponent order using the entry grammar.
pub(crate) fn write_laurent_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let magnitude = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if k == 0 {
            write!(f, "{magnitude}")?;
            continue;
        }
        if !magnitude.is_one() {
            write!(f, "{magnitude}*")?;
        }
        match k {
            1 => f.write_str("t")?,
            _ => write!(f, "t^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (1 + t)(2 − t) and (1 + t)(3 + t^2)
        let a = p(&[1, 1]).mul(&p(&[2, -1]));
        let b = p(&[1, 1]).mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 1]).gcd(&p(&[3, 1])), Poly::one());
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let half = Rational::new(1.into(), 2.into()).unwrap();
        let a = Poly::from_coeffs(vec![half.clone(), Rational::one()]).mul(&p(&[0, 3]));
        let b = Poly::from_coeffs(vec![half, Rational::one()]).mul(&p(&[5, 0, 7]));
        assert_eq!(a.gcd(&b), Poly::from_coeffs(vec![Rational::new(1.into(), 2.into()).unwrap(), Rational::one()]));
    }

    #[test]
    fn division_round_trips() {
        let a = p(&[3, 0, 2, 5]);
        let b = p(&[1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn display_in_increasing_order() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "1 - t + 2*t^3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn ord_and_lowest() {
        let a = p(&[0, 0, -3, 1]);
        assert_eq!(a.ord(), Some(2));
        assert_eq!(a.lowest(), Some(&Rational::from(-3)));
        assert_eq!(Poly::zero().ord(), None);
    }
}
