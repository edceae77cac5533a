use std::fmt;

use crate::error::FieldError;

use super::{LaurentField, OrderedField, Rational, RationalFunction, Valuation};

/// Field backend tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// The rationals.
    Q,
    /// Rational functions in a positive infinitesimal `t`.
    Qt,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Q => "Q",
            Backend::Qt => "Q(t)",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Backend {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Backend, FieldError> {
        match s.trim() {
            "Q" => Ok(Backend::Q),
            "Qt" | "Q(t)" => Ok(Backend::Qt),
            other => Err(FieldError::UnknownBackend(other.to_string())),
        }
    }
}

/// A dynamically tagged field element.
///
/// Arithmetic is closed within one backend; mixing backends is reported as
/// [`FieldError::BackendMismatch`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Q(Rational),
    Qt(RationalFunction),
}

macro_rules! dispatch_binary {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (FieldElement::Q($x), FieldElement::Q($y)) => Ok(FieldElement::Q($body)),
            (FieldElement::Qt($x), FieldElement::Qt($y)) => Ok(FieldElement::Qt($body)),
            (a, b) => Err(FieldError::BackendMismatch {
                left: a.backend(),
                right: b.backend(),
            }),
        }
    };
}

impl FieldElement {
    pub fn backend(&self) -> Backend {
        match self {
            FieldElement::Q(_) => Backend::Q,
            FieldElement::Qt(_) => Backend::Qt,
        }
    }

    pub fn zero(backend: Backend) -> FieldElement {
        match backend {
            Backend::Q => FieldElement::Q(Rational::zero()),
            Backend::Qt => FieldElement::Qt(RationalFunction::zero()),
        }
    }

    pub fn from_i64(backend: Backend, n: i64) -> FieldElement {
        match backend {
            Backend::Q => FieldElement::Q(n.into()),
            Backend::Qt => FieldElement::Qt(RationalFunction::from_i64(n)),
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        dispatch_binary!(self, rhs, |x, y| x.add(y))
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        dispatch_binary!(self, rhs, |x, y| x.sub(y))
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        dispatch_binary!(self, rhs, |x, y| x.mul(y))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.backend() == rhs.backend() && rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        dispatch_binary!(self, rhs, |x, y| x.div(y).unwrap())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Q(x) => FieldElement::Q(x.neg()),
            FieldElement::Qt(x) => FieldElement::Qt(x.neg()),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        match self {
            FieldElement::Q(x) => {
                let base = if e < 0 {
                    x.inv().ok_or(FieldError::DivisionByZero)?
                } else {
                    x.clone()
                };
                let mut acc = Rational::one();
                for _ in 0..e.unsigned_abs() {
                    acc = acc.mul(&base);
                }
                Ok(FieldElement::Q(acc))
            }
            FieldElement::Qt(x) => x
                .pow(e)
                .map(FieldElement::Qt)
                .ok_or(FieldError::DivisionByZero),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(x) => x.is_zero(),
            FieldElement::Qt(x) => x.is_zero(),
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            FieldElement::Q(x) => x.signum(),
            FieldElement::Qt(x) => x.signum(),
        }
    }

    pub fn natural_valuation(&self) -> Valuation {
        match self {
            FieldElement::Q(x) => x.valuation(),
            FieldElement::Qt(x) => x.valuation(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.natural_valuation() >= Valuation::Finite(0)
    }

    pub fn is_bibounded(&self) -> bool {
        self.natural_valuation() == Valuation::Finite(0)
    }

    /// `a = unit · t^m` with `unit` bibounded. Over `Q` returns `(a, 0)`.
    pub fn unit_decompose(&self) -> Result<(FieldElement, Valuation), FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        match self {
            FieldElement::Q(_) => Ok((self.clone(), Valuation::Finite(0))),
            FieldElement::Qt(x) => {
                let (u, m) = x.unit_decompose().ok_or(FieldError::ZeroInput)?;
                Ok((FieldElement::Qt(u), Valuation::Finite(m)))
            }
        }
    }

    /// Laurent truncation; only defined over `Q(t)`. An infinite bound keeps
    /// every term.
    pub fn truncate_below(&self, m: Valuation) -> Result<FieldElement, FieldError> {
        match self {
            FieldElement::Q(_) => Err(FieldError::BackendMismatch {
                left: Backend::Q,
                right: Backend::Qt,
            }),
            FieldElement::Qt(x) => Ok(FieldElement::Qt(match m {
                Valuation::Finite(m) => x.truncate_below(m),
                Valuation::Infinity => x.clone(),
            })),
        }
    }

    pub fn as_q(&self) -> Option<&Rational> {
        match self {
            FieldElement::Q(x) => Some(x),
            FieldElement::Qt(_) => None,
        }
    }

    pub fn as_qt(&self) -> Option<&RationalFunction> {
        match self {
            FieldElement::Qt(x) => Some(x),
            FieldElement::Q(_) => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Q(x) => fmt::Display::fmt(x, f),
            FieldElement::Qt(x) => fmt::Display::fmt(x, f),
        }
    }
}

/// Conversion from the tagged element to a concrete backend type.
pub trait FromElement: Sized {
    fn from_element(e: &FieldElement) -> Option<Self>;
    fn into_element(self) -> FieldElement;
}

impl FromElement for Rational {
    fn from_element(e: &FieldElement) -> Option<Self> {
        e.as_q().cloned()
    }
    fn into_element(self) -> FieldElement {
        FieldElement::Q(self)
    }
}

impl FromElement for RationalFunction {
    fn from_element(e: &FieldElement) -> Option<Self> {
        e.as_qt().cloned()
    }
    fn into_element(self) -> FieldElement {
        FieldElement::Qt(self)
    }
}
