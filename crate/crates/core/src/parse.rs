//! Entry-expression grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | power)*      juxtaposition multiplies
//! unary := ('-' | '+') unary | power
//! power := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom  := integer | 't' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. The symbol `t` is only valid over `Q(t)`.
//! Every value printed by the `Display` impls of the field types re-parses to
//! the identical element.

use num_bigint::BigInt;

use crate::error::FieldError;
use crate::field::{Backend, FieldElement, LaurentField, RationalFunction};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, FieldError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                out.push((start, Token::Int(n)));
                continue;
            }
            b't' => Token::T,
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            _ => {
                return Err(FieldError::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", src[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    backend: Backend,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, FieldError> {
        Err(FieldError::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|e| match e {
                        FieldError::DivisionByZero => FieldError::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        },
                        e => e,
                    })?;
                }
                Some(Token::Int(_)) | Some(Token::T) | Some(Token::LParen) => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement, FieldError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement, FieldError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let parenthesized = self.peek() == Some(&Token::LParen);
        if parenthesized {
            self.bump();
        }
        let negative = self.peek() == Some(&Token::Minus);
        if negative {
            self.bump();
        }
        let e = match self.bump() {
            Some(Token::Int(n)) => i64::try_from(n).or_else(|_| self.error("exponent too large"))?,
            _ => {
                self.pos -= 1;
                return self.error("expected integer exponent");
            }
        };
        if parenthesized && self.bump() != Some(Token::RParen) {
            self.pos -= 1;
            return self.error("expected `)`");
        }
        let e = if negative { -e } else { e };
        let at = self.offset();
        base.pow(e).map_err(|_| FieldError::Parse {
            pos: at,
            msg: "zero raised to a negative power".into(),
        })
    }

    fn atom(&mut self) -> Result<FieldElement, FieldError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(match self.backend {
                Backend::Q => FieldElement::Q(crate::field::Rational::from_integer(n)),
                Backend::Qt => FieldElement::Qt(
                    <RationalFunction as crate::field::OrderedField>::from_rational(
                        &crate::field::Rational::from_integer(n),
                    ),
                ),
            }),
            Some(Token::T) => match self.backend {
                Backend::Qt => Ok(FieldElement::Qt(RationalFunction::monomial(1))),
                Backend::Q => {
                    self.pos -= 1;
                    self.error("symbol `t` is not available over Q")
                }
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.error("expected `)`")
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                self.error("expected a number, `t` or `(`")
            }
            None => self.error("unexpected end of expression"),
        }
    }
}

/// Parses one entry expression over the given backend.
pub fn parse_entry(src: &str, backend: Backend) -> Result<FieldElement, FieldError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: src.len(),
        backend,
    };
    if p.peek().is_none() {
        return p.error("empty expression");
    }
    let value = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{OrderedField, Rational};

    fn qt(s: &str) -> RationalFunction {
        parse_entry(s, Backend::Qt).unwrap().as_qt().unwrap().clone()
    }

    #[test]
    fn rational_literals() {
        let x = parse_entry("-7/2", Backend::Q).unwrap();
        assert_eq!(x, FieldElement::Q(Rational::new((-7).into(), 2.into()).unwrap()));
        assert_eq!(parse_entry(" 3 ", Backend::Q).unwrap().to_string(), "3");
    }

    #[test]
    fn polynomial_expressions() {
        let t = RationalFunction::t();
        assert_eq!(qt("t^2 + 2t"), t.mul(&t).add(&t.mul(&RationalFunction::from_i64(2))));
        assert_eq!(qt("1/(1+t) - 1").to_string(), "-t/(1 + t)");
        assert_eq!(qt("t^-1"), RationalFunction::monomial(-1));
        assert_eq!(qt("t^(-2)"), RationalFunction::monomial(-2));
        assert_eq!(qt("-t^2"), RationalFunction::monomial(2).neg());
        assert_eq!(qt("2(t+1)"), qt("2*t + 2"));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_entry("t", Backend::Q), Err(FieldError::Parse { pos: 0, .. })));
        assert!(matches!(parse_entry("1/0", Backend::Q), Err(FieldError::Parse { pos: 2, .. })));
        assert!(matches!(parse_entry("(1+t", Backend::Qt), Err(FieldError::Parse { .. })));
        assert!(matches!(parse_entry("", Backend::Qt), Err(FieldError::Parse { .. })));
        assert!(matches!(parse_entry("1 $ 2", Backend::Qt), Err(FieldError::Parse { pos: 2, .. })));
        assert!(matches!(parse_entry("t^t", Backend::Qt), Err(FieldError::Parse { .. })));
    }

    #[test]
    fn printed_forms_reparse() {
        for s in ["(3/2*t)/(1 + t)", "1/t", "-1/2 + t^3", "(1 - t)/(t^2 + 1/3*t^3)", "0"] {
            let x = qt(s);
            assert_eq!(qt(&x.to_string()), x, "{s} printed as {x}");
        }
    }
}
