//! Recursive-descent parser for the ASCII polynomial grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | var | '(' expr ')'
//! var    := ('x'|'y') index
//! ```
//!
//! Juxtaposition multiplies (`2x0x1` is `2*x0*x1`). Whitespace is ignored.

use num_bigint::BigInt;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

pub fn parse_poly(text: &str, n_vars: usize, field: FieldSpec) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n_vars,
        field,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(poly)
}

/// One more than the largest variable index mentioned in any of `texts`.
pub fn infer_n_vars<'a, I: IntoIterator<Item = &'a str>>(texts: I) -> usize {
    let mut n = 0;
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if matches!(bytes[i], b'x' | b'y') {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(idx) = text[start..j].parse::<usize>() {
                    n = n.max(idx + 1);
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    n
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
    field: FieldSpec,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.n_vars, self.field);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'y' || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse {
                position: start,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = BigInt::from(self.integer()?);
                let num = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = BigInt::from(self.integer()?);
                    if den == BigInt::from(0) {
                        return Err(Error::Parse {
                            position: den_pos,
                            message: "zero denominator".into(),
                        });
                    }
                    self.field.from_ratio(&num, &den)?
                } else {
                    self.field.from_bigint(&num)
                };
                Ok(Polynomial::constant(self.n_vars, num))
            }
            Some(b'x') | Some(b'y') => {
                let start = self.pos;
                self.pos += 1;
                let idx_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("?");
                if idx_start == self.pos {
                    return Err(Error::Parse {
                        position: idx_start,
                        message: "variable needs an index".into(),
                    });
                }
                let idx: usize = name[1..].parse().map_err(|_| Error::Parse {
                    position: idx_start,
                    message: "variable index too large".into(),
                })?;
                if idx >= self.n_vars {
                    return Err(Error::UnknownVariable {
                        name: name.to_string(),
                        position: start,
                        n_vars: self.n_vars,
                    });
                }
                Ok(Polynomial::term(
                    Monomial::var(self.n_vars, idx),
                    self.field.one(),
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a coefficient, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "integer literal too large".into(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use proptest::prelude::*;

    #[test]
    fn perazzo_form() {
        let f = parse_poly("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2", 5, FieldSpec::Rational).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.homogeneous_degree(), Some(3));
    }

    #[test]
    fn zero_forms() {
        assert!(parse_poly("0", 3, FieldSpec::Rational).unwrap().is_zero());
        assert!(parse_poly("x0^3 - x0^3", 1, FieldSpec::Rational).unwrap().is_zero());
    }

    #[test]
    fn juxtaposition_parens_and_rationals() {
        let a = parse_poly("2x0x1 - (x0 + x1)^2 + 1/2", 2, FieldSpec::Rational).unwrap();
        let b = parse_poly("-x0^2 - x1^2 + 1/2", 2, FieldSpec::Rational).unwrap();
        assert_eq!(a, b);
        let y = parse_poly("y0*y3 - y1*y4", 5, FieldSpec::Rational).unwrap();
        assert_eq!(y.to_string(), "x0*x3 - x1*x4");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x0 + * x1", 2, FieldSpec::Rational) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x0 + x7", 2, FieldSpec::Rational),
            Err(Error::UnknownVariable { position: 5, .. })
        ));
        assert!(matches!(
            parse_poly("1/7*x0", 1, FieldSpec::Prime(7)),
            Err(Error::NotInvertible { .. })
        ));
        assert!(parse_poly("x0 )", 1, FieldSpec::Rational).is_err());
        assert!(parse_poly("", 1, FieldSpec::Rational).is_err());
        assert!(parse_poly("x", 1, FieldSpec::Rational).is_err());
    }

    #[test]
    fn infers_variable_count() {
        assert_eq!(infer_n_vars(["x0*x3^2 + x2*x4^2"]), 5);
        assert_eq!(infer_n_vars(["x0^2", "x1^2"]), 2);
        assert_eq!(infer_n_vars(["3"]), 0);
    }

    fn arb_poly(field: FieldSpec) -> impl Strategy<Value = Polynomial> {
        let n = 3usize;
        prop::collection::vec(
            (prop::collection::vec(0u16..4, n), -20i64..20, 1i64..6),
            0..6,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(
                n,
                field,
                terms.into_iter().map(|(e, a, b)| {
                    let c: Scalar = &field.from_i64(a) / &field.from_i64(b);
                    (Monomial::new(e), c)
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly(FieldSpec::Rational)) {
            let back = parse_poly(&p.to_string(), 3, FieldSpec::Rational).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn print_parse_round_trip_mod_p(p in arb_poly(FieldSpec::Prime(101))) {
            let back = parse_poly(&p.to_string(), 3, FieldSpec::Prime(101)).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn multiplication_commutes_and_associates(
            a in arb_poly(FieldSpec::Rational),
            b in arb_poly(FieldSpec::Rational),
            c in arb_poly(FieldSpec::Rational),
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn homogeneous_scaling(
            coeffs in prop::collection::vec(-5i64..5, 6),
            point in prop::collection::vec(-4i64..4, 3),
            t in -3i64..3,
        ) {
            let f = FieldSpec::Rational;
            let basis = crate::polyring::monomial_basis(3, 2);
            let p = Polynomial::from_terms(3, f, basis.into_iter().zip(coeffs.iter().map(|&c| f.from_i64(c))));
            let v: Vec<Scalar> = point.iter().map(|&x| f.from_i64(x)).collect();
            let tv: Vec<Scalar> = point.iter().map(|&x| f.from_i64(x * t)).collect();
            let lhs = p.eval(&tv).unwrap();
            let rhs = f.from_i64(t).pow(2) * p.eval(&v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
