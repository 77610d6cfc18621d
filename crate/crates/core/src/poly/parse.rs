//! Text form of polynomials.
//!
//! ```text
//! poly    := ['-'] term (('+'|'-') term)*
//! term    := coeff | coeff '*' factors | factors
//! factors := var ('^' nat)? ('*' var ('^' nat)?)*
//! var     := 'x' nat
//! coeff   := integer | integer '/' positive-integer
//! ```
//!
//! Whitespace is ignored everywhere. Printing emits terms from the leading
//! grevlex monomial down, and `parse(print(f)) == f`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Monomial, PolyError, Polynomial};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    nvars: usize,
    field: &'a Field,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|(i, _)| *i).unwrap_or(self.len)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { position: self.offset(), message: message.into() })
    }

    fn nat(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().map(|(_, c)| *c).collect();
        Ok(s.parse().expect("digits"))
    }

    fn small_nat(&mut self, what: &str) -> Result<u32, PolyError> {
        let at = self.offset();
        let n = self.nat()?;
        u32::try_from(n).map_err(|_| PolyError::Syntax { position: at, message: format!("{what} too large") })
    }

    fn coeff(&mut self) -> Result<BigRational, PolyError> {
        let num = self.nat()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.offset();
            let den = self.nat()?;
            if den.is_zero() {
                return Err(PolyError::Syntax { position: at, message: "zero denominator".into() });
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn var_power(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        if self.peek() != Some('x') {
            return self.error("expected a variable");
        }
        self.pos += 1;
        let at = self.offset();
        let idx = self.small_nat("variable index")? as usize;
        if idx >= self.nvars {
            return Err(PolyError::Syntax {
                position: at,
                message: format!("variable x{idx} out of range for {} variables", self.nvars),
            });
        }
        let mut e = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            e = self.small_nat("exponent")?;
        }
        exps[idx] += e;
        Ok(())
    }

    fn term(&mut self) -> Result<(BigRational, Monomial), PolyError> {
        let mut exps = vec![0u32; self.nvars];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    self.var_power(&mut exps)?;
                } else {
                    return Ok((c, Monomial::new(exps)));
                }
                c
            }
            Some('x') => {
                self.var_power(&mut exps)?;
                BigRational::one()
            }
            _ => return self.error("expected a term"),
        };
        while self.peek() == Some('*') {
            self.pos += 1;
            self.var_power(&mut exps)?;
        }
        Ok((coeff, Monomial::new(exps)))
    }

    fn poly(&mut self) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.field, self.nvars);
        let mut negative = false;
        if self.peek() == Some('-') {
            negative = true;
            self.pos += 1;
        }
        loop {
            let at = self.offset();
            let (c, m) = self.term()?;
            let c = if negative { -c } else { c };
            let s = self.field.from_rational(&c).map_err(|e| match e {
                PolyError::NotRepresentable { value, field } => PolyError::Syntax {
                    position: at,
                    message: format!("coefficient {value} is not representable in {field}"),
                },
                other => other,
            })?;
            out.add_term(m, s);
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return self.error(format!("unexpected '{c}'")),
            }
            self.pos += 1;
        }
    }
}

pub fn parse_polynomial(text: &str, nvars: usize, field: &Field) -> Result<Polynomial, PolyError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, nvars, field, len: text.len() };
    p.poly()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let negative = field.is_negative(c);
            let magnitude = if negative { field.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = field.format(&magnitude);
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if field.is_one(&magnitude) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Contents of a `.poly` file: a header `nvars=<n> field=<Q|Fp:p>` and one
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub nvars: usize,
    pub field: Field,
    pub poly: Polynomial,
}

pub fn parse_poly_file(text: &str) -> Result<PolyFile, PolyError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| PolyError::Header("empty file".into()))?;
    let mut nvars = None;
    let mut field = None;
    for token in header.split_whitespace() {
        match token.split_once('=') {
            Some(("nvars", v)) => {
                nvars = Some(v.parse::<usize>().map_err(|_| PolyError::Header(format!("bad nvars '{v}'")))?)
            }
            Some(("field", "Q")) => field = Some(Field::Rational),
            Some(("field", v)) => {
                let p = v
                    .strip_prefix("Fp:")
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| PolyError::Header(format!("bad field '{v}'")))?;
                field = Some(Field::prime(p)?);
            }
            _ => return Err(PolyError::Header(format!("unexpected token '{token}'"))),
        }
    }
    let nvars = nvars.ok_or_else(|| PolyError::Header("missing nvars".into()))?;
    let field = field.ok_or_else(|| PolyError::Header("missing field".into()))?;
    let body: Vec<&str> = lines.collect();
    let poly = parse_polynomial(&body.join(" "), nvars, &field)?;
    Ok(PolyFile { nvars, field, poly })
}

pub fn write_poly_file(poly: &Polynomial) -> String {
    format!("nvars={} field={}\n{}\n", poly.nvars(), poly.field(), poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Scalar;

    #[test]
    fn grammar_reading() {
        let f = parse_polynomial("x0^2 + 2*x1*x2", 3, &Field::Rational).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial::new(vec![2, 0, 0])), Field::Rational.from_i64(1));
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 1, 1])), Field::Rational.from_i64(2));
        assert!(parse_polynomial("0", 3, &Field::Rational).unwrap().is_zero());
    }

    #[test]
    fn printing_round_trips() {
        for text in ["x0^2 + 2*x1*x2", "-3/4*x0*x1 - x2 + 5", "x0^3 - x0*x1*x2 + 1/2"] {
            let f = parse_polynomial(text, 3, &Field::Rational).unwrap();
            assert_eq!(parse_polynomial(&f.to_string(), 3, &Field::Rational).unwrap(), f);
        }
        let f = parse_polynomial("x0^2 + 2*x1*x2", 3, &Field::Rational).unwrap();
        assert_eq!(f.to_string(), "x0^2 + 2*x1*x2");
    }

    #[test]
    fn whitespace_and_repeated_vars() {
        let f = parse_polynomial(" x0 * x0 ^ 2 -  1 ", 1, &Field::Rational).unwrap();
        assert_eq!(f.to_string(), "x0^3 - 1");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_polynomial("x0 + x7", 3, &Field::Rational).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { position: 6, .. }), "{err:?}");
        let err = parse_polynomial("x0 + * x1", 3, &Field::Rational).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { position: 5, .. }), "{err:?}");
        let f5 = Field::prime(5).unwrap();
        let err = parse_polynomial("1/5*x0", 1, &f5).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { position: 0, .. }), "{err:?}");
        assert!(parse_polynomial("1/0", 1, &Field::Rational).is_err());
        assert!(parse_polynomial("", 1, &Field::Rational).is_err());
    }

    #[test]
    fn prime_field_coefficients_reduce() {
        let f7 = Field::prime(7).unwrap();
        let f = parse_polynomial("-x0 + 1/2", 1, &f7).unwrap();
        assert_eq!(f.coefficient(&Monomial::new(vec![1])), Scalar::Modular(6));
        assert_eq!(f.to_string(), "6*x0 + 4");
    }

    #[test]
    fn poly_file_round_trip() {
        let text = "nvars=5 field=Fp:101\nx0*x2^2 + 100*x1*x3*x4\n";
        let pf = parse_poly_file(text).unwrap();
        assert_eq!(pf.nvars, 5);
        assert_eq!(pf.field, Field::Prime(101));
        assert_eq!(write_poly_file(&pf.poly), text);
        assert!(parse_poly_file("nvars=5\nx0").is_err());
        assert!(parse_poly_file("nvars=5 field=Fp:100\nx0").is_err());
    }
}
