//! Canonical text form of coefficients.
//!
//! ```text
//! poly := term (("+"|"-") term)*
//! term := int ["*q^" int] ["*w"]
//! ```
//!
//! Terms without `w` come first, then the `w` terms, each group with
//! ascending powers, e.g. `1 - 1*q^4 + 1*q^10`. Values whose common
//! denominator is not a power of `q` are written `(<poly>)/(<poly>)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Coefficient, Poly, RatFunc};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseCoefficientError {
    #[error("empty coefficient")]
    Empty,
    #[error("unexpected input at byte {pos} in {text:?}")]
    Unexpected { pos: usize, text: String },
    #[error("denominator must not contain w: {0:?}")]
    WInDenominator(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// `(exponent, coefficient, has_w)` terms of a Laurent polynomial in `q` and `w`.
type Terms = Vec<(i64, BigInt, bool)>;

fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a == b {
        return a.clone();
    }
    let g = Poly::gcd(a, b);
    a.div_exact(&g).expect("gcd divides").mul(b)
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &Terms) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (e, c, w)) in terms.iter().enumerate() {
        if i == 0 {
            write!(f, "{c}")?;
        } else if c.is_negative() {
            write!(f, " - {}", -c)?;
        } else {
            write!(f, " + {c}")?;
        }
        if *e != 0 {
            write!(f, "*q^{e}")?;
        }
        if *w {
            write!(f, "*w")?;
        }
    }
    Ok(())
}

fn poly_terms(p: &Poly, shift: i64, w: bool) -> Terms {
    p.terms().into_iter().map(|(e, c)| (e as i64 - shift, c, w)).collect()
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.rational_part(), self.w_part());
        let den = lcm(a.denom(), b.denom());
        let v = den.valuation();
        let reduced_den = den.shift_down(v);
        let scaled = |x: &RatFunc| x.numer().mul(&den.div_exact(x.denom()).expect("lcm"));
        let mut terms = poly_terms(&scaled(a), v as i64, false);
        terms.extend(poly_terms(&scaled(b), v as i64, true));
        if reduced_den.is_one() {
            write_terms(f, &terms)
        } else {
            write!(f, "(")?;
            write_terms(f, &terms)?;
            write!(f, ")/(")?;
            write_terms(f, &poly_terms(&reduced_den, 0, false))?;
            write!(f, ")")
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn err(&self) -> ParseCoefficientError {
        ParseCoefficientError::Unexpected { pos: self.pos, text: self.text.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseCoefficientError> {
        let start = self.pos;
        if self.pos < self.bytes.len() && (self.bytes[self.pos] == b'-' || self.bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            return Err(self.err());
        }
        self.text[start..self.pos].parse().map_err(|_| self.err())
    }

    /// Parses `poly` up to (not including) a closing `)` or the end.
    fn terms(&mut self) -> Result<Terms, ParseCoefficientError> {
        let mut out = Terms::new();
        self.skip_ws();
        let mut sign = BigInt::from(1);
        if self.eat("-") {
            sign = BigInt::from(-1);
            self.skip_ws();
        }
        loop {
            let c = self.int()? * &sign;
            let mut e = 0i64;
            let mut w = false;
            if self.eat("*q^") {
                e = self.int()?.try_into().map_err(|_| self.err())?;
            }
            if self.eat("*w") {
                w = true;
            }
            out.push((e, c, w));
            self.skip_ws();
            if self.eat("+") {
                sign = BigInt::from(1);
            } else if self.eat("-") {
                sign = BigInt::from(-1);
            } else {
                break;
            }
            self.skip_ws();
        }
        Ok(out)
    }
}

/// Splits Laurent terms into `(a, b)` numerators over a common `q^shift`.
fn terms_to_polys(terms: &Terms) -> (Poly, Poly, usize) {
    let shift = terms.iter().map(|t| (-t.0).max(0)).max().unwrap_or(0) as usize;
    let pick = |want_w: bool| {
        Poly::from_terms(
            terms
                .iter()
                .filter(|t| t.2 == want_w && !t.1.is_zero())
                .map(|(e, c, _)| ((e + shift as i64) as usize, c.clone())),
        )
    };
    (pick(false), pick(true), shift)
}

impl FromStr for Coefficient {
    type Err = ParseCoefficientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseCoefficientError::Empty);
        }
        let mut p = Parser::new(s);
        let (num_terms, den_terms) = if p.eat("(") {
            let n = p.terms()?;
            p.skip_ws();
            if !p.eat(")") {
                return Err(p.err());
            }
            p.skip_ws();
            if !p.eat("/") {
                return Err(p.err());
            }
            p.skip_ws();
            if !p.eat("(") {
                return Err(p.err());
            }
            let d = p.terms()?;
            p.skip_ws();
            if !p.eat(")") {
                return Err(p.err());
            }
            (n, Some(d))
        } else {
            (p.terms()?, None)
        };
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err());
        }
        let (na, nb, nshift) = terms_to_polys(&num_terms);
        let mut den = Poly::monomial(1, nshift);
        if let Some(d) = den_terms {
            if d.iter().any(|t| t.2) {
                return Err(ParseCoefficientError::WInDenominator(s.to_string()));
            }
            let (da, _, dshift) = terms_to_polys(&d);
            if da.is_zero() {
                return Err(ParseCoefficientError::ZeroDenominator);
            }
            // den(q) = da / q^dshift
            den = den.mul(&da);
            let na = na.shift_up(dshift);
            let nb = nb.shift_up(dshift);
            return Ok(Coefficient::new(RatFunc::new(na, den.clone()), RatFunc::new(nb, den)));
        }
        Ok(Coefficient::new(RatFunc::new(na, den.clone()), RatFunc::new(nb, den)))
    }
}
