//! Recursive-descent parsers for Puiseux polynomials in `x`, Laurent
//! polynomials in `x, y`, rationals and formal pair lists.

use keyforms::{DPuiseuxPoly, Exponent, FormalPuiseuxPairs, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column in the input.
    pub column: usize,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }

    fn natural(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn signed_integer(&mut self) -> PResult<BigInt> {
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let n = self.natural()?;
        Ok(if negative { -n } else { n })
    }

    /// `n` or `n/d`, unsigned.
    fn unsigned_rational(&mut self) -> PResult<BigRational> {
        let numer = self.natural()?;
        let denom = if self.eat('/') {
            let col = self.pos;
            let d = self.natural()?;
            if d.is_zero() {
                return Err(ParseError {
                    column: col + 1,
                    message: "zero denominator".into(),
                });
            }
            d
        } else {
            BigInt::one()
        };
        Ok(BigRational::new(numer, denom))
    }

    fn small(&self, n: &BigInt) -> PResult<i64> {
        match n.to_i64() {
            Some(v) => Ok(v),
            None => self.error(format!("{n} is too large")),
        }
    }

    /// After `^`: `n`, `-n`, or `(a/b)` with an optional sign.
    fn exponent(&mut self) -> PResult<BigRational> {
        if self.eat('(') {
            let negative = self.eat('-');
            let value = self.unsigned_rational()?;
            self.expect(')')?;
            Ok(if negative { -value } else { value })
        } else {
            Ok(BigRational::from_integer(self.signed_integer()?))
        }
    }

    fn is_digit_next(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }
}

/// Parses a signed sum of terms `c`, `c*x^e`, `x^e`, `x^(a/b)`.
pub fn parse_dps(text: &str) -> PResult<DPuiseuxPoly> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return cur.error("empty expression");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else {
            if !cur.eat('+') && !first {
                break;
            }
            false
        };
        first = false;
        let mut coeff = BigRational::one();
        let mut exp = BigRational::zero();
        let mut has_coeff = false;
        if cur.is_digit_next() {
            coeff = cur.unsigned_rational()?;
            has_coeff = true;
        }
        let wants_x = if has_coeff { cur.eat('*') } else { true };
        if wants_x {
            if !cur.eat('x') {
                return cur.error("expected 'x'");
            }
            exp = BigRational::one();
            if cur.eat('^') {
                exp = cur.exponent()?;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((Exponent::from(exp), coeff));
        if cur.at_end() {
            break;
        }
        if !matches!(cur.peek(), Some('+') | Some('-')) {
            return cur.finish().map(|_| unreachable!());
        }
    }
    cur.finish()?;
    Ok(DPuiseuxPoly::from_terms(terms))
}

/// Parses a polynomial in `x, y` with rational coefficients and integer
/// exponents; only `x` may carry negative exponents.
pub fn parse_laurent(text: &str) -> PResult<LaurentPoly> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return cur.error("empty expression");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else {
            if !cur.eat('+') && !first {
                break;
            }
            false
        };
        first = false;
        let mut coeff = BigRational::one();
        let (mut a, mut b) = (0i64, 0u32);
        let mut need_factor = true;
        if cur.is_digit_next() {
            coeff = cur.unsigned_rational()?;
            need_factor = cur.eat('*');
        }
        while need_factor {
            let var = match cur.peek() {
                Some(c @ ('x' | 'y')) => {
                    cur.pos += 1;
                    c
                }
                _ => return cur.error("expected 'x' or 'y'"),
            };
            let mut e = BigInt::one();
            if cur.eat('^') {
                let col = cur.pos;
                let value = cur.exponent()?;
                if !value.is_integer() {
                    return Err(ParseError {
                        column: col + 1,
                        message: "exponents must be integers".into(),
                    });
                }
                e = value.to_integer();
            }
            let e = cur.small(&e)?;
            if var == 'x' {
                a += e;
            } else if e < 0 {
                return cur.error("negative power of y");
            } else {
                b += u32::try_from(e).or_else(|_| cur.error("exponent too large"))?;
            }
            need_factor = cur.eat('*');
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((a, b, coeff));
        if cur.at_end() {
            break;
        }
        if !matches!(cur.peek(), Some('+') | Some('-')) {
            cur.finish()?;
        }
    }
    cur.finish()?;
    Ok(LaurentPoly::from_terms(terms))
}

/// Parses `n`, `-n`, `n/d` or `-n/d`.
pub fn parse_rational(text: &str) -> PResult<BigRational> {
    let mut cur = Cursor::new(text);
    let negative = cur.eat('-');
    if !negative {
        cur.eat('+');
    }
    let value = cur.unsigned_rational()?;
    cur.finish()?;
    Ok(if negative { -value } else { value })
}

/// Parses `q1/p1,q2/p2,...`; a bare integer `q` means `q/1`.
pub fn parse_pairs(text: &str) -> PResult<Vec<(i64, i64)>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        let q = cur.signed_integer()?;
        let q = cur.small(&q)?;
        let p = if cur.eat('/') {
            let p = cur.natural()?;
            if p.is_zero() {
                return cur.error("zero denominator");
            }
            cur.small(&p)?
        } else {
            1
        };
        out.push((q, p));
        if !cur.eat(',') {
            break;
        }
    }
    cur.finish()?;
    Ok(out)
}

/// [`parse_pairs`] followed by validation as formal Puiseux pairs.
pub fn parse_formal_pairs(text: &str) -> Result<FormalPuiseuxPairs, String> {
    let raw = parse_pairs(text).map_err(|e| e.to_string())?;
    FormalPuiseuxPairs::new(raw).map_err(|e| e.to_string())
}
