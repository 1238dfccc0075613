//! Text syntax for multivectors.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coeff ['*' blade] | blade
//! blade := 'Id' | 'e'<index> ('^' 'e'<index>)*
//! coeff := <int>['/'<int>] | <decimal> | '(' gaussian ')'
//! ```
//!
//! Printing emits terms in ascending blade bit order, so `parse(print(u)) == u`.
//! Unordered or repeated indices in the input are normalized (`e2^e1` reads as
//! `-e1^e2`, `e1^e1` as zero).

use num::traits::One;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector, BLADE_BITS};
use crate::scalar::Scalar;

pub fn format_multivector(u: &Multivector) -> String {
    if u.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (blade, c)) in u.terms().enumerate() {
        let (negative, coeff) = if c.is_negative_real() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let blade_txt = format!("{blade:?}");
        if blade == Blade::UNIT {
            out.push_str(&coeff.to_text());
        } else if coeff.is_one() {
            out.push_str(&blade_txt);
        } else {
            out.push_str(&coeff.to_text());
            out.push('*');
            out.push_str(&blade_txt);
        }
    }
    out
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            position: self.pos,
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        self.skip_ws();
        if self.peek() == Some('(') {
            let start = self.pos;
            let close = self.src[start..]
                .find(')')
                .ok_or_else(|| self.err("unclosed parenthesis"))?;
            let body = &self.src[start..start + close + 1];
            self.pos = start + close + 1;
            return body.parse::<Scalar>().map_err(|_| Error::Parse {
                input: self.src.to_string(),
                position: start,
                reason: "malformed coefficient".into(),
            });
        }
        let start = self.pos;
        let txt = self.take_while(|c| c.is_ascii_digit() || c == '/' || c == '.');
        txt.parse::<Scalar>().map_err(|_| Error::Parse {
            input: self.src.to_string(),
            position: start,
            reason: "malformed coefficient".into(),
        })
    }

    fn blade(&mut self) -> Result<(i8, Option<Blade>)> {
        self.skip_ws();
        if self.src[self.pos..].starts_with("Id") {
            self.pos += 2;
            return Ok((1, Some(Blade::UNIT)));
        }
        let mut indices = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some('e') {
                return Err(self.err("expected generator e<index>"));
            }
            self.pos += 1;
            let at = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            let index: usize = digits.parse().map_err(|_| Error::Parse {
                input: self.src.to_string(),
                position: at,
                reason: "expected generator index".into(),
            })?;
            if index == 0 || index > BLADE_BITS {
                return Err(Error::Parse {
                    input: self.src.to_string(),
                    position: at,
                    reason: format!("generator index {index} out of range"),
                });
            }
            indices.push(index);
            if !self.eat('^') {
                break;
            }
        }
        Ok(match Blade::from_indices(&indices) {
            Some((sign, b)) => (sign, Some(b)),
            None => (1, None),
        })
    }

    fn term(&mut self) -> Result<(Scalar, Option<Blade>)> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' || c == '.' => {
                let coeff = self.coefficient()?;
                if self.eat('*') {
                    let (sign, blade) = self.blade()?;
                    let coeff = if sign < 0 { -coeff } else { coeff };
                    Ok((coeff, blade))
                } else {
                    Ok((coeff, Some(Blade::UNIT)))
                }
            }
            Some('e') | Some('I') => {
                let (sign, blade) = self.blade()?;
                Ok((Scalar::from_int(sign as i64), blade))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

pub fn parse_multivector(src: &str) -> Result<Multivector> {
    let mut cur = Cursor { src, pos: 0 };
    let mut out = Multivector::zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return Err(cur.err("empty expression"));
            }
            break;
        }
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(cur.err("expected '+' or '-'"));
        };
        let (coeff, blade) = cur.term()?;
        if let Some(b) = blade {
            out.add_term(b, if negative { -coeff } else { coeff });
        }
        first = false;
    }
    Ok(out)
}

/// Parses an expression and checks that it fits in dimension `dim`.
pub fn parse_in_dim(src: &str, dim: usize) -> Result<Multivector> {
    let u = parse_multivector(src)?;
    if u.max_index() > dim {
        return Err(Error::IndexOutOfRange {
            index: u.max_index(),
            dim,
        });
    }
    Ok(u)
}

impl std::str::FromStr for Multivector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_multivector(s)
    }
}
