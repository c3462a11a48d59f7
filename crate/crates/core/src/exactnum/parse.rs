use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::rational::Rational;

/// Error raised by the textual parsers of this module.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct ParseError {
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError { message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        out.push(match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(ParseError::new(format!("unexpected character '{c}' in '{text}'"))),
        });
        i += 1;
    }
    Ok(out)
}

/// A parsed monomial term: coefficient and variable powers.
pub(crate) type RawTerm = (Rational, Vec<(String, u32)>);

/// Parses a sum of monomial terms such as `2 - 5t + (3/2)t^2` or
/// `-X1_2*X3_4^2 + 1/3*X1_5`.
pub(crate) fn parse_terms(text: &str) -> Result<Vec<RawTerm>, ParseError> {
    let toks = tokenize(text)?;
    let err = |m: String| ParseError::new(format!("{m} in '{text}'"));
    if toks.is_empty() {
        return Err(err("empty expression".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    loop {
        let mut sign = Rational::one();
        let mut saw_sign = false;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = toks.get(pos) {
            if *t == Tok::Minus {
                sign = -sign;
            }
            saw_sign = true;
            pos += 1;
        }
        if !saw_sign && !terms.is_empty() {
            return Err(err(format!("expected '+' or '-' before '{}'", toks[pos])));
        }
        let mut coef = sign;
        let mut vars: Vec<(String, u32)> = Vec::new();
        let mut factors = 0;
        loop {
            match toks.get(pos) {
                Some(Tok::Num(n)) => {
                    let mut q = BigRational::from_integer(n.clone());
                    pos += 1;
                    if let (Some(Tok::Slash), Some(Tok::Num(d))) = (toks.get(pos), toks.get(pos + 1)) {
                        if *d == BigInt::from(0) {
                            return Err(err("zero denominator".into()));
                        }
                        q /= BigRational::from_integer(d.clone());
                        pos += 2;
                    }
                    coef *= q;
                }
                Some(Tok::LParen) => {
                    let mut p = pos + 1;
                    let mut s = Rational::one();
                    if toks.get(p) == Some(&Tok::Minus) {
                        s = -s;
                        p += 1;
                    }
                    match (toks.get(p), toks.get(p + 1), toks.get(p + 2), toks.get(p + 3)) {
                        (Some(Tok::Num(n)), Some(Tok::Slash), Some(Tok::Num(d)), Some(Tok::RParen))
                            if *d != BigInt::from(0) =>
                        {
                            coef *= s * BigRational::new(n.clone(), d.clone());
                            pos = p + 4;
                        }
                        (Some(Tok::Num(n)), Some(Tok::RParen), _, _) => {
                            coef *= s * BigRational::from_integer(n.clone());
                            pos = p + 2;
                        }
                        _ => return Err(err("expected a parenthesized rational".into())),
                    }
                }
                Some(Tok::Ident(name)) => {
                    pos += 1;
                    let mut e = 1u32;
                    if toks.get(pos) == Some(&Tok::Caret) {
                        match toks.get(pos + 1) {
                            Some(Tok::Num(n)) => {
                                e = n.try_into().map_err(|_| err("exponent too large".into()))?;
                                pos += 2;
                            }
                            _ => return Err(err("expected exponent after '^'".into())),
                        }
                    }
                    vars.push((name.clone(), e));
                }
                _ => break,
            }
            factors += 1;
            if toks.get(pos) == Some(&Tok::Star) {
                pos += 1;
                if !matches!(toks.get(pos), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen)) {
                    return Err(err("dangling '*'".into()));
                }
            }
        }
        if factors == 0 {
            return Err(err("expected a term".into()));
        }
        terms.push((coef, vars));
        match toks.get(pos) {
            None => break,
            Some(Tok::Plus | Tok::Minus) => {}
            Some(t) => return Err(err(format!("unexpected '{t}'"))),
        }
    }
    Ok(terms)
}

/// Wraps a fractional coefficient in parentheses so that juxtaposition with a
/// variable stays unambiguous.
pub(crate) fn coef_prefix(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("({q})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn terms() {
        let t = parse_terms("2 - 5t + (3/2)t^2").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1], (int(-5), vec![("t".into(), 1)]));
        assert_eq!(t[2], (rat(3, 2), vec![("t".into(), 2)]));
        let t = parse_terms("-X1_2*X3_4^2 + 1/3*X1_5").unwrap();
        assert_eq!(t[0].1, vec![("X1_2".into(), 1), ("X3_4".into(), 2)]);
        assert_eq!(t[1].0, rat(1, 3));
        assert!(parse_terms("2 3 +").is_err());
        assert!(parse_terms("").is_err());
        assert!(parse_terms("x y + ").is_err());
    }
}
