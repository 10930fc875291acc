//! Just enough of an s-expression reader for solver responses.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::model::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    /// Symbol or numeral text; `|quoted|` symbols arrive unquoted.
    Atom(String),
    Str(String),
    List(Vec<SExpr>),
}

impl SExpr {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items) => Some(items),
            _ => None,
        }
    }
}

/// Reads all top-level expressions of `input`.
pub fn parse_all(input: &str) -> Result<Vec<SExpr>, String> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        skip_blank(&chars, &mut pos);
        if pos >= chars.len() {
            return Ok(out);
        }
        out.push(parse_one(&chars, &mut pos)?);
    }
}

fn skip_blank(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() {
        if chars[*pos].is_whitespace() {
            *pos += 1;
        } else if chars[*pos] == ';' {
            while *pos < chars.len() && chars[*pos] != '\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
}

fn parse_one(chars: &[char], pos: &mut usize) -> Result<SExpr, String> {
    skip_blank(chars, pos);
    match chars.get(*pos) {
        None => Err("unexpected end of input".into()),
        Some('(') => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_blank(chars, pos);
                match chars.get(*pos) {
                    None => return Err("unclosed `(`".into()),
                    Some(')') => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    Some(_) => items.push(parse_one(chars, pos)?),
                }
            }
        }
        Some(')') => Err(format!("unexpected `)` at offset {pos}")),
        Some('|') => {
            let start = *pos + 1;
            let end = chars[start..]
                .iter()
                .position(|c| *c == '|')
                .ok_or("unclosed `|`")?;
            *pos = start + end + 1;
            Ok(SExpr::Atom(chars[start..start + end].iter().collect()))
        }
        Some('"') => {
            let mut s = String::new();
            *pos += 1;
            loop {
                match chars.get(*pos) {
                    None => return Err("unclosed string".into()),
                    // "" escapes a quote
                    Some('"') if chars.get(*pos + 1) == Some(&'"') => {
                        s.push('"');
                        *pos += 2;
                    }
                    Some('"') => {
                        *pos += 1;
                        return Ok(SExpr::Str(s));
                    }
                    Some(c) => {
                        s.push(*c);
                        *pos += 1;
                    }
                }
            }
        }
        Some(_) => {
            let start = *pos;
            while *pos < chars.len()
                && !chars[*pos].is_whitespace()
                && !matches!(chars[*pos], '(' | ')' | '|' | '"' | ';')
            {
                *pos += 1;
            }
            Ok(SExpr::Atom(chars[start..*pos].iter().collect()))
        }
    }
}

/// Numerals, decimals, `(- e)`, `(/ e e)` and `(to_real e)`.
pub fn to_rational(e: &SExpr) -> Option<Rational> {
    match e {
        SExpr::Atom(s) => parse_decimal(s),
        SExpr::List(items) => match items.as_slice() {
            [SExpr::Atom(op), x] if op == "-" => to_rational(x).map(|v| -v),
            [SExpr::Atom(op), x] if op == "to_real" || op == "to_int" => to_rational(x),
            [SExpr::Atom(op), p, q] if op == "/" => {
                let q = to_rational(q)?;
                if q.is_zero() {
                    None
                } else {
                    Some(to_rational(p)? / q)
                }
            }
            _ => None,
        },
        SExpr::Str(_) => None,
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let mut denom = BigInt::one();
    for _ in 0..frac_part.len() {
        denom *= 10;
    }
    Some(Rational::new(digits, denom))
}
