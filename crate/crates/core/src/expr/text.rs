//! Deterministic plain-text serialization in prefix notation, plus a parser
//! for the same grammar.
//!
//! Grammar (whitespace-separated, fully parenthesized):
//!
//! ```text
//! expr     := rational | "i" | "$" name | name | form
//! form     := "(" head expr... ")"
//! head     := "+" | "*" | "^" | "sqrt" | "neg" | "sin" | "cos" | "tan"
//!           | "cot" | "exp" | "ln"
//! rational := integer [ "/" positive-integer ]
//! name     := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! `(^ base n)` takes a literal integer exponent. Named constants carry a
//! `$` sigil (`$r`, `$hbar`) so they parse unambiguously from variables.
//! Serialization of a simplified expression is deterministic, which makes
//! the format suitable for golden-file comparisons.

use super::Expr;
use num::BigRational;
use std::fmt::Write;

impl Expr {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) {
        match self {
            Expr::Num(r) => {
                let _ = write!(out, "{}", r);
            }
            Expr::Const(c) => {
                let _ = write!(out, "${}", c);
            }
            Expr::Var(v) => out.push_str(v),
            Expr::I => out.push('i'),
            Expr::Sum(ts) => write_form(out, "+", ts),
            Expr::Product(ts) => write_form(out, "*", ts),
            Expr::Pow(b, n) => {
                out.push_str("(^ ");
                b.write_text(out);
                let _ = write!(out, " {})", n);
            }
            Expr::Sqrt(a) => write_form(out, "sqrt", std::slice::from_ref(a.as_ref())),
            Expr::Neg(a) => write_form(out, "neg", std::slice::from_ref(a.as_ref())),
            Expr::Sin(a) => write_form(out, "sin", std::slice::from_ref(a.as_ref())),
            Expr::Cos(a) => write_form(out, "cos", std::slice::from_ref(a.as_ref())),
            Expr::Tan(a) => write_form(out, "tan", std::slice::from_ref(a.as_ref())),
            Expr::Cot(a) => write_form(out, "cot", std::slice::from_ref(a.as_ref())),
            Expr::Exp(a) => write_form(out, "exp", std::slice::from_ref(a.as_ref())),
            Expr::Ln(a) => write_form(out, "ln", std::slice::from_ref(a.as_ref())),
        }
    }
}

fn write_form(out: &mut String, head: &str, args: &[Expr]) {
    out.push('(');
    out.push_str(head);
    for a in args {
        out.push(' ');
        a.write_text(out);
    }
    out.push(')');
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("bad rational literal `{0}`")]
    BadNumber(String),
    #[error("`^` expects an integer exponent, got `{0}`")]
    BadExponent(String),
    #[error("trailing input after expression: `{0}`")]
    TrailingInput(String),
}

/// Parses the prefix text format back into an expression tree.
pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input);
    let mut pos = 0usize;
    let expr = parse_one(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(ParseError::TrailingInput(tokens[pos..].join(" ")));
    }
    Ok(expr)
}

fn tokenize(input: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in input.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

fn parse_one(tokens: &[String], pos: &mut usize) -> Result<Expr, ParseError> {
    let tok = tokens.get(*pos).ok_or(ParseError::UnexpectedEnd)?.clone();
    *pos += 1;
    if tok == "(" {
        let head = tokens.get(*pos).ok_or(ParseError::UnexpectedEnd)?.clone();
        *pos += 1;
        let expr = match head.as_str() {
            "+" | "*" => {
                let mut args = Vec::new();
                while tokens.get(*pos).map(String::as_str) != Some(")") {
                    args.push(parse_one(tokens, pos)?);
                }
                if args.is_empty() {
                    return Err(ParseError::UnexpectedToken(")".into()));
                }
                if head == "+" {
                    Expr::Sum(args)
                } else {
                    Expr::Product(args)
                }
            }
            "^" => {
                let base = parse_one(tokens, pos)?;
                let etok = tokens.get(*pos).ok_or(ParseError::UnexpectedEnd)?.clone();
                *pos += 1;
                let n: i32 = etok.parse().map_err(|_| ParseError::BadExponent(etok))?;
                Expr::Pow(Box::new(base), n)
            }
            "sqrt" => Expr::sqrt(parse_one(tokens, pos)?),
            "neg" => Expr::Neg(Box::new(parse_one(tokens, pos)?)),
            "sin" => Expr::sin(parse_one(tokens, pos)?),
            "cos" => Expr::cos(parse_one(tokens, pos)?),
            "tan" => Expr::tan(parse_one(tokens, pos)?),
            "cot" => Expr::cot(parse_one(tokens, pos)?),
            "exp" => Expr::exp(parse_one(tokens, pos)?),
            "ln" => Expr::ln(parse_one(tokens, pos)?),
            other => return Err(ParseError::UnexpectedToken(other.into())),
        };
        match tokens.get(*pos).map(String::as_str) {
            Some(")") => {
                *pos += 1;
                Ok(expr)
            }
            Some(t) => Err(ParseError::UnexpectedToken(t.into())),
            None => Err(ParseError::UnexpectedEnd),
        }
    } else if tok == ")" {
        Err(ParseError::UnexpectedToken(tok))
    } else if tok == "i" {
        Ok(Expr::I)
    } else if let Some(name) = tok.strip_prefix('$') {
        Ok(Expr::cnst(name))
    } else if tok.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
        parse_rational(&tok)
    } else {
        Ok(Expr::var(&tok))
    }
}

fn parse_rational(tok: &str) -> Result<Expr, ParseError> {
    let make = |s: &str| -> Option<num::BigInt> { s.parse().ok() };
    if let Some((n, d)) = tok.split_once('/') {
        let (n, d) = (make(n), make(d));
        match (n, d) {
            (Some(n), Some(d)) if d != num::BigInt::from(0) => {
                Ok(Expr::Num(BigRational::new(n, d)))
            }
            _ => Err(ParseError::BadNumber(tok.into())),
        }
    } else {
        make(tok)
            .map(|n| Expr::Num(BigRational::from_integer(n)))
            .ok_or_else(|| ParseError::BadNumber(tok.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let e = Expr::Sum(vec![
            Expr::Product(vec![Expr::ratio(-1, 2), Expr::I, Expr::cnst("hbar")]),
            Expr::pow(Expr::var("x"), -2),
            Expr::sqrt(Expr::var("u")),
        ]);
        let text = e.to_text();
        assert_eq!(text, "(+ (* -1/2 i $hbar) (^ x -2) (sqrt u))");
        assert_eq!(parse_expr(&text).unwrap(), e);
    }

    #[test]
    fn parses_negative_rationals() {
        assert_eq!(parse_expr("-3/4").unwrap(), Expr::ratio(-3, 4));
        assert_eq!(parse_expr("17").unwrap(), Expr::int(17));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_expr("(+ x").is_err());
        assert!(parse_expr("(^ x y)").is_err());
        assert!(parse_expr("x y").is_err());
        assert!(parse_expr("(bogus x)").is_err());
    }
}
