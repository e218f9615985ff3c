//! Lexer and recursive-descent parser for relation text.
//!
//! ```text
//! relation := expr ('=' expr)?
//! expr     := term (('+' | '-') term)*
//! term     := factor factor*
//! factor   := atom ('^' (INT | 'k'))?
//! atom     := NAME | SCALAR | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//! ```
//!
//! A name is `[A-Za-z][A-Za-z0-9_]*` and absorbs one directly following `+`
//! or `-` (`X-`, `Q+`); binary `+`/`-` therefore need surrounding
//! whitespace. `q` is the reserved root of unity and may carry a signed
//! integer exponent (`q^-1`). Scalar literals are `INT` or `INT/INT`.

use super::ast::{Exponent, Expr, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(u64),
    Rational(u64, u64),
    Plus,
    Minus,
    Caret,
    Eq,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Rational(a, b) => format!("scalar `{a}/{b}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, found: impl Into<String>, expected: &[&str]) -> Error {
    Error::Syntax {
        offset,
        found: found.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> Result<u64> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        text[start..*i]
            .parse::<u64>()
            .map_err(|_| syntax(start, format!("`{}`", &text[start..*i]), &["integer below 2^64"]))
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let mut name = text[start..i].to_string();
            if name != "q" && i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                name.push(bytes[i] as char);
                i += 1;
            }
            Tok::Name(name)
        } else if c.is_ascii_digit() {
            let num = number(&mut i)?;
            if i < bytes.len() && bytes[i] == b'/' {
                i += 1;
                if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                    let found = text[i..].chars().next().map_or("end of input".to_string(), |ch| format!("`{ch}`"));
                    return Err(syntax(i, found, &["denominator"]));
                }
                let den_at = i;
                let den = number(&mut i)?;
                if den == 0 {
                    return Err(syntax(den_at, "`0`", &["nonzero denominator"]));
                }
                Tok::Rational(num, den)
            } else {
                Tok::Int(num)
            }
        } else {
            i += 1;
            match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'^' => Tok::Caret,
                b'=' => Tok::Eq,
                b',' => Tok::Comma,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'[' => Tok::LBracket,
                b']' => Tok::RBracket,
                b'{' => Tok::LBrace,
                b'}' => Tok::RBrace,
                _ => {
                    let ch = text[start..].chars().next().unwrap();
                    return Err(syntax(start, format!("`{ch}`"), &["name", "scalar", "operator", "bracket"]));
                }
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

const ATOM_START: &[&str] = &["name", "scalar", "`(`", "`[`", "`{`"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> Error {
        syntax(self.offset(), self.peek().describe(), expected)
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.fail(&[expected]))
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Name(_) | Tok::Int(_) | Tok::Rational(..) | Tok::LParen | Tok::LBracket | Tok::LBrace
        )
    }

    fn relation(&mut self) -> Result<Expr> {
        let lhs = self.expr()?;
        let out = if *self.peek() == Tok::Eq {
            self.bump();
            let rhs = self.expr()?;
            let rhs = if matches!(rhs, Expr::Sum(..) | Expr::Difference(..)) {
                Expr::group(rhs)
            } else {
                rhs
            };
            Expr::difference(lhs, rhs)
        } else {
            lhs
        };
        if *self.peek() != Tok::End {
            let mut expected = vec!["`+`", "`-`", "`=`", "end of input"];
            expected.extend_from_slice(ATOM_START);
            return Err(self.fail(&expected));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::sum(acc, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::difference(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while self.starts_atom() {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Tok::Name(n) if n == "q") {
            self.bump();
            if *self.peek() != Tok::Caret {
                return Ok(Expr::Scalar(Scalar::QPow(1)));
            }
            self.bump();
            let negative = *self.peek() == Tok::Minus;
            if negative {
                self.bump();
            }
            let at = self.offset();
            return match self.bump() {
                Tok::Int(n) => {
                    let n = i32::try_from(n).map_err(|_| syntax(at, format!("integer `{n}`"), &["exponent below 2^31"]))?;
                    Ok(Expr::Scalar(Scalar::QPow(if negative { -n } else { n })))
                }
                Tok::Name(n) if n == "k" && !negative => Ok(Expr::power(Expr::Scalar(Scalar::QPow(1)), Exponent::K)),
                other => {
                    let expected: &[&str] = if negative { &["integer"] } else { &["integer", "`-`", "`k`"] };
                    Err(syntax(at, other.describe(), expected))
                }
            };
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let n = u32::try_from(n).map_err(|_| syntax(at, format!("integer `{n}`"), &["exponent below 2^32"]))?;
                Ok(Expr::power(base, Exponent::Int(n)))
            }
            Tok::Name(n) if n == "k" => Ok(Expr::power(base, Exponent::K)),
            other => Err(syntax(at, other.describe(), &["integer", "`k`"])),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(Expr::Ident(n))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Scalar(Scalar::int(n)))
            }
            Tok::Rational(num, den) => {
                self.bump();
                Ok(Expr::Scalar(Scalar::Rational { num, den }))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::group(inner))
            }
            Tok::LBracket | Tok::LBrace => {
                let square = *self.peek() == Tok::LBracket;
                self.bump();
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                if square {
                    self.expect(Tok::RBracket, "`]`")?;
                    Ok(Expr::commutator(a, b))
                } else {
                    self.expect(Tok::RBrace, "`}`")?;
                    Ok(Expr::anticommutator(a, b))
                }
            }
            _ => Err(self.fail(ATOM_START)),
        }
    }
}

/// Parses relation text; `lhs = rhs` becomes `lhs - (rhs)`.
pub fn parse_relation(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(p.fail(ATOM_START));
    }
    p.relation()
}
