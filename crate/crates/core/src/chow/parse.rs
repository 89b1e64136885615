//! Recursive-descent evaluator for Chow-ring expressions.
//!
//! ```text
//! expr     := term (('+'|'-') term)* ;
//! term     := factor ('*' factor)* ;
//! factor   := ('-')? atom ('^' uint)? ;
//! atom     := 'xi' | 'f' | 'h' | 'K' | rational | '(' expr ')' ;
//! rational := int ('/' uint)? ;
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ChowElement, ThreefoldModel};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Token plus its zero-based byte position.
#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset: pos + 1,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push(Spanned {
                    tok: Tok::Int(n),
                    pos: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(text[start..i].to_string()),
                    pos: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push(Spanned { tok, pos: start });
        i += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        pos: text.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    at: usize,
    model: &'a ThreefoldModel,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ChowElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ChowElement> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ChowElement> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut value = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            let exp = match t.tok {
                Tok::Int(n) => n
                    .to_u32()
                    .ok_or_else(|| syntax(t.pos, "exponent too large"))?,
                other => {
                    return Err(syntax(
                        t.pos,
                        format!("expected unsigned exponent, found {}", other.describe()),
                    ))
                }
            };
            value = value.pow(exp);
        }
        Ok(if negate { -value } else { value })
    }

    fn atom(&mut self) -> Result<ChowElement> {
        let t = self.bump();
        match t.tok {
            Tok::Ident(name) => match name.as_str() {
                "xi" => Ok(self.model.xi()),
                "f" => Ok(self.model.f()),
                "h" => Ok(self.model.h()),
                "K" => Ok(self.model.canonical()),
                _ => Err(syntax(t.pos, format!("unknown identifier {name:?}"))),
            },
            Tok::Int(numer) => {
                let mut value = Rational::from_integer(numer);
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    match d.tok {
                        Tok::Int(denom) if denom.is_zero() => {
                            return Err(Error::DivisionByZero { offset: d.pos + 1 })
                        }
                        Tok::Int(denom) => value /= Rational::from_integer(denom),
                        other => {
                            return Err(syntax(
                                d.pos,
                                format!(
                                    "expected unsigned denominator, found {}",
                                    other.describe()
                                ),
                            ))
                        }
                    }
                }
                Ok(ChowElement::scalar(*self.model, value))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(syntax(
                        close.pos,
                        format!("expected ')', found {}", close.tok.describe()),
                    ));
                }
                Ok(inner)
            }
            other => Err(syntax(
                t.pos,
                format!("expected an operand, found {}", other.describe()),
            )),
        }
    }
}

/// `parse_expression`: evaluate `text` to a normal-form element of A(X_c).
pub fn parse_expression(text: &str, model: &ThreefoldModel) -> Result<ChowElement> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, model };
    let value = p.expr()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        return Err(syntax(
            rest.pos,
            format!("unexpected {} after expression", rest.tok.describe()),
        ));
    }
    Ok(value)
}
