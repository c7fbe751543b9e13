//! Parser for the grammar emitted by `Display`.

use num_bigint::BigInt;
use thiserror::Error;

use super::{Expr, Func, Symbol, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Num(s.parse().unwrap())));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                i += 1;
            }
            while i < chars.len() && chars[i].1 == '\'' {
                s.push('\'');
                i += 1;
            }
            out.push((pos, Tok::Ident(s)));
        } else {
            let t = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    return Err(ParseError {
                        pos,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((pos, t));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = vec![self.term()?];
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.i += 1;
            let t = self.term()?;
            acc.push(if c == '-' {
                Expr::Mul(vec![Expr::int(-1), t])
            } else {
                t
            });
        }
        Ok(if acc.len() == 1 {
            acc.pop().unwrap()
        } else {
            Expr::Add(acc)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = vec![self.unary()?];
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.i += 1;
            let f = self.unary()?;
            acc.push(if c == '/' {
                Expr::Pow(Box::new(f), -1)
            } else {
                f
            });
        }
        Ok(if acc.len() == 1 {
            acc.pop().unwrap()
        } else {
            Expr::Mul(acc)
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Op('-')) {
            self.i += 1;
            let e = self.unary()?;
            return Ok(Expr::Mul(vec![Expr::int(-1), e]));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.i += 1;
            let neg = if self.peek() == Some(&Tok::Op('-')) {
                self.i += 1;
                true
            } else {
                false
            };
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    let n: i64 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut v = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            v.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(v)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(Q::from_integer(n)))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if self.peek() != Some(&Tok::LParen) {
                    if name.contains('\'') {
                        return self.err("derivative marks need an argument list");
                    }
                    return Ok(Expr::Sym(Symbol::named(&name)));
                }
                let args = self.args()?;
                match name.as_str() {
                    "exp" | "ln" if args.len() == 1 => {
                        let a = Box::new(args.into_iter().next().unwrap());
                        Ok(if name == "exp" {
                            Expr::Exp(a)
                        } else {
                            Expr::Log(a)
                        })
                    }
                    _ => self.application(&name, args),
                }
            }
            _ => self.err("expected an operand"),
        }
    }

    fn application(&self, name: &str, args: Vec<Expr>) -> Result<Expr, ParseError> {
        let primes = name.chars().rev().take_while(|c| *c == '\'').count();
        let stem = &name[..name.len() - primes];
        let (base, suffix) = match stem.split_once('_') {
            Some((b, s)) => (b, s),
            None => (stem, ""),
        };
        let mut f = Func::new(base, args.len());
        if primes > 0 {
            if args.len() != 1 || !suffix.is_empty() {
                return self.err("prime derivatives apply to one-argument functions");
            }
            f.deriv[0] = primes as u32;
        }
        for c in suffix.chars() {
            let k = if let Some(d) = c.to_digit(10) {
                (d as usize).checked_sub(1).filter(|k| *k < args.len())
            } else {
                args.iter()
                    .position(|a| matches!(a, Expr::Sym(s) if s.name == c.to_string()))
            };
            match k {
                Some(k) => f.deriv[k] += 1,
                None => return self.err(format!("derivative index `{c}` matches no argument")),
            }
        }
        Ok(Expr::Apply(f, args))
    }
}

/// Parse and normalize.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e.normalize())
}
