use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{DslError, DslResult, Expr, Lin, RESERVED};

const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Rat(BigInt, BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(pos: usize, msg: impl Into<String>) -> DslError {
    DslError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> DslResult<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i + 1;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let end = digits_end(i);
            let num: BigInt = text[i..end].parse().unwrap();
            // `digits/digits` with no spaces is one rational literal
            if end + 1 < bytes.len() && bytes[end] == b'/' && bytes[end + 1].is_ascii_digit() {
                let dend = digits_end(end + 1);
                let den: BigInt = text[end + 1..dend].parse().unwrap();
                if den.is_zero() {
                    return Err(syntax(end + 2, "zero denominator in rational literal"));
                }
                out.push(Token { tok: Tok::Rat(num, den), pos });
                i = dend;
            } else {
                out.push(Token { tok: Tok::Int(num), pos });
                i = end;
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = i;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            out.push(Token { tok: Tok::Ident(text[i..end].to_string()), pos });
            i = end;
        } else if b"+-*/^(),;".contains(&c) {
            out.push(Token { tok: Tok::Sym(c as char), pos });
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(syntax(pos, format!("unexpected character `{ch}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, pos: bytes.len() + 1 });
    Ok(out)
}

/// Parses DSL text into an [`Expr`].
pub fn parse(text: &str) -> DslResult<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, depth: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::Eof => Ok(e),
        _ => Err(syntax(p.pos(), "unexpected trailing input")),
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    depth: usize,
}

/// Argument shapes of the reserved functions.
#[derive(Clone, Copy)]
enum Shape {
    Lins(usize),
    Sum,
}

fn shape(name: &str) -> Option<Shape> {
    Some(match name {
        "cyc" | "cyc2" => Shape::Lins(1),
        "qint" => Shape::Lins(2),
        "poch" | "qbinom" => Shape::Lins(3),
        "pochp" => Shape::Lins(4),
        "sum" => Shape::Sum,
        _ => return None,
    })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> DslResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected `{c}`")))
        }
    }

    fn enter(&mut self) -> DslResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(syntax(self.pos(), "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> DslResult<Expr> {
        self.enter()?;
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(e)
    }

    fn term(&mut self) -> DslResult<Expr> {
        let mut e = self.factor()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.factor()?));
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn factor(&mut self) -> DslResult<Expr> {
        self.enter()?;
        let e = if self.eat('-') {
            Expr::Neg(Box::new(self.factor()?))
        } else {
            let is_q = matches!(self.peek(), Tok::Ident(s) if s == "q");
            let atom = self.atom()?;
            if self.eat('^') {
                let p = self.power()?;
                if is_q {
                    Expr::QPow(p)
                } else {
                    Expr::Pow(Box::new(atom), p)
                }
            } else {
                atom
            }
        };
        self.depth -= 1;
        Ok(e)
    }

    fn power(&mut self) -> DslResult<Lin> {
        let pos = self.pos();
        match self.bump().tok {
            Tok::Int(n) => Ok(Lin::constant(small(&n, pos)?)),
            Tok::Sym('-') => match self.bump().tok {
                Tok::Int(n) => Ok(Lin::constant(-small(&n, pos)?)),
                _ => Err(syntax(pos + 1, "expected an integer exponent")),
            },
            Tok::Ident(name) => {
                check_var(&name, pos)?;
                Ok(Lin::var(&name))
            }
            Tok::Sym('(') => {
                let l = self.lin()?;
                self.expect(')')?;
                Ok(l)
            }
            _ => Err(syntax(pos, "expected an exponent")),
        }
    }

    fn atom(&mut self) -> DslResult<Expr> {
        let pos = self.pos();
        match self.bump().tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Rat(n, d) => Ok(Expr::Rat(n, d)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "q" => Ok(Expr::QPow(Lin::constant(1))),
            Tok::Ident(name) => {
                if self.peek() == &Tok::Sym('(') {
                    self.call(name, pos)
                } else {
                    check_var(&name, pos)?;
                    Ok(Expr::Var(name))
                }
            }
            Tok::Eof => Err(syntax(pos, "unexpected end of input")),
            t => Err(syntax(pos, format!("unexpected {}", describe(&t)))),
        }
    }

    fn separator(&mut self) -> DslResult<()> {
        if self.eat(',') || self.eat(';') {
            Ok(())
        } else {
            Err(syntax(self.pos(), "expected `,` or `;`"))
        }
    }

    /// Counts the remaining arguments of a call for arity errors.
    fn arity_error(&mut self, name: &str, pos: usize, expected: usize, found: usize) -> DslError {
        let mut found = found;
        let mut depth = 0usize;
        loop {
            match self.bump().tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') if depth == 0 => break,
                Tok::Sym(')') => depth -= 1,
                Tok::Sym(',') | Tok::Sym(';') if depth == 0 => found += 1,
                Tok::Eof => break,
                _ => {}
            }
        }
        DslError::Arity { pos, name: name.to_string(), expected, found }
    }

    fn call(&mut self, name: String, pos: usize) -> DslResult<Expr> {
        let Some(shape) = shape(&name) else {
            return Err(DslError::UnknownFunction { pos, name });
        };
        self.expect('(')?;
        match shape {
            Shape::Lins(k) => {
                let mut args = Vec::with_capacity(k);
                loop {
                    args.push(self.lin()?);
                    if self.eat(')') {
                        break;
                    }
                    if args.len() == k && matches!(self.peek(), Tok::Sym(',') | Tok::Sym(';')) {
                        self.bump();
                        return Err(self.arity_error(&name, pos, k, k + 1));
                    }
                    self.separator()?;
                }
                if args.len() != k {
                    return Err(DslError::Arity { pos, name, expected: k, found: args.len() });
                }
                let mut it = args.into_iter();
                let mut next = || it.next().unwrap();
                Ok(match name.as_str() {
                    "cyc" => Expr::Cyc(next()),
                    "cyc2" => Expr::Cyc2(next()),
                    "qint" => Expr::QInt { n: next(), base: next() },
                    "poch" => Expr::Poch { s: next(), step: next(), count: next() },
                    "qbinom" => Expr::QBinom { n: next(), k: next(), base: next() },
                    _ => Expr::PochP { sign: next(), s: next(), step: next(), count: next() },
                })
            }
            Shape::Sum => {
                let vpos = self.pos();
                let var = match self.bump().tok {
                    Tok::Ident(v) => {
                        check_var(&v, vpos)?;
                        v
                    }
                    _ => return Err(syntax(vpos, "expected the summation variable")),
                };
                self.separator()?;
                let lo = self.lin()?;
                self.separator()?;
                let hi = self.lin()?;
                self.separator()?;
                let body = self.expr()?;
                if self.eat(')') {
                    Ok(Expr::Sum { var, lo, hi, body: Box::new(body) })
                } else if matches!(self.peek(), Tok::Sym(',') | Tok::Sym(';')) {
                    self.bump();
                    Err(self.arity_error(&name, pos, 4, 5))
                } else {
                    Err(syntax(self.pos(), "expected `)`"))
                }
            }
        }
    }

    fn lin(&mut self) -> DslResult<Lin> {
        self.enter()?;
        let mut acc = self.lin_term()?;
        loop {
            let pos = self.pos();
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
            let t = self.lin_term()?;
            acc = acc.add(&t, sign).ok_or_else(|| syntax(pos, "integer overflow"))?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn lin_term(&mut self) -> DslResult<Lin> {
        let mut acc = self.lin_factor()?;
        while self.peek() == &Tok::Sym('*') {
            let pos = self.pos();
            self.bump();
            let f = self.lin_factor()?;
            acc = match (acc.as_constant(), f.as_constant()) {
                (Some(c), _) => f.scale(c),
                (_, Some(c)) => acc.scale(c),
                _ => return Err(syntax(pos, "product of variables is not linear")),
            }
            .ok_or_else(|| syntax(pos, "integer overflow"))?;
        }
        Ok(acc)
    }

    fn lin_factor(&mut self) -> DslResult<Lin> {
        self.enter()?;
        let pos = self.pos();
        let out = match self.bump().tok {
            Tok::Int(n) => Lin::constant(small(&n, pos)?),
            Tok::Sym('-') => self.lin_factor()?.scale(-1).ok_or_else(|| syntax(pos, "integer overflow"))?,
            Tok::Sym('(') => {
                let l = self.lin()?;
                self.expect(')')?;
                l
            }
            Tok::Ident(name) => {
                check_var(&name, pos)?;
                Lin::var(&name)
            }
            Tok::Rat(..) => return Err(syntax(pos, "expected an integer")),
            Tok::Eof => return Err(syntax(pos, "unexpected end of input")),
            t => return Err(syntax(pos, format!("unexpected {} in an integer expression", describe(&t)))),
        };
        self.depth -= 1;
        Ok(out)
    }
}

fn check_var(name: &str, pos: usize) -> DslResult<()> {
    if RESERVED.contains(&name) {
        Err(syntax(pos, format!("`{name}` cannot be used as a variable")))
    } else {
        Ok(())
    }
}

fn small(n: &BigInt, pos: usize) -> DslResult<i64> {
    n.to_i64().ok_or_else(|| syntax(pos, "integer too large"))
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer {n}"),
        Tok::Rat(n, d) => format!("rational {n}/{d}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}
