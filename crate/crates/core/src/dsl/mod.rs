//! A small expression language for truncated q-sums, closed forms and moduli.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' power)?
//! power  := integer | '-' integer | name | '(' lin ')'
//! atom   := integer | integer '/' integer      (no spaces: a rational literal)
//!         | name | 'q' | call | '(' expr ')'
//! call   := qint(lin; lin) | poch(lin; lin; lin) | pochp(lin, lin; lin; lin)
//!         | qbinom(lin, lin; lin) | cyc(lin) | cyc2(lin) | sum(name, lin, lin, expr)
//! lin    := integer-linear combination of bound names: + - * and parentheses
//! ```
//!
//! Argument separators `,` and `;` are interchangeable. `cyc2(n)` is
//! `Φ_n(q^2)`; `pochp(1, s; e; k)` is `(a q^s; q^e)_k` and
//! `pochp(-1, s; e; k)` is `(q^s / a; q^e)_k`.

mod eval;
mod parse;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt::{self, Write};

use num_bigint::BigInt;

pub use eval::{congruence_eval, eval, Value};
pub use parse::parse;

/// Errors from parsing or evaluating DSL text. Positions are 1-based byte
/// columns; the end of input is `len + 1`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{name}` at {pos}")]
    UnknownFunction { pos: usize, name: String },
    #[error("`{name}` at {pos} takes {expected} arguments, got {found}")]
    Arity { pos: usize, name: String, expected: usize, found: usize },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("zero modulus")]
    ZeroModulus,
    #[error("modulus denominator is not a monomial")]
    ModulusDenominator,
    #[error(transparent)]
    Arith(#[from] crate::Error),
}

impl DslError {
    /// The input position for parse errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            DslError::Syntax { pos, .. } | DslError::UnknownFunction { pos, .. } | DslError::Arity { pos, .. } => {
                Some(*pos)
            }
            _ => None,
        }
    }
}

pub type DslResult<T> = core::result::Result<T, DslError>;

/// `constant + Σ coeff · var`, kept canonical: no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Lin {
    pub constant: i64,
    pub terms: BTreeMap<String, i64>,
}

impl Lin {
    pub fn constant(c: i64) -> Self {
        Lin { constant: c, terms: BTreeMap::new() }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), 1);
        Lin { constant: 0, terms }
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    pub(crate) fn add(&self, other: &Lin, sign: i64) -> Option<Lin> {
        let mut out = self.clone();
        out.constant = out.constant.checked_add(other.constant.checked_mul(sign)?)?;
        for (v, c) in &other.terms {
            let e = out.terms.entry(v.clone()).or_insert(0);
            *e = e.checked_add(c.checked_mul(sign)?)?;
            if *e == 0 {
                out.terms.remove(v);
            }
        }
        Some(out)
    }

    pub(crate) fn scale(&self, k: i64) -> Option<Lin> {
        if k == 0 {
            return Some(Lin::constant(0));
        }
        let mut terms = BTreeMap::new();
        for (v, c) in &self.terms {
            terms.insert(v.clone(), c.checked_mul(k)?);
        }
        Some(Lin { constant: self.constant.checked_mul(k)?, terms })
    }

    /// Value under a binding.
    pub fn eval(&self, b: &Binding) -> DslResult<i64> {
        let overflow = || DslError::Argument("integer overflow".into());
        let mut acc = self.constant;
        for (v, c) in &self.terms {
            let x = b.get(v).ok_or_else(|| DslError::Unbound(v.clone()))?;
            acc = acc.checked_add(c.checked_mul(x).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        Ok(acc)
    }

    fn is_plain_var(&self) -> bool {
        self.constant == 0 && self.terms.len() == 1 && self.terms.values().all(|c| *c == 1)
    }
}

impl fmt::Display for Lin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.terms {
            let (neg, mag) = (*c < 0, c.unsigned_abs());
            match (first, neg) {
                (true, true) => f.write_char('-')?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            f.write_str(v)?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant != 0 {
            let sign = if self.constant < 0 { '-' } else { '+' };
            write!(f, " {sign} {}", self.constant.unsigned_abs())
        } else {
            Ok(())
        }
    }
}

/// Abstract syntax tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    /// A literal `num/den` as written.
    Rat(BigInt, BigInt),
    Var(String),
    /// `q^lin`; plain `q` is `q^1`.
    QPow(Lin),
    QInt {
        n: Lin,
        base: Lin,
    },
    Poch {
        s: Lin,
        step: Lin,
        count: Lin,
    },
    PochP {
        sign: Lin,
        s: Lin,
        step: Lin,
        count: Lin,
    },
    QBinom {
        n: Lin,
        k: Lin,
        base: Lin,
    },
    Cyc(Lin),
    Cyc2(Lin),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Lin),
    Sum {
        var: String,
        lo: Lin,
        hi: Lin,
        body: Box<Expr>,
    },
}

impl Expr {
    /// Whether a `pochp` factor occurs anywhere.
    pub fn is_parametric(&self) -> bool {
        match self {
            Expr::PochP { .. } => true,
            Expr::Neg(x) | Expr::Pow(x, _) | Expr::Sum { body: x, .. } => x.is_parametric(),
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Div(x, y) => {
                x.is_parametric() || y.is_parametric()
            }
            _ => false,
        }
    }
}

/// Names that cannot be bound or used as variables.
pub const RESERVED: &[&str] = &["q", "qint", "poch", "pochp", "qbinom", "cyc", "cyc2", "sum"];

/// Integer variable values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding(BTreeMap<String, i64>);

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    /// Adds a name; fails on duplicates and reserved names.
    pub fn bind(&mut self, name: &str, value: i64) -> DslResult<()> {
        if RESERVED.contains(&name) {
            return Err(DslError::Argument(alloc::format!("`{name}` is reserved")));
        }
        if self.0.insert(name.to_string(), value).is_some() {
            return Err(DslError::Argument(alloc::format!("`{name}` bound twice")));
        }
        Ok(())
    }

    pub fn with(mut self, name: &str, value: i64) -> DslResult<Self> {
        self.bind(name, value)?;
        Ok(self)
    }

    /// Parses `name=value` pairs separated by commas, e.g. `n=5,m=2`.
    pub fn parse(text: &str) -> DslResult<Self> {
        let mut b = Binding::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| DslError::Argument(alloc::format!("expected name=value, got `{part}`")))?;
            let name = name.trim();
            if !parse::is_ident(name) {
                return Err(DslError::Argument(alloc::format!("bad variable name `{name}`")));
            }
            let value = value
                .trim()
                .parse::<i64>()
                .map_err(|_| DslError::Argument(alloc::format!("bad integer for `{name}`")))?;
            b.bind(name, value)?;
        }
        Ok(b)
    }

    fn shadowed(&self, name: &str, value: i64) -> Self {
        let mut b = self.clone();
        b.0.insert(name.to_string(), value);
        b
    }
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_ATOM: u8 = 4;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => PREC_SUM,
        Expr::Mul(..) | Expr::Div(..) => PREC_PRODUCT,
        Expr::Neg(_) | Expr::Pow(..) => PREC_UNARY,
        Expr::QPow(l) if l != &Lin::constant(1) => PREC_UNARY,
        _ => PREC_ATOM,
    }
}

fn power(l: &Lin) -> String {
    match l.as_constant() {
        Some(c) if c >= 0 => c.to_string(),
        _ if l.is_plain_var() => l.to_string(),
        _ => alloc::format!("({l})"),
    }
}

/// Canonical text for an expression; parsing it gives back the same tree.
pub fn render(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e);
    s
}

fn write_at(out: &mut String, e: &Expr, min: u8) {
    if prec(e) < min {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    let w = |out: &mut String, args: core::fmt::Arguments<'_>| {
        let _ = out.write_fmt(args);
    };
    match e {
        Expr::Int(n) => w(out, format_args!("{n}")),
        Expr::Rat(n, d) => w(out, format_args!("{n}/{d}")),
        Expr::Var(v) => out.push_str(v),
        Expr::QPow(l) if l == &Lin::constant(1) => out.push('q'),
        Expr::QPow(l) => w(out, format_args!("q^{}", power(l))),
        Expr::QInt { n, base } => w(out, format_args!("qint({n}; {base})")),
        Expr::Poch { s, step, count } => w(out, format_args!("poch({s}; {step}; {count})")),
        Expr::PochP { sign, s, step, count } => w(out, format_args!("pochp({sign}, {s}; {step}; {count})")),
        Expr::QBinom { n, k, base } => w(out, format_args!("qbinom({n}, {k}; {base})")),
        Expr::Cyc(n) => w(out, format_args!("cyc({n})")),
        Expr::Cyc2(n) => w(out, format_args!("cyc2({n})")),
        Expr::Neg(x) => {
            out.push('-');
            write_at(out, x, PREC_UNARY);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(out, a, PREC_SUM);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_at(out, b, PREC_PRODUCT);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_at(out, a, PREC_PRODUCT);
            out.push_str(if matches!(e, Expr::Mul(..)) { " * " } else { " / " });
            write_at(out, b, PREC_UNARY);
        }
        Expr::Pow(x, l) => {
            // `(q)^k` must not collapse into `q^k`
            if matches!(**x, Expr::QPow(_)) {
                out.push('(');
                write_expr(out, x);
                out.push(')');
            } else {
                write_at(out, x, PREC_ATOM);
            }
            w(out, format_args!("^{}", power(l)));
        }
        Expr::Sum { var, lo, hi, body } => {
            w(out, format_args!("sum({var}, {lo}, {hi}, "));
            write_expr(out, body);
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
