//! Surface syntax for elements of the algebra.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)? | '-' factor
//! atom   := nat | nat '/' nat | var | 'lam' | 'P' '(' expr ')'
//!         | 'T' '(' poly (',' poly)* ')' | 'U' '(' nat ')'
//!         | 'geom' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `*` is the mixed shuffle product, `P` the Baxter operator, `T(p0, …, pn)`
//! the pure tensor of polynomials, `U(n)` the unit word of degree n and
//! `geom(c)` the series `Σ cⁿ U(n)`. Arguments of `T` are polynomials of A,
//! so `P`, `T`, `U` and `geom` may not appear inside them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::CompleteElement;
use crate::shuffle::{BaxterContext, ShuffleElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Var(String),
    Lambda,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    P(Box<Expr>),
    Word(Vec<Expr>),
    Unit(usize),
    Geom(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(src[start..i].parse().expect("digits")), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [String],
    /// Set while parsing the arguments of `T`.
    in_word: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {want}, found {}", self.peek()))
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            other => self.err(format!("expected a nonnegative integer, found {other}")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let n = self.nat()?;
            let k = u32::try_from(&n).map_err(|_| Error::Parse { pos, msg: format!("exponent {n} is too large") })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn call_arg(&mut self) -> Result<Expr> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn forbid_in_word(&self, what: &str) -> Result<()> {
        if self.in_word {
            let msg = if what == "T" {
                "T(...) cannot be nested inside T(...); tensor factors are polynomials".to_string()
            } else {
                format!("{what}(...) is not a polynomial and cannot appear inside T(...)")
            };
            return self.err(msg);
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = self.nat()?;
                    return Ok(Expr::Ratio(n, d));
                }
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "lam" => Ok(Expr::Lambda),
                "P" => {
                    self.at -= 1;
                    self.forbid_in_word("P")?;
                    self.bump();
                    Ok(Expr::P(Box::new(self.call_arg()?)))
                }
                "geom" => {
                    self.at -= 1;
                    self.forbid_in_word("geom")?;
                    self.bump();
                    Ok(Expr::Geom(Box::new(self.call_arg()?)))
                }
                "U" => {
                    self.at -= 1;
                    self.forbid_in_word("U")?;
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let npos = self.pos();
                    let n = self.nat()?;
                    let n = usize::try_from(&n).map_err(|_| Error::Parse { pos: npos, msg: format!("U({n}) is too large") })?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Unit(n))
                }
                "T" => {
                    self.at -= 1;
                    self.forbid_in_word("T")?;
                    self.bump();
                    self.expect(Tok::LParen)?;
                    self.in_word = true;
                    let mut args = vec![self.expr()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.in_word = false;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Word(args))
                }
                v => {
                    if !self.vars.iter().any(|w| w == v) {
                        return Err(Error::Parse { pos, msg: format!("unknown variable `{v}`") });
                    }
                    Ok(Expr::Var(v.to_string()))
                }
            },
            other => Err(Error::Parse { pos, msg: format!("unexpected {other}") }),
        }
    }
}

/// Parse `src`, accepting only the given variable names.
pub fn parse(src: &str, variables: &[String]) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0, vars: variables, in_word: false };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {} after expression", p.peek()));
    }
    Ok(e)
}

/// The result of evaluating an expression: finite unless `geom` occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(ShuffleElement),
    Series(CompleteElement),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Finite(a) => a.is_zero(),
            Value::Series(a) => a.is_zero(),
        }
    }

    pub fn into_finite(self) -> Option<ShuffleElement> {
        match self {
            Value::Finite(a) => Some(a),
            Value::Series(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Finite(a) => serde_json::json!({ "kind": "finite", "terms": a.to_json() }),
            Value::Series(a) => {
                serde_json::json!({ "kind": "series", "precision": a.precision(), "terms": a.as_finite().to_json() })
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(a) => write!(f, "{a}"),
            Value::Series(a) => write!(f, "{a}"),
        }
    }
}

fn promote(v: Value, precision: usize) -> CompleteElement {
    match v {
        Value::Finite(a) => CompleteElement::embed(&a, precision),
        Value::Series(a) => a,
    }
}

fn binary<F, G>(a: Value, b: Value, precision: usize, fin: F, ser: G) -> Result<Value>
where
    F: Fn(&ShuffleElement, &ShuffleElement) -> Result<ShuffleElement>,
    G: Fn(&CompleteElement, &CompleteElement) -> Result<CompleteElement>,
{
    match (a, b) {
        (Value::Finite(a), Value::Finite(b)) => Ok(Value::Finite(fin(&a, &b)?)),
        (a, b) => Ok(Value::Series(ser(&promote(a, precision), &promote(b, precision))?)),
    }
}

fn literal(ctx: &BaxterContext, num: &BigInt, den: &BigInt) -> Result<Coefficient> {
    ctx.ring().from_ratio(num, den)
}

/// Evaluate a `T` argument in A = C[X].
fn eval_poly(e: &Expr, ctx: &BaxterContext) -> Result<Polynomial> {
    let ring = ctx.ring();
    Ok(match e {
        Expr::Int(n) => Polynomial::constant(ring.from_bigint(n)),
        Expr::Ratio(n, d) => Polynomial::constant(literal(ctx, n, d)?),
        Expr::Var(v) => Polynomial::var(ring, v),
        Expr::Lambda => Polynomial::constant(ctx.lambda().clone()),
        Expr::Add(a, b) => eval_poly(a, ctx)?.add(&eval_poly(b, ctx)?)?,
        Expr::Sub(a, b) => eval_poly(a, ctx)?.sub(&eval_poly(b, ctx)?)?,
        Expr::Neg(a) => eval_poly(a, ctx)?.neg(),
        Expr::Mul(a, b) => eval_poly(a, ctx)?.mul(&eval_poly(b, ctx)?)?,
        Expr::Pow(a, k) => eval_poly(a, ctx)?.pow(*k),
        Expr::P(_) | Expr::Word(_) | Expr::Unit(_) | Expr::Geom(_) => {
            return Err(Error::Eval("tensor factors must be polynomials".into()))
        }
    })
}

/// Evaluate in `ctx`; any `geom` promotes the computation to the completion
/// at `precision`.
pub fn evaluate(e: &Expr, ctx: &Arc<BaxterContext>, precision: usize) -> Result<Value> {
    let fin = |a: ShuffleElement| Ok(Value::Finite(a));
    match e {
        Expr::Int(_) | Expr::Ratio(..) | Expr::Var(_) | Expr::Lambda => {
            fin(ShuffleElement::from_polynomial(ctx, &eval_poly(e, ctx)?)?)
        }
        Expr::Add(a, b) => binary(
            evaluate(a, ctx, precision)?,
            evaluate(b, ctx, precision)?,
            precision,
            ShuffleElement::add,
            CompleteElement::add,
        ),
        Expr::Sub(a, b) => binary(
            evaluate(a, ctx, precision)?,
            evaluate(b, ctx, precision)?,
            precision,
            ShuffleElement::sub,
            CompleteElement::sub,
        ),
        Expr::Mul(a, b) => binary(
            evaluate(a, ctx, precision)?,
            evaluate(b, ctx, precision)?,
            precision,
            ShuffleElement::mul,
            CompleteElement::mul,
        ),
        Expr::Neg(a) => Ok(match evaluate(a, ctx, precision)? {
            Value::Finite(a) => Value::Finite(a.neg()),
            Value::Series(a) => Value::Series(a.neg()),
        }),
        Expr::Pow(a, k) => Ok(match evaluate(a, ctx, precision)? {
            Value::Finite(a) => Value::Finite(a.pow(*k)),
            Value::Series(a) => Value::Series(a.pow(*k)),
        }),
        Expr::P(a) => Ok(match evaluate(a, ctx, precision)? {
            Value::Finite(a) => Value::Finite(a.baxter_p()),
            Value::Series(a) => Value::Series(a.baxter_p()),
        }),
        Expr::Word(args) => {
            let polys = args.iter().map(|a| eval_poly(a, ctx)).collect::<Result<Vec<_>>>()?;
            fin(ShuffleElement::from_tensor(ctx, &polys)?)
        }
        Expr::Unit(n) => fin(ShuffleElement::unit_word(ctx, *n, ctx.ring().one())),
        Expr::Geom(a) => {
            let c = match evaluate(a, ctx, precision)? {
                Value::Finite(a) if a.max_degree().unwrap_or(0) == 0 => {
                    let p = a.component(0);
                    let mut terms = p.terms();
                    match (terms.next(), terms.next()) {
                        (None, _) => ctx.ring().zero(),
                        (Some((w, c)), None) if w.head().is_one() => c.clone(),
                        _ => return Err(Error::Eval("geom(...) needs a scalar argument".into())),
                    }
                }
                _ => return Err(Error::Eval("geom(...) needs a scalar argument".into())),
            };
            Ok(Value::Series(CompleteElement::geometric_unit_series(ctx, &c, precision)?))
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(src: &str, ctx: &Arc<BaxterContext>, precision: usize) -> Result<Value> {
    evaluate(&parse(src, ctx.variables())?, ctx, precision)
}

/// Parse text that must denote a finite element.
pub fn parse_element(src: &str, ctx: &Arc<BaxterContext>) -> Result<ShuffleElement> {
    match eval_str(src, ctx, 0)? {
        Value::Finite(a) => Ok(a),
        Value::Series(_) => Err(Error::Eval("expected a finite element, found a series".into())),
    }
}
