//! Class expressions: see `docs/grammar.md`.

use std::sync::Arc;

use motcalc::chow_theory::{ChowError, ChowInstance, CycleClass};
use motcalc::exact_linalg::{parse_scalar, Scalar};
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(String),
}

impl From<ChowError> for ExprError {
    fn from(e: ChowError) -> Self {
        ExprError::Eval(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    H,
    Eps(usize),
    Iota1,
    Delta1,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
                i += 1;
            }
            out.push((start, Tok::Num(bytes[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "+-*^#()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.tensor()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        while self.eat('#') {
            lhs = Expr::Tensor(Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e = n
                        .parse::<u32>()
                        .or_else(|_| self.err("exponent must be a natural number"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected an exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let tok = self.peek().cloned();
        self.at += 1;
        match tok {
            Some(Tok::Num(n)) => match parse_scalar(&n) {
                Some(q) => Ok(Expr::Num(q)),
                None => {
                    self.at -= 1;
                    self.err(format!("bad number '{n}'"))
                }
            },
            Some(Tok::Ident(name)) => match name.as_str() {
                "h" => Ok(Expr::H),
                "eps" => Ok(Expr::Eps(0)),
                "iota1" => Ok(Expr::Iota1),
                "Delta1" => Ok(Expr::Delta1),
                other => match other.strip_prefix("eps").and_then(|k| k.parse::<usize>().ok()) {
                    Some(k) => Ok(Expr::Eps(k)),
                    None => {
                        self.at -= 1;
                        self.err(format!("unknown name '{other}'"))
                    }
                },
            },
            Some(Tok::Sym('(')) => {
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            _ => {
                self.at -= 1;
                self.err("expected a number, a name or '('")
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        len: src.len(),
    };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A bare scalar stays unattached until combined with a class.
enum Value {
    Scalar(Scalar),
    Class(CycleClass),
}

impl Value {
    fn into_class(self, inst: &Arc<ChowInstance>, m: usize) -> CycleClass {
        match self {
            Value::Scalar(c) => CycleClass::one(inst, m).scale(&c),
            Value::Class(x) => x,
        }
    }
}

fn eval_value(e: &Expr, inst: &Arc<ChowInstance>) -> Result<Value, ExprError> {
    use Value::{Class, Scalar as S};
    Ok(match e {
        Expr::Num(q) => S(q.clone()),
        Expr::H => Class(CycleClass::h(inst)),
        Expr::Eps(k) => {
            if *k >= inst.deform_dim() {
                return Err(ExprError::Eval(format!("eps{k} does not exist in this instance")));
            }
            Class(CycleClass::eps(inst, 1, *k)?)
        }
        Expr::Iota1 => Class(CycleClass::iota(inst, 1)?),
        Expr::Delta1 => Class(CycleClass::diagonal(inst, 1)?),
        Expr::Neg(a) => match eval_value(a, inst)? {
            S(q) => S(-q),
            Class(x) => Class(x.scale(&-Scalar::one())),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sign = if matches!(e, Expr::Sub(..)) {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            match (eval_value(a, inst)?, eval_value(b, inst)?) {
                (S(x), S(y)) => S(x + sign * y),
                (Class(x), y) => {
                    let y = y.into_class(inst, x.m);
                    Class(x.add(&y.scale(&sign))?)
                }
                (x, Class(y)) => Class(x.into_class(inst, y.m).add(&y.scale(&sign))?),
            }
        }
        Expr::Mul(a, b) => match (eval_value(a, inst)?, eval_value(b, inst)?) {
            (S(x), S(y)) => S(x * y),
            (S(c), Class(x)) | (Class(x), S(c)) => Class(x.scale(&c)),
            (Class(x), Class(y)) => Class(x.product(&y)?),
        },
        Expr::Tensor(a, b) => {
            let x = eval_value(a, inst)?.into_class(inst, 1);
            let y = eval_value(b, inst)?.into_class(inst, 1);
            Class(x.external_tensor(&y)?)
        }
        Expr::Pow(a, r) => match eval_value(a, inst)? {
            S(q) => S(num_traits::pow(q, *r as usize)),
            Class(x) => Class(x.power(*r)?),
        },
    })
}

/// Evaluates to a class; a bare scalar `c` becomes `c·1` on `A`.
pub fn eval(e: &Expr, inst: &Arc<ChowInstance>) -> Result<CycleClass, ExprError> {
    let v = eval_value(e, inst)?;
    if let Value::Scalar(q) = &v {
        if q.is_zero() {
            return Ok(CycleClass::zero(inst, 1, 0));
        }
    }
    Ok(v.into_class(inst, 1))
}

pub fn parse_class(src: &str, inst: &Arc<ChowInstance>) -> Result<CycleClass, ExprError> {
    eval(&parse(src)?, inst)
}
