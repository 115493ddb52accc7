//! Scalar expression language in the variables `u` and `v` (grammar v1).
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'u' | 'v' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func    := 'sin' | 'cos' | 'tan' | 'sqrt' | 'exp' | 'log' | 'atan'
//! ```
//!
//! `^` binds tightest and is right associative, so `-u^2` is `-(u^2)` and
//! `2^3^2` is `2^9`. The exponent must not mention `u` or `v`. Integer
//! exponents are evaluated by repeated multiplication (negative ones need a
//! nonzero base); any other exponent is evaluated as `exp(k*log(b))` and so
//! needs a positive base.
//!
//! Multiplication is always explicit: `sin(u)cos(v)` is a syntax error.
//! There is no `abs`; `sqrt(x^2)` has a kink where `x` vanishes and fails
//! with a domain error there.
//!
//! Other names may be bound to numeric literals before parsing
//! ([`parse_with_bindings`]); they are replaced by their value.

mod eval;
mod lexer;
mod parser;
mod print;

use std::collections::BTreeMap;

pub use eval::{eval_f64, eval_jet, eval_with};
pub use parser::{parse, parse_vec, parse_vec_with_bindings, parse_with_bindings};

use crate::error::Result;
use crate::jet::Jet2;
use crate::vector::{Vec3, Vec3J};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sqrt,
    Exp,
    Log,
    Atan,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sqrt,
        Func::Exp,
        Func::Log,
        Func::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Expression tree. Literals are non-negative; negation is always a `Neg`
/// node so that printing and re-parsing reproduces the tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Const(Constant),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Names reserved by the grammar; bindings may not use them.
pub const RESERVED: [&str; 11] = [
    "u", "v", "pi", "e", "sin", "cos", "tan", "sqrt", "exp", "log", "atan",
];

impl Expr {
    pub fn num(x: f64) -> Expr {
        if x < 0.0 || (x == 0.0 && x.is_sign_negative()) {
            Expr::Neg(Box::new(Expr::Num(-x)))
        } else {
            Expr::Num(x)
        }
    }

    pub fn u() -> Expr {
        Expr::Var(Var::U)
    }

    pub fn v() -> Expr {
        Expr::Var(Var::V)
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn mentions_variables(&self) -> bool {
        match self {
            Expr::Var(_) => true,
            Expr::Num(_) | Expr::Const(_) => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.mentions_variables(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => a.mentions_variables() || b.mentions_variables(),
        }
    }

    /// Replaces `u` and `v` by the given expressions.
    pub fn substitute(&self, u: &Expr, v: &Expr) -> Expr {
        match self {
            Expr::Var(Var::U) => u.clone(),
            Expr::Var(Var::V) => v.clone(),
            Expr::Num(_) | Expr::Const(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(u, v))),
            Expr::Call(f, a) => Expr::Call(*f, Box::new(a.substitute(u, v))),
            Expr::Bin(op, a, b) => Expr::bin(*op, a.substitute(u, v), b.substitute(u, v)),
            // exponents are constant, nothing to substitute
            Expr::Pow(a, b) => Expr::Pow(Box::new(a.substitute(u, v)), b.clone()),
        }
    }

    pub fn eval_jet(&self, u0: f64, v0: f64) -> Result<Jet2> {
        eval_jet(self, u0, v0)
    }

    pub fn eval(&self, u0: f64, v0: f64) -> Result<f64> {
        eval_f64(self, u0, v0)
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.depth(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

/// Three component expressions of a map into R^3.
#[derive(Debug, Clone, PartialEq)]
pub struct VecExpr {
    pub cx: Expr,
    pub cy: Expr,
    pub cz: Expr,
}

impl VecExpr {
    pub fn new(cx: Expr, cy: Expr, cz: Expr) -> Self {
        Self { cx, cy, cz }
    }

    pub fn constant(v: Vec3) -> Self {
        Self::new(Expr::num(v.x), Expr::num(v.y), Expr::num(v.z))
    }

    pub fn eval_with(&self, u: Jet2, v: Jet2) -> Result<Vec3J> {
        Ok(Vec3J::new(
            eval_with(&self.cx, u, v)?,
            eval_with(&self.cy, u, v)?,
            eval_with(&self.cz, u, v)?,
        ))
    }

    pub fn eval_jet(&self, u0: f64, v0: f64) -> Result<Vec3J> {
        Ok(Vec3J::new(
            eval_jet(&self.cx, u0, v0)?,
            eval_jet(&self.cy, u0, v0)?,
            eval_jet(&self.cz, u0, v0)?,
        ))
    }

    pub fn eval(&self, u0: f64, v0: f64) -> Result<Vec3> {
        Ok(Vec3::new(
            eval_f64(&self.cx, u0, v0)?,
            eval_f64(&self.cy, u0, v0)?,
            eval_f64(&self.cz, u0, v0)?,
        ))
    }

    pub fn substitute(&self, u: &Expr, v: &Expr) -> VecExpr {
        VecExpr::new(
            self.cx.substitute(u, v),
            self.cy.substitute(u, v),
            self.cz.substitute(u, v),
        )
    }
}

impl std::str::FromStr for VecExpr {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<VecExpr> {
        parse_vec(s)
    }
}

pub type Bindings = BTreeMap<String, f64>;
