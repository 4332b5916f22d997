// SPDX-License-Identifier: Apache-2.0

//! A small expression language in one variable `s`.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 's' | 'pi' | 'e' | param | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | exp | log | sqrt
//! ```
//!
//! `^` is right associative and binds tighter than unary minus, so `-s^2` is
//! `-(s^2)` and `2^3^2` is `2^(3^2)`. There is no implicit multiplication.
//! Named parameters must be declared when parsing and bound when evaluating.

mod diff;
mod parse;
mod print;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use crate::math;

pub use parse::ParseError;

/// Named real constants substituted for parameters.
pub type Bindings = BTreeMap<String, f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sin => "sin",
            Self::Cos => "cos",
            Self::Tan => "tan",
            Self::Exp => "exp",
            Self::Log => "log",
            Self::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Self::Sin,
            "cos" => Self::Cos,
            "tan" => Self::Tan,
            "exp" => Self::Exp,
            "log" => Self::Log,
            "sqrt" => Self::Sqrt,
            _ => return None,
        })
    }

    fn eval(self, x: f64, s: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Self::Sin => math::sin(x),
            Self::Cos => math::cos(x),
            Self::Tan => math::tan(x),
            Self::Exp => math::exp(x),
            Self::Log if x > 0.0 => math::ln(x),
            Self::Sqrt if x >= 0.0 => math::sqrt(x),
            Self::Log | Self::Sqrt => return Err(EvalError::Domain { op: self.name(), s }),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Self::Pi => core::f64::consts::PI,
            Self::E => core::f64::consts::E,
        }
    }
}

/// Expression tree. Structural equality is exact, including literal values.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The curve parameter `s`.
    Var,
    Const(Constant),
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    /// An operation undefined at parameter value `s`, such as `log` of a
    /// negative number or division by zero.
    Domain {
        op: &'static str,
        s: f64,
    },
    Unbound(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain { op, s } => write!(f, "{op} undefined at s = {s}"),
            Self::Unbound(name) => write!(f, "parameter `{name}` is not bound"),
        }
    }
}

impl core::error::Error for EvalError {}

impl Expr {
    /// Parse with no named parameters.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse(text, &[])
    }

    /// Parse, accepting the listed identifiers as named parameters.
    pub fn parse_with_params(text: &str, params: &[&str]) -> Result<Self, ParseError> {
        parse::parse(text, params)
    }

    pub fn s() -> Self {
        Self::Var
    }

    pub fn num(v: f64) -> Self {
        Self::Num(v)
    }

    pub fn pi() -> Self {
        Self::Const(Constant::Pi)
    }

    pub fn evaluate(&self, s: f64, bindings: &Bindings) -> Result<f64, EvalError> {
        Ok(match self {
            Self::Num(v) => *v,
            Self::Var => s,
            Self::Const(c) => c.value(),
            Self::Param(name) => *bindings
                .get(name)
                .ok_or_else(|| EvalError::Unbound(name.clone()))?,
            Self::Neg(a) => -a.evaluate(s, bindings)?,
            Self::Add(a, b) => a.evaluate(s, bindings)? + b.evaluate(s, bindings)?,
            Self::Sub(a, b) => a.evaluate(s, bindings)? - b.evaluate(s, bindings)?,
            Self::Mul(a, b) => a.evaluate(s, bindings)? * b.evaluate(s, bindings)?,
            Self::Div(a, b) => {
                let d = b.evaluate(s, bindings)?;
                if d == 0.0 {
                    return Err(EvalError::Domain { op: "division", s });
                }
                a.evaluate(s, bindings)? / d
            }
            Self::Pow(a, b) => pow(a.evaluate(s, bindings)?, b.evaluate(s, bindings)?, s)?,
            Self::Call(f, a) => f.eval(a.evaluate(s, bindings)?, s)?,
        })
    }

    /// Evaluate an expression with no parameters.
    pub fn eval(&self, s: f64) -> Result<f64, EvalError> {
        self.evaluate(s, &Bindings::new())
    }

    /// True when the expression does not involve `s`.
    pub fn is_constant(&self) -> bool {
        match self {
            Self::Var => false,
            Self::Num(_) | Self::Const(_) | Self::Param(_) => true,
            Self::Neg(a) | Self::Call(_, a) => a.is_constant(),
            Self::Add(a, b)
            | Self::Sub(a, b)
            | Self::Mul(a, b)
            | Self::Div(a, b)
            | Self::Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Replace bound parameters by their values and fold constants.
    pub fn bind(&self, bindings: &Bindings) -> Self {
        match self {
            Self::Param(name) => match bindings.get(name) {
                Some(v) => Self::Num(*v),
                None => self.clone(),
            },
            Self::Num(_) | Self::Var | Self::Const(_) => self.clone(),
            Self::Neg(a) => -a.bind(bindings),
            Self::Add(a, b) => a.bind(bindings) + b.bind(bindings),
            Self::Sub(a, b) => a.bind(bindings) - b.bind(bindings),
            Self::Mul(a, b) => a.bind(bindings) * b.bind(bindings),
            Self::Div(a, b) => a.bind(bindings) / b.bind(bindings),
            Self::Pow(a, b) => a.bind(bindings).pow(b.bind(bindings)),
            Self::Call(f, a) => a.bind(bindings).call(*f),
        }
    }

    fn as_num(&self) -> Option<f64> {
        match self {
            Self::Num(v) => Some(*v),
            _ => None,
        }
    }

    fn fold(self, f: impl FnOnce(&Self) -> Option<f64>) -> Self {
        match f(&self) {
            Some(v) if v.is_finite() => Self::Num(v),
            _ => self,
        }
    }

    pub fn pow(self, exponent: Self) -> Self {
        match (self.as_num(), exponent.as_num()) {
            (_, Some(0.0)) => Self::Num(1.0),
            (_, Some(1.0)) => self,
            (Some(b), Some(e)) => {
                Self::Pow(Box::new(self), Box::new(exponent)).fold(|_| pow(b, e, 0.0).ok())
            }
            _ => Self::Pow(Box::new(self), Box::new(exponent)),
        }
    }

    pub fn call(self, f: Func) -> Self {
        let folded = self.as_num().and_then(|x| f.eval(x, 0.0).ok());
        let node = Self::Call(f, Box::new(self));
        node.fold(|_| folded)
    }

    pub fn sin(self) -> Self {
        self.call(Func::Sin)
    }

    pub fn cos(self) -> Self {
        self.call(Func::Cos)
    }

    pub fn exp(self) -> Self {
        self.call(Func::Exp)
    }

    pub fn log(self) -> Self {
        self.call(Func::Log)
    }

    pub fn sqrt(self) -> Self {
        self.call(Func::Sqrt)
    }
}

fn pow(base: f64, exponent: f64, s: f64) -> Result<f64, EvalError> {
    if exponent == libm::trunc(exponent) && exponent.abs() <= i32::MAX as f64 {
        if base == 0.0 && exponent < 0.0 {
            return Err(EvalError::Domain { op: "power", s });
        }
        Ok(math::powi(base, exponent as i32))
    } else if base > 0.0 || (base == 0.0 && exponent > 0.0) {
        Ok(math::powf(base, exponent))
    } else {
        Err(EvalError::Domain { op: "power", s })
    }
}

impl From<f64> for Expr {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl core::ops::Neg for Expr {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            Self::Num(v) => Self::Num(-v),
            Self::Neg(a) => *a,
            other => Self::Neg(Box::new(other)),
        }
    }
}

impl core::ops::Add for Expr {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self.as_num(), rhs.as_num()) {
            (Some(a), Some(b)) => Self::Num(a + b),
            (Some(0.0), _) => rhs,
            (_, Some(0.0)) => self,
            _ => match rhs {
                Self::Neg(r) => Self::Sub(Box::new(self), r),
                _ => Self::Add(Box::new(self), Box::new(rhs)),
            },
        }
    }
}

impl core::ops::Sub for Expr {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        match (self.as_num(), rhs.as_num()) {
            (Some(a), Some(b)) => Self::Num(a - b),
            (Some(0.0), _) => -rhs,
            (_, Some(0.0)) => self,
            _ => match rhs {
                Self::Neg(r) => Self::Add(Box::new(self), r),
                _ => Self::Sub(Box::new(self), Box::new(rhs)),
            },
        }
    }
}

impl core::ops::Mul for Expr {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (self.as_num(), rhs.as_num()) {
            (Some(a), Some(b)) => Self::Num(a * b),
            (Some(0.0), _) | (_, Some(0.0)) => Self::Num(0.0),
            (Some(1.0), _) => rhs,
            (_, Some(1.0)) => self,
            (Some(-1.0), _) => -rhs,
            (_, Some(-1.0)) => -self,
            _ => Self::Mul(Box::new(self), Box::new(rhs)),
        }
    }
}

impl core::ops::Div for Expr {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        match (self.as_num(), rhs.as_num()) {
            (Some(a), Some(b)) if b != 0.0 => Self::Num(a / b),
            (Some(z), Some(b)) if z == 0.0 && b != 0.0 => Self::Num(0.0),
            (Some(0.0), None) => Self::Num(0.0),
            (_, Some(1.0)) => self,
            _ => Self::Div(Box::new(self), Box::new(rhs)),
        }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl core::ops::$tr<f64> for Expr {
            type Output = Expr;
            fn $m(self, rhs: f64) -> Expr {
                core::ops::$tr::$m(self, Expr::Num(rhs))
            }
        }
        impl core::ops::$tr<Expr> for f64 {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                core::ops::$tr::$m(Expr::Num(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);
