// SPDX-License-Identifier: Apache-2.0

//! Minimal-parenthesis printing whose output parses back to the same tree.

use core::fmt;

use super::{Constant, Expr};

const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => ADD,
        Expr::Mul(..) | Expr::Div(..) => MUL,
        Expr::Neg(_) => UNARY,
        Expr::Num(v) if v.is_sign_negative() => UNARY,
        Expr::Pow(..) => POW,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var => f.write_str("s"),
            Expr::Const(Constant::Pi) => f.write_str("pi"),
            Expr::Const(Constant::E) => f.write_str("e"),
            Expr::Param(name) => f.write_str(name),
            Expr::Neg(a) => {
                f.write_str("-")?;
                // `-2` would read back as a literal, and `-` followed by a
                // negative literal as `--2`; keep the operand wrapped
                match **a {
                    Expr::Num(_) => write!(f, "({a})"),
                    _ => write_at(f, a, UNARY),
                }
            }
            Expr::Add(a, b) => {
                write_at(f, a, ADD)?;
                f.write_str(" + ")?;
                write_at(f, b, ADD + 1)
            }
            Expr::Sub(a, b) => {
                write_at(f, a, ADD)?;
                f.write_str(" - ")?;
                write_at(f, b, ADD + 1)
            }
            Expr::Mul(a, b) => {
                write_at(f, a, MUL)?;
                f.write_str("*")?;
                write_at(f, b, MUL + 1)
            }
            Expr::Div(a, b) => {
                write_at(f, a, MUL)?;
                f.write_str("/")?;
                write_at(f, b, MUL + 1)
            }
            Expr::Pow(a, b) => {
                write_at(f, a, ATOM)?;
                f.write_str("^")?;
                write_at(f, b, UNARY)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
