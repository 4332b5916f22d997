// SPDX-License-Identifier: Apache-2.0

//! Symbolic differentiation with respect to `s`.

use super::{Expr, Func};

impl Expr {
    /// Derivative with respect to `s`, simplified through the folding
    /// constructors (constants, `0`/`1` identities).
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Param(_) => Expr::Num(0.0),
            Expr::Var => Expr::Num(1.0),
            Expr::Neg(a) => -a.derivative(),
            Expr::Add(a, b) => a.derivative() + b.derivative(),
            Expr::Sub(a, b) => a.derivative() - b.derivative(),
            Expr::Mul(a, b) => a.derivative() * (**b).clone() + (**a).clone() * b.derivative(),
            Expr::Div(a, b) => {
                let (u, v) = ((**a).clone(), (**b).clone());
                if v.is_constant() {
                    return a.derivative() / v;
                }
                (a.derivative() * v.clone() - u * b.derivative()) / v.pow(Expr::Num(2.0))
            }
            Expr::Pow(a, b) => {
                let (u, v) = ((**a).clone(), (**b).clone());
                if v.is_constant() {
                    // d(u^c) = c u^(c-1) u'
                    let lowered = match v {
                        Expr::Num(c) => Expr::Num(c - 1.0),
                        _ => v.clone() - 1.0,
                    };
                    v * u.clone().pow(lowered) * a.derivative()
                } else if u.is_constant() {
                    self.clone() * u.log() * b.derivative()
                } else {
                    // u^v (v' ln u + v u'/u)
                    self.clone() * (b.derivative() * u.clone().log() + v * a.derivative() / u)
                }
            }
            Expr::Call(f, a) => {
                let u = (**a).clone();
                let outer = match f {
                    Func::Sin => u.cos(),
                    Func::Cos => -u.sin(),
                    Func::Tan => 1.0 / u.cos().pow(Expr::Num(2.0)),
                    Func::Exp => u.exp(),
                    Func::Log => 1.0 / u,
                    Func::Sqrt => 0.5 / u.sqrt(),
                };
                outer * a.derivative()
            }
        }
    }

    /// The `n`-th derivative.
    pub fn nth_derivative(&self, n: usize) -> Expr {
        (0..n).fold(self.clone(), |e, _| e.derivative())
    }
}
