//! A minimal symbolic expression kernel.
//!
//! Expressions are immutable trees over named variables, named constants
//! (`hbar`, `m`, `r`, ...), exact rationals, and the imaginary unit `i`.
//! The kernel supports partial differentiation, substitution, numeric
//! evaluation over complex doubles, value-preserving simplification, and
//! probabilistic identity testing by randomized evaluation over a [`Domain`].

mod diff;
mod domain;
mod eval;
mod identity;
mod simplify;
mod text;

pub use domain::{Domain, DomainError, Exclusion};
pub use eval::{bindings, Bindings, EvalError};
pub use identity::{expr_identical, IdentityReport, NumericContext};
pub use text::{parse_expr, ParseError};

use num::BigRational;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Symbol names are cheap-to-clone shared strings.
pub type Sym = Arc<str>;

/// Symbolic expression tree.
///
/// `Num` carries an exact rational; named constants stay symbolic until
/// evaluation. Complex scalars are expressed through the distinguished
/// imaginary unit [`Expr::I`], with `i^2 -> -1` handled by simplification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigRational),
    Const(Sym),
    Var(Sym),
    I,
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// Integer power of a base expression.
    Pow(Box<Expr>, i32),
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Tan(Box<Expr>),
    Cot(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Expr {
        Expr::Num(BigRational::new(num.into(), den.into()))
    }

    /// Exact rational representation of a double (every finite f64 is dyadic).
    pub fn from_f64(v: f64) -> Expr {
        Expr::Num(BigRational::from_float(v).expect("finite float"))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(Arc::from(name))
    }

    pub fn cnst(name: &str) -> Expr {
        Expr::Const(Arc::from(name))
    }

    pub fn i() -> Expr {
        Expr::I
    }

    /// The circle constant as a named constant; bound automatically at evaluation.
    pub fn pi() -> Expr {
        Expr::cnst("pi")
    }

    pub fn sqrt(e: Expr) -> Expr {
        Expr::Sqrt(Box::new(e))
    }

    pub fn pow(e: Expr, n: i32) -> Expr {
        Expr::Pow(Box::new(e), n)
    }

    pub fn sin(e: Expr) -> Expr {
        Expr::Sin(Box::new(e))
    }

    pub fn cos(e: Expr) -> Expr {
        Expr::Cos(Box::new(e))
    }

    pub fn tan(e: Expr) -> Expr {
        Expr::Tan(Box::new(e))
    }

    pub fn cot(e: Expr) -> Expr {
        Expr::Cot(Box::new(e))
    }

    pub fn exp(e: Expr) -> Expr {
        Expr::Exp(Box::new(e))
    }

    pub fn ln(e: Expr) -> Expr {
        Expr::Ln(Box::new(e))
    }

    /// General power with expression-valued exponent, as `exp(k ln b)`.
    pub fn cpow(base: Expr, exponent: Expr) -> Expr {
        Expr::exp(exponent * Expr::ln(base))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(r) if r == &BigRational::from_integer(0.into()))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Num(r) if r == &BigRational::from_integer(1.into()))
    }

    /// Free variables (not constants) of the expression.
    pub fn free_vars(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Var(v) = e {
                out.insert(v.clone());
            }
        });
        out
    }

    /// Named constants appearing in the expression.
    pub fn free_consts(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Const(c) = e {
                out.insert(c.clone());
            }
        });
        out
    }

    /// True if the name appears as a variable or a named constant.
    pub fn contains_sym(&self, name: &str) -> bool {
        let mut found = false;
        self.walk(&mut |e| match e {
            Expr::Var(v) | Expr::Const(v) if v.as_ref() == name => found = true,
            _ => {}
        });
        found
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Var(_) | Expr::I => {}
            Expr::Sum(terms) | Expr::Product(terms) => {
                for t in terms {
                    t.walk(f);
                }
            }
            Expr::Pow(b, _) => b.walk(f),
            Expr::Sqrt(a)
            | Expr::Neg(a)
            | Expr::Sin(a)
            | Expr::Cos(a)
            | Expr::Tan(a)
            | Expr::Cot(a)
            | Expr::Exp(a)
            | Expr::Ln(a) => a.walk(f),
        }
    }

    /// Replaces every occurrence of `name` (variable or named constant)
    /// with `replacement`.
    pub fn substitute(&self, name: &str, replacement: &Expr) -> Expr {
        match self {
            Expr::Var(v) | Expr::Const(v) if v.as_ref() == name => replacement.clone(),
            Expr::Num(_) | Expr::Const(_) | Expr::Var(_) | Expr::I => self.clone(),
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| t.substitute(name, replacement)).collect()),
            Expr::Product(ts) => {
                Expr::Product(ts.iter().map(|t| t.substitute(name, replacement)).collect())
            }
            Expr::Pow(b, n) => Expr::Pow(Box::new(b.substitute(name, replacement)), *n),
            Expr::Sqrt(a) => Expr::sqrt(a.substitute(name, replacement)),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(name, replacement))),
            Expr::Sin(a) => Expr::sin(a.substitute(name, replacement)),
            Expr::Cos(a) => Expr::cos(a.substitute(name, replacement)),
            Expr::Tan(a) => Expr::tan(a.substitute(name, replacement)),
            Expr::Cot(a) => Expr::cot(a.substitute(name, replacement)),
            Expr::Exp(a) => Expr::exp(a.substitute(name, replacement)),
            Expr::Ln(a) => Expr::ln(a.substitute(name, replacement)),
        }
    }

    /// Applies several substitutions in sequence (not simultaneously).
    pub fn substitute_all(&self, subs: &[(&str, &Expr)]) -> Expr {
        let mut out = self.clone();
        for (name, rep) in subs {
            out = out.substitute(name, rep);
        }
        out
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Sum(vec![self, rhs])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sum(vec![self, Expr::Neg(Box::new(rhs))])
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Product(vec![self, rhs])
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Product(vec![self, Expr::Pow(Box::new(rhs), -1)])
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_replaces_vars_and_consts() {
        let e = Expr::var("x") * Expr::cnst("r") + Expr::var("y");
        let sub = e.substitute("x", &Expr::int(2)).substitute("r", &Expr::int(3));
        let vars = sub.free_vars();
        assert!(vars.contains("y") && !vars.contains("x"));
        assert!(sub.free_consts().is_empty());
    }

    #[test]
    fn free_symbol_queries() {
        let e = Expr::sqrt(
            Expr::pow(Expr::cnst("r"), 2) - Expr::pow(Expr::var("x"), 2) - Expr::pow(Expr::var("y"), 2),
        );
        assert!(e.contains_sym("r"));
        assert!(e.contains_sym("x"));
        assert!(!e.contains_sym("z"));
        assert_eq!(e.free_vars().len(), 2);
    }
}
