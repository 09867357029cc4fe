//! Numeric evaluation over complex doubles.

use super::{Expr, Sym};
use num::ToPrimitive;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Variable bindings for evaluation.
pub type Bindings = BTreeMap<Sym, f64>;

const DENOM_EPS: f64 = 1e-12;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
    #[error("unbound constant `{0}`")]
    UnboundConst(String),
    #[error("negative radicand {0:.6e}")]
    NegativeRadicand(f64),
    #[error("vanishing denominator in {0}")]
    VanishingDenominator(&'static str),
    #[error("logarithm argument {0:.6e} outside the positive real axis neighborhood")]
    LogDomain(f64),
}

impl EvalError {
    /// Domain violations are recoverable by resampling; unbound symbols are not.
    pub fn is_domain(&self) -> bool {
        !matches!(self, EvalError::UnboundVar(_) | EvalError::UnboundConst(_))
    }
}

impl Expr {
    /// Evaluates at a point. `vars` binds free variables, `consts` binds the
    /// named constants; `pi` is always available.
    pub fn eval(&self, vars: &Bindings, consts: &BTreeMap<Sym, f64>) -> Result<Complex64, EvalError> {
        match self {
            Expr::Num(r) => Ok(Complex64::new(
                r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN),
                0.0,
            )),
            Expr::Const(c) => {
                if let Some(v) = consts.get(c) {
                    Ok(Complex64::new(*v, 0.0))
                } else if c.as_ref() == "pi" {
                    Ok(Complex64::new(std::f64::consts::PI, 0.0))
                } else {
                    Err(EvalError::UnboundConst(c.to_string()))
                }
            }
            Expr::Var(v) => vars
                .get(v)
                .map(|x| Complex64::new(*x, 0.0))
                .ok_or_else(|| EvalError::UnboundVar(v.to_string())),
            Expr::I => Ok(Complex64::new(0.0, 1.0)),
            Expr::Sum(ts) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in ts {
                    acc += t.eval(vars, consts)?;
                }
                Ok(acc)
            }
            Expr::Product(fs) => {
                let mut acc = Complex64::new(1.0, 0.0);
                for f in fs {
                    acc *= f.eval(vars, consts)?;
                }
                Ok(acc)
            }
            Expr::Pow(b, n) => {
                let base = b.eval(vars, consts)?;
                if *n < 0 && base.norm() < DENOM_EPS {
                    return Err(EvalError::VanishingDenominator("power"));
                }
                Ok(base.powi(*n))
            }
            Expr::Sqrt(a) => {
                let v = a.eval(vars, consts)?;
                // A distinctly negative real radicand is an out-of-domain
                // sample; genuinely complex arguments take the principal root.
                if v.im.abs() <= 1e-12 * (1.0 + v.re.abs()) && v.re < -1e-12 {
                    return Err(EvalError::NegativeRadicand(v.re));
                }
                Ok(v.sqrt())
            }
            Expr::Neg(a) => Ok(-a.eval(vars, consts)?),
            Expr::Sin(a) => Ok(a.eval(vars, consts)?.sin()),
            Expr::Cos(a) => Ok(a.eval(vars, consts)?.cos()),
            Expr::Tan(a) => {
                let v = a.eval(vars, consts)?;
                if v.cos().norm() < DENOM_EPS {
                    return Err(EvalError::VanishingDenominator("tan"));
                }
                Ok(v.tan())
            }
            Expr::Cot(a) => {
                let v = a.eval(vars, consts)?;
                let s = v.sin();
                if s.norm() < DENOM_EPS {
                    return Err(EvalError::VanishingDenominator("cot"));
                }
                Ok(v.cos() / s)
            }
            Expr::Exp(a) => Ok(a.eval(vars, consts)?.exp()),
            Expr::Ln(a) => {
                let v = a.eval(vars, consts)?;
                if v.norm() < DENOM_EPS {
                    return Err(EvalError::LogDomain(v.re));
                }
                if v.im.abs() <= 1e-12 * (1.0 + v.re.abs()) && v.re < 0.0 {
                    return Err(EvalError::LogDomain(v.re));
                }
                Ok(v.ln())
            }
        }
    }

    /// Convenience for expressions expected to be real at the point.
    pub fn eval_real(
        &self,
        vars: &Bindings,
        consts: &BTreeMap<Sym, f64>,
    ) -> Result<f64, EvalError> {
        Ok(self.eval(vars, consts)?.re)
    }
}

/// Builds a bindings map from name/value pairs.
pub fn bindings(pairs: &[(&str, f64)]) -> Bindings {
    pairs
        .iter()
        .map(|(k, v)| (Arc::<str>::from(*k), *v))
        .collect()
}
