//! Symbolic partial differentiation.

use super::Expr;

impl Expr {
    /// Partial derivative with respect to the variable `v`, simplified.
    ///
    /// Constants (named or numeric) differentiate to zero; `d sqrt(u) =
    /// u' / (2 sqrt(u))`.
    pub fn differentiate(&self, v: &str) -> Expr {
        self.diff_raw(v).simplify()
    }

    fn diff_raw(&self, v: &str) -> Expr {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::I => Expr::zero(),
            Expr::Var(name) => {
                if name.as_ref() == v {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| t.diff_raw(v)).collect()),
            Expr::Product(fs) => {
                let mut terms = Vec::with_capacity(fs.len());
                for (k, fk) in fs.iter().enumerate() {
                    let mut factors: Vec<Expr> = Vec::with_capacity(fs.len());
                    factors.push(fk.diff_raw(v));
                    for (j, fj) in fs.iter().enumerate() {
                        if j != k {
                            factors.push(fj.clone());
                        }
                    }
                    terms.push(Expr::Product(factors));
                }
                Expr::Sum(terms)
            }
            Expr::Pow(b, n) => {
                // d b^n = n b^(n-1) b'
                Expr::Product(vec![
                    Expr::int(*n as i64),
                    Expr::Pow(b.clone(), n - 1),
                    b.diff_raw(v),
                ])
            }
            Expr::Sqrt(u) => {
                // u' / (2 sqrt(u))
                Expr::Product(vec![
                    Expr::ratio(1, 2),
                    u.diff_raw(v),
                    Expr::Pow(Box::new(Expr::Sqrt(u.clone())), -1),
                ])
            }
            Expr::Neg(u) => Expr::Neg(Box::new(u.diff_raw(v))),
            Expr::Sin(u) => Expr::Product(vec![Expr::Cos(u.clone()), u.diff_raw(v)]),
            Expr::Cos(u) => Expr::Neg(Box::new(Expr::Product(vec![
                Expr::Sin(u.clone()),
                u.diff_raw(v),
            ]))),
            Expr::Tan(u) => {
                // (1 + tan^2 u) u'
                Expr::Product(vec![
                    Expr::Sum(vec![Expr::one(), Expr::Pow(Box::new(Expr::Tan(u.clone())), 2)]),
                    u.diff_raw(v),
                ])
            }
            Expr::Cot(u) => {
                // -(1 + cot^2 u) u'
                Expr::Neg(Box::new(Expr::Product(vec![
                    Expr::Sum(vec![Expr::one(), Expr::Pow(Box::new(Expr::Cot(u.clone())), 2)]),
                    u.diff_raw(v),
                ])))
            }
            Expr::Exp(u) => Expr::Product(vec![Expr::Exp(u.clone()), u.diff_raw(v)]),
            Expr::Ln(u) => Expr::Product(vec![
                u.diff_raw(v),
                Expr::Pow(Box::new(u.as_ref().clone()), -1),
            ]),
        }
    }
}
