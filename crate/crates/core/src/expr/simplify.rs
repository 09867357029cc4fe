//! Value-preserving structural simplification.
//!
//! The simplifier is deliberately conservative: it flattens and sorts sums
//! and products, folds exact rational arithmetic, merges equal bases under
//! integer and half-integer exponents, rewrites `i^2 -> -1`, and eliminates
//! `Neg` nodes into rational coefficients. It never expands products over
//! sums and never splits radicals, so printed forms survive untouched.
//! Identity certification is numeric (`expr_identical`), not canonical.

use super::Expr;
use num::{BigRational, One, Signed, Zero};
use std::collections::BTreeMap;

impl Expr {
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Var(_) | Expr::I => self.clone(),
            Expr::Sum(terms) => simplify_sum(terms.iter().map(|t| t.simplify()).collect()),
            Expr::Product(fs) => simplify_product(fs.iter().map(|f| f.simplify()).collect()),
            Expr::Pow(b, n) => simplify_pow(b.simplify(), *n),
            Expr::Sqrt(a) => simplify_sqrt(a.simplify()),
            Expr::Neg(a) => simplify_product(vec![Expr::int(-1), a.simplify()]),
            Expr::Sin(a) => {
                let a = a.simplify();
                if a.is_zero() {
                    Expr::zero()
                } else {
                    Expr::sin(a)
                }
            }
            Expr::Cos(a) => {
                let a = a.simplify();
                if a.is_zero() {
                    Expr::one()
                } else {
                    Expr::cos(a)
                }
            }
            Expr::Tan(a) => {
                let a = a.simplify();
                if a.is_zero() {
                    Expr::zero()
                } else {
                    Expr::tan(a)
                }
            }
            Expr::Cot(a) => Expr::cot(a.simplify()),
            Expr::Exp(a) => {
                let a = a.simplify();
                match a {
                    _ if a.is_zero() => Expr::one(),
                    Expr::Ln(inner) => *inner,
                    _ => Expr::exp(a),
                }
            }
            Expr::Ln(a) => {
                let a = a.simplify();
                if a.is_one() {
                    Expr::zero()
                } else {
                    Expr::ln(a)
                }
            }
        }
    }
}

/// A product decomposed into an exact coefficient, a power of `i` (0 or 1
/// after reduction mod 4), and non-numeric factors keyed by their text form.
struct ProductAcc {
    coeff: BigRational,
    i_count: u32,
    // key -> (base, exponent in half-steps)
    factors: BTreeMap<String, (Expr, i64)>,
}

impl ProductAcc {
    fn new() -> Self {
        ProductAcc {
            coeff: BigRational::one(),
            i_count: 0,
            factors: BTreeMap::new(),
        }
    }

    fn push_base(&mut self, base: Expr, half_exp: i64) {
        if base.is_one() {
            return;
        }
        let key = base.to_text();
        let entry = self.factors.entry(key).or_insert_with(|| (base, 0));
        entry.1 += half_exp;
    }

    /// Absorbs an already-simplified factor.
    fn push(&mut self, f: Expr) {
        match f {
            Expr::Num(r) => self.coeff *= r,
            Expr::I => self.i_count += 1,
            Expr::Product(inner) => {
                for g in inner {
                    self.push(g);
                }
            }
            Expr::Neg(inner) => {
                self.coeff = -self.coeff.clone();
                self.push(*inner);
            }
            Expr::Pow(b, n) => match *b {
                Expr::Sqrt(u) => self.push_base(*u, n as i64),
                Expr::I => self.i_count += n.rem_euclid(4) as u32,
                Expr::Num(r) => self.coeff *= rational_pow(&r, n),
                other => self.push_base(other, 2 * n as i64),
            },
            Expr::Sqrt(u) => self.push_base(*u, 1),
            other => self.push_base(other, 2),
        }
    }

    fn build(mut self) -> Expr {
        // i^2 -> -1
        match self.i_count % 4 {
            1 => {}
            2 => {
                self.coeff = -self.coeff;
                self.i_count = 0;
            }
            3 => {
                self.coeff = -self.coeff;
                self.i_count = 1;
            }
            _ => self.i_count = 0,
        }
        if self.coeff.is_zero() {
            return Expr::zero();
        }
        let mut out: Vec<Expr> = Vec::new();
        if !self.coeff.is_one() {
            out.push(Expr::Num(self.coeff.clone()));
        }
        if self.i_count % 4 == 1 {
            out.push(Expr::I);
        }
        for (_, (base, half_exp)) in self.factors {
            if half_exp == 0 {
                continue;
            }
            let whole = half_exp.div_euclid(2);
            let half = half_exp.rem_euclid(2);
            if whole != 0 {
                out.push(rebuild_pow(base.clone(), whole as i32));
            }
            if half == 1 {
                out.push(Expr::sqrt(base));
            }
        }
        // A bare rational times a sum distributes; keeps negation flat so
        // that `e - e` cancels structurally.
        if out.len() == 2 {
            if let (Expr::Num(c), Expr::Sum(ts)) = (&out[0], &out[1]) {
                let scaled = ts
                    .iter()
                    .map(|t| simplify_product(vec![Expr::Num(c.clone()), t.clone()]))
                    .collect();
                return simplify_sum(scaled);
            }
        }
        match out.len() {
            0 => Expr::one(),
            1 => out.pop().unwrap(),
            _ => Expr::Product(out),
        }
    }
}

fn rebuild_pow(base: Expr, n: i32) -> Expr {
    if n == 1 {
        base
    } else {
        Expr::Pow(Box::new(base), n)
    }
}

fn rational_pow(r: &BigRational, n: i32) -> BigRational {
    if n >= 0 {
        num::pow::pow(r.clone(), n as usize)
    } else {
        num::pow::pow(r.clone(), (-n) as usize).recip()
    }
}

fn simplify_product(factors: Vec<Expr>) -> Expr {
    let mut acc = ProductAcc::new();
    for f in factors {
        acc.push(f);
    }
    acc.build()
}

/// Splits a simplified term into (rational coefficient, residual factor text
/// key, residual factor expression). The `i` factor stays part of the key.
fn term_parts(term: Expr) -> (BigRational, String, Expr) {
    match term {
        Expr::Num(r) => (r, String::new(), Expr::one()),
        Expr::Product(fs) => {
            let mut coeff = BigRational::one();
            let mut rest: Vec<Expr> = Vec::new();
            for f in fs {
                if let Expr::Num(r) = f {
                    coeff *= r;
                } else {
                    rest.push(f);
                }
            }
            let residual = match rest.len() {
                0 => Expr::one(),
                1 => rest.pop().unwrap(),
                _ => Expr::Product(rest),
            };
            let key = residual.to_text();
            (coeff, key, residual)
        }
        other => {
            let key = other.to_text();
            (BigRational::one(), key, other)
        }
    }
}

fn simplify_sum(terms: Vec<Expr>) -> Expr {
    let mut flat: Vec<Expr> = Vec::new();
    for t in terms {
        match t {
            Expr::Sum(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    let mut numeric = BigRational::zero();
    let mut groups: BTreeMap<String, (BigRational, Expr)> = BTreeMap::new();
    for t in flat {
        let (coeff, key, residual) = term_parts(t);
        if key.is_empty() {
            numeric += coeff;
        } else {
            let entry = groups
                .entry(key)
                .or_insert_with(|| (BigRational::zero(), residual));
            entry.0 += coeff;
        }
    }
    let mut out: Vec<Expr> = Vec::new();
    if !numeric.is_zero() {
        out.push(Expr::Num(numeric));
    }
    for (_, (coeff, residual)) in groups {
        if coeff.is_zero() {
            continue;
        }
        if coeff.is_one() {
            out.push(residual);
        } else {
            out.push(simplify_product(vec![Expr::Num(coeff), residual]));
        }
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::Sum(out),
    }
}

fn simplify_pow(base: Expr, n: i32) -> Expr {
    if n == 0 {
        return Expr::one();
    }
    if n == 1 {
        return base;
    }
    match base {
        Expr::Num(r) => Expr::Num(rational_pow(&r, n)),
        Expr::I => {
            let mut acc = ProductAcc::new();
            acc.i_count = n.rem_euclid(4) as u32;
            acc.build()
        }
        Expr::Pow(b, m) => simplify_pow(*b, m.checked_mul(n).expect("exponent overflow")),
        Expr::Product(fs) => {
            // (a b)^n -> a^n b^n, re-collected
            let mut acc = ProductAcc::new();
            for f in fs {
                acc.push(simplify_pow(f, n));
            }
            acc.build()
        }
        Expr::Sqrt(u) => {
            let mut acc = ProductAcc::new();
            acc.push_base(*u, n as i64);
            acc.build()
        }
        Expr::Neg(inner) => {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            simplify_product(vec![Expr::int(sign), simplify_pow(*inner, n)])
        }
        other => Expr::Pow(Box::new(other), n),
    }
}

fn simplify_sqrt(arg: Expr) -> Expr {
    if let Expr::Num(r) = &arg {
        if r.is_zero() {
            return Expr::zero();
        }
        if !r.is_negative() {
            let ns = r.numer().sqrt();
            let ds = r.denom().sqrt();
            if &ns * &ns == *r.numer() && &ds * &ds == *r.denom() {
                return Expr::Num(BigRational::new(ns, ds));
            }
        }
    }
    if arg.is_one() {
        return Expr::one();
    }
    Expr::sqrt(arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collects_like_terms() {
        let x = Expr::var("x");
        let e = (x.clone() + x.clone()).simplify();
        assert_eq!(e, Expr::Product(vec![Expr::int(2), Expr::var("x")]));
        let z = (x.clone() - x).simplify();
        assert!(z.is_zero());
    }

    #[test]
    fn merges_exponents_including_radicals() {
        let u = Expr::var("u");
        let s = Expr::sqrt(u.clone());
        assert_eq!((s.clone() * s.clone()).simplify(), Expr::var("u"));
        // u / sqrt(u) -> sqrt(u)
        assert_eq!((u.clone() / s.clone()).simplify(), Expr::sqrt(Expr::var("u")));
        // 1 / sqrt(u) -> u^-1 sqrt(u)
        let inv = (Expr::one() / s).simplify();
        assert_eq!(
            inv,
            Expr::Product(vec![
                Expr::Pow(Box::new(Expr::var("u")), -1),
                Expr::sqrt(Expr::var("u"))
            ])
        );
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let e = (Expr::i() * Expr::i()).simplify();
        assert_eq!(e, Expr::int(-1));
        let e = Expr::pow(Expr::i(), 3).simplify();
        assert_eq!(e, Expr::Product(vec![Expr::int(-1), Expr::I]));
        // i x + 2 i x -> 3 i x
        let ix = Expr::i() * Expr::var("x");
        let e = (ix.clone() + Expr::int(2) * ix).simplify();
        assert_eq!(
            e,
            Expr::Product(vec![Expr::int(3), Expr::I, Expr::var("x")])
        );
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let e = (Expr::ratio(1, 3) + Expr::ratio(1, 6)).simplify();
        assert_eq!(e, Expr::ratio(1, 2));
        let e = Expr::pow(Expr::ratio(2, 3), -2).simplify();
        assert_eq!(e, Expr::ratio(9, 4));
        let e = Expr::sqrt(Expr::ratio(9, 4)).simplify();
        assert_eq!(e, Expr::ratio(3, 2));
    }

    #[test]
    fn neg_folds_into_coefficient() {
        let e = (-(Expr::var("x") * Expr::int(2))).simplify();
        assert_eq!(e, Expr::Product(vec![Expr::int(-2), Expr::var("x")]));
        let e = Expr::pow(-Expr::var("x"), 2).simplify();
        assert_eq!(e, Expr::Pow(Box::new(Expr::var("x")), 2));
    }

    #[test]
    fn exp_ln_inverse() {
        let e = Expr::exp(Expr::ln(Expr::var("x"))).simplify();
        assert_eq!(e, Expr::var("x"));
        assert!(Expr::ln(Expr::one()).simplify().is_zero());
        assert!(Expr::exp(Expr::zero()).simplify().is_one());
    }

    #[test]
    fn zero_factor_annihilates() {
        let e = (Expr::var("x") * Expr::zero() * Expr::var("y")).simplify();
        assert!(e.is_zero());
        // a sum cancelling inside a product zeroes the product
        let s = Expr::var("x") - Expr::var("x");
        let e = (Expr::var("y") * s).simplify();
        assert!(e.is_zero());
    }
}

impl Expr {
    /// Distributes products over sums and expands small positive integer
    /// powers of sums, then re-simplifies. Negative powers stay factored;
    /// radicals stay atomic. Used where monomial-level cancellation matters,
    /// e.g. reduction onto a constraint surface.
    pub fn expand(&self) -> Expr {
        self.expand_raw().simplify()
    }

    fn expand_raw(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Var(_) | Expr::I => self.clone(),
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| t.expand_raw()).collect()),
            Expr::Product(fs) => {
                let expanded: Vec<Expr> = fs.iter().map(|f| f.expand_raw()).collect();
                distribute(expanded)
            }
            Expr::Pow(b, n) => {
                let base = b.expand_raw();
                if *n >= 2 && *n <= 8 {
                    if let Expr::Sum(_) = base {
                        let mut acc = base.clone();
                        for _ in 1..*n {
                            acc = distribute(vec![acc, base.clone()]);
                        }
                        return acc;
                    }
                }
                Expr::Pow(Box::new(base), *n)
            }
            Expr::Sqrt(a) => Expr::sqrt(a.expand_raw()),
            Expr::Neg(a) => distribute(vec![Expr::int(-1), a.expand_raw()]),
            Expr::Sin(a) => Expr::sin(a.expand_raw()),
            Expr::Cos(a) => Expr::cos(a.expand_raw()),
            Expr::Tan(a) => Expr::tan(a.expand_raw()),
            Expr::Cot(a) => Expr::cot(a.expand_raw()),
            Expr::Exp(a) => Expr::exp(a.expand_raw()),
            Expr::Ln(a) => Expr::ln(a.expand_raw()),
        }
    }
}

/// Multiplies out a list of factors, crossing sums term by term.
fn distribute(factors: Vec<Expr>) -> Expr {
    let mut terms: Vec<Vec<Expr>> = vec![Vec::new()];
    for f in factors {
        match f {
            Expr::Sum(ts) => {
                let mut next = Vec::with_capacity(terms.len() * ts.len());
                for t in &ts {
                    for existing in &terms {
                        let mut row = existing.clone();
                        row.push(t.clone());
                        next.push(row);
                    }
                }
                terms = next;
            }
            other => {
                for row in &mut terms {
                    row.push(other.clone());
                }
            }
        }
    }
    Expr::Sum(terms.into_iter().map(Expr::Product).collect())
}
