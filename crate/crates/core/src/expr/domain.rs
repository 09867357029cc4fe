//! Sampling domains: interval boxes with exclusion predicates.

use super::eval::Bindings;
use super::{Expr, Sym};
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// An exclusion predicate: points where `expr >= 0` are rejected.
#[derive(Clone, Debug)]
pub struct Exclusion {
    pub expr: Expr,
    pub label: String,
}

/// A named box for each variable plus exclusion predicates. Interval bounds
/// are expressions over named constants so domains can scale with `r`.
#[derive(Clone, Debug, Default)]
pub struct Domain {
    intervals: Vec<(Sym, Expr, Expr)>,
    exclusions: Vec<Exclusion>,
}

#[derive(Debug, thiserror::Error)]
pub enum DomainError {
    #[error("interval bound failed to evaluate: {0}")]
    BadBound(#[from] super::eval::EvalError),
    #[error("empty interval for `{0}`")]
    EmptyInterval(String),
    #[error("sample budget exhausted after {attempts} attempts ({accepted}/{requested} accepted)")]
    SampleBudget {
        attempts: usize,
        accepted: usize,
        requested: usize,
    },
}

impl Domain {
    pub fn new() -> Domain {
        Domain::default()
    }

    pub fn interval(mut self, var: &str, lo: Expr, hi: Expr) -> Domain {
        self.intervals.push((Arc::from(var), lo, hi));
        self
    }

    pub fn interval_f(self, var: &str, lo: f64, hi: f64) -> Domain {
        self.interval(var, Expr::from_f64(lo), Expr::from_f64(hi))
    }

    /// Adds the predicate "reject when `expr >= 0`".
    pub fn exclude(mut self, expr: Expr, label: &str) -> Domain {
        self.exclusions.push(Exclusion {
            expr,
            label: label.to_string(),
        });
        self
    }

    pub fn vars(&self) -> Vec<Sym> {
        self.intervals.iter().map(|(v, _, _)| v.clone()).collect()
    }

    pub fn exclusions(&self) -> &[Exclusion] {
        &self.exclusions
    }

    /// True if the point satisfies all interval bounds and exclusions.
    pub fn contains(
        &self,
        point: &Bindings,
        consts: &BTreeMap<Sym, f64>,
    ) -> Result<bool, DomainError> {
        let empty = Bindings::new();
        for (var, lo, hi) in &self.intervals {
            let lo = lo.eval_real(&empty, consts)?;
            let hi = hi.eval_real(&empty, consts)?;
            match point.get(var) {
                Some(v) if *v >= lo && *v <= hi => {}
                _ => return Ok(false),
            }
        }
        for ex in &self.exclusions {
            if ex.expr.eval_real(point, consts)? >= 0.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Draws `n` points by rejection sampling. The attempt budget is 10x the
    /// requested count; radicals can shrink the accepted box unpredictably.
    pub fn sample(
        &self,
        rng: &mut impl Rng,
        consts: &BTreeMap<Sym, f64>,
        n: usize,
    ) -> Result<Vec<Bindings>, DomainError> {
        let empty = Bindings::new();
        let mut bounds = Vec::with_capacity(self.intervals.len());
        for (var, lo, hi) in &self.intervals {
            let lo = lo.eval_real(&empty, consts)?;
            let hi = hi.eval_real(&empty, consts)?;
            if !(lo < hi) {
                return Err(DomainError::EmptyInterval(var.to_string()));
            }
            bounds.push((var.clone(), lo, hi));
        }
        let budget = 10 * n.max(1);
        let mut points = Vec::with_capacity(n);
        let mut attempts = 0usize;
        while points.len() < n && attempts < budget {
            attempts += 1;
            let mut point = Bindings::new();
            for (var, lo, hi) in &bounds {
                point.insert(var.clone(), rng.random_range(*lo..*hi));
            }
            let mut ok = true;
            for ex in &self.exclusions {
                match ex.expr.eval_real(&point, consts) {
                    Ok(v) if v < 0.0 => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                points.push(point);
            }
        }
        if points.len() < n {
            return Err(DomainError::SampleBudget {
                attempts,
                accepted: points.len(),
                requested: n,
            });
        }
        Ok(points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval::bindings;
    use rand::SeedableRng;

    fn disk_domain() -> Domain {
        // x^2 + y^2 < (0.9 r)^2
        let bound = Expr::pow(Expr::var("x"), 2) + Expr::pow(Expr::var("y"), 2)
            - Expr::ratio(81, 100) * Expr::pow(Expr::cnst("r"), 2);
        Domain::new()
            .interval("x", -Expr::cnst("r"), Expr::cnst("r"))
            .interval("y", -Expr::cnst("r"), Expr::cnst("r"))
            .exclude(bound, "inside 0.9 r disk")
    }

    #[test]
    fn samples_satisfy_bounds_and_exclusions() {
        let dom = disk_domain();
        let consts = bindings(&[("r", 2.0)]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let pts = dom.sample(&mut rng, &consts, 200).unwrap();
        assert_eq!(pts.len(), 200);
        for p in &pts {
            let (x, y) = (p["x"], p["y"]);
            assert!(x.abs() <= 2.0 && y.abs() <= 2.0);
            assert!(x * x + y * y < (0.9f64 * 2.0).powi(2));
            assert!(dom.contains(p, &consts).unwrap());
        }
    }

    #[test]
    fn impossible_exclusion_exhausts_budget() {
        let dom = Domain::new()
            .interval_f("x", 0.0, 1.0)
            .exclude(Expr::int(1), "always rejected");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let err = dom.sample(&mut rng, &BTreeMap::new(), 5).unwrap_err();
        assert!(matches!(err, DomainError::SampleBudget { attempts: 50, .. }));
    }
}
