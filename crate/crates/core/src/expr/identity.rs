//! Probabilistic expression-identity testing by randomized evaluation.
//!
//! Two analytic expressions that agree on a full-measure subset of a real box
//! are identical on it; sampling a few dozen points makes a disagreement
//! essentially impossible to miss. This sidesteps canonical simplification of
//! nested radicals entirely.

use super::domain::{Domain, DomainError};
use super::{Expr, Sym};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Shared numeric configuration: constant bindings and the RNG seed.
#[derive(Clone, Debug)]
pub struct NumericContext {
    pub consts: BTreeMap<Sym, f64>,
    pub seed: u64,
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext::new(1.0, 1.0, 1.0, 42)
    }
}

impl NumericContext {
    /// Standard setup: explicit `hbar`, `m`, `r` values.
    pub fn new(hbar: f64, mass: f64, radius: f64, seed: u64) -> Self {
        let mut consts = BTreeMap::new();
        consts.insert(Arc::<str>::from("hbar"), hbar);
        consts.insert(Arc::<str>::from("m"), mass);
        consts.insert(Arc::<str>::from("r"), radius);
        NumericContext { consts, seed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn rng_stream(&self, stream: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(stream.wrapping_mul(0x9e3779b97f4a7c15)))
    }

    pub fn with_const(mut self, name: &str, value: f64) -> Self {
        self.consts.insert(Arc::from(name), value);
        self
    }

    pub fn get(&self, name: &str) -> f64 {
        self.consts[name]
    }
}

/// Outcome of an identity test.
#[derive(Clone, Copy, Debug)]
pub struct IdentityReport {
    pub identical: bool,
    pub max_residual: f64,
    pub samples: usize,
}

/// Tests `a == b` at `n_samples` random domain points with relative tolerance
/// `tol`: pass iff `|a-b| <= tol (1 + |a| + |b|)` everywhere. Points where
/// evaluation hits a domain violation are resampled within the domain's
/// retry budget.
pub fn expr_identical(
    a: &Expr,
    b: &Expr,
    dom: &Domain,
    n_samples: usize,
    tol: f64,
    ctx: &NumericContext,
) -> Result<IdentityReport, DomainError> {
    let mut rng = ctx.rng();
    let mut max_residual: f64 = 0.0;
    let mut accepted = 0usize;
    let budget = 10 * n_samples.max(1);
    let mut attempts = 0usize;
    while accepted < n_samples && attempts < budget {
        let point = dom.sample(&mut rng, &ctx.consts, 1)?.pop().unwrap();
        attempts += 1;
        let va = match a.eval(&point, &ctx.consts) {
            Ok(v) => v,
            Err(e) if e.is_domain() => continue,
            Err(e) => return Err(DomainError::BadBound(e)),
        };
        let vb = match b.eval(&point, &ctx.consts) {
            Ok(v) => v,
            Err(e) if e.is_domain() => continue,
            Err(e) => return Err(DomainError::BadBound(e)),
        };
        let residual = (va - vb).norm() / (1.0 + va.norm() + vb.norm());
        max_residual = max_residual.max(residual);
        accepted += 1;
    }
    if accepted < n_samples {
        return Err(DomainError::SampleBudget {
            attempts,
            accepted,
            requested: n_samples,
        });
    }
    Ok(IdentityReport {
        identical: max_residual <= tol,
        max_residual,
        samples: accepted,
    })
}
