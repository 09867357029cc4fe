//! Explicit eigenfunctions of the geometric momentum components in both
//! coordinate systems, pointwise eigenvalue verification, and quadrature
//! certificates for symmetry (hermiticity) and orthogonality on the sphere.

use crate::expr::{Domain, DomainError, Expr, NumericContext};
use crate::operators::{DiffOperator, Wavefunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which Cartesian momentum component a fixture diagonalizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Px,
    Py,
    Pz,
}

impl Component {
    pub fn index(self) -> usize {
        match self {
            Component::Px => 0,
            Component::Py => 1,
            Component::Pz => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Component::Px => "px",
            Component::Py => "py",
            Component::Pz => "pz",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpectralError {
    #[error("fixtures must share a component (got {0} vs {1})")]
    ComponentMismatch(&'static str, &'static str),
    #[error("bad fixture config: {0}")]
    Config(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] crate::expr::EvalError),
}

/// A momentum eigenfunction in both coordinate systems.
///
/// The arbitrary profile factor is a function of the flow invariant of the
/// component: `y/sqrt(r^2-x^2-y^2)` for `p_x` and `x/sqrt(r^2-x^2-y^2)` for
/// `p_y` (equivalently `tan(theta) sin(phi)` and `tan(theta) cos(phi)`); the
/// `p_z` solution carries a plain normalizer instead.
#[derive(Clone, Debug)]
pub struct EigenFixture {
    pub component: Component,
    /// Eigenvalue in units of `hbar/r`.
    pub eigenvalue: f64,
    pub psi_spherical: Wavefunction,
    pub psi_cartesian: Wavefunction,
    pub profile: Expr,
    pub normalizer: f64,
}

fn sphere_s() -> Expr {
    Expr::sqrt(
        Expr::pow(Expr::cnst("r"), 2) - Expr::pow(Expr::var("x"), 2) - Expr::pow(Expr::var("y"), 2),
    )
}

/// `i r k / (2 hbar)` with `k` the eigenvalue.
fn half_phase_exponent(eigenvalue: f64) -> Expr {
    Expr::i()
        * Expr::cnst("r")
        * Expr::from_f64(eigenvalue)
        * Expr::ratio(1, 2)
        * Expr::pow(Expr::cnst("hbar"), -1)
}

fn full_phase_exponent(eigenvalue: f64) -> Expr {
    Expr::i() * Expr::cnst("r") * Expr::from_f64(eigenvalue) * Expr::pow(Expr::cnst("hbar"), -1)
}

/// The flow invariant each profile is a function of, per coordinate system.
pub fn invariant_argument(component: Component, spherical: bool) -> Option<Expr> {
    let (theta, phi) = (Expr::var("theta"), Expr::var("phi"));
    match (component, spherical) {
        (Component::Px, true) => Some(Expr::tan(theta) * Expr::sin(phi)),
        (Component::Py, true) => Some(Expr::tan(theta) * Expr::cos(phi)),
        (Component::Px, false) => Some(Expr::var("y") / sphere_s()),
        (Component::Py, false) => Some(Expr::var("x") / sphere_s()),
        (Component::Pz, _) => None,
    }
}

/// Builds the eigenfunction pair exactly as printed, specialized to the
/// requested eigenvalue and profile (`profile` is an expression in the free
/// variable `w`, default 1).
pub fn build_eigenfixture(
    component: Component,
    eigenvalue: f64,
    profile: Option<Expr>,
) -> EigenFixture {
    let profile = profile.unwrap_or_else(Expr::one);
    let normalizer = 1.0;
    let (theta, phi) = (Expr::var("theta"), Expr::var("phi"));
    let (x, y) = (Expr::var("x"), Expr::var("y"));
    let r = Expr::cnst("r");
    let margin = 0.15;
    let quarter = std::f64::consts::FRAC_PI_2;

    let apply_profile = |e: Expr, spherical: bool| -> Expr {
        match invariant_argument(component, spherical) {
            Some(arg) => (profile.substitute("w", &arg) * e).simplify(),
            None => (Expr::from_f64(normalizer) * e).simplify(),
        }
    };

    let (psi_sph, psi_cart, dom_sph, dom_cart) = match component {
        Component::Px => {
            let sx = Expr::sin(theta.clone()) * Expr::cos(phi.clone());
            let ratio = (Expr::one() + sx.clone()) / (Expr::one() - sx.clone());
            let sph = Expr::cpow(ratio, half_phase_exponent(eigenvalue))
                * Expr::sqrt(
                    Expr::cos(theta.clone()) * Expr::sin(theta.clone()) * Expr::sin(phi.clone()),
                )
                / (Expr::one() - Expr::pow(sx, 2));
            let cart = Expr::cpow(
                (r.clone() + x.clone()) / (r.clone() - x.clone()),
                half_phase_exponent(eigenvalue),
            ) * r.clone()
                / (Expr::pow(r.clone(), 2) - Expr::pow(x.clone(), 2))
                * Expr::sqrt(y.clone() * sphere_s());
            (
                sph,
                cart,
                Domain::new()
                    .interval_f("theta", margin, quarter - margin)
                    .interval_f("phi", margin, std::f64::consts::PI - margin),
                first_quadrant_cap(),
            )
        }
        Component::Py => {
            let sy = Expr::sin(theta.clone()) * Expr::sin(phi.clone());
            let ratio = (Expr::one() + sy.clone()) / (Expr::one() - sy.clone());
            let sph = Expr::cpow(ratio, half_phase_exponent(eigenvalue))
                * Expr::sqrt(
                    Expr::cos(theta.clone()) * Expr::sin(theta.clone()) * Expr::cos(phi.clone()),
                )
                / (Expr::one() - Expr::pow(sy, 2));
            let cart = Expr::cpow(
                (r.clone() + y.clone()) / (r.clone() - y.clone()),
                half_phase_exponent(eigenvalue),
            ) * r.clone()
                / (Expr::pow(r.clone(), 2) - Expr::pow(y.clone(), 2))
                * Expr::sqrt(x.clone() * sphere_s());
            (
                sph,
                cart,
                Domain::new()
                    .interval_f("theta", margin, quarter - margin)
                    .interval_f("phi", margin, quarter - margin),
                first_quadrant_cap(),
            )
        }
        Component::Pz => {
            let sph = Expr::cpow(
                Expr::cot(theta.clone() * Expr::ratio(1, 2)),
                full_phase_exponent(eigenvalue),
            ) * Expr::pow(Expr::sin(theta.clone()), -1);
            let rho = Expr::sqrt(Expr::pow(x.clone(), 2) + Expr::pow(y.clone(), 2));
            let cart = Expr::cpow(
                (r.clone() + sphere_s()) / rho.clone(),
                full_phase_exponent(eigenvalue),
            ) * r.clone()
                / rho;
            let inner = Expr::from_f64(0.04) * Expr::pow(Expr::cnst("r"), 2)
                - Expr::pow(x.clone(), 2)
                - Expr::pow(y.clone(), 2);
            (
                sph,
                cart,
                Domain::new()
                    .interval_f("theta", margin, std::f64::consts::PI - margin)
                    .interval_f("phi", margin, 2.0 * std::f64::consts::PI - margin),
                first_quadrant_cap().exclude(inner, "outside the 0.2 r axis neighborhood"),
            )
        }
    };

    EigenFixture {
        component,
        eigenvalue,
        psi_spherical: Wavefunction {
            expr: apply_profile(psi_sph, true),
            domain: dom_sph,
        },
        psi_cartesian: Wavefunction {
            expr: apply_profile(psi_cart, false),
            domain: dom_cart,
        },
        profile,
        normalizer,
    }
}

/// Patch region where all printed radicands stay strictly positive.
fn first_quadrant_cap() -> Domain {
    let r = Expr::cnst("r");
    let outside = Expr::pow(Expr::var("x"), 2) + Expr::pow(Expr::var("y"), 2)
        - Expr::from_f64(0.81) * Expr::pow(r.clone(), 2);
    Domain::new()
        .interval("x", Expr::from_f64(0.05) * r.clone(), Expr::from_f64(0.75) * r.clone())
        .interval("y", Expr::from_f64(0.05) * r.clone(), Expr::from_f64(0.75) * r)
        .exclude(outside, "inside the 0.9 r disk")
}

/// Max over `n` random domain points of
/// `|(op psi)(pt) - eigenvalue psi(pt)| / (1 + |psi(pt)|)`.
///
/// The operator's parameters decide which coordinate form is exercised.
pub fn eigen_residual(
    fix: &EigenFixture,
    op: &DiffOperator,
    dom: &Domain,
    n: usize,
    ctx: &NumericContext,
) -> Result<f64, SpectralError> {
    let psi = if op.params[0].as_ref() == "theta" {
        &fix.psi_spherical.expr
    } else {
        &fix.psi_cartesian.expr
    };
    let applied = op.apply(psi);
    let scale = fix.eigenvalue * ctx.get("hbar") / ctx.get("r");
    let mut rng = ctx.rng_stream(0x5e);
    let mut worst: f64 = 0.0;
    let mut accepted = 0usize;
    let budget = 10 * n;
    let mut attempts = 0usize;
    while accepted < n && attempts < budget {
        attempts += 1;
        let pt = dom.sample(&mut rng, &ctx.consts, 1)?.pop().unwrap();
        let (va, vp) = match (applied.eval(&pt, &ctx.consts), psi.eval(&pt, &ctx.consts)) {
            (Ok(a), Ok(p)) => (a, p),
            (Err(e), _) | (_, Err(e)) if e.is_domain() => continue,
            (Err(e), _) | (_, Err(e)) => return Err(SpectralError::Eval(e)),
        };
        worst = worst.max((va - vp * scale).norm() / (1.0 + vp.norm()));
        accepted += 1;
    }
    if accepted < n {
        return Err(SpectralError::Domain(DomainError::SampleBudget {
            attempts,
            accepted,
            requested: n,
        }));
    }
    Ok(worst)
}

/// Quadrature node: `(q1, q2, weight)` in the coordinates of the grid kind.
#[derive(Clone, Copy, Debug)]
pub struct QuadNode {
    pub q1: f64,
    pub q2: f64,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    /// `(theta, phi)` nodes, solid-angle measure; Gauss-Legendre in
    /// `cos(theta)` times a uniform azimuthal rule.
    FullSphere,
    /// `(x, y)` nodes over the Monge disk `x^2 + y^2 <= (0.9 r)^2` with the
    /// surface measure `sqrt(g) dx dy`.
    MongeCap,
}

#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub kind: GridKind,
    pub n_theta: usize,
    pub n_phi: usize,
    pub nodes: Vec<QuadNode>,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureGrid {
    pub fn full_sphere(n_theta: usize, n_phi: usize) -> QuadratureGrid {
        let (u, w) = gauss_legendre(n_theta);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (ui, wi) in u.iter().zip(&w) {
            let theta = ui.clamp(-1.0, 1.0).acos();
            for j in 0..n_phi {
                nodes.push(QuadNode {
                    q1: theta,
                    q2: dphi * j as f64,
                    weight: wi * dphi,
                });
            }
        }
        QuadratureGrid {
            kind: GridKind::FullSphere,
            n_theta,
            n_phi,
            nodes,
        }
    }

    /// Polar Gauss-Legendre rule over the Monge disk, weighted by the
    /// numerically evaluated `sqrt(det g)` of the given geometry.
    pub fn monge_cap(
        geom: &crate::geometry::GeometryData,
        n_r: usize,
        n_phi: usize,
        ctx: &NumericContext,
    ) -> Result<QuadratureGrid, SpectralError> {
        let rho = 0.9 * ctx.get("r");
        let (t, w) = gauss_legendre(n_r);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_r * n_phi);
        for (ti, wi) in t.iter().zip(&w) {
            let u = 0.5 * rho * (ti + 1.0);
            let jac = 0.5 * rho * u;
            for j in 0..n_phi {
                let alpha = dphi * j as f64;
                let (x, y) = (u * alpha.cos(), u * alpha.sin());
                let point = crate::expr::bindings(&[("x", x), ("y", y)]);
                let g = geom.det_metric.eval(&point, &ctx.consts)?.re;
                nodes.push(QuadNode {
                    q1: x,
                    q2: y,
                    weight: wi * dphi * jac * g.max(0.0).sqrt(),
                });
            }
        }
        Ok(QuadratureGrid {
            kind: GridKind::MongeCap,
            n_theta: n_r,
            n_phi,
            nodes,
        })
    }

    /// Integrates a node function with pairwise (tree) summation, keeping
    /// the reduction order deterministic and the rounding error logarithmic.
    pub fn integrate<F>(&self, mut f: F) -> Result<Complex64, SpectralError>
    where
        F: FnMut(&QuadNode) -> Result<Complex64, SpectralError>,
    {
        let mut vals = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            vals.push(f(node)? * node.weight);
        }
        Ok(pairwise_sum(&vals))
    }
}

pub fn pairwise_sum(vals: &[Complex64]) -> Complex64 {
    match vals.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => vals[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&vals[..mid]) + pairwise_sum(&vals[mid..])
        }
    }
}

/// The symmetry defect `<op f, g> - <f, op g>` under the grid's surface
/// measure. Near zero certifies the operator is symmetric on the span of the
/// battery; the curvature term of the geometric momentum is exactly what
/// makes this vanish.
pub fn hermiticity_defect(
    op: &DiffOperator,
    f: &Wavefunction,
    g: &Wavefunction,
    grid: &QuadratureGrid,
    ctx: &NumericContext,
) -> Result<Complex64, SpectralError> {
    let op_f = op.apply(&f.expr);
    let op_g = op.apply(&g.expr);
    let (n1, n2) = (op.params[0].clone(), op.params[1].clone());
    grid.integrate(|node| {
        let mut pt = crate::expr::Bindings::new();
        pt.insert(n1.clone(), node.q1);
        pt.insert(n2.clone(), node.q2);
        let lhs = op_f.eval(&pt, &ctx.consts)?.conj() * g.expr.eval(&pt, &ctx.consts)?;
        let rhs = f.expr.eval(&pt, &ctx.consts)?.conj() * op_g.eval(&pt, &ctx.consts)?;
        Ok(lhs - rhs)
    })
}

/// Overlap of two eigenfixtures of the same component, computed as a
/// wave-packet-regularized integral.
///
/// Momentum eigenfunctions on the sphere are delta-normalized continuum
/// states: the raw overlap has no limit, so the integral is taken along the
/// component's flow coordinate `t = atanh(x_j / r)` (in which the phase is
/// exactly `exp(i dk r t / hbar)` and the envelope is flat) under a Gaussian
/// window whose width grows with the grid. Distinct eigenvalues then decay
/// with refinement while self-overlap diverges, which is the honest
/// continuum-normalization statement.
pub fn orthogonality_check(
    fix1: &EigenFixture,
    fix2: &EigenFixture,
    grid: &QuadratureGrid,
    ctx: &NumericContext,
) -> Result<Complex64, SpectralError> {
    if fix1.component != fix2.component {
        return Err(SpectralError::ComponentMismatch(
            fix1.component.label(),
            fix2.component.label(),
        ));
    }
    let n_t = grid.n_theta.max(4);
    // beyond |t| ~ 18, tanh(t) is indistinguishable from 1 in f64 and the
    // slice degenerates onto the pole; the window saturates there
    let half_width = (n_t as f64 / 8.0).min(15.0);
    let sigma = half_width / 4.0;
    let dt = 2.0 * half_width / (n_t as f64 - 1.0);
    let r = ctx.get("r");

    // Azimuthal arc around the component axis; restricted to the positivity
    // quarter for the px/py fixtures.
    let (arc_lo, arc_hi) = match fix1.component {
        Component::Pz => (0.0, 2.0 * std::f64::consts::PI),
        _ => (0.05, std::f64::consts::FRAC_PI_2 - 0.05),
    };
    let n_arc = grid.n_phi.max(4);
    let darc = (arc_hi - arc_lo) / n_arc as f64;

    let psi1 = &fix1.psi_spherical.expr;
    let psi2 = &fix2.psi_spherical.expr;
    let mut vals = Vec::with_capacity(n_t * n_arc);
    for i in 0..n_t {
        let t = -half_width + dt * i as f64;
        let window = (-t * t / (2.0 * sigma * sigma)).exp();
        let (tanh_t, sech_t) = (t.tanh(), 1.0 / t.cosh());
        for j in 0..n_arc {
            let a = arc_lo + darc * (j as f64 + 0.5);
            // 3D point on the unit sphere, sliced along the component axis.
            let (xs, ys, zs) = match fix1.component {
                Component::Pz => (sech_t * a.cos(), sech_t * a.sin(), tanh_t),
                Component::Px => (tanh_t, sech_t * a.cos(), sech_t * a.sin()),
                Component::Py => (sech_t * a.cos(), tanh_t, sech_t * a.sin()),
            };
            let theta = zs.clamp(-1.0, 1.0).acos();
            let phi = ys.atan2(xs).rem_euclid(2.0 * std::f64::consts::PI);
            let pt = crate::expr::bindings(&[("theta", theta), ("phi", phi)]);
            let v1 = psi1.eval(&pt, &ctx.consts)?;
            let v2 = psi2.eval(&pt, &ctx.consts)?;
            // surface measure r^2 sech^2 t dt da, tapered by the window
            vals.push(v1.conj() * v2 * (window * r * r * sech_t * sech_t * dt * darc));
        }
    }
    Ok(pairwise_sum(&vals))
}

/// Declarative fixture description, loadable from JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureConfig {
    pub component: Component,
    pub eigenvalues: Vec<f64>,
    /// Profile expression in the free variable `w`, in the prefix text
    /// format; default 1.
    #[serde(default)]
    pub profile: Option<String>,
    pub n_theta: usize,
    pub n_phi: usize,
}

impl FixtureConfig {
    pub fn from_json(text: &str) -> Result<FixtureConfig, SpectralError> {
        serde_json::from_str(text).map_err(|e| SpectralError::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<Vec<EigenFixture>, SpectralError> {
        if self.n_theta == 0 || self.n_phi == 0 {
            return Err(SpectralError::Config("grid sizes must be positive".into()));
        }
        let profile = match &self.profile {
            Some(text) => Some(
                crate::expr::parse_expr(text).map_err(|e| SpectralError::Config(e.to_string()))?,
            ),
            None => None,
        };
        Ok(self
            .eigenvalues
            .iter()
            .map(|k| build_eigenfixture(self.component, *k, profile.clone()))
            .collect())
    }
}
