//! Verification suites: each suite derives the objects under test from
//! scratch, certifies every claim in its catalog against the printed closed
//! forms, and returns a [`VerificationReport`]. Suspect printed formulas are
//! adjudicated numerically and reported as flagged records instead of being
//! silently corrected.

use crate::claims;
use crate::expr::{bindings, expr_identical, Domain, DomainError, Expr, NumericContext};
use crate::geometry::{build_geometry, flat_plane, monge_sphere, spherical_sphere, GeometryData, GeometryError};
use crate::operators::{
    commutator_residual, geometric_momentum, stripped_momentum, surface_hamiltonian,
    test_function_battery, DiffOperator, OpError, Wavefunction,
};
use crate::phase::{
    build_bracket_table, classical_eom, dirac_bracket, kinetic_hamiltonian, phase_domain, poisson,
    run_dirac_algorithm, sphere_primary_hamiltonian, weak_reduce, PhaseError, StepKind,
};
use crate::report::{ConfigEcho, Record, VerificationReport};
use crate::spectral::{
    build_eigenfixture, eigen_residual, hermiticity_defect, orthogonality_check, Component,
    FixtureConfig, QuadratureGrid, SpectralError,
};
use num_complex::Complex64;
use rand::Rng;

/// Every tolerance used by the suites, pinned in one place.
pub mod tolerances {
    pub const GEOMETRY_GOLDEN: f64 = 1e-10;
    pub const OPERATOR_GOLDEN: f64 = 1e-10;
    pub const COMMUTATOR: f64 = 1e-9;
    pub const JACOBI: f64 = 1e-8;
    pub const COORD_INVARIANCE: f64 = 1e-9;
    pub const BRACKET_TABLE: f64 = 1e-10;
    pub const CHAIN_RATIO: f64 = 1e-10;
    pub const CONSERVATION: f64 = 1e-9;
    pub const DIRAC_JACOBI: f64 = 1e-9;
    pub const POISSON_PROPERTY: f64 = 1e-10;
    pub const EIGEN: f64 = 1e-9;
    pub const CROSS_COORD: f64 = 1e-10;
    pub const HERMITICITY: f64 = 1e-8;
    pub const CONTRAST_FLOOR: f64 = 1e-3;
    pub const QUADRATURE_SELFTEST: f64 = 1e-12;
    pub const ORTHO_DECAY_RATIO: f64 = 0.5;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Geometry,
    Momentum,
    Constraints,
    Spectral,
    All,
}

impl std::str::FromStr for SuiteName {
    type Err = String;
    fn from_str(s: &str) -> Result<SuiteName, String> {
        match s {
            "geometry" => Ok(SuiteName::Geometry),
            "momentum" => Ok(SuiteName::Momentum),
            "constraints" => Ok(SuiteName::Constraints),
            "spectral" => Ok(SuiteName::Spectral),
            "all" => Ok(SuiteName::All),
            other => Err(format!(
                "unknown suite `{other}` (expected geometry|momentum|constraints|spectral|all)"
            )),
        }
    }
}

impl SuiteName {
    pub fn label(self) -> &'static str {
        match self {
            SuiteName::Geometry => "geometry",
            SuiteName::Momentum => "momentum",
            SuiteName::Constraints => "constraints",
            SuiteName::Spectral => "spectral",
            SuiteName::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub hbar: f64,
    pub mass: f64,
    pub radius: f64,
    pub seed: u64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub tol_override: Option<f64>,
    /// Debug contrast: construct the momentum without its curvature term.
    pub include_mn_term: bool,
    pub fixtures: Option<FixtureConfig>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            hbar: 1.0,
            mass: 1.0,
            radius: 1.0,
            seed: 42,
            n_theta: 48,
            n_phi: 96,
            tol_override: None,
            include_mn_term: true,
            fixtures: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("bad config: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Operator(#[from] OpError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl SuiteConfig {
    fn validate(&self) -> Result<(), SuiteError> {
        if self.n_theta == 0 || self.n_phi == 0 {
            return Err(SuiteError::Config("grid sizes must be positive".into()));
        }
        if let Some(t) = self.tol_override {
            if !(t > 0.0 && t < 1.0) {
                return Err(SuiteError::Config(format!(
                    "tolerance override {t} outside (0, 1)"
                )));
            }
        }
        for (name, v) in [("hbar", self.hbar), ("mass", self.mass), ("radius", self.radius)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SuiteError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    fn ctx(&self) -> NumericContext {
        NumericContext::new(self.hbar, self.mass, self.radius, self.seed)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            hbar: self.hbar,
            mass: self.mass,
            radius: self.radius,
            seed: self.seed,
            n_theta: self.n_theta,
            n_phi: self.n_phi,
            tol_override: self.tol_override,
            mn_term_enabled: self.include_mn_term,
        }
    }
}

/// Runs one suite (or all of them) and aggregates the records. Deterministic
/// for a fixed config; the exit decision belongs to the caller.
pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    cfg.validate()?;
    let mut report = VerificationReport::new(name.label(), cfg.echo());
    match name {
        SuiteName::Geometry => report.extend(geometry_records(cfg)?),
        SuiteName::Momentum => report.extend(momentum_records(cfg)?),
        SuiteName::Constraints => report.extend(constraints_records(cfg)?),
        SuiteName::Spectral => report.extend(spectral_records(cfg)?),
        SuiteName::All => {
            report.extend(geometry_records(cfg)?);
            report.extend(momentum_records(cfg)?);
            report.extend(constraints_records(cfg)?);
            report.extend(spectral_records(cfg)?);
        }
    }
    Ok(report)
}

const IDENT_SAMPLES: usize = 50;

fn ident_record(
    id: &str,
    formula: &str,
    pairs: &[(Expr, Expr)],
    dom: &Domain,
    tol: f64,
    ctx: &NumericContext,
) -> Result<Record, SuiteError> {
    let mut worst: f64 = 0.0;
    for (got, want) in pairs {
        let rep = expr_identical(got, want, dom, IDENT_SAMPLES, tol, ctx)?;
        worst = worst.max(rep.max_residual);
    }
    Ok(Record::check(id, formula, tol, worst, IDENT_SAMPLES * pairs.len()))
}

/// Matched-point sampler for the common first-quadrant cap of the two sphere
/// patches: `(theta, phi)` with the corresponding Monge `(x, y)`.
fn matched_points(ctx: &NumericContext, n: usize) -> Vec<(f64, f64, f64, f64)> {
    let mut rng = ctx.rng_stream(0x3a);
    let r = ctx.get("r");
    (0..n)
        .map(|_| {
            let theta: f64 = rng.random_range(0.3..1.1);
            let phi: f64 = rng.random_range(0.2..1.35);
            (theta, phi, r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------------

fn geometry_records(cfg: &SuiteConfig) -> Result<Vec<Record>, SuiteError> {
    let ctx = cfg.ctx();
    let tol = cfg.tol(tolerances::GEOMETRY_GOLDEN);
    let monge = build_geometry(monge_sphere("r"), &ctx)?;
    let sph = build_geometry(spherical_sphere("r"), &ctx)?;
    let mut out = Vec::new();

    let s = crate::phase::sphere_radical();
    let (x, y) = (Expr::var("x"), Expr::var("y"));
    let r2 = Expr::pow(Expr::cnst("r"), 2);
    let inv_r2 = Expr::pow(Expr::cnst("r"), -2);
    let inv_s = Expr::pow(s.clone(), -1);

    // covariant basis rows
    let rx_claim = [
        Expr::one(),
        Expr::zero(),
        (Expr::int(-1) * x.clone() * inv_s.clone()).simplify(),
    ];
    let ry_claim = [
        Expr::zero(),
        Expr::one(),
        (Expr::int(-1) * y.clone() * inv_s.clone()).simplify(),
    ];
    for (id, formula, row, claim) in [
        ("eq5-rx", "r_x = (1, 0, -x/sqrt(r^2-x^2-y^2))", 0usize, &rx_claim),
        ("eq5-ry", "r_y = (0, 1, -y/sqrt(r^2-x^2-y^2))", 1, &ry_claim),
    ] {
        let pairs: Vec<(Expr, Expr)> = (0..3)
            .map(|j| (monge.basis_cov[row][j].clone(), claim[j].clone()))
            .collect();
        out.push(ident_record(id, formula, &pairs, &monge.patch.domain, tol, &ctx)?);
    }

    // contravariant basis rows
    let rux_claim = [
        ((r2.clone() - Expr::pow(x.clone(), 2)) * inv_r2.clone()).simplify(),
        (Expr::int(-1) * x.clone() * y.clone() * inv_r2.clone()).simplify(),
        (Expr::int(-1) * x.clone() * s.clone() * inv_r2.clone()).simplify(),
    ];
    let ruy_claim = [
        (Expr::int(-1) * x.clone() * y.clone() * inv_r2.clone()).simplify(),
        ((r2.clone() - Expr::pow(y.clone(), 2)) * inv_r2.clone()).simplify(),
        (Expr::int(-1) * y.clone() * s.clone() * inv_r2.clone()).simplify(),
    ];
    for (id, formula, row, claim) in [
        ("eq6-rx", "r^x = (1/r^2)(r^2-x^2, -xy, -x sqrt(r^2-x^2-y^2))", 0usize, &rux_claim),
        ("eq6-ry", "r^y = (1/r^2)(-xy, r^2-y^2, -y sqrt(r^2-x^2-y^2))", 1, &ruy_claim),
    ] {
        let pairs: Vec<(Expr, Expr)> = (0..3)
            .map(|j| (monge.basis_contra[row][j].clone(), claim[j].clone()))
            .collect();
        out.push(ident_record(id, formula, &pairs, &monge.patch.domain, tol, &ctx)?);
    }

    // normal and curvatures
    let n_claim = [
        (x.clone() * Expr::pow(Expr::cnst("r"), -1)).simplify(),
        (y.clone() * Expr::pow(Expr::cnst("r"), -1)).simplify(),
        (s.clone() * Expr::pow(Expr::cnst("r"), -1)).simplify(),
    ];
    let pairs: Vec<(Expr, Expr)> = (0..3)
        .map(|j| (monge.normal[j].clone(), n_claim[j].clone()))
        .collect();
    out.push(ident_record(
        "eq7-n",
        "n = (1/r)(x, y, sqrt(r^2-x^2-y^2))",
        &pairs,
        &monge.patch.domain,
        tol,
        &ctx,
    )?);
    out.push(ident_record(
        "eq7-M",
        "M = -1/r",
        &[(monge.mean_curvature.clone(), (-Expr::pow(Expr::cnst("r"), -1)).simplify())],
        &monge.patch.domain,
        tol,
        &ctx,
    )?);
    out.push(ident_record(
        "gauss-K",
        "K = det b / det g = 1/r^2",
        &[(monge.gauss_curvature.clone(), Expr::pow(Expr::cnst("r"), -2))],
        &monge.patch.domain,
        tol,
        &ctx,
    )?);
    out.push(ident_record(
        "vgp-zero",
        "V_gp = -(hbar^2/2m)(M^2 - K) = 0 on the sphere",
        &[
            ((Expr::pow(monge.mean_curvature.clone(), 2) - monge.gauss_curvature.clone()).simplify(),
             Expr::zero()),
            (monge.geometric_potential.clone(), Expr::zero()),
        ],
        &monge.patch.domain,
        tol,
        &ctx,
    )?);

    // structural invariants on both patches
    for (label, geom) in [("monge", &monge), ("spherical", &sph)] {
        let dot_nn = (0..3)
            .map(|j| Expr::pow(geom.normal[j].clone(), 2))
            .fold(Expr::zero(), |a, b| a + b);
        let mut pairs = vec![(dot_nn.simplify(), Expr::one())];
        for mu in 0..2 {
            let dot = (0..3)
                .map(|j| geom.normal[j].clone() * geom.basis_cov[mu][j].clone())
                .fold(Expr::zero(), |a, b| a + b);
            pairs.push((dot.simplify(), Expr::zero()));
        }
        out.push(ident_record(
            &format!("normal-unit-{label}"),
            "n.n = 1 and n.r_mu = 0",
            &pairs,
            &geom.patch.domain,
            tol,
            &ctx,
        )?);
        let mut pairs = vec![(
            (geom.metric[0][1].clone() - geom.metric[1][0].clone()).simplify(),
            Expr::zero(),
        )];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Expr::zero();
                for k in 0..2 {
                    acc = acc + geom.metric[i][k].clone() * geom.metric_inv[k][j].clone();
                }
                let want = if i == j { Expr::one() } else { Expr::zero() };
                pairs.push((acc.simplify(), want));
            }
        }
        out.push(ident_record(
            &format!("metric-inverse-{label}"),
            "g symmetric and g g^-1 = 1",
            &pairs,
            &geom.patch.domain,
            tol,
            &ctx,
        )?);
        // duality r^mu . r_nu = delta
        let mut pairs = Vec::new();
        for mu in 0..2 {
            for nu in 0..2 {
                let dot = (0..3)
                    .map(|j| geom.basis_contra[mu][j].clone() * geom.basis_cov[nu][j].clone())
                    .fold(Expr::zero(), |a, b| a + b);
                let want = if mu == nu { Expr::one() } else { Expr::zero() };
                pairs.push((dot.simplify(), want));
            }
        }
        out.push(ident_record(
            &format!("basis-duality-{label}"),
            "r^mu . r_nu = delta^mu_nu",
            &pairs,
            &geom.patch.domain,
            tol,
            &ctx,
        )?);
    }

    // spherical metric closed form
    out.push(ident_record(
        "spherical-metric",
        "g = diag(r^2, r^2 sin^2 theta)",
        &[
            (sph.metric[0][0].clone(), r2.clone()),
            (sph.metric[0][1].clone(), Expr::zero()),
            (
                sph.metric[1][1].clone(),
                (r2 * Expr::pow(Expr::sin(Expr::var("theta")), 2)).simplify(),
            ),
        ],
        &sph.patch.domain,
        tol,
        &ctx,
    )?);
    out.push(ident_record(
        "spherical-M",
        "M = -1/r in either parametrization",
        &[(sph.mean_curvature.clone(), (-Expr::pow(Expr::cnst("r"), -1)).simplify())],
        &sph.patch.domain,
        tol,
        &ctx,
    )?);

    // flat contrast
    let flat = build_geometry(flat_plane(), &ctx)?;
    out.push(ident_record(
        "flat-plane",
        "plane: M = K = V_gp = 0",
        &[
            (flat.mean_curvature.clone(), Expr::zero()),
            (flat.gauss_curvature.clone(), Expr::zero()),
            (flat.geometric_potential.clone(), Expr::zero()),
        ],
        &flat.patch.domain,
        tol,
        &ctx,
    )?);

    // parametrization invariance of the curvature scalars at matched points
    let pts = matched_points(&ctx, IDENT_SAMPLES);
    let mut worst: f64 = 0.0;
    for field in [
        (&monge.mean_curvature, &sph.mean_curvature),
        (&monge.gauss_curvature, &sph.gauss_curvature),
        (&monge.geometric_potential, &sph.geometric_potential),
    ] {
        for (theta, phi, x, y) in &pts {
            let a = field.0.eval(&bindings(&[("x", *x), ("y", *y)]), &ctx.consts);
            let b = field
                .1
                .eval(&bindings(&[("theta", *theta), ("phi", *phi)]), &ctx.consts);
            if let (Ok(a), Ok(b)) = (a, b) {
                worst = worst.max((a - b).norm() / (1.0 + a.norm() + b.norm()));
            }
        }
    }
    out.push(Record::check(
        "param-invariance",
        "M, K, V_gp agree between patches at matched points",
        tol,
        worst,
        3 * pts.len(),
    ));

    Ok(out)
}

// ---------------------------------------------------------------------------
// momentum
// ---------------------------------------------------------------------------

fn momentum_components(cfg: &SuiteConfig, geom: &GeometryData) -> [DiffOperator; 3] {
    if cfg.include_mn_term {
        geometric_momentum(geom)
    } else {
        stripped_momentum(geom)
    }
}

fn coeff_pairs(got: &DiffOperator, want: &DiffOperator) -> Vec<(Expr, Expr)> {
    crate::operators::MultiIndex::ALL
        .iter()
        .map(|idx| (got.coeff(*idx), want.coeff(*idx)))
        .filter(|(a, b)| !(a.is_zero() && b.is_zero()))
        .collect()
}

fn momentum_battery(geom: &GeometryData, ctx: &NumericContext, stream: u64) -> Vec<Wavefunction> {
    let mut rng = ctx.rng_stream(stream);
    let r = ctx.get("r");
    test_function_battery(
        &geom.patch.params,
        [(-0.6 * r, 0.6 * r), (-0.6 * r, 0.6 * r)],
        5,
        &geom.patch.domain,
        &mut rng,
    )
}

fn momentum_records(cfg: &SuiteConfig) -> Result<Vec<Record>, SuiteError> {
    let ctx = cfg.ctx();
    let golden_tol = cfg.tol(tolerances::OPERATOR_GOLDEN);
    let comm_tol = cfg.tol(tolerances::COMMUTATOR);
    let monge = build_geometry(monge_sphere("r"), &ctx)?;
    let sph = build_geometry(spherical_sphere("r"), &ctx)?;
    let p_monge = momentum_components(cfg, &monge);
    let p_sph = momentum_components(cfg, &sph);
    let h_monge = surface_hamiltonian(&monge, &monge.geometric_potential.clone());
    let mut out = Vec::new();

    // golden coefficient tables, Monge patch
    let printed = claims::monge_momentum_printed();
    for (j, id, formula) in [
        (0usize, "eq8-px", "p_x = -i hbar (1/r^2)((r^2-x^2) d_x - xy d_y - x)"),
        (1, "eq9-py", "p_y = -i hbar (1/r^2)(-xy d_x + (r^2-y^2) d_y - y)"),
        (2, "eq10-pz", "p_z = +i hbar (sqrt(r^2-x^2-y^2)/r^2)(x d_x + y d_y + 1)"),
    ] {
        out.push(ident_record(
            id,
            formula,
            &coeff_pairs(&p_monge[j], &printed[j]),
            &monge.patch.domain,
            golden_tol,
            &ctx,
        )?);
    }

    // golden coefficient tables, spherical patch (p_y adjudicated below)
    let printed_sph = claims::spherical_momentum_printed(-1);
    let derived_sph = claims::spherical_momentum_printed(1);
    for (j, id, formula) in [
        (0usize, "siv-px", "p_x = -(i hbar/r)(cos t cos f d_t - (sin f/sin t) d_f - sin t cos f)"),
        (2, "siv-pz", "p_z = -(i hbar/r)(-sin t d_t - cos t)"),
    ] {
        out.push(ident_record(
            id,
            formula,
            &coeff_pairs(&p_sph[j], &printed_sph[j]),
            &sph.patch.domain,
            golden_tol,
            &ctx,
        )?);
    }
    {
        // the printed d_phi sign of p_y disagrees with the derived operator;
        // both readings are tested and the winner recorded
        let rep_printed = ident_max(&coeff_pairs(&p_sph[1], &printed_sph[1]), &sph.patch.domain, &ctx)?;
        let rep_derived = ident_max(&coeff_pairs(&p_sph[1], &derived_sph[1]), &sph.patch.domain, &ctx)?;
        let (winner, w_res, l_res) = if rep_derived <= rep_printed {
            ("+(cos f/sin t) d_f", rep_derived, rep_printed)
        } else {
            ("-(cos f/sin t) d_f", rep_printed, rep_derived)
        };
        out.push(Record::flagged(
            "siv-py-sign",
            "p_y = -(i hbar/r)(cos t sin f d_t - (cos f/sin t) d_f - sin t sin f)",
            golden_tol,
            w_res,
            IDENT_SAMPLES,
            format!(
                "d_phi term adjudicated to {winner} (residual {w_res:.3e}); the printed sign leaves residual {l_res:.3e}"
            ),
        ));
    }

    // Hamiltonian expansion
    out.push(ident_record(
        "eq27-H",
        "H = -(hbar^2/2m)((r^2-x^2)/r^2 dxx - (2xy/r^2) dxdy - (2x/r^2) dx - (2y/r^2) dy + (r^2-y^2)/r^2 dyy)",
        &coeff_pairs(&h_monge, &claims::monge_hamiltonian_printed()),
        &monge.patch.domain,
        golden_tol,
        &ctx,
    )?);

    // independent diagonal-metric oracle for the spherical Laplacian
    {
        let h_sph = surface_hamiltonian(&sph, &sph.geometric_potential.clone());
        let theta = Expr::var("theta");
        let kin = Expr::ratio(-1, 2)
            * Expr::pow(Expr::cnst("hbar"), 2)
            * Expr::pow(Expr::cnst("m"), -1)
            * Expr::pow(Expr::cnst("r"), -2);
        let oracle = DiffOperator::new(sph.patch.params.clone())
            .with_coeff(crate::operators::MultiIndex::D11, kin.clone())
            .with_coeff(
                crate::operators::MultiIndex::D22,
                kin.clone() * Expr::pow(Expr::sin(theta.clone()), -2),
            )
            .with_coeff(crate::operators::MultiIndex::D1, kin * Expr::cot(theta));
        out.push(ident_record(
            "sphere-laplacian",
            "H = -(hbar^2/2m r^2)(dtt + cot t dt + dff/sin^2 t)",
            &coeff_pairs(&h_sph, &oracle),
            &sph.patch.domain,
            golden_tol,
            &ctx,
        )?);
    }

    // commutator families on the Monge patch
    let battery = momentum_battery(&monge, &ctx, 0x11);
    let coords = ["x", "y", "z"];
    let momenta = ["px", "py", "pz"];
    let mult = |i: usize| DiffOperator::mul_by(monge.patch.params.clone(), claims::monge_coordinate(i));

    {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let zero = DiffOperator::new(monge.patch.params.clone());
                let res = commutator_residual(
                    &mult(i),
                    &mult(j),
                    &zero,
                    &battery,
                    &monge.patch.domain,
                    30,
                    &ctx,
                )?;
                worst = worst.max(res);
            }
        }
        out.push(Record::check(
            "eq28-xx",
            "[x_i, x_j] = 0",
            comm_tol,
            worst,
            9 * battery.len() * 30,
        ));
    }
    for i in 0..3 {
        for j in 0..3 {
            let claimed = claims::xp_commutator_rhs(i, j);
            let res = commutator_residual(
                &mult(i),
                &p_monge[j],
                &claimed,
                &battery,
                &monge.patch.domain,
                30,
                &ctx,
            )?;
            out.push(Record::check(
                &format!("eq29-{}-{}", coords[i], momenta[j]),
                "[x_i, p_j] = i hbar (delta_ij - x_i x_j/r^2)",
                comm_tol,
                res,
                battery.len() * 30,
            ));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let claimed = claims::pp_commutator_rhs(&p_monge, i, j)?;
            let res = commutator_residual(
                &p_monge[i],
                &p_monge[j],
                &claimed,
                &battery,
                &monge.patch.domain,
                30,
                &ctx,
            )?;
            out.push(Record::check(
                &format!("eq30-{}-{}", momenta[i], momenta[j]),
                "[p_i, p_j] = -(i hbar/r^2)(x_i p_j - x_j p_i)",
                comm_tol,
                res,
                battery.len() * 30,
            ));
        }
    }
    for i in 0..3 {
        let claimed = claims::xh_commutator_rhs(&p_monge, i);
        let res = commutator_residual(
            &mult(i),
            &h_monge,
            &claimed,
            &battery,
            &monge.patch.domain,
            30,
            &ctx,
        )?;
        out.push(Record::check(
            &format!("eq34-{}-H", coords[i]),
            "[x_i, H] = i hbar p_i/m",
            comm_tol,
            res,
            battery.len() * 30,
        ));
    }
    for i in 0..3 {
        let claimed = claims::ph_commutator_rhs(&h_monge, i, true)?;
        let res = commutator_residual(
            &p_monge[i],
            &h_monge,
            &claimed,
            &battery,
            &monge.patch.domain,
            30,
            &ctx,
        )?;
        out.push(Record::check(
            &format!("eq35-{}-H", momenta[i]),
            "[p_i, H] = -i hbar (x_i H + H x_i)/(m r^2)",
            comm_tol,
            res,
            battery.len() * 30,
        ));
    }

    // the printed mass scaling of the p-H commutator only holds at m = 1;
    // adjudicated at an off-unit mass
    {
        let ctx_m = NumericContext::new(cfg.hbar, 1.7, cfg.radius, cfg.seed);
        let battery_m = momentum_battery(&monge, &ctx_m, 0x12);
        let printed = claims::ph_commutator_rhs(&h_monge, 0, true)?;
        let massless = claims::ph_commutator_rhs(&h_monge, 0, false)?;
        let res_printed = commutator_residual(
            &p_monge[0],
            &h_monge,
            &printed,
            &battery_m,
            &monge.patch.domain,
            30,
            &ctx_m,
        )?;
        let res_massless = commutator_residual(
            &p_monge[0],
            &h_monge,
            &massless,
            &battery_m,
            &monge.patch.domain,
            30,
            &ctx_m,
        )?;
        let (winner, w_res, l_res) = if res_massless <= res_printed {
            ("-i hbar (x_i H + H x_i)/r^2 (no mass factor)", res_massless, res_printed)
        } else {
            ("the printed mass-scaled form", res_printed, res_massless)
        };
        out.push(Record::flagged(
            "eq35-mass-scaling",
            "[p_i, H] mass factor, tested at m = 1.7",
            comm_tol,
            w_res,
            battery_m.len() * 30,
            format!("adjudicated to {winner} (residual {w_res:.3e}); the other reading leaves {l_res:.3e}"),
        ));
    }

    // Jacobi identity on (p_x, p_y, x.)
    {
        let mut worst: f64 = 0.0;
        let mut rng = ctx.rng_stream(0x13);
        let xfn = claims::monge_coordinate(0);
        for wf in &battery {
            let f = &wf.expr;
            let comm = |a: &DiffOperator, b: &DiffOperator, g: &Expr| -> Expr {
                (a.apply(&b.apply(g)) - b.apply(&a.apply(g))).simplify()
            };
            // [[px, py], x.](f) + [[py, x.], px](f) + [[x., px], py](f)
            let c_ab = |g: &Expr| comm(&p_monge[0], &p_monge[1], g);
            let t1 = (c_ab(&(xfn.clone() * f.clone()).simplify())
                - xfn.clone() * c_ab(f))
            .simplify();
            let bx = |g: &Expr| {
                (p_monge[1].apply(&(xfn.clone() * g.clone()).simplify())
                    - xfn.clone() * p_monge[1].apply(g))
                .simplify()
            };
            let t2 = (bx(&p_monge[0].apply(f)) - p_monge[0].apply(&bx(f))).simplify();
            let xa = |g: &Expr| {
                (xfn.clone() * p_monge[0].apply(g)
                    - p_monge[0].apply(&(xfn.clone() * g.clone()).simplify()))
                .simplify()
            };
            let t3 = (xa(&p_monge[1].apply(f)) - p_monge[1].apply(&xa(f))).simplify();
            let total = (t1 + t2 + t3).simplify();
            let pts = monge.patch.domain.sample(&mut rng, &ctx.consts, 30)?;
            for p in &pts {
                if let (Ok(v), Ok(fv)) = (total.eval(&p, &ctx.consts), f.eval(&p, &ctx.consts)) {
                    worst = worst.max(v.norm() / (1.0 + fv.norm()));
                }
            }
        }
        out.push(Record::check(
            "jacobi-ppx",
            "[[p_x, p_y], x] + cyclic = 0",
            cfg.tol(tolerances::JACOBI),
            worst,
            battery.len() * 30,
        ));
    }

    // coordinate invariance: both constructions act identically on a shared
    // scalar at matched points
    {
        let big_f = |xs: Expr, ys: Expr, zs: Expr| -> Expr {
            (xs.clone() * ys.clone() + Expr::ratio(1, 2) * zs.clone()
                + Expr::ratio(1, 5) * Expr::pow(xs, 2) * zs)
            .simplify()
        };
        let f_monge = big_f(Expr::var("x"), Expr::var("y"), crate::phase::sphere_radical());
        let f_sph = big_f(
            claims::spherical_coordinate(0),
            claims::spherical_coordinate(1),
            claims::spherical_coordinate(2),
        );
        let pts = matched_points(&ctx, 40);
        let mut worst: f64 = 0.0;
        for j in 0..3 {
            let gm = p_monge[j].apply(&f_monge);
            let gs = p_sph[j].apply(&f_sph);
            for (theta, phi, x, y) in &pts {
                let a = gm.eval(&bindings(&[("x", *x), ("y", *y)]), &ctx.consts);
                let b = gs.eval(&bindings(&[("theta", *theta), ("phi", *phi)]), &ctx.consts);
                if let (Ok(a), Ok(b)) = (a, b) {
                    worst = worst.max((a - b).norm() / (1.0 + a.norm() + b.norm()));
                }
            }
        }
        out.push(Record::check(
            "coordinate-invariance",
            "p_j from either patch agrees on a shared scalar at matched points",
            cfg.tol(tolerances::COORD_INVARIANCE),
            worst,
            3 * pts.len(),
        ));
    }

    // symmetry defect per component (small battery); fails by construction
    // when the curvature term is disabled
    {
        let grid = QuadratureGrid::full_sphere(32, 64);
        let (theta, phi) = (Expr::var("theta"), Expr::var("phi"));
        let zs = Expr::cos(theta.clone());
        let xs = Expr::sin(theta.clone()) * Expr::cos(phi.clone());
        let fns: Vec<Wavefunction> = [
            (Expr::one() + Expr::ratio(1, 2) * zs.clone()).simplify(),
            (xs.clone() + Expr::ratio(3, 10)).simplify(),
            (xs * zs).simplify(),
        ]
        .into_iter()
        .map(|expr| Wavefunction {
            expr,
            domain: sph.patch.domain.clone(),
        })
        .collect();
        for (j, label) in ["px", "py", "pz"].iter().enumerate() {
            let mut worst: f64 = 0.0;
            for f in &fns {
                for g in &fns {
                    let d = hermiticity_defect(&p_sph[j], f, g, &grid, &ctx)?;
                    worst = worst.max(d.norm());
                }
            }
            out.push(Record::check(
                &format!("momentum-symmetric-{label}"),
                "<p f, g> = <f, p g> under the surface measure",
                cfg.tol(tolerances::HERMITICITY),
                worst,
                fns.len() * fns.len() * grid.nodes.len(),
            ));
        }
    }

    Ok(out)
}

fn ident_max(
    pairs: &[(Expr, Expr)],
    dom: &Domain,
    ctx: &NumericContext,
) -> Result<f64, SuiteError> {
    let mut worst: f64 = 0.0;
    for (a, b) in pairs {
        let rep = expr_identical(a, b, dom, IDENT_SAMPLES, 1.0, ctx)?;
        worst = worst.max(rep.max_residual);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// constraints
// ---------------------------------------------------------------------------

/// Max spread of the pointwise ratio `a/b` over the (partially reduced)
/// constraint surface, plus the mean ratio. A small spread with a nonzero
/// mean certifies proportionality.
fn ratio_spread(
    a: &Expr,
    b: &Expr,
    reduction: &[(crate::expr::Sym, Expr)],
    ctx: &NumericContext,
) -> Result<(f64, Complex64), SuiteError> {
    let reduce = |e: &Expr| -> Expr {
        let mut out = e.clone();
        for (name, rep) in reduction {
            out = out.substitute(name, rep);
        }
        out.simplify()
    };
    let ar = reduce(a);
    let br = reduce(b);
    let mut rng = ctx.rng_stream(0x21);
    let dom = phase_domain();
    let mut first: Option<Complex64> = None;
    let mut spread: f64 = 0.0;
    let mut used = 0usize;
    let mut attempts = 0usize;
    while used < 30 && attempts < 300 {
        attempts += 1;
        let p = dom.sample(&mut rng, &ctx.consts, 1)?.pop().unwrap();
        let (va, vb) = match (ar.eval(&p, &ctx.consts), br.eval(&p, &ctx.consts)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => continue,
        };
        if vb.norm() < 1e-9 {
            continue;
        }
        let ratio = va / vb;
        match first {
            None => first = Some(ratio),
            Some(f0) => spread = spread.max((ratio - f0).norm() / (1.0 + f0.norm())),
        }
        used += 1;
    }
    Ok((spread, first.unwrap_or(Complex64::new(f64::NAN, 0.0))))
}

fn constraints_records(cfg: &SuiteConfig) -> Result<Vec<Record>, SuiteError> {
    let ctx = cfg.ctx().with_const("u", 0.3711);
    let tol = cfg.tol(tolerances::BRACKET_TABLE);
    let ratio_tol = cfg.tol(tolerances::CHAIN_RATIO);
    let mut out = Vec::new();
    let dom = phase_domain();

    // bracket structure sanity
    {
        let mut worst: f64 = 0.0;
        for (a, b, want) in [
            ("x", "px", Expr::one()),
            ("lambda", "p_lambda", Expr::one()),
            ("x", "py", Expr::zero()),
        ] {
            let got = poisson(&Expr::var(a), &Expr::var(b));
            let rep = expr_identical(&got, &want, &dom, 20, tol, &ctx)?;
            worst = worst.max(rep.max_residual);
        }
        out.push(Record::check(
            "poisson-canonical",
            "{x_i, p_j} = delta_ij, {lambda, p_lambda} = 1",
            tol,
            worst,
            60,
        ));
    }
    {
        let f = Expr::var("x") * Expr::pow(Expr::var("px"), 2) + Expr::var("lambda") * Expr::var("z");
        let g = Expr::sin(Expr::var("x")) * Expr::var("pz") + Expr::var("p_lambda");
        let h = Expr::var("y") * Expr::var("px") + Expr::pow(Expr::var("z"), 2);
        let anti = (poisson(&f, &g) + poisson(&g, &f)).simplify();
        let leib = (poisson(&f, &(g.clone() * h.clone()).simplify())
            - g.clone() * poisson(&f, &h)
            - poisson(&f, &g) * h.clone())
        .simplify();
        let mut worst: f64 = 0.0;
        for e in [anti, leib] {
            let rep = expr_identical(
                &e,
                &Expr::zero(),
                &dom,
                100,
                cfg.tol(tolerances::POISSON_PROPERTY),
                &ctx,
            )?;
            worst = worst.max(rep.max_residual);
        }
        out.push(Record::check(
            "poisson-properties",
            "antisymmetry and the Leibniz rule at random phase points",
            cfg.tol(tolerances::POISSON_PROPERTY),
            worst,
            200,
        ));
    }
    {
        // {phi2, phi3} for the printed constraints; oracle value frozen from
        // the bracket computed by hand: -r^2/(m (r^2-x^2-y^2))
        let got = poisson(&claims::chain::phi2(), &claims::chain::phi3());
        let want = (Expr::int(-1)
            * Expr::pow(Expr::cnst("r"), 2)
            * Expr::pow(Expr::cnst("m"), -1)
            * Expr::pow(crate::phase::sphere_radical(), -2))
        .simplify();
        let rep = expr_identical(&got, &want, &dom, 40, tol, &ctx)?;
        out.push(Record::check(
            "phi2-phi3-bracket",
            "{phi_2, phi_3} = -r^2/(m (r^2-x^2-y^2)) != 0 (second class)",
            tol,
            rep.max_residual,
            rep.samples,
        ));
    }

    // the chain itself
    let hp = sphere_primary_hamiltonian();
    let chain = run_dirac_algorithm(&hp, &Expr::var("p_lambda"), &ctx)?;
    {
        let kinds: Vec<StepKind> = chain.steps.iter().map(|s| s.kind).collect();
        let want = vec![
            StepKind::Primary,
            StepKind::NewConstraint,
            StepKind::NewConstraint,
            StepKind::NewConstraint,
            StepKind::MultiplierFixing,
        ];
        let ok = kinds == want && chain.steps.len() <= 8;
        out.push(
            Record::check(
                "chain-structure",
                "primary -> phi_2 -> phi_3 -> phi_4 -> multiplier fixing, closed in <= 8 steps",
                0.5,
                if ok { 0.0 } else { 1.0 },
                chain.steps.len(),
            )
            .with_detail(format!("{kinds:?}")),
        );
    }

    // Each consistency function is compared on the surface of the
    // constraints found before it, so its own content stays alive.
    let prior = |idx: usize| &chain.reduction[..idx.min(chain.reduction.len())];
    for (idx, id, formula, printed) in [
        (1usize, "eq16-phi2", "phi_2 = sqrt(r^2-x^2-y^2) - z", claims::chain::phi2()),
        (2, "eq17-phi3", "phi_3 = (x px + y py)/(m sqrt(r^2-x^2-y^2)) + pz/m", claims::chain::phi3()),
        (4, "eq19-phi5", "phi_5 = (pz p^2 + r^2 m^2 u)/(m^3 (r^2-x^2-y^2))", claims::chain::phi5()),
    ] {
        let (spread, ratio) = ratio_spread(&chain.steps[idx].expr, &printed, prior(idx), &ctx)?;
        out.push(
            Record::check(id, formula, ratio_tol, spread, 30)
                .with_detail(format!("proportionality ratio {:.6}{:+.6}i", ratio.re, ratio.im)),
        );
    }
    {
        // printed phi_4 carries the opposite sign on its multiplier term
        // relative to the consistency bracket; both readings are tested
        let (spread_printed, _) =
            ratio_spread(&chain.steps[3].expr, &claims::chain::phi4(1), prior(3), &ctx)?;
        let (spread_flipped, ratio) =
            ratio_spread(&chain.steps[3].expr, &claims::chain::phi4(-1), prior(3), &ctx)?;
        let (detail, w_spread) = if spread_flipped <= spread_printed {
            (
                format!(
                    "multiplier term adjudicated to the flipped sign (ratio {:.6}, spread {spread_flipped:.3e}); the printed sign is not proportional (spread {spread_printed:.3e})",
                    ratio.re
                ),
                spread_flipped,
            )
        } else {
            (format!("printed sign confirmed (spread {spread_printed:.3e})"), spread_printed)
        };
        out.push(Record::flagged(
            "eq18-phi4-sign",
            "phi_4 = ((r^2-x^2-y^2) p^2 - r^2 sqrt(r^2-x^2-y^2) m lambda)/(m^2 (r^2-x^2-y^2)^(3/2))",
            ratio_tol,
            w_spread,
            30,
            detail,
        ));
    }
    {
        // solved multipliers against the printed closed forms
        let lam = chain.lambda_solved.clone().unwrap_or_else(Expr::zero);
        let rep_printed = expr_identical(
            &lam,
            &reduce_with(&claims::chain::lambda_solved(1), &chain),
            &dom,
            30,
            1.0,
            &ctx,
        )?;
        let rep_flipped = expr_identical(
            &lam,
            &reduce_with(&claims::chain::lambda_solved(-1), &chain),
            &dom,
            30,
            1.0,
            &ctx,
        )?;
        let (detail, res) = if rep_flipped.max_residual <= rep_printed.max_residual {
            (
                format!(
                    "lambda = -(r^2-x^2-y^2) p^2/(r^2 sqrt(r^2-x^2-y^2) m) on the surface (residual {:.3e}); the printed positive sign leaves {:.3e}",
                    rep_flipped.max_residual, rep_printed.max_residual
                ),
                rep_flipped.max_residual,
            )
        } else {
            (
                format!("printed sign confirmed (residual {:.3e})", rep_printed.max_residual),
                rep_printed.max_residual,
            )
        };
        out.push(Record::flagged(
            "eq18-lambda",
            "lambda = (r^2-x^2-y^2) p^2/(r^2 sqrt(r^2-x^2-y^2) m)",
            tol,
            res,
            30,
            detail,
        ));
        let u = chain.u_solved.clone().unwrap_or_else(Expr::zero);
        let rep = expr_identical(
            &u,
            &reduce_with(&claims::chain::u_solved(), &chain),
            &dom,
            30,
            tol,
            &ctx,
        )?;
        out.push(Record::check(
            "eq19-u",
            "u = -pz p^2/(r^2 m^2)",
            tol,
            rep.max_residual,
            rep.samples,
        ));
    }
    {
        let mut worst: f64 = 0.0;
        for step in &chain.steps {
            if step.kind == StepKind::MultiplierFixing {
                continue;
            }
            let dot = weak_reduce(&poisson(&step.expr, &hp), &chain);
            let rep = expr_identical(
                &dot,
                &Expr::zero(),
                &dom,
                25,
                cfg.tol(tolerances::CONSERVATION),
                &ctx,
            )?;
            worst = worst.max(rep.max_residual);
        }
        out.push(Record::check(
            "chain-conservation",
            "{phi_k, H_p} weakly vanishes for every constraint after closure",
            cfg.tol(tolerances::CONSERVATION),
            worst,
            100,
        ));
    }

    // the bracket table
    let table = build_bracket_table(&chain, &ctx)?;
    {
        let mut worst: f64 = 0.0;
        let n = table.constraints.len();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Expr::zero();
                for k in 0..n {
                    acc = acc + table.c[i][k].clone() * table.c_inv[k][j].clone();
                }
                let reduced = weak_reduce(&acc.simplify(), &chain);
                let want = if i == j { Expr::one() } else { Expr::zero() };
                let rep = expr_identical(&reduced, &want, &dom, 20, tol, &ctx)?;
                worst = worst.max(rep.max_residual);
            }
        }
        out.push(Record::check(
            "c-inverse",
            "C C^-1 = 1 on the constraint surface (C_ab = {phi_a, phi_b}, a,b = 1..4)",
            tol,
            worst,
            20 * n * n,
        ));
    }

    // the full canonical-pair bracket table
    let coords = ["x", "y", "z"];
    let momenta = ["px", "py", "pz"];
    for (i, a) in coords.iter().enumerate() {
        for (j, b) in coords.iter().enumerate() {
            let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
            let want = reduce_with(&claims::bracket_table::xx_rhs(i, j), &chain);
            let rep = expr_identical(&got, &want, &dom, 25, tol, &ctx)?;
            out.push(Record::check(
                &format!("eq22-{a}-{b}"),
                "{x_i, x_j}_D = 0",
                tol,
                rep.max_residual,
                rep.samples,
            ));
        }
    }
    for (i, a) in coords.iter().enumerate() {
        for (j, b) in momenta.iter().enumerate() {
            let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
            let want = reduce_with(&claims::bracket_table::xp_rhs(i, j), &chain);
            let rep = expr_identical(&got, &want, &dom, 25, tol, &ctx)?;
            out.push(Record::check(
                &format!("eq22-{a}-{b}"),
                "{x_i, p_j}_D = delta_ij - x_i x_j/r^2",
                tol,
                rep.max_residual,
                rep.samples,
            ));
        }
    }
    for (i, a) in momenta.iter().enumerate() {
        for (j, b) in momenta.iter().enumerate() {
            let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
            let want = reduce_with(&claims::bracket_table::pp_rhs(i, j), &chain);
            let rep = expr_identical(&got, &want, &dom, 25, tol, &ctx)?;
            out.push(Record::check(
                &format!("eq22-{a}-{b}"),
                "{p_i, p_j}_D = -(x_i p_j - x_j p_i)/r^2",
                tol,
                rep.max_residual,
                rep.samples,
            ));
        }
    }
    // ... and the mixed momentum-coordinate order, which must be the
    // antisymmetric image
    {
        let mut worst: f64 = 0.0;
        for (i, a) in momenta.iter().enumerate() {
            for (j, b) in coords.iter().enumerate() {
                let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
                let want =
                    (Expr::int(-1) * reduce_with(&claims::bracket_table::xp_rhs(j, i), &chain))
                        .simplify();
                let rep = expr_identical(&got, &want, &dom, 25, tol, &ctx)?;
                worst = worst.max(rep.max_residual);
            }
        }
        out.push(Record::check(
            "eq22-antisymmetry",
            "{p_i, x_j}_D = -{x_j, p_i}_D",
            tol,
            worst,
            225,
        ));
    }

    // equations of motion
    let h = kinetic_hamiltonian();
    {
        let got = dirac_bracket(&Expr::var("x"), &h, &table);
        let want = (Expr::var("px") * Expr::pow(Expr::cnst("m"), -1)).simplify();
        let exact = got == want;
        let rep = expr_identical(&got, &want, &dom, 25, tol, &ctx)?;
        out.push(
            Record::check("eq24-xdot", "{x_i, H}_D = p_i/m", tol, rep.max_residual, rep.samples)
                .with_detail(if exact {
                    "reduced bracket equals p_x/m structurally".to_string()
                } else {
                    "matches numerically".to_string()
                }),
        );
        let eom = classical_eom(&table, &h);
        let mut worst: f64 = 0.0;
        for (i, v) in coords.iter().enumerate() {
            let want = reduce_with(
                &(Expr::var(momenta[i]) * Expr::pow(Expr::cnst("m"), -1)).simplify(),
                &chain,
            );
            let got = eom.iter().find(|(name, _)| name.as_ref() == *v).unwrap();
            let rep = expr_identical(&got.1, &want, &dom, 25, tol, &ctx)?;
            worst = worst.max(rep.max_residual);
        }
        out.push(Record::check(
            "eq24-velocities",
            "all three velocity brackets give p_i/m",
            tol,
            worst,
            75,
        ));
    }
    {
        // printed momentum equation has a repeated index; the summed and
        // repeated readings are adjudicated numerically
        let got = dirac_bracket(&Expr::var("px"), &h, &table);
        let p2 = Expr::pow(Expr::var("px"), 2)
            + Expr::pow(Expr::var("py"), 2)
            + Expr::pow(Expr::var("pz"), 2);
        let summed = reduce_with(
            &(Expr::int(-1)
                * Expr::var("x")
                * p2
                * Expr::pow(Expr::cnst("m"), -1)
                * Expr::pow(Expr::cnst("r"), -2))
            .simplify(),
            &chain,
        );
        let repeated = reduce_with(
            &(Expr::int(-1)
                * Expr::var("x")
                * Expr::pow(Expr::var("px"), 2)
                * Expr::pow(Expr::cnst("m"), -1)
                * Expr::pow(Expr::cnst("r"), -2))
            .simplify(),
            &chain,
        );
        let rep_summed = expr_identical(&got, &summed, &dom, 30, 1.0, &ctx)?;
        let rep_repeated = expr_identical(&got, &repeated, &dom, 30, 1.0, &ctx)?;
        let (detail, res) = if rep_summed.max_residual <= rep_repeated.max_residual {
            (
                format!(
                    "summed reading -x_i p^2/(m r^2) wins (residual {:.3e}); repeated-index reading leaves {:.3e}",
                    rep_summed.max_residual, rep_repeated.max_residual
                ),
                rep_summed.max_residual,
            )
        } else {
            (
                format!("repeated-index reading wins (residual {:.3e})", rep_repeated.max_residual),
                rep_repeated.max_residual,
            )
        };
        out.push(Record::flagged(
            "eq25-pdot-index",
            "{p_i, H}_D = -x_i p_i^2/(m r^2) (repeated index as printed)",
            tol,
            res,
            30,
            detail,
        ));
    }
    {
        // Dirac bracket antisymmetry and the Jacobi identity on (px, py, x)
        let anti = (dirac_bracket(&Expr::var("x"), &Expr::var("px"), &table)
            + dirac_bracket(&Expr::var("px"), &Expr::var("x"), &table))
        .simplify();
        let rep = expr_identical(&anti, &Expr::zero(), &dom, 30, tol, &ctx)?;
        out.push(Record::check(
            "dirac-antisymmetry",
            "{A, B}_D = -{B, A}_D",
            tol,
            rep.max_residual,
            rep.samples,
        ));
        let jac = |a: &Expr, b: &Expr, c: &Expr| -> Expr {
            dirac_bracket(&dirac_bracket(a, b, &table), c, &table)
        };
        let (px, py, x) = (Expr::var("px"), Expr::var("py"), Expr::var("x"));
        let total = (jac(&px, &py, &x) + jac(&py, &x, &px) + jac(&x, &px, &py)).simplify();
        let rep = expr_identical(
            &total,
            &Expr::zero(),
            &dom,
            40,
            cfg.tol(tolerances::DIRAC_JACOBI),
            &ctx,
        )?;
        out.push(Record::check(
            "dirac-jacobi",
            "{{p_x, p_y}_D, x}_D + cyclic = 0",
            cfg.tol(tolerances::DIRAC_JACOBI),
            rep.max_residual,
            rep.samples,
        ));
    }
    {
        // classical/quantum correspondence: i hbar {x_i, p_j}_D equals the
        // commutator right-hand side restricted to the patch
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let bracket = dirac_bracket(
                    &Expr::var(coords[i]),
                    &Expr::var(momenta[j]),
                    &table,
                );
                let lhs = (Expr::i() * Expr::cnst("hbar") * bracket).simplify();
                let rhs = (Expr::i()
                    * Expr::cnst("hbar")
                    * reduce_with(&claims::bracket_table::xp_rhs(i, j), &chain))
                .simplify();
                let rep = expr_identical(&lhs, &rhs, &dom, 20, tol, &ctx)?;
                worst = worst.max(rep.max_residual);
            }
        }
        out.push(Record::check(
            "bracket-commutator-map",
            "i hbar {x_i, p_j}_D reproduces the [x_i, p_j] right-hand side",
            tol,
            worst,
            180,
        ));
    }
    {
        // weak kinetic oracle: p^2 reduced equals the induced metric form
        let p2 = (Expr::pow(Expr::var("px"), 2)
            + Expr::pow(Expr::var("py"), 2)
            + Expr::pow(Expr::var("pz"), 2))
        .simplify();
        let reduced = weak_reduce(&p2, &chain);
        let geom = build_geometry(monge_sphere("r"), &ctx)?;
        let p = [Expr::var("px"), Expr::var("py")];
        let mut induced = Expr::zero();
        for mu in 0..2 {
            for nu in 0..2 {
                induced = induced + geom.metric[mu][nu].clone() * p[mu].clone() * p[nu].clone();
            }
        }
        let rep = expr_identical(&reduced, &induced.simplify(), &dom, 30, tol, &ctx)?;
        out.push(Record::check(
            "weak-kinetic",
            "p^2 on the surface equals g_{mu nu} p^mu p^nu from the patch metric",
            tol,
            rep.max_residual,
            rep.samples,
        ));
    }

    Ok(out)
}

fn reduce_with(e: &Expr, chain: &crate::phase::ConstraintChain) -> Expr {
    weak_reduce(e, chain)
}

// ---------------------------------------------------------------------------
// spectral
// ---------------------------------------------------------------------------

fn spectral_records(cfg: &SuiteConfig) -> Result<Vec<Record>, SuiteError> {
    let ctx = cfg.ctx();
    let eigen_tol = cfg.tol(tolerances::EIGEN);
    let mut out = Vec::new();
    let sph = build_geometry(spherical_sphere("r"), &ctx)?;
    let monge = build_geometry(monge_sphere("r"), &ctx)?;
    let p_sph = momentum_components(cfg, &sph);
    let p_monge = momentum_components(cfg, &monge);

    // grid self-test
    {
        let grid = QuadratureGrid::full_sphere(cfg.n_theta, cfg.n_phi);
        let total = grid.integrate(|_| Ok(Complex64::new(1.0, 0.0)))?;
        out.push(Record::check(
            "quadrature-selftest",
            "grid integrates 1 over the sphere to 4 pi",
            cfg.tol(tolerances::QUADRATURE_SELFTEST),
            (total.re - 4.0 * std::f64::consts::PI).abs() / (4.0 * std::f64::consts::PI),
            grid.nodes.len(),
        ));
    }

    // eigenvalue residuals, both coordinate systems, five eigenvalues each
    let eigenvalues = [-1.3, -0.7, 0.3, 0.7, 1.1, 1.7];
    for component in [Component::Px, Component::Py, Component::Pz] {
        let j = component.index();
        let mut worst_sph: f64 = 0.0;
        let mut worst_cart: f64 = 0.0;
        let mut worst_cross: f64 = 0.0;
        for k in eigenvalues {
            let fix = build_eigenfixture(component, k, None);
            worst_sph = worst_sph
                .max(eigen_residual(&fix, &p_sph[j], &fix.psi_spherical.domain, 25, &ctx)?);
            worst_cart = worst_cart
                .max(eigen_residual(&fix, &p_monge[j], &fix.psi_cartesian.domain, 25, &ctx)?);
            for (theta, phi, x, y) in matched_points(&ctx, 20) {
                let a = fix
                    .psi_spherical
                    .expr
                    .eval(&bindings(&[("theta", theta), ("phi", phi)]), &ctx.consts);
                let b = fix
                    .psi_cartesian
                    .expr
                    .eval(&bindings(&[("x", x), ("y", y)]), &ctx.consts);
                if let (Ok(a), Ok(b)) = (a, b) {
                    worst_cross = worst_cross.max((a - b).norm() / (1.0 + a.norm()));
                }
            }
        }
        let label = component.label();
        out.push(Record::check(
            &format!("eigen-{label}-spherical"),
            "p_j(theta,phi) psi_k = k psi_k for the printed solutions",
            eigen_tol,
            worst_sph,
            eigenvalues.len() * 25,
        ));
        out.push(Record::check(
            &format!("eigen-{label}-cartesian"),
            "p_j(x,y) psi_k = k psi_k for the printed solutions",
            eigen_tol,
            worst_cart,
            eigenvalues.len() * 25,
        ));
        out.push(Record::check(
            &format!("cross-coordinate-{label}"),
            "spherical and Cartesian forms agree at matched points",
            cfg.tol(tolerances::CROSS_COORD),
            worst_cross,
            eigenvalues.len() * 20,
        ));
    }

    // the relabeled eigenfunction: solves the p_z problem, not the p_x one
    {
        let fix = build_eigenfixture(Component::Pz, 0.7, None);
        let res_pz = eigen_residual(&fix, &p_sph[2], &fix.psi_spherical.domain, 25, &ctx)?;
        let res_px = eigen_residual(&fix, &p_sph[0], &fix.psi_spherical.domain, 25, &ctx)?;
        out.push(Record::flagged(
            "f3-label",
            "cot(theta/2)^{i r p/hbar}/sin(theta), printed under the p_x heading",
            eigen_tol,
            res_pz,
            50,
            format!(
                "solves the p_z eigenproblem (residual {res_pz:.3e}) and not the p_x one (residual {res_px:.3e}); treated as the p_z solution"
            ),
        ));
    }
    {
        // profile-argument adjudication: the p_y profile must be a function
        // of x/sqrt(r^2-x^2-y^2), not of the printed shared variable
        let dom = build_eigenfixture(Component::Py, 0.8, None).psi_cartesian.domain;
        let tangential = |w: &Expr| -> Expr {
            // derivative part of p_y applied to a candidate argument
            let mut op = p_monge[1].clone();
            op.set(crate::operators::MultiIndex::Id, Expr::zero());
            op.apply(w)
        };
        let w_x = crate::spectral::invariant_argument(Component::Py, false).unwrap();
        let w_y = crate::spectral::invariant_argument(Component::Px, false).unwrap();
        let rep_x = expr_identical(&tangential(&w_x), &Expr::zero(), &dom, 25, 1.0, &ctx)?;
        let rep_y = expr_identical(&tangential(&w_y), &Expr::zero(), &dom, 25, 1.0, &ctx)?;
        out.push(Record::flagged(
            "f2-profile-argument",
            "f_y an arbitrary function of y/sqrt(r^2-x^2-y^2) (the shared variable as printed)",
            eigen_tol,
            rep_x.max_residual,
            50,
            format!(
                "p_y annihilates x/sqrt(r^2-x^2-y^2) (residual {:.3e}) but not the printed shared argument (residual {:.3e}); profiles for p_y take the former",
                rep_x.max_residual, rep_y.max_residual
            ),
        ));
    }

    // hermiticity battery with the curvature-stripped contrast
    {
        let grid = QuadratureGrid::full_sphere(cfg.n_theta, cfg.n_phi);
        let battery = sphere_battery(&sph);
        let stripped = stripped_momentum(&sph);
        for (j, label) in ["px", "py", "pz"].iter().enumerate() {
            let mut worst: f64 = 0.0;
            for (fi, f) in battery.iter().enumerate() {
                for g in battery.iter().skip(fi) {
                    let d = hermiticity_defect(&p_sph[j], f, g, &grid, &ctx)?;
                    worst = worst.max(d.norm());
                }
            }
            out.push(Record::check(
                &format!("hermiticity-{label}"),
                "<p f, g> - <f, p g> = 0 over a 10-function battery",
                cfg.tol(tolerances::HERMITICITY),
                worst,
                battery.len() * (battery.len() + 1) / 2 * grid.nodes.len(),
            ));
        }
        let mut best_contrast: f64 = 0.0;
        for f in battery.iter().take(3) {
            for g in battery.iter().take(3) {
                let d = hermiticity_defect(&stripped[2], f, g, &grid, &ctx)?;
                best_contrast = best_contrast.max(d.norm());
            }
        }
        let passed = best_contrast > tolerances::CONTRAST_FLOOR;
        out.push(
            Record::check(
                "mn-contrast",
                "the curvature-stripped operator is not symmetric (defect above 1e-3)",
                0.5,
                if passed { 0.0 } else { 1.0 },
                9 * grid.nodes.len(),
            )
            .with_detail(format!("largest stripped-operator defect {best_contrast:.3e}")),
        );
    }

    // continuum orthogonality: windowed overlap decay under grid refinement
    {
        let f1 = build_eigenfixture(Component::Pz, 0.5, None);
        let f2 = build_eigenfixture(Component::Pz, 1.5, None);
        let n0 = cfg.n_theta.max(32);
        let mut cross = Vec::new();
        let mut selfo = Vec::new();
        for n in [n0, 2 * n0, 4 * n0] {
            let grid = QuadratureGrid::full_sphere(n, 8);
            cross.push(orthogonality_check(&f1, &f2, &grid, &ctx)?.norm());
            selfo.push(orthogonality_check(&f1, &f1, &grid, &ctx)?.re);
        }
        let ratio = (cross[1] / cross[0]).max(cross[2] / cross[1]);
        out.push(
            Record::check(
                "orthogonality-decay",
                "windowed overlap of distinct eigenvalues decays under refinement",
                cfg.tol(tolerances::ORTHO_DECAY_RATIO),
                ratio,
                3,
            )
            .with_detail(format!(
                "cross overlaps {:.3e} -> {:.3e} -> {:.3e}; self overlaps {:.3e} -> {:.3e} -> {:.3e}",
                cross[0], cross[1], cross[2], selfo[0], selfo[1], selfo[2]
            )),
        );
    }

    // declarative fixtures from the config file, when provided
    if let Some(fixture_cfg) = &cfg.fixtures {
        let fixtures = fixture_cfg.build()?;
        let mut worst: f64 = 0.0;
        for fix in &fixtures {
            let j = fix.component.index();
            worst = worst.max(eigen_residual(&fix, &p_sph[j], &fix.psi_spherical.domain, 25, &ctx)?);
            worst =
                worst.max(eigen_residual(&fix, &p_monge[j], &fix.psi_cartesian.domain, 25, &ctx)?);
        }
        out.push(Record::check(
            &format!("fixtures-{}", fixture_cfg.component.label()),
            "declarative fixture file satisfies its eigenvalue equations",
            eigen_tol,
            worst,
            fixtures.len() * 50,
        ));
    }

    Ok(out)
}

/// Ten smooth real functions on the sphere, polynomial in the Cartesian
/// coordinates.
fn sphere_battery(sph: &GeometryData) -> Vec<Wavefunction> {
    let (theta, phi) = (Expr::var("theta"), Expr::var("phi"));
    let xs = Expr::sin(theta.clone()) * Expr::cos(phi.clone());
    let ys = Expr::sin(theta.clone()) * Expr::sin(phi.clone());
    let zs = Expr::cos(theta);
    [
        Expr::one() + Expr::ratio(1, 2) * zs.clone(),
        xs.clone() + Expr::ratio(3, 10),
        (xs.clone() * ys.clone() + zs.clone()).simplify(),
        (Expr::pow(xs.clone(), 2) - Expr::ratio(1, 5) * zs.clone()).simplify(),
        (ys.clone() + xs.clone() * zs.clone()).simplify(),
        Expr::pow(zs.clone(), 2),
        (xs.clone() + ys.clone() + zs.clone()).simplify(),
        (Expr::one() + xs.clone() * ys.clone() * zs.clone()).simplify(),
        Expr::pow((xs.clone() + ys.clone()).simplify(), 2),
        (Expr::pow(ys, 2) * zs).simplify(),
    ]
    .into_iter()
    .map(|expr| Wavefunction {
        expr: expr.simplify(),
        domain: sph.patch.domain.clone(),
    })
    .collect()
}
