//! Classical phase-space engine: Poisson brackets over the extended
//! canonical variables `(x, y, z, px, py, pz, lambda, p_lambda)`, the
//! consistency algorithm that generates the secondary constraint chain,
//! the constraint matrix with its exact symbolic inverse, Dirac brackets
//! reduced modulo weak equality, and classical equations of motion.
//!
//! `lambda` is a canonical variable (conjugate to `p_lambda`); `u` is the
//! remaining velocity multiplier and enters expressions as a named constant.

use crate::expr::{expr_identical, Domain, DomainError, Expr, NumericContext, Sym};
use std::sync::Arc;

/// Canonical coordinate/momentum pairs, in bracket order.
pub const CANONICAL_PAIRS: [(&str, &str); 4] =
    [("x", "px"), ("y", "py"), ("z", "pz"), ("lambda", "p_lambda")];

/// The six mechanical phase-space variables (multiplier sector excluded).
pub const MECHANICAL_VARS: [&str; 6] = ["x", "y", "z", "px", "py", "pz"];

#[derive(Debug, thiserror::Error)]
pub enum PhaseError {
    #[error("constraint chain failed to close within {0} steps")]
    ChainDivergence(usize),
    #[error("constraint matrix is singular on the constraint surface: |det| = {min_abs:.3e}")]
    SingularConstraintMatrix { min_abs: f64 },
    #[error("expression is not linear in `{0}`")]
    NotLinear(String),
    #[error("coefficient of `{0}` vanishes on the domain")]
    VanishingCoefficient(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// The Poisson bracket: `sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i)` over the
/// three Cartesian pairs plus the `(lambda, p_lambda)` pair.
pub fn poisson(f: &Expr, g: &Expr) -> Expr {
    let mut terms = Vec::with_capacity(8);
    for (q, p) in CANONICAL_PAIRS {
        let fq = f.differentiate(q);
        let fp = f.differentiate(p);
        let gq = g.differentiate(q);
        let gp = g.differentiate(p);
        if !fq.is_zero() && !gp.is_zero() {
            terms.push(fq * gp);
        }
        if !fp.is_zero() && !gq.is_zero() {
            terms.push(Expr::int(-1) * fp * gq);
        }
    }
    Expr::Sum(terms).simplify()
}

/// The primary Hamiltonian of the sphere fixture:
/// `p^2/(2m) + lambda (sqrt(r^2 - x^2 - y^2) - z) + u p_lambda`.
pub fn sphere_primary_hamiltonian() -> Expr {
    let p2 = Expr::pow(Expr::var("px"), 2)
        + Expr::pow(Expr::var("py"), 2)
        + Expr::pow(Expr::var("pz"), 2);
    let s = sphere_radical();
    (p2 * Expr::ratio(1, 2) * Expr::pow(Expr::cnst("m"), -1)
        + Expr::var("lambda") * (s - Expr::var("z"))
        + Expr::cnst("u") * Expr::var("p_lambda"))
    .simplify()
}

/// The free kinetic Hamiltonian `p^2/(2m)`; interchangeable with the primary
/// one inside Dirac brackets.
pub fn kinetic_hamiltonian() -> Expr {
    ((Expr::pow(Expr::var("px"), 2)
        + Expr::pow(Expr::var("py"), 2)
        + Expr::pow(Expr::var("pz"), 2))
        * Expr::ratio(1, 2)
        * Expr::pow(Expr::cnst("m"), -1))
    .simplify()
}

pub fn sphere_radical() -> Expr {
    Expr::sqrt(
        Expr::pow(Expr::cnst("r"), 2) - Expr::pow(Expr::var("x"), 2) - Expr::pow(Expr::var("y"), 2),
    )
}

/// A full-rank sampling box over the extended phase space.
pub fn phase_domain() -> Domain {
    let r = Expr::cnst("r");
    Domain::new()
        .interval("x", Expr::from_f64(-0.6) * r.clone(), Expr::from_f64(0.6) * r.clone())
        .interval("y", Expr::from_f64(-0.6) * r.clone(), Expr::from_f64(0.6) * r.clone())
        .interval("z", Expr::from_f64(-0.9) * r.clone(), Expr::from_f64(0.9) * r)
        .interval_f("px", -2.0, 2.0)
        .interval_f("py", -2.0, 2.0)
        .interval_f("pz", -2.0, 2.0)
        .interval_f("lambda", -2.0, 2.0)
        .interval_f("p_lambda", -2.0, 2.0)
}

/// Splits `e = A name + B` (requires linearity in `name`); verified
/// numerically at a handful of points.
pub fn solve_linear(e: &Expr, name: &str, ctx: &NumericContext) -> Result<(Expr, Expr), PhaseError> {
    let at = |v: i64| e.substitute(name, &Expr::int(v)).simplify();
    let b = at(0);
    let a = (at(1) - b.clone()).simplify();
    // e(2) - 2A - B must vanish if e is linear in `name`.
    let probe = (at(2) - Expr::int(2) * a.clone() - b.clone()).simplify();
    let ctx = bind_multiplier(ctx);
    let rep = expr_identical(&probe, &Expr::zero(), &phase_domain(), 12, 1e-8, &ctx)?;
    if !rep.identical {
        return Err(PhaseError::NotLinear(name.to_string()));
    }
    Ok((a, b))
}

fn bind_multiplier(ctx: &NumericContext) -> NumericContext {
    if ctx.consts.contains_key("u") {
        ctx.clone()
    } else {
        ctx.clone().with_const("u", 0.3711)
    }
}

fn numeric_zero(e: &Expr, ctx: &NumericContext) -> Result<bool, PhaseError> {
    if e.is_zero() {
        return Ok(true);
    }
    let rep = expr_identical(e, &Expr::zero(), &phase_domain(), 20, 1e-9, &bind_multiplier(ctx))?;
    Ok(rep.identical)
}

/// How a consistency step was classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Primary,
    NewConstraint,
    MultiplierFixing,
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    pub expr: Expr,
    pub kind: StepKind,
}

/// The closed constraint chain with the solved multipliers.
///
/// `lambda_solved` and `u_solved` are reduced to functions of
/// `(x, y, px, py)` through the earlier substitutions.
#[derive(Clone, Debug)]
pub struct ConstraintChain {
    pub steps: Vec<ChainStep>,
    pub lambda_solved: Option<Expr>,
    pub u_solved: Option<Expr>,
    /// Ordered weak-equality substitutions `(name, replacement)`.
    pub reduction: Vec<(Sym, Expr)>,
}

impl ConstraintChain {
    pub fn constraint_exprs(&self) -> Vec<Expr> {
        self.steps.iter().map(|s| s.expr.clone()).collect()
    }
}

const MAX_CHAIN_STEPS: usize = 8;

/// Dirac's consistency algorithm. Starting from the primary constraint,
/// repeatedly brackets the frontier with `h_p`. A consistency function that
/// vanishes on the domain closes the branch; one that carries the velocity
/// multiplier `u` with a nonvanishing coefficient fixes `u` and closes; any
/// other nonzero function joins the chain as a new constraint (and is solved
/// for the variable `lambda` when it carries one with nonzero coefficient).
pub fn run_dirac_algorithm(
    h_p: &Expr,
    primary: &Expr,
    ctx: &NumericContext,
) -> Result<ConstraintChain, PhaseError> {
    let mut steps = vec![ChainStep {
        expr: primary.simplify(),
        kind: StepKind::Primary,
    }];
    let mut lambda_raw: Option<Expr> = None;
    let mut u_raw: Option<Expr> = None;
    let mut frontier = steps[0].expr.clone();
    let mut closed = false;

    for _ in 0..MAX_CHAIN_STEPS {
        let psi = poisson(&frontier, h_p);
        if numeric_zero(&psi, ctx)? {
            closed = true;
            break;
        }
        if psi.contains_sym("u") {
            let (a, b) = solve_linear(&psi, "u", ctx)?;
            if !numeric_zero(&a, ctx)? {
                u_raw = Some((Expr::int(-1) * b / a).simplify());
                steps.push(ChainStep {
                    expr: psi,
                    kind: StepKind::MultiplierFixing,
                });
                closed = true;
                break;
            }
        }
        if psi.contains_sym("lambda") {
            let (a, b) = solve_linear(&psi, "lambda", ctx)?;
            if !numeric_zero(&a, ctx)? {
                lambda_raw = Some((Expr::int(-1) * b / a).simplify());
            }
        }
        steps.push(ChainStep {
            expr: psi.clone(),
            kind: StepKind::NewConstraint,
        });
        frontier = psi;
    }
    if !closed {
        return Err(PhaseError::ChainDivergence(MAX_CHAIN_STEPS));
    }

    // Triangular weak-equality substitutions: each constraint is solved for
    // its designated symbol after passing the earlier solutions through it.
    let targets: [&str; 5] = ["p_lambda", "z", "pz", "lambda", "u"];
    let mut reduction: Vec<(Sym, Expr)> = Vec::new();
    for (step, target) in steps.iter().zip(targets.iter()) {
        if !step.expr.contains_sym(target) {
            continue;
        }
        let mut e = step.expr.clone();
        for (name, rep) in &reduction {
            e = e.substitute(name, rep);
        }
        let (a, b) = solve_linear(&e.simplify(), target, ctx)?;
        if numeric_zero(&a, ctx)? {
            return Err(PhaseError::VanishingCoefficient(target.to_string()));
        }
        let solved = (Expr::int(-1) * b / a).simplify();
        reduction.push((Arc::from(*target), solved));
    }

    let reduced = |raw: Option<Expr>| -> Option<Expr> {
        raw.map(|e| {
            let mut out = e;
            for (name, rep) in &reduction {
                out = out.substitute(name, rep);
            }
            out.simplify()
        })
    };
    let lambda_solved = reduced(lambda_raw);
    let u_solved = reduced(u_raw);

    Ok(ConstraintChain {
        steps,
        lambda_solved,
        u_solved,
        reduction,
    })
}

/// Applies the chain's weak-equality substitutions in order and simplifies;
/// the result depends only on `(x, y, px, py)` for the sphere fixture.
pub fn weak_reduce(e: &Expr, chain: &ConstraintChain) -> Expr {
    let mut out = e.clone();
    for (name, rep) in &chain.reduction {
        out = out.substitute(name, rep);
    }
    out.expand()
}

/// The antisymmetric constraint matrix `C_{ab} = {phi_a, phi_b}` over the
/// second-class constraints, with its exact symbolic inverse (adjugate over
/// determinant), weak-reduced on the constraint surface.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub constraints: Vec<Expr>,
    pub c: Vec<Vec<Expr>>,
    pub c_inv: Vec<Vec<Expr>>,
    pub chain: ConstraintChain,
}

/// Builds the table from the chain's constraints (all steps classified as
/// constraints, the multiplier-fixing tail excluded).
pub fn build_bracket_table(
    chain: &ConstraintChain,
    ctx: &NumericContext,
) -> Result<BracketTable, PhaseError> {
    let constraints: Vec<Expr> = chain
        .steps
        .iter()
        .filter(|s| s.kind != StepKind::MultiplierFixing)
        .map(|s| s.expr.clone())
        .collect();
    let n = constraints.len();
    let mut c = vec![vec![Expr::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let e = poisson(&constraints[i], &constraints[j]);
            c[i][j] = e.clone();
            c[j][i] = (Expr::int(-1) * e).simplify();
        }
    }

    let det = det_symbolic(&c);
    let det_red = weak_reduce(&det, chain);
    let ctx_u = bind_multiplier(ctx);
    let mut rng = ctx_u.rng_stream(7);
    let pts = phase_domain().sample(&mut rng, &ctx_u.consts, 20)?;
    let mut min_abs = f64::INFINITY;
    for p in &pts {
        if let Ok(v) = det_red.eval(p, &ctx_u.consts) {
            min_abs = min_abs.min(v.norm());
        }
    }
    if !(min_abs > 1e-9) {
        return Err(PhaseError::SingularConstraintMatrix { min_abs });
    }

    // inv = adj^T / det, each entry weak-reduced.
    let inv_det = Expr::pow(det, -1);
    let mut c_inv = vec![vec![Expr::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor = minor_matrix(&c, j, i);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let entry = (Expr::int(sign) * det_symbolic(&minor) * inv_det.clone()).simplify();
            c_inv[i][j] = weak_reduce(&entry, chain);
        }
    }

    Ok(BracketTable {
        constraints,
        c,
        c_inv,
        chain: chain.clone(),
    })
}

fn minor_matrix(m: &[Vec<Expr>], row: usize, col: usize) -> Vec<Vec<Expr>> {
    let n = m.len();
    let mut out = Vec::with_capacity(n - 1);
    for i in 0..n {
        if i == row {
            continue;
        }
        let mut r = Vec::with_capacity(n - 1);
        for j in 0..n {
            if j == col {
                continue;
            }
            r.push(m[i][j].clone());
        }
        out.push(r);
    }
    out
}

/// Laplace expansion along the first row, skipping structural zeros.
fn det_symbolic(m: &[Vec<Expr>]) -> Expr {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut terms = Vec::new();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let minor = minor_matrix(m, 0, j);
        let sub = det_symbolic(&minor);
        if sub.is_zero() {
            continue;
        }
        terms.push(Expr::int(sign) * m[0][j].clone() * sub);
    }
    Expr::Sum(terms).simplify()
}

/// The Dirac bracket `{a, b}_D = {a, b} - {a, phi_i} C^-1_{ij} {phi_j, b}`,
/// weak-reduced on the constraint surface.
pub fn dirac_bracket(a: &Expr, b: &Expr, table: &BracketTable) -> Expr {
    let n = table.constraints.len();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for phi in &table.constraints {
        left.push(weak_reduce(&poisson(a, phi), &table.chain));
        right.push(weak_reduce(&poisson(phi, b), &table.chain));
    }
    let mut terms = vec![weak_reduce(&poisson(a, b), &table.chain)];
    for i in 0..n {
        if left[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if table.c_inv[i][j].is_zero() || right[j].is_zero() {
                continue;
            }
            terms.push(Expr::int(-1) * left[i].clone() * table.c_inv[i][j].clone() * right[j].clone());
        }
    }
    weak_reduce(&Expr::Sum(terms).simplify(), &table.chain)
}

/// Equations of motion `q_dot = {q, H}_D`, `p_dot = {p, H}_D` for the six
/// mechanical variables.
pub fn classical_eom(table: &BracketTable, h: &Expr) -> Vec<(Sym, Expr)> {
    MECHANICAL_VARS
        .iter()
        .map(|v| {
            (
                Arc::<str>::from(*v),
                dirac_bracket(&Expr::var(v), h, table),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::bindings;

    fn ctx() -> NumericContext {
        NumericContext::default().with_const("u", 0.3711)
    }

    #[test]
    fn canonical_pairs_bracket_to_one() {
        assert!(poisson(&Expr::var("x"), &Expr::var("px")).is_one());
        assert!(poisson(&Expr::var("lambda"), &Expr::var("p_lambda")).is_one());
        assert!(poisson(&Expr::var("x"), &Expr::var("py")).is_zero());
        assert!(poisson(&Expr::var("x"), &Expr::var("y")).is_zero());
    }

    #[test]
    fn poisson_antisymmetry_and_leibniz_at_random_points() {
        let ctx = ctx();
        let f = Expr::var("x") * Expr::pow(Expr::var("px"), 2) + Expr::var("lambda") * Expr::var("z");
        let g = Expr::sin(Expr::var("x")) * Expr::var("pz") + Expr::var("p_lambda");
        let h = Expr::var("y") * Expr::var("px") + Expr::pow(Expr::var("z"), 2);
        let anti = (poisson(&f, &g) + poisson(&g, &f)).simplify();
        let leib = (poisson(&f, &(g.clone() * h.clone()).simplify())
            - g.clone() * poisson(&f, &h)
            - poisson(&f, &g) * h.clone())
        .simplify();
        for e in [anti, leib] {
            let rep = expr_identical(&e, &Expr::zero(), &phase_domain(), 100, 1e-10, &ctx).unwrap();
            assert!(rep.identical, "residual {}", rep.max_residual);
        }
    }

    #[test]
    fn sphere_chain_reproduces_known_structure() {
        let ctx = ctx();
        let chain = run_dirac_algorithm(
            &sphere_primary_hamiltonian(),
            &Expr::var("p_lambda"),
            &ctx,
        )
        .unwrap();
        assert_eq!(chain.steps.len(), 5);
        let kinds: Vec<StepKind> = chain.steps.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                StepKind::Primary,
                StepKind::NewConstraint,
                StepKind::NewConstraint,
                StepKind::NewConstraint,
                StepKind::MultiplierFixing
            ]
        );
        // step 1 is proportional to sqrt(r^2-x^2-y^2) - z
        let phi2 = &chain.steps[1].expr;
        let printed = sphere_radical() - Expr::var("z");
        let ratio_fail = expr_identical(phi2, &printed, &phase_domain(), 10, 1e-10, &ctx).unwrap();
        // engine sign is the negative of the printed form
        assert!(!ratio_fail.identical);
        let neg = (Expr::int(-1) * printed).simplify();
        let rep = expr_identical(phi2, &neg, &phase_domain(), 30, 1e-10, &ctx).unwrap();
        assert!(rep.identical, "residual {}", rep.max_residual);
        assert!(chain.lambda_solved.is_some());
        assert!(chain.u_solved.is_some());
        // solved multipliers depend only on (x, y, px, py)
        for e in [chain.lambda_solved.as_ref().unwrap(), chain.u_solved.as_ref().unwrap()] {
            for v in ["z", "pz", "lambda", "p_lambda"] {
                assert!(!e.contains_sym(v), "solved multiplier contains {v}");
            }
        }
    }

    #[test]
    fn chain_constraints_are_weakly_conserved() {
        let ctx = ctx();
        let hp = sphere_primary_hamiltonian();
        let chain = run_dirac_algorithm(&hp, &Expr::var("p_lambda"), &ctx).unwrap();
        // Conservation applies to the constraints; the multiplier-fixing
        // tail is the equation that determines u, not a conserved quantity.
        for (k, step) in chain.steps.iter().enumerate() {
            if step.kind == StepKind::MultiplierFixing {
                continue;
            }
            let dot = weak_reduce(&poisson(&step.expr, &hp), &chain);
            let rep = expr_identical(&dot, &Expr::zero(), &phase_domain(), 25, 1e-9, &ctx).unwrap();
            assert!(rep.identical, "constraint {k} not conserved: {}", rep.max_residual);
        }
        // the first constraints vanish structurally on their own surface;
        // the multiplier-bearing tail needs rational normalization, so it is
        // certified numerically instead.
        for step in chain.steps.iter().take(3) {
            let reduced = weak_reduce(&step.expr, &chain);
            assert!(reduced.is_zero(), "constraint does not reduce to zero: {reduced}");
        }
        for step in chain.steps.iter().skip(3) {
            let reduced = weak_reduce(&step.expr, &chain);
            let rep = expr_identical(&reduced, &Expr::zero(), &phase_domain(), 25, 1e-10, &ctx)
                .unwrap();
            assert!(rep.identical, "tail constraint residual {}", rep.max_residual);
        }
    }

    #[test]
    fn weak_reduced_kinetic_matches_induced_metric_form() {
        // p^2 on the constraint surface equals g_{mu nu} p^mu p^nu with
        // p^mu = (px, py), derived independently from the surface metric.
        let ctx = ctx();
        let chain = run_dirac_algorithm(&sphere_primary_hamiltonian(), &Expr::var("p_lambda"), &ctx)
            .unwrap();
        let p2 = Expr::pow(Expr::var("px"), 2)
            + Expr::pow(Expr::var("py"), 2)
            + Expr::pow(Expr::var("pz"), 2);
        let reduced = weak_reduce(&p2.simplify(), &chain);
        let geom =
            crate::geometry::build_geometry(crate::geometry::monge_sphere("r"), &ctx).unwrap();
        let p = [Expr::var("px"), Expr::var("py")];
        let mut induced = Expr::zero();
        for mu in 0..2 {
            for nu in 0..2 {
                induced = induced + geom.metric[mu][nu].clone() * p[mu].clone() * p[nu].clone();
            }
        }
        let rep = expr_identical(&reduced, &induced.simplify(), &phase_domain(), 30, 1e-10, &ctx)
            .unwrap();
        assert!(rep.identical, "residual {}", rep.max_residual);
    }


    fn sphere_table(ctx: &NumericContext) -> BracketTable {
        let chain =
            run_dirac_algorithm(&sphere_primary_hamiltonian(), &Expr::var("p_lambda"), ctx)
                .unwrap();
        build_bracket_table(&chain, ctx).unwrap()
    }

    #[test]
    fn constraint_matrix_inverts_on_surface() {
        let ctx = ctx();
        let table = sphere_table(&ctx);
        assert_eq!(table.constraints.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Expr::zero();
                for k in 0..4 {
                    acc = acc + table.c[i][k].clone() * table.c_inv[k][j].clone();
                }
                let reduced = weak_reduce(&acc.simplify(), &table.chain);
                let want = if i == j { Expr::one() } else { Expr::zero() };
                let rep =
                    expr_identical(&reduced, &want, &phase_domain(), 20, 1e-10, &ctx).unwrap();
                assert!(rep.identical, "(C C^-1)[{i}][{j}] residual {}", rep.max_residual);
            }
        }
        // C is antisymmetric
        for i in 0..4 {
            for j in 0..4 {
                let sym = (table.c[i][j].clone() + table.c[j][i].clone()).simplify();
                assert!(sym.is_zero());
            }
        }
    }

    #[test]
    fn dirac_brackets_match_sphere_closed_forms() {
        let ctx = ctx();
        let table = sphere_table(&ctx);
        let r2inv = Expr::pow(Expr::cnst("r"), -2);
        let coords = ["x", "y", "z"];
        let momenta = ["px", "py", "pz"];
        // {x_i, x_j}_D = 0
        for a in coords {
            for b in coords {
                let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
                let rep = expr_identical(&got, &Expr::zero(), &phase_domain(), 20, 1e-10, &ctx)
                    .unwrap();
                assert!(rep.identical, "{{{a},{b}}}_D residual {}", rep.max_residual);
            }
        }
        // {x_i, p_j}_D = delta_ij - x_i x_j / r^2
        for (i, a) in coords.iter().enumerate() {
            for (j, b) in momenta.iter().enumerate() {
                let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
                let delta = if i == j { Expr::one() } else { Expr::zero() };
                let want = weak_reduce(
                    &(delta - Expr::var(coords[i]) * Expr::var(coords[j]) * r2inv.clone())
                        .simplify(),
                    &table.chain,
                );
                let rep = expr_identical(&got, &want, &phase_domain(), 25, 1e-10, &ctx).unwrap();
                assert!(rep.identical, "{{{a},{b}}}_D residual {}", rep.max_residual);
            }
        }
        // {p_i, p_j}_D = -(x_i p_j - x_j p_i)/r^2
        for (i, a) in momenta.iter().enumerate() {
            for (j, b) in momenta.iter().enumerate() {
                let got = dirac_bracket(&Expr::var(a), &Expr::var(b), &table);
                let want = weak_reduce(
                    &(Expr::int(-1)
                        * (Expr::var(coords[i]) * Expr::var(momenta[j])
                            - Expr::var(coords[j]) * Expr::var(momenta[i]))
                        * r2inv.clone())
                    .simplify(),
                    &table.chain,
                );
                let rep = expr_identical(&got, &want, &phase_domain(), 25, 1e-10, &ctx).unwrap();
                assert!(rep.identical, "{{{a},{b}}}_D residual {}", rep.max_residual);
            }
        }
    }

    #[test]
    fn equations_of_motion_from_dirac_brackets() {
        let ctx = ctx();
        let table = sphere_table(&ctx);
        let h = kinetic_hamiltonian();
        // {x, H}_D = px/m exactly, at the structural level
        let got = dirac_bracket(&Expr::var("x"), &h, &table);
        let want = (Expr::var("px") * Expr::pow(Expr::cnst("m"), -1)).simplify();
        assert_eq!(got, want, "{{x,H}}_D = {got}");
        // {p_x, H}_D matches the summed reading -x p^2/(m r^2) and not the
        // repeated-index reading -x px^2/(m r^2)
        let got = dirac_bracket(&Expr::var("px"), &h, &table);
        let p2 = Expr::pow(Expr::var("px"), 2)
            + Expr::pow(Expr::var("py"), 2)
            + Expr::pow(Expr::var("pz"), 2);
        let summed = weak_reduce(
            &(Expr::int(-1)
                * Expr::var("x")
                * p2
                * Expr::pow(Expr::cnst("m"), -1)
                * Expr::pow(Expr::cnst("r"), -2))
            .simplify(),
            &table.chain,
        );
        let rep = expr_identical(&got, &summed, &phase_domain(), 30, 1e-10, &ctx).unwrap();
        assert!(rep.identical, "summed reading residual {}", rep.max_residual);
        let repeated = weak_reduce(
            &(Expr::int(-1)
                * Expr::var("x")
                * Expr::pow(Expr::var("px"), 2)
                * Expr::pow(Expr::cnst("m"), -1)
                * Expr::pow(Expr::cnst("r"), -2))
            .simplify(),
            &table.chain,
        );
        let rep = expr_identical(&got, &repeated, &phase_domain(), 30, 1e-6, &ctx).unwrap();
        assert!(!rep.identical, "repeated-index reading should not match");
        // classical_eom covers all six variables; velocity rows are p_i/m
        let eom = classical_eom(&table, &h);
        assert_eq!(eom.len(), 6);
        let ydot = &eom[1].1;
        let want = (Expr::var("py") * Expr::pow(Expr::cnst("m"), -1)).simplify();
        assert_eq!(ydot, &want);
    }

    #[test]
    fn dirac_bracket_antisymmetry_and_jacobi() {
        let ctx = ctx();
        let table = sphere_table(&ctx);
        let anti = (dirac_bracket(&Expr::var("x"), &Expr::var("px"), &table)
            + dirac_bracket(&Expr::var("px"), &Expr::var("x"), &table))
        .simplify();
        let rep = expr_identical(&anti, &Expr::zero(), &phase_domain(), 30, 1e-10, &ctx).unwrap();
        assert!(rep.identical);
        // Jacobi on (px, py, x): {{px,py}_D, x}_D + cyclic ~ 0 after reduction
        let jac = |a: &Expr, b: &Expr, c: &Expr| -> Expr {
            dirac_bracket(&dirac_bracket(a, b, &table), c, &table)
        };
        let (px, py, x) = (Expr::var("px"), Expr::var("py"), Expr::var("x"));
        let total = (jac(&px, &py, &x) + jac(&py, &x, &px) + jac(&x, &px, &py)).simplify();
        let rep = expr_identical(&total, &Expr::zero(), &phase_domain(), 40, 1e-9, &ctx).unwrap();
        assert!(rep.identical, "Jacobi residual {}", rep.max_residual);
    }

    #[test]
    fn lambda_coefficient_bracket_is_second_class_signal() {
        // {phi2, phi3} for the printed constraints: -r^2/(m (r^2-x^2-y^2)),
        // frozen from the independent bracket-by-hand oracle. Nonzero means
        // the pair is second class.
        let ctx = ctx();
        let s = sphere_radical();
        let phi2 = (s.clone() - Expr::var("z")).simplify();
        let phi3 = ((Expr::var("x") * Expr::var("px") + Expr::var("y") * Expr::var("py"))
            / (Expr::cnst("m") * s.clone())
            + Expr::var("pz") / Expr::cnst("m"))
        .simplify();
        let got = poisson(&phi2, &phi3);
        let want = (Expr::int(-1) * Expr::pow(Expr::cnst("r"), 2)
            / (Expr::cnst("m") * Expr::pow(s, 2)))
        .simplify();
        let rep = expr_identical(&got, &want, &phase_domain(), 40, 1e-10, &ctx).unwrap();
        assert!(rep.identical, "residual {}", rep.max_residual);
        let point = bindings(&[
            ("x", 0.3),
            ("y", 0.2),
            ("z", 0.5),
            ("px", 0.1),
            ("py", -0.4),
            ("pz", 0.7),
            ("lambda", 0.9),
            ("p_lambda", 0.0),
        ]);
        let v = got.eval(&point, &ctx.consts).unwrap();
        assert!(v.norm() > 0.5, "bracket unexpectedly small: {v}");
    }
}
