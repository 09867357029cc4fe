//! First- and second-order linear differential operators on a surface patch,
//! the geometric momentum components, the surface Hamiltonian, operator
//! composition, and commutator verification against claimed closed forms.

use crate::expr::{Bindings, Domain, DomainError, Expr, NumericContext, Sym};
use crate::geometry::GeometryData;
use rand::Rng;
use std::collections::BTreeMap;

/// Derivative multi-index over the two patch parameters, up to second order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MultiIndex {
    Id,
    D1,
    D2,
    D11,
    D12,
    D22,
}

impl MultiIndex {
    pub const ALL: [MultiIndex; 6] = [
        MultiIndex::Id,
        MultiIndex::D1,
        MultiIndex::D2,
        MultiIndex::D11,
        MultiIndex::D12,
        MultiIndex::D22,
    ];

    pub fn orders(self) -> (u8, u8) {
        match self {
            MultiIndex::Id => (0, 0),
            MultiIndex::D1 => (1, 0),
            MultiIndex::D2 => (0, 1),
            MultiIndex::D11 => (2, 0),
            MultiIndex::D12 => (1, 1),
            MultiIndex::D22 => (0, 2),
        }
    }

    pub fn order(self) -> u8 {
        let (a, b) = self.orders();
        a + b
    }

    fn from_orders(a: u8, b: u8) -> Option<MultiIndex> {
        match (a, b) {
            (0, 0) => Some(MultiIndex::Id),
            (1, 0) => Some(MultiIndex::D1),
            (0, 1) => Some(MultiIndex::D2),
            (2, 0) => Some(MultiIndex::D11),
            (1, 1) => Some(MultiIndex::D12),
            (0, 2) => Some(MultiIndex::D22),
            _ => None,
        }
    }
}

/// A linear differential operator with expression coefficients attached to
/// derivative multi-indices over the patch parameters.
#[derive(Clone, Debug)]
pub struct DiffOperator {
    pub params: [Sym; 2],
    pub coeffs: BTreeMap<MultiIndex, Expr>,
}

#[derive(Debug, thiserror::Error)]
pub enum OpError {
    #[error("composition order {0} exceeds the closed-form bound 2")]
    OrderOverflow(u8),
    #[error("operators act on different parameters")]
    ParamMismatch,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl DiffOperator {
    pub fn new(params: [Sym; 2]) -> DiffOperator {
        DiffOperator {
            params,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn with_coeff(mut self, idx: MultiIndex, coeff: Expr) -> DiffOperator {
        self.set(idx, coeff);
        self
    }

    pub fn set(&mut self, idx: MultiIndex, coeff: Expr) {
        let c = coeff.simplify();
        if c.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
    }

    pub fn coeff(&self, idx: MultiIndex) -> Expr {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Expr::zero)
    }

    /// Multiplication by `f` (a zeroth-order operator).
    pub fn mul_by(params: [Sym; 2], f: Expr) -> DiffOperator {
        DiffOperator::new(params).with_coeff(MultiIndex::Id, f)
    }

    pub fn identity(params: [Sym; 2]) -> DiffOperator {
        DiffOperator::mul_by(params, Expr::one())
    }

    pub fn order(&self) -> u8 {
        self.coeffs.keys().map(|i| i.order()).max().unwrap_or(0)
    }

    /// Applies the operator to a function of the patch parameters,
    /// differentiating symbolically.
    pub fn apply(&self, f: &Expr) -> Expr {
        let [q1, q2] = &self.params;
        let mut terms = Vec::new();
        let mut cache: BTreeMap<(u8, u8), Expr> = BTreeMap::new();
        cache.insert((0, 0), f.clone());
        for (idx, coeff) in &self.coeffs {
            let (a, b) = idx.orders();
            let df = derived(&mut cache, f, q1, q2, a, b);
            terms.push(coeff.clone() * df);
        }
        Expr::Sum(terms).simplify()
    }

    pub fn add(&self, other: &DiffOperator) -> Result<DiffOperator, OpError> {
        if self.params != other.params {
            return Err(OpError::ParamMismatch);
        }
        let mut out = DiffOperator::new(self.params.clone());
        for idx in MultiIndex::ALL {
            out.set(idx, self.coeff(idx) + other.coeff(idx));
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOperator) -> Result<DiffOperator, OpError> {
        self.add(&other.scale(Expr::int(-1)))
    }

    pub fn scale(&self, factor: Expr) -> DiffOperator {
        let mut out = DiffOperator::new(self.params.clone());
        for (idx, c) in &self.coeffs {
            out.set(*idx, factor.clone() * c.clone());
        }
        out
    }

    /// Closed-form composition `(self . other)(f) = self(other(f))`, expanded
    /// by the Leibniz rule. Only combined order <= 2 has a closed form here;
    /// use [`LazyComposition`] beyond that.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator, OpError> {
        if self.params != other.params {
            return Err(OpError::ParamMismatch);
        }
        let total = self.order() + other.order();
        if total > 2 {
            return Err(OpError::OrderOverflow(total));
        }
        let [q1, q2] = &self.params;
        let mut out = DiffOperator::new(self.params.clone());
        let mut acc: BTreeMap<MultiIndex, Vec<Expr>> = BTreeMap::new();
        for (ai, ac) in &self.coeffs {
            let (a1, a2) = ai.orders();
            for (bi, bc) in &other.coeffs {
                let (b1, b2) = bi.orders();
                // d^a (bc . d^b f) = sum_{g <= a} C(a,g) (d^{a-g} bc) d^{g+b} f
                for g1 in 0..=a1 {
                    for g2 in 0..=a2 {
                        let binom = (binomial(a1, g1) * binomial(a2, g2)) as i64;
                        let mut cache = BTreeMap::new();
                        cache.insert((0, 0), bc.clone());
                        let dbc = derived(&mut cache, bc, q1, q2, a1 - g1, a2 - g2);
                        let idx = MultiIndex::from_orders(g1 + b1, g2 + b2)
                            .ok_or(OpError::OrderOverflow(total))?;
                        acc.entry(idx).or_default().push(
                            Expr::int(binom) * ac.clone() * dbc,
                        );
                    }
                }
            }
        }
        for (idx, terms) in acc {
            out.set(idx, Expr::Sum(terms));
        }
        Ok(out)
    }

    /// Dumps the coefficient table in the symbolic text format, one line per
    /// multi-index, for golden comparisons.
    pub fn dump_text(&self) -> String {
        let labels = ["1", "d1", "d2", "d11", "d12", "d22"];
        let mut out = String::new();
        for (idx, label) in MultiIndex::ALL.iter().zip(labels) {
            let c = self.coeff(*idx);
            if !c.is_zero() {
                out.push_str(label);
                out.push_str(": ");
                out.push_str(&c.to_text());
                out.push('\n');
            }
        }
        out
    }
}

fn binomial(n: u8, k: u8) -> u64 {
    match (n, k) {
        (_, 0) => 1,
        (2, 1) => 2,
        (n, k) if n == k => 1,
        _ => 0,
    }
}

fn derived(
    cache: &mut BTreeMap<(u8, u8), Expr>,
    f: &Expr,
    q1: &Sym,
    q2: &Sym,
    a: u8,
    b: u8,
) -> Expr {
    if let Some(e) = cache.get(&(a, b)) {
        return e.clone();
    }
    let e = if a > 0 {
        derived(cache, f, q1, q2, a - 1, b).differentiate(q1)
    } else {
        derived(cache, f, q1, q2, a, b - 1).differentiate(q2)
    };
    cache.insert((a, b), e.clone());
    e
}

/// Application-only composition of arbitrarily many operators; never errors
/// on combined order.
#[derive(Clone, Debug)]
pub struct LazyComposition {
    pub chain: Vec<DiffOperator>,
}

impl LazyComposition {
    pub fn of(ops: &[&DiffOperator]) -> LazyComposition {
        LazyComposition {
            chain: ops.iter().map(|o| (*o).clone()).collect(),
        }
    }

    /// Applies right to left: `of([A, B]).apply(f) = A(B(f))`.
    pub fn apply(&self, f: &Expr) -> Expr {
        let mut cur = f.clone();
        for op in self.chain.iter().rev() {
            cur = op.apply(&cur);
        }
        cur
    }
}

/// A complex-valued function of the patch parameters.
#[derive(Clone, Debug)]
pub struct Wavefunction {
    pub expr: Expr,
    pub domain: Domain,
}

/// Builds the three geometric momentum components: for each Cartesian `j`,
/// `p_j = -i hbar ((r^mu)_j d_mu + M n_j)`.
pub fn geometric_momentum(geom: &GeometryData) -> [DiffOperator; 3] {
    momentum_components(geom, true)
}

/// The tangential part `-i hbar (r^mu)_j d_mu` alone; without the curvature
/// term the components fail to be symmetric under the surface measure.
pub fn stripped_momentum(geom: &GeometryData) -> [DiffOperator; 3] {
    momentum_components(geom, false)
}

fn momentum_components(geom: &GeometryData, include_mn: bool) -> [DiffOperator; 3] {
    let minus_i_hbar = Expr::int(-1) * Expr::i() * Expr::cnst("hbar");
    std::array::from_fn(|j| {
        let mut op = DiffOperator::new(geom.patch.params.clone());
        op.set(
            MultiIndex::D1,
            minus_i_hbar.clone() * geom.basis_contra[0][j].clone(),
        );
        op.set(
            MultiIndex::D2,
            minus_i_hbar.clone() * geom.basis_contra[1][j].clone(),
        );
        if include_mn {
            op.set(
                MultiIndex::Id,
                minus_i_hbar.clone() * geom.mean_curvature.clone() * geom.normal[j].clone(),
            );
        }
        op
    })
}

/// The surface Hamiltonian `-hbar^2/(2m) (1/sqrt g) d_mu sqrt(g) g^{mu nu}
/// d_nu + V`, expanded into coefficient form.
pub fn surface_hamiltonian(geom: &GeometryData, potential: &Expr) -> DiffOperator {
    let [q1, q2] = &geom.patch.params;
    let qs = [q1.clone(), q2.clone()];
    let kin = Expr::ratio(-1, 2) * Expr::pow(Expr::cnst("hbar"), 2) * Expr::pow(Expr::cnst("m"), -1);
    let sqrt_g = Expr::sqrt(geom.det_metric.clone());
    let inv_sqrt_g = Expr::pow(Expr::sqrt(geom.det_metric.clone()), -1);

    let mut op = DiffOperator::new(geom.patch.params.clone());
    // Second order: g^{mu nu} d_mu d_nu with the mixed term collected once.
    op.set(MultiIndex::D11, kin.clone() * geom.metric_inv[0][0].clone());
    op.set(
        MultiIndex::D12,
        kin.clone() * Expr::int(2) * geom.metric_inv[0][1].clone(),
    );
    op.set(MultiIndex::D22, kin.clone() * geom.metric_inv[1][1].clone());
    // First order: (1/sqrt g) d_mu (sqrt g g^{mu nu}).
    for nu in 0..2 {
        let mut total = Expr::zero();
        for mu in 0..2 {
            let inner = (sqrt_g.clone() * geom.metric_inv[mu][nu].clone()).simplify();
            total = total + inner.differentiate(&qs[mu]);
        }
        let coeff = kin.clone() * inv_sqrt_g.clone() * total;
        let idx = if nu == 0 { MultiIndex::D1 } else { MultiIndex::D2 };
        op.set(idx, coeff);
    }
    op.set(MultiIndex::Id, potential.clone());
    op
}

/// Maximum normalized residual of `[A, B] - claimed` applied to a battery of
/// test functions at random domain points:
/// `max |([A,B] - claimed) f| / (1 + |f| + |A f| + |B f|)`.
pub fn commutator_residual(
    a: &DiffOperator,
    b: &DiffOperator,
    claimed: &DiffOperator,
    testfns: &[Wavefunction],
    dom: &Domain,
    n_points: usize,
    ctx: &NumericContext,
) -> Result<f64, OpError> {
    let mut worst: f64 = 0.0;
    let mut rng = ctx.rng_stream(0xc0);
    for wf in testfns {
        let f = &wf.expr;
        let af = a.apply(f);
        let bf = b.apply(f);
        let abf = a.apply(&bf);
        let baf = b.apply(&af);
        let clf = claimed.apply(f);
        let comm_minus_claimed = (abf - baf - clf).simplify();
        let points = dom.sample(&mut rng, &ctx.consts, n_points)?;
        for p in &points {
            let (num, den) = match (
                comm_minus_claimed.eval(p, &ctx.consts),
                f.eval(p, &ctx.consts),
                af.eval(p, &ctx.consts),
                bf.eval(p, &ctx.consts),
            ) {
                (Ok(n), Ok(v0), Ok(v1), Ok(v2)) => {
                    (n.norm(), 1.0 + v0.norm() + v1.norm() + v2.norm())
                }
                _ => continue,
            };
            worst = worst.max(num / den);
        }
    }
    Ok(worst)
}

/// Smooth generic test functions: low-degree polynomials times a Gaussian
/// bump centered randomly inside the box. Generic enough to avoid accidental
/// annihilation by any of the operators under test.
pub fn test_function_battery(
    params: &[Sym; 2],
    boxes: [(f64, f64); 2],
    count: usize,
    dom: &Domain,
    rng: &mut impl Rng,
) -> Vec<Wavefunction> {
    let q1 = Expr::Var(params[0].clone());
    let q2 = Expr::Var(params[1].clone());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let center = |(lo, hi): (f64, f64), rng: &mut dyn rand::RngCore| {
            let mid = 0.5 * (lo + hi);
            let span = 0.25 * (hi - lo);
            mid + span * (rand::Rng::random_range(&mut *rng, -1.0..1.0))
        };
        let c1 = center(boxes[0], rng);
        let c2 = center(boxes[1], rng);
        let width = 0.35 * (boxes[0].1 - boxes[0].0).min(boxes[1].1 - boxes[1].0);
        let mut coeff = || -> Expr { Expr::int(rng.random_range(-2i64..=2).max(-2)) };
        let poly = Expr::one()
            + coeff() * q1.clone()
            + coeff() * q2.clone()
            + coeff() * q1.clone() * q2.clone()
            + coeff() * Expr::pow(q1.clone(), 2);
        let d1 = q1.clone() - Expr::from_f64(c1);
        let d2 = q2.clone() - Expr::from_f64(c2);
        let arg = Expr::int(-1)
            * (Expr::pow(d1, 2) + Expr::pow(d2, 2))
            * Expr::from_f64(1.0 / (width * width));
        out.push(Wavefunction {
            expr: (poly * Expr::exp(arg)).simplify(),
            domain: dom.clone(),
        });
    }
    out
}

/// Numeric evaluation helper: applies `op` to `f` symbolically once and then
/// evaluates at the given points.
pub fn apply_and_eval(
    op: &DiffOperator,
    f: &Expr,
    points: &[Bindings],
    ctx: &NumericContext,
) -> Vec<Result<num_complex::Complex64, crate::expr::EvalError>> {
    let g = op.apply(f);
    points.iter().map(|p| g.eval(p, &ctx.consts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{bindings, expr_identical};
    use crate::geometry::{build_geometry, flat_plane, monge_sphere, patch_identical, spherical_sphere};

    fn sphere_s() -> Expr {
        Expr::sqrt(
            Expr::pow(Expr::cnst("r"), 2)
                - Expr::pow(Expr::var("x"), 2)
                - Expr::pow(Expr::var("y"), 2),
        )
    }

    #[test]
    fn monge_momentum_matches_closed_forms() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let [px, _py, pz] = geometric_momentum(&geom);
        let inv_r2 = Expr::pow(Expr::cnst("r"), -2);
        let mih = Expr::int(-1) * Expr::i() * Expr::cnst("hbar");
        // p_x: -i hbar (1/r^2) ((r^2 - x^2) d_x - x y d_y - x)
        let claims = [
            (
                px.coeff(MultiIndex::D1),
                (mih.clone()
                    * inv_r2.clone()
                    * (Expr::pow(Expr::cnst("r"), 2) - Expr::pow(Expr::var("x"), 2)))
                .simplify(),
            ),
            (
                px.coeff(MultiIndex::D2),
                (mih.clone() * inv_r2.clone() * Expr::int(-1) * Expr::var("x") * Expr::var("y"))
                    .simplify(),
            ),
            (
                px.coeff(MultiIndex::Id),
                (mih.clone() * inv_r2.clone() * Expr::int(-1) * Expr::var("x")).simplify(),
            ),
            // p_z: +i hbar (s/r^2) (x d_x + y d_y + 1)
            (
                pz.coeff(MultiIndex::D1),
                (Expr::i() * Expr::cnst("hbar") * sphere_s() * inv_r2.clone() * Expr::var("x"))
                    .simplify(),
            ),
            (
                pz.coeff(MultiIndex::Id),
                (Expr::i() * Expr::cnst("hbar") * sphere_s() * inv_r2.clone()).simplify(),
            ),
        ];
        for (k, (got, want)) in claims.iter().enumerate() {
            let rep = patch_identical(got, want, &geom.patch, 50, 1e-10, &ctx).unwrap();
            assert!(rep.identical, "claim {k}: residual {}", rep.max_residual);
        }
    }

    #[test]
    fn spherical_pz_matches_closed_form() {
        let ctx = NumericContext::default();
        let geom = build_geometry(spherical_sphere("r"), &ctx).unwrap();
        let [_, _, pz] = geometric_momentum(&geom);
        let mih_over_r = Expr::int(-1) * Expr::i() * Expr::cnst("hbar") * Expr::pow(Expr::cnst("r"), -1);
        let want_d1 = (mih_over_r.clone() * Expr::int(-1) * Expr::sin(Expr::var("theta"))).simplify();
        let want_id = (mih_over_r * Expr::int(-1) * Expr::cos(Expr::var("theta"))).simplify();
        let rep = patch_identical(&pz.coeff(MultiIndex::D1), &want_d1, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical);
        let rep = patch_identical(&pz.coeff(MultiIndex::Id), &want_id, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical);
        assert!(pz.coeff(MultiIndex::D2).is_zero());
    }

    #[test]
    fn flat_plane_hamiltonian_is_euclidean_laplacian() {
        let ctx = NumericContext::default();
        let geom = build_geometry(flat_plane(), &ctx).unwrap();
        let h = surface_hamiltonian(&geom, &geom.geometric_potential.clone());
        let want = (Expr::ratio(-1, 2) * Expr::pow(Expr::cnst("hbar"), 2) * Expr::pow(Expr::cnst("m"), -1))
            .simplify();
        assert_eq!(h.coeff(MultiIndex::D11), want);
        assert_eq!(h.coeff(MultiIndex::D22), want);
        assert!(h.coeff(MultiIndex::D1).is_zero());
        assert!(h.coeff(MultiIndex::D12).is_zero());
        assert!(h.coeff(MultiIndex::Id).is_zero());
    }

    #[test]
    fn monge_hamiltonian_matches_expansion() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let h = surface_hamiltonian(&geom, &Expr::zero());
        let kin = (Expr::ratio(-1, 2) * Expr::pow(Expr::cnst("hbar"), 2) * Expr::pow(Expr::cnst("m"), -1))
            .simplify();
        let inv_r2 = Expr::pow(Expr::cnst("r"), -2);
        let cases = [
            (
                MultiIndex::D11,
                (kin.clone() * (Expr::pow(Expr::cnst("r"), 2) - Expr::pow(Expr::var("x"), 2)) * inv_r2.clone())
                    .simplify(),
            ),
            (
                MultiIndex::D12,
                (kin.clone() * Expr::int(-2) * Expr::var("x") * Expr::var("y") * inv_r2.clone()).simplify(),
            ),
            (
                MultiIndex::D1,
                (kin.clone() * Expr::int(-2) * Expr::var("x") * inv_r2.clone()).simplify(),
            ),
            (
                MultiIndex::D2,
                (kin.clone() * Expr::int(-2) * Expr::var("y") * inv_r2.clone()).simplify(),
            ),
        ];
        for (idx, want) in cases {
            let rep = patch_identical(&h.coeff(idx), &want, &geom.patch, 50, 1e-10, &ctx).unwrap();
            assert!(rep.identical, "{idx:?}: residual {}", rep.max_residual);
        }
    }

    #[test]
    fn composition_matches_nested_application() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let [px, py, _] = geometric_momentum(&geom);
        // identity composition
        let id = DiffOperator::identity(geom.patch.params.clone());
        let pxi = px.compose(&id).unwrap();
        for idx in MultiIndex::ALL {
            let diff = (pxi.coeff(idx) - px.coeff(idx)).simplify();
            assert!(diff.is_zero(), "{idx:?}");
        }
        // closed form p_x . p_y vs nested application on a Gaussian
        let composed = px.compose(&py).unwrap();
        let f = Expr::exp(
            Expr::int(-1)
                * (Expr::pow(Expr::var("x") - Expr::from_f64(0.1), 2)
                    + Expr::pow(Expr::var("y") + Expr::from_f64(0.2), 2)),
        );
        let lhs = composed.apply(&f);
        let rhs = px.apply(&py.apply(&f));
        let rep = expr_identical(&lhs, &rhs, &geom.patch.domain, 30, 1e-9, &ctx).unwrap();
        assert!(rep.identical, "residual {}", rep.max_residual);
        // lazy composition agrees and handles order > 2
        let lazy = LazyComposition::of(&[&px, &py]);
        let rep = expr_identical(&lazy.apply(&f), &rhs, &geom.patch.domain, 10, 1e-12, &ctx).unwrap();
        assert!(rep.identical);
        let h = surface_hamiltonian(&geom, &Expr::zero());
        assert!(matches!(px.compose(&h), Err(OpError::OrderOverflow(3))));
        let deep = LazyComposition::of(&[&px, &h]);
        let rep = expr_identical(&deep.apply(&f), &px.apply(&h.apply(&f)), &geom.patch.domain, 5, 1e-12, &ctx)
            .unwrap();
        assert!(rep.identical);
    }

    #[test]
    fn multiplication_commutator_reproduces_position_bracket() {
        // [x., p_x] f = i hbar (1 - x^2/r^2) f
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let [px, _, _] = geometric_momentum(&geom);
        let xop = DiffOperator::mul_by(geom.patch.params.clone(), Expr::var("x"));
        let claimed = DiffOperator::mul_by(
            geom.patch.params.clone(),
            Expr::i()
                * Expr::cnst("hbar")
                * (Expr::one() - Expr::pow(Expr::var("x"), 2) * Expr::pow(Expr::cnst("r"), -2)),
        );
        let mut rng = ctx.rng();
        let fns = test_function_battery(
            &geom.patch.params,
            [(-0.6, 0.6), (-0.6, 0.6)],
            5,
            &geom.patch.domain,
            &mut rng,
        );
        let res = commutator_residual(&xop, &px, &claimed, &fns, &geom.patch.domain, 30, &ctx).unwrap();
        assert!(res < 1e-9, "residual {res}");
    }

    #[test]
    fn operator_linearity_under_evaluation() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let [px, _, _] = geometric_momentum(&geom);
        let f = Expr::pow(Expr::var("x"), 2) * Expr::var("y");
        let g = Expr::cos(Expr::var("x"));
        let combo = Expr::int(3) * f.clone() - Expr::int(2) * g.clone();
        let lhs = px.apply(&combo);
        let rhs = Expr::int(3) * px.apply(&f) - Expr::int(2) * px.apply(&g);
        let rep = expr_identical(&lhs, &rhs.simplify(), &geom.patch.domain, 25, 1e-12, &ctx).unwrap();
        assert!(rep.identical);
    }

    #[test]
    fn coefficient_dump_is_deterministic() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let [_, _, pz] = geometric_momentum(&geom);
        assert_eq!(pz.dump_text(), pz.dump_text());
        assert!(pz.dump_text().contains("d1: "));
    }
}
