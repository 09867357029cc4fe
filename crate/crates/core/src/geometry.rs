//! Differential geometry of a parametrized surface.
//!
//! Everything is derived symbolically from the embedding: covariant and
//! contravariant bases, metric and inverse, unit normal, mean and Gaussian
//! curvature from the fundamental forms, and the curvature-induced scalar
//! potential `-hbar^2/(2m) (M^2 - K)`. The sphere patches are fixtures; the
//! machinery is generic over any `(q1, q2) -> (x, y, z)` embedding.

use crate::expr::{expr_identical, Domain, DomainError, Expr, NumericContext, Sym};
use std::sync::Arc;

/// A parametrization `(q1, q2) -> (x, y, z)` with its sampling domain.
#[derive(Clone, Debug)]
pub struct SurfacePatch {
    pub params: [Sym; 2],
    pub embedding: [Expr; 3],
    pub domain: Domain,
}

/// All first- and second-order geometric data of a patch, symbolic.
#[derive(Clone, Debug)]
pub struct GeometryData {
    pub patch: SurfacePatch,
    /// Covariant basis `r_mu = d_mu r`, one row per parameter.
    pub basis_cov: [[Expr; 3]; 2],
    /// Contravariant basis `r^mu = g^{mu nu} r_nu`.
    pub basis_contra: [[Expr; 3]; 2],
    pub metric: [[Expr; 2]; 2],
    pub metric_inv: [[Expr; 2]; 2],
    pub det_metric: Expr,
    /// Outward unit normal `(r_1 x r_2)/|r_1 x r_2|`.
    pub normal: [Expr; 3],
    /// Mean curvature `M = (1/2) g^{mu nu} b_{mu nu}` with `b = n . dd r`.
    pub mean_curvature: Expr,
    /// Gaussian curvature `K = det b / det g`.
    pub gauss_curvature: Expr,
    /// `-hbar^2/(2m) (M^2 - K)`.
    pub geometric_potential: Expr,
}

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("metric is degenerate: |det g| = {min_abs:.3e} at a sampled point")]
    DegenerateMetric { min_abs: f64 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Derives the full geometric data of a patch. Fails if `det g` vanishes at
/// any sampled domain point.
pub fn build_geometry(patch: SurfacePatch, ctx: &NumericContext) -> Result<GeometryData, GeometryError> {
    let [q1, q2] = patch.params.clone();

    let d = |e: &Expr, q: &Sym| e.differentiate(q);
    let basis_cov: [[Expr; 3]; 2] = [
        [
            d(&patch.embedding[0], &q1),
            d(&patch.embedding[1], &q1),
            d(&patch.embedding[2], &q1),
        ],
        [
            d(&patch.embedding[0], &q2),
            d(&patch.embedding[1], &q2),
            d(&patch.embedding[2], &q2),
        ],
    ];

    let dot = |a: &[Expr; 3], b: &[Expr; 3]| -> Expr {
        (a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone())
            .expand()
    };
    let metric = [
        [dot(&basis_cov[0], &basis_cov[0]), dot(&basis_cov[0], &basis_cov[1])],
        [dot(&basis_cov[1], &basis_cov[0]), dot(&basis_cov[1], &basis_cov[1])],
    ];
    let det_metric = (metric[0][0].clone() * metric[1][1].clone()
        - metric[0][1].clone() * metric[1][0].clone())
    .expand();

    // Reject degenerate metrics before dividing by det g.
    let mut rng = ctx.rng();
    let points = patch.domain.sample(&mut rng, &ctx.consts, 25)?;
    let mut min_abs = f64::INFINITY;
    for p in &points {
        if let Ok(v) = det_metric.eval(p, &ctx.consts) {
            min_abs = min_abs.min(v.norm());
        }
    }
    if !(min_abs > 1e-9) {
        return Err(GeometryError::DegenerateMetric { min_abs });
    }

    let inv_det = Expr::pow(det_metric.clone(), -1);
    let metric_inv = [
        [
            (metric[1][1].clone() * inv_det.clone()).expand(),
            (-(metric[0][1].clone()) * inv_det.clone()).expand(),
        ],
        [
            (-(metric[1][0].clone()) * inv_det.clone()).expand(),
            (metric[0][0].clone() * inv_det.clone()).expand(),
        ],
    ];

    let mut basis_contra: [[Expr; 3]; 2] =
        std::array::from_fn(|_| std::array::from_fn(|_| Expr::zero()));
    for mu in 0..2 {
        for j in 0..3 {
            basis_contra[mu][j] = (metric_inv[mu][0].clone() * basis_cov[0][j].clone()
                + metric_inv[mu][1].clone() * basis_cov[1][j].clone())
            .expand();
        }
    }

    // n = (r_1 x r_2) / sqrt(det g); |r_1 x r_2|^2 = det g identically.
    let cross = [
        (basis_cov[0][1].clone() * basis_cov[1][2].clone()
            - basis_cov[0][2].clone() * basis_cov[1][1].clone())
        .simplify(),
        (basis_cov[0][2].clone() * basis_cov[1][0].clone()
            - basis_cov[0][0].clone() * basis_cov[1][2].clone())
        .simplify(),
        (basis_cov[0][0].clone() * basis_cov[1][1].clone()
            - basis_cov[0][1].clone() * basis_cov[1][0].clone())
        .simplify(),
    ];
    let inv_norm = Expr::pow(Expr::sqrt(det_metric.clone()), -1);
    let normal = [
        (cross[0].clone() * inv_norm.clone()).expand(),
        (cross[1].clone() * inv_norm.clone()).expand(),
        (cross[2].clone() * inv_norm.clone()).expand(),
    ];

    // Second fundamental form b_{mu nu} = n . d_mu d_nu r.
    let qs = [&q1, &q2];
    let mut b: [[Expr; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| Expr::zero()));
    for mu in 0..2 {
        for nu in 0..2 {
            let second = [
                basis_cov[mu][0].differentiate(qs[nu]),
                basis_cov[mu][1].differentiate(qs[nu]),
                basis_cov[mu][2].differentiate(qs[nu]),
            ];
            b[mu][nu] = dot(&normal, &second);
        }
    }

    let mut mean = Expr::zero();
    for mu in 0..2 {
        for nu in 0..2 {
            mean = mean + metric_inv[mu][nu].clone() * b[mu][nu].clone();
        }
    }
    let mean_curvature = (Expr::ratio(1, 2) * mean).expand();
    let det_b = (b[0][0].clone() * b[1][1].clone() - b[0][1].clone() * b[1][0].clone()).expand();
    let gauss_curvature = (det_b * Expr::pow(det_metric.clone(), -1)).expand();

    let geometric_potential = (Expr::ratio(-1, 2)
        * Expr::pow(Expr::cnst("hbar"), 2)
        * Expr::pow(Expr::cnst("m"), -1)
        * (Expr::pow(mean_curvature.clone(), 2) - gauss_curvature.clone()))
    .simplify();

    Ok(GeometryData {
        patch,
        basis_cov,
        basis_contra,
        metric,
        metric_inv,
        det_metric,
        normal,
        mean_curvature,
        gauss_curvature,
        geometric_potential,
    })
}

/// The sphere as a graph `z = sqrt(r^2 - x^2 - y^2)` over Cartesian `(x, y)`,
/// sampled inside the disk `x^2 + y^2 < (0.9 radius)^2`.
pub fn monge_sphere(radius: &str) -> SurfacePatch {
    let r = Expr::cnst(radius);
    let x = Expr::var("x");
    let y = Expr::var("y");
    let z = Expr::sqrt(Expr::pow(r.clone(), 2) - Expr::pow(x.clone(), 2) - Expr::pow(y.clone(), 2));
    let outside = Expr::pow(x.clone(), 2) + Expr::pow(y.clone(), 2)
        - Expr::ratio(81, 100) * Expr::pow(r.clone(), 2);
    SurfacePatch {
        params: [Arc::from("x"), Arc::from("y")],
        embedding: [x, y, z],
        domain: Domain::new()
            .interval("x", -r.clone(), r.clone())
            .interval("y", -r.clone(), r)
            .exclude(outside, "inside the 0.9 r disk"),
    }
}

/// The sphere in standard angles, poles excluded.
pub fn spherical_sphere(radius: &str) -> SurfacePatch {
    let r = Expr::cnst(radius);
    let theta = Expr::var("theta");
    let phi = Expr::var("phi");
    SurfacePatch {
        params: [Arc::from("theta"), Arc::from("phi")],
        embedding: [
            r.clone() * Expr::sin(theta.clone()) * Expr::cos(phi.clone()),
            r.clone() * Expr::sin(theta.clone()) * Expr::sin(phi.clone()),
            r * Expr::cos(theta),
        ],
        domain: Domain::new()
            .interval_f("theta", 0.1, std::f64::consts::PI - 0.1)
            .interval_f("phi", 0.1, 2.0 * std::f64::consts::PI - 0.1),
    }
}

/// The plane `z = 0`; flat contrast fixture.
pub fn flat_plane() -> SurfacePatch {
    SurfacePatch {
        params: [Arc::from("x"), Arc::from("y")],
        embedding: [Expr::var("x"), Expr::var("y"), Expr::zero()],
        domain: Domain::new().interval_f("x", -1.0, 1.0).interval_f("y", -1.0, 1.0),
    }
}

/// Checks `a == b` over the patch domain; small wrapper used by the suites.
pub fn patch_identical(
    a: &Expr,
    b: &Expr,
    patch: &SurfacePatch,
    n: usize,
    tol: f64,
    ctx: &NumericContext,
) -> Result<crate::expr::IdentityReport, DomainError> {
    expr_identical(a, b, &patch.domain, n, tol, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_radical() -> Expr {
        Expr::sqrt(
            Expr::pow(Expr::cnst("r"), 2)
                - Expr::pow(Expr::var("x"), 2)
                - Expr::pow(Expr::var("y"), 2),
        )
    }

    #[test]
    fn monge_covariant_basis_matches_closed_form() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let s = sphere_radical();
        let claimed_rx: [Expr; 3] = [
            Expr::one(),
            Expr::zero(),
            (-Expr::var("x") / s.clone()).simplify(),
        ];
        for j in 0..3 {
            let rep = patch_identical(&geom.basis_cov[0][j], &claimed_rx[j], &geom.patch, 50, 1e-10, &ctx)
                .unwrap();
            assert!(rep.identical, "r_x component {j}: residual {}", rep.max_residual);
        }
    }

    #[test]
    fn monge_normal_and_curvatures() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        // n = (x, y, s)/r
        let s = sphere_radical();
        let inv_r = Expr::pow(Expr::cnst("r"), -1);
        let claimed = [
            (Expr::var("x") * inv_r.clone()).simplify(),
            (Expr::var("y") * inv_r.clone()).simplify(),
            (s * inv_r).simplify(),
        ];
        for j in 0..3 {
            let rep =
                patch_identical(&geom.normal[j], &claimed[j], &geom.patch, 50, 1e-10, &ctx).unwrap();
            assert!(rep.identical, "normal component {j}: residual {}", rep.max_residual);
        }
        // M = -1/r, K = 1/r^2, so M^2 - K vanishes and so does the potential.
        let m_claimed = (-Expr::pow(Expr::cnst("r"), -1)).simplify();
        let rep = patch_identical(&geom.mean_curvature, &m_claimed, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical, "M residual {}", rep.max_residual);
        let k_claimed = Expr::pow(Expr::cnst("r"), -2);
        let rep = patch_identical(&geom.gauss_curvature, &k_claimed, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical, "K residual {}", rep.max_residual);
        let rep = patch_identical(&geom.geometric_potential, &Expr::zero(), &geom.patch, 50, 1e-10, &ctx)
            .unwrap();
        assert!(rep.identical, "V_gp residual {}", rep.max_residual);
    }

    #[test]
    fn mean_curvature_at_unit_sphere_center_is_minus_one() {
        let ctx = NumericContext::default();
        let geom = build_geometry(monge_sphere("r"), &ctx).unwrap();
        let v = geom
            .mean_curvature
            .eval(&crate::expr::bindings(&[("x", 0.2), ("y", -0.1)]), &ctx.consts)
            .unwrap();
        assert!((v.re + 1.0).abs() < 1e-12 && v.im.abs() < 1e-14);
    }

    #[test]
    fn spherical_patch_metric_is_diagonal() {
        let ctx = NumericContext::default();
        let geom = build_geometry(spherical_sphere("r"), &ctx).unwrap();
        let r2 = Expr::pow(Expr::cnst("r"), 2);
        let rep = patch_identical(&geom.metric[0][0], &r2, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical);
        let rep = patch_identical(&geom.metric[0][1], &Expr::zero(), &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical);
        let g_pp = (r2 * Expr::pow(Expr::sin(Expr::var("theta")), 2)).simplify();
        let rep = patch_identical(&geom.metric[1][1], &g_pp, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical);
        // Same invariant curvature as the Monge patch.
        let m_claimed = (-Expr::pow(Expr::cnst("r"), -1)).simplify();
        let rep = patch_identical(&geom.mean_curvature, &m_claimed, &geom.patch, 50, 1e-10, &ctx).unwrap();
        assert!(rep.identical, "M residual {}", rep.max_residual);
    }

    #[test]
    fn flat_plane_is_flat() {
        let ctx = NumericContext::default();
        let geom = build_geometry(flat_plane(), &ctx).unwrap();
        for e in [&geom.mean_curvature, &geom.gauss_curvature, &geom.geometric_potential] {
            let rep = patch_identical(e, &Expr::zero(), &geom.patch, 20, 1e-12, &ctx).unwrap();
            assert!(rep.identical);
        }
    }

    #[test]
    fn degenerate_embedding_is_rejected() {
        // A "surface" whose two tangent vectors are parallel everywhere.
        let patch = SurfacePatch {
            params: [Arc::from("a"), Arc::from("b")],
            embedding: [
                Expr::var("a") + Expr::var("b"),
                Expr::var("a") + Expr::var("b"),
                Expr::zero(),
            ],
            domain: Domain::new().interval_f("a", 0.0, 1.0).interval_f("b", 0.0, 1.0),
        };
        let err = build_geometry(patch, &NumericContext::default()).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateMetric { .. }));
    }
}
