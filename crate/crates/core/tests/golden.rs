//! Golden-file checks of the deterministic text serialization: the derived
//! operator tables must reproduce the committed dumps byte for byte, and the
//! committed coefficient lines must parse back into the grammar.

use geomom::expr::parse_expr;
use geomom::geometry::{build_geometry, monge_sphere, spherical_sphere};
use geomom::operators::{geometric_momentum, surface_hamiltonian};
use geomom::NumericContext;

fn render(patch: geomom::geometry::SurfacePatch) -> String {
    let ctx = NumericContext::default();
    let geom = build_geometry(patch, &ctx).unwrap();
    let p = geometric_momentum(&geom);
    let mut out = String::new();
    for (op, label) in p.iter().zip(["p_x", "p_y", "p_z"]) {
        out.push_str(&format!("# {label}\n"));
        out.push_str(&op.dump_text());
    }
    let h = surface_hamiltonian(&geom, &geom.geometric_potential.clone());
    out.push_str("# H\n");
    out.push_str(&h.dump_text());
    out.push_str("# M\n");
    out.push_str(&format!("1: {}\n", geom.mean_curvature.to_text()));
    out.push_str("# K\n");
    out.push_str(&format!("1: {}\n", geom.gauss_curvature.to_text()));
    out
}

#[test]
fn monge_dump_matches_committed_golden() {
    let got = render(monge_sphere("r"));
    let want = include_str!("golden/monge_operators.txt");
    assert_eq!(got, want);
}

#[test]
fn spherical_dump_matches_committed_golden() {
    let got = render(spherical_sphere("r"));
    let want = include_str!("golden/spherical_operators.txt");
    assert_eq!(got, want);
}

#[test]
fn golden_coefficient_lines_parse() {
    for text in [
        include_str!("golden/monge_operators.txt"),
        include_str!("golden/spherical_operators.txt"),
    ] {
        for line in text.lines() {
            if let Some((_, expr)) = line.split_once(": ") {
                parse_expr(expr).unwrap_or_else(|e| panic!("{e} in line `{line}`"));
            }
        }
    }
}
