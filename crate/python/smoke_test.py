#!/usr/bin/env python3
"""Smoke test for the geomom_py extension module.

Builds the cdylib with cargo if needed, stages it under an importable name,
and exercises the expression kernel, the derived operators, and a fast
verification suite end to end.

Usage: python3 python/smoke_test.py [--release]
"""

import json
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_extension(release: bool) -> Path:
    profile = "release" if release else "debug"
    cmd = ["cargo", "build", "-p", "geomom-py"]
    if release:
        cmd.append("--release")
    subprocess.run(cmd, cwd=REPO, check=True)
    built = REPO / "target" / profile / "libgeomom_py.so"
    if not built.exists():  # macOS fallback
        built = REPO / "target" / profile / "libgeomom_py.dylib"
    if not built.exists():
        sys.exit(f"extension library not found under target/{profile}")
    stage = Path(tempfile.mkdtemp(prefix="geomom-py-"))
    target = stage / "geomom_py.so"
    shutil.copy2(built, target)
    return stage


def approx(a, b, tol=1e-12):
    return abs(a - b) <= tol * (1.0 + abs(a) + abs(b))


def main() -> None:
    release = "--release" in sys.argv[1:]
    stage = build_extension(release)
    sys.path.insert(0, str(stage))
    import geomom_py as gm

    # expression kernel: parse, differentiate, evaluate
    e = gm.Expr.parse("(^ x 2)")
    d = e.diff("x")
    assert d.text() == "(* 2 x)", d.text()
    re, im = d.eval({"x": 3.0})
    assert approx(re, 6.0) and approx(im, 0.0)

    radical = gm.Expr.parse("(sqrt (+ (^ $r 2) (* -1 (^ x 2)) (* -1 (^ y 2))))")
    re, im = radical.eval({"x": 0.0, "y": 0.0}, {"r": 1.0})
    assert approx(re, 1.0)
    dr = radical.diff("x")
    re, _ = dr.eval({"x": 0.3, "y": 0.2}, {"r": 1.0})
    assert approx(re, -0.3 / math.sqrt(1 - 0.09 - 0.04)), re

    # operator overloading and the identity tester
    x = gm.Expr.var("x")
    same, residual = gm.expr_identical(x + x, gm.Expr.number(2.0) * x, {"x": (-1.0, 1.0)})
    assert same and residual == 0.0
    differ, _ = gm.expr_identical(x, gm.Expr.var("y"), {"x": (-1, 1), "y": (-1, 1)})
    assert not differ

    # derived geometry: mean curvature of the unit sphere is -1
    summary = gm.geometry_summary("monge")
    m_expr = gm.Expr.parse(summary["mean_curvature"])
    re, _ = m_expr.eval({"x": 0.2, "y": -0.1}, {"r": 1.0})
    assert approx(re, -1.0), re

    # momentum operators: the zero-eigenvalue p_z eigenfunction 1/sin(theta)
    p_ops = gm.momentum_operators("spherical")
    psi = gm.Expr.parse("(^ (sin theta) -1)")
    applied = p_ops[2].apply(psi)
    re, im = applied.eval({"theta": 1.1, "phi": 0.3}, {"r": 1.0, "hbar": 1.0})
    assert approx(re, 0.0, 1e-12) and approx(im, 0.0, 1e-12), (re, im)

    # Hamiltonian on the flat-in-phi direction: second-order coefficients exist
    h = gm.hamiltonian("monge")
    coeffs = h.coefficients()
    assert "d11" in coeffs and "d12" in coeffs

    # fast end-to-end suite
    report = json.loads(gm.run_verification(suite="geometry", seed=42))
    statuses = {r["claim_id"]: r["status"] for r in report["records"]}
    assert statuses["eq7-M"] == "pass"
    assert all(s != "fail" for s in statuses.values())

    # config validation surfaces as ValueError
    try:
        gm.run_verification(suite="geometry", n_theta=0)
    except ValueError:
        pass
    else:
        sys.exit("expected ValueError for a zero-sized grid")

    print("smoke test passed:", len(statuses), "geometry records verified via Python")


if __name__ == "__main__":
    main()
