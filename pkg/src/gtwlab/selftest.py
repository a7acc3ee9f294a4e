"""Invariant suite behind ``gtwlab selftest``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .case_analysis import hopf_skew_trace, nonhopf_skew_trace, nonhopf_symmetric_trace
from .contact_frame import adapted_frame, contact_residuals
from .curvature import gauss_curvature, structure_jacobi
from .gtw import TorsionFamily, condition_residuals, gtw_parallelism_residuals, typeA_residual_predictor
from .hypersurface_models import classify_type_a, geodesic_sphere, model_invariant_residuals
from .scan import emit_report, parse_config, run_scan
from .zoo import K_GRID, hopf_zoo, model_zoo, scan_config_dict


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def check_contact_frames(rng) -> CheckResult:
    worst = max(contact_residuals(adapted_frame(m)).max() for m in range(2, 9))
    return CheckResult("contact identities m=2..8", worst == 0.0, f"max residual {worst:g}")


def check_model_invariants(rng) -> CheckResult:
    worst = max(max(model_invariant_residuals(mdl).values()) for mdl in model_zoo().values())
    return CheckResult("model invariants", worst <= 1e-12, f"max residual {worst:.3g}")


def check_jacobi_oracle(rng) -> CheckResult:
    worst = 0.0
    for mdl in model_zoo().values():
        R = structure_jacobi(mdl).matrix
        xi = mdl.frame.xi
        for Y in np.eye(mdl.dim):
            worst = max(worst, float(np.linalg.norm(R @ Y - gauss_curvature(mdl, Y, xi, xi))))
    return CheckResult("Jacobi closed form vs Gauss equation", worst <= 1e-12, f"max {worst:.3g}")


def check_gauss_symmetries(rng) -> CheckResult:
    worst = 0.0
    for mdl in model_zoo().values():
        for _ in range(5):
            X, Y, Z, W = rng.standard_normal((4, mdl.dim))
            R = lambda a, b, c: gauss_curvature(mdl, a, b, c)  # noqa: E731
            worst = max(
                worst,
                float(np.abs(R(X, Y, Z) + R(Y, X, Z)).max()),
                abs(float(R(X, Y, Z) @ W + R(X, Y, W) @ Z)),
                float(np.abs(R(X, Y, Z) + R(Y, Z, X) + R(Z, X, Y)).max()),
            )
    return CheckResult("Gauss tensor symmetries (random vectors)", worst <= 1e-10, f"max {worst:.3g}")


def check_hopf_skew_k1(rng) -> CheckResult:
    rep = condition_residuals(TorsionFamily(geodesic_sphere(math.pi / 4, 3), 1.0))
    ok = rep.skew_residual <= 1e-10 and abs(rep.sym_residual - 4) <= 1e-9 and abs(rep.vanish_residual - 2) <= 1e-9
    return CheckResult(
        "sphere r=pi/4, k=1",
        ok,
        f"skew {rep.skew_residual:.3g}, sym {rep.sym_residual:.12g}, vanish {rep.vanish_residual:.12g}",
    )


def _min_over_hopf_grid(attr: str) -> float:
    return min(
        getattr(condition_residuals(TorsionFamily(mdl, k)), attr) for mdl in hopf_zoo().values() for k in K_GRID
    )


def check_hopf_symmetric(rng) -> CheckResult:
    low = _min_over_hopf_grid("sym_residual")
    return CheckResult("Hopf symmetric condition never holds", low > 0.1, f"min sym residual {low:.4g}")


def check_vanishing(rng) -> CheckResult:
    low = _min_over_hopf_grid("vanish_residual")
    return CheckResult("Hopf vanishing condition never holds", low > 0.1, f"min vanish residual {low:.4g}")


def check_predictor(rng) -> CheckResult:
    worst = 0.0
    for mdl in hopf_zoo().values():
        if not classify_type_a(mdl)[0]:
            continue
        for k in K_GRID:
            tf = TorsionFamily(mdl, k)
            rep, pred = condition_residuals(tf), typeA_residual_predictor(tf)
            worst = max(
                worst,
                abs(rep.sym_residual - pred.sym_residual),
                abs(rep.skew_residual - pred.skew_residual),
                abs(rep.vanish_residual - pred.vanish_residual),
            )
    return CheckResult("type (A) predictor vs basis oracle", worst <= 1e-10, f"max gap {worst:.3g}")


def check_parallelism(rng) -> CheckResult:
    worst = max(
        gtw_parallelism_residuals(TorsionFamily(mdl, k)).max() for mdl in model_zoo().values() for k in K_GRID
    )
    return CheckResult("xi, phi, g, eta parallel for the k-th connection", worst <= 1e-11, f"max {worst:.3g}")


def check_case_traces(rng) -> CheckResult:
    t = nonhopf_symmetric_trace(1.0, 1.0)
    s = nonhopf_skew_trace(2.0, 1.0, 1.0)
    ok = (
        abs(t.value("alpha") + 1 / 3) <= 1e-12
        and abs(t.value("omega") + 27) <= 1e-12
        and abs(t.value("forced_beta_sq") + 19 / 9) <= 1e-12
        and t.verdict.value == "ContradictionReached"
        and s.value("product_identity_residual") <= 1e-12
    )
    return CheckResult("case-trace terminal values", ok, f"omega {t.value('omega'):g}, beta^2 {t.value('forced_beta_sq'):.6g}")


def check_discrepancy(rng) -> CheckResult:
    details = []
    ok = True
    for k in (2.0, 3.0):
        tr = hopf_skew_trace(k)
        tube = [c for c in tr.candidates if c.branch == "B:tube cot r=k"]
        cfg = parse_config({"models": [{"kind": "A2", "r": {"arccot": [k]}, "n": 1, "m": 3}], "k_grid": [k]})
        row = run_scan(cfg).rows[0]
        expected = (k * k + 1) / k**3
        ok &= bool(tube) and row.discrepancy_flag and abs(row.skew_residual - expected) <= 1e-9
        details.append(f"k={k:g}: skew {row.skew_residual:.10g}, flag {row.discrepancy_flag}")
    return CheckResult("tube branch discrepancy surfaced", ok, "; ".join(details))


def check_determinism(rng) -> CheckResult:
    cfg = parse_config(scan_config_dict())
    a = emit_report(run_scan(cfg))
    b = emit_report(run_scan(cfg))
    c = emit_report(run_scan(cfg, workers=4))
    return CheckResult("scan determinism (repeat and parallel)", a == b == c, f"{len(a)} bytes")


CHECKS: list[Callable] = [
    check_contact_frames,
    check_model_invariants,
    check_jacobi_oracle,
    check_gauss_symmetries,
    check_hopf_skew_k1,
    check_hopf_symmetric,
    check_vanishing,
    check_predictor,
    check_parallelism,
    check_case_traces,
    check_discrepancy,
    check_determinism,
]


def run_selftest(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [check(rng) for check in CHECKS]
