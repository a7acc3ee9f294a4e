"""Fixed set of models and k values used by the self-test and the acceptance suite."""

from __future__ import annotations

import math

from .hypersurface_models import HypersurfaceModel, geodesic_sphere, hopf_model, nonhopf_model, tube_a2

K_GRID = (-3.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0)
ARCCOT2 = math.atan(0.5)


def hopf_zoo() -> dict[str, HypersurfaceModel]:
    return {
        "A1(pi/6)": geodesic_sphere(math.pi / 6, 3),
        "A1(pi/4)": geodesic_sphere(math.pi / 4, 3),
        "A1(pi/3)": geodesic_sphere(math.pi / 3, 3),
        "A2(arccot2,1,3)": tube_a2(ARCCOT2, 1, 3),
        "A2(pi/4,1,3)": tube_a2(math.pi / 4, 1, 3),
        "A2(pi/3,2,4)": tube_a2(math.pi / 3, 2, 4),
        "Hopf(3;1;[0,2])": hopf_model(3, 1.0, [0.0, 2.0]),
        "Hopf(4;-0.5;[1,3,-2])": hopf_model(4, -0.5, [1.0, 3.0, -2.0]),
    }


def nonhopf_zoo() -> dict[str, HypersurfaceModel]:
    # the alpha=1, D_U curvature -1 configuration has R_xi = 0 identically and is kept out
    return {
        "NonHopf(3;2;1;[0.5])": nonhopf_model(3, 2.0, 1.0, [(0.5, True)]),
        "NonHopf(4;-1.5;0.7;[2,-0.3])": nonhopf_model(4, -1.5, 0.7, [(2.0, True), (-0.3, True)]),
    }


def model_zoo() -> dict[str, HypersurfaceModel]:
    return {**hopf_zoo(), **nonhopf_zoo()}


def scan_config_dict(k_grid=K_GRID) -> dict:
    """The zoo as a scan config document."""
    return {
        "models": [
            {"kind": "A1", "r": ["pi/6", "pi/4", "pi/3"], "m": 3},
            {"kind": "A2", "r": {"arccot": [2]}, "n": 1, "m": 3},
            {"kind": "A2", "r": "pi/4", "n": 1, "m": 3},
            {"kind": "A2", "r": "pi/3", "n": 2, "m": 4},
            {"kind": "HopfGeneric", "m": 3, "alpha": 1.0, "lambdas": [0.0, 2.0]},
            {"kind": "HopfGeneric", "m": 4, "alpha": -0.5, "lambdas": [1.0, 3.0, -2.0]},
            {"kind": "NonHopf", "m": 3, "alpha": 2.0, "beta": 1.0, "du_lambdas": [[0.5, True]]},
            {"kind": "NonHopf", "m": 4, "alpha": -1.5, "beta": 0.7, "du_lambdas": [[2.0, True], [-0.3, True]]},
        ],
        "k_grid": list(k_grid),
        "tolerances": {"identity_tol": 1e-10, "residual_zero_tol": 1e-9},
        "seed": 0,
    }
