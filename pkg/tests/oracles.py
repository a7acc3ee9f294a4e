"""Slow reference implementations, written straight from the defining formulas.

Nothing here touches the tensor code in ``gtwlab.gtw``: the Jacobi operator
comes from the Gauss equation and every operator is applied vector by vector.
"""

import numpy as np

from gtwlab.curvature import gauss_curvature


def cho(model, k, X, Y):
    fr = model.frame
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    phiAX = fr.phi @ (model.A @ X)
    eta = lambda v: float(v @ fr.xi)  # noqa: E731
    return float(phiAX @ Y) * fr.xi - eta(Y) * phiAX - k * eta(X) * (fr.phi @ Y)


def torsion(model, k, X, Y):
    return cho(model, k, X, Y) - cho(model, k, Y, X)


def jacobi_apply(model, Y):
    xi = model.frame.xi
    return gauss_curvature(model, Y, xi, xi)


def rxit(model, k, X, Y):
    return torsion(model, k, X, jacobi_apply(model, Y)) - jacobi_apply(model, torsion(model, k, X, Y))


def residuals(model, k):
    """(sym, skew, vanish) maxima and the first pair attaining each."""
    E = np.eye(model.dim)
    best = {"sym": (0.0, None), "skew": (0.0, None), "vanish": (0.0, None)}
    for i in range(model.dim):
        for j in range(model.dim):
            a = rxit(model, k, E[i], E[j])
            b = rxit(model, k, E[j], E[i])
            for name, val in (
                ("sym", np.linalg.norm(a - b)),
                ("skew", np.linalg.norm(a + b)),
                ("vanish", np.linalg.norm(a)),
            ):
                if val > best[name][0] + 1e-12:
                    best[name] = (float(val), (i, j))
    return best
