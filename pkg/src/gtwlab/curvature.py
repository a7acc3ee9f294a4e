"""Gauss-equation curvature and the structure Jacobi operator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contact_frame import DomainError
from .hypersurface_models import HypersurfaceModel


def gauss_curvature(model: HypersurfaceModel, X, Y, Z) -> np.ndarray:
    """R(X,Y)Z for a hypersurface of CP^m with holomorphic sectional curvature 4."""
    X, Y, Z = (np.asarray(v, dtype=float) for v in (X, Y, Z))
    for v in (X, Y, Z):
        if v.shape != (model.dim,):
            raise DomainError(f"vector of shape {v.shape} is not in a {model.dim}-dim tangent space")
    phi, A, g = model.frame.phi, model.A, model.frame.g

    def ip(u, v):
        return float(u @ g @ v)

    pX, pY, pZ = phi @ X, phi @ Y, phi @ Z
    AX, AY = A @ X, A @ Y
    return (
        ip(Y, Z) * X
        - ip(X, Z) * Y
        + ip(pY, Z) * pX
        - ip(pX, Z) * pY
        - 2.0 * ip(pX, Y) * pZ
        + ip(AY, Z) * AX
        - ip(AX, Z) * AY
    )


@dataclass(frozen=True, eq=False)
class JacobiOperator:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns

    @property
    def eigenpairs(self) -> list[tuple[float, np.ndarray]]:
        return [(float(w), self.eigenvectors[:, i]) for i, w in enumerate(self.eigenvalues)]

    def __matmul__(self, other):
        return self.matrix @ other


def _fix_signs(vecs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    vecs = vecs.copy()
    for i in range(vecs.shape[1]):
        nz = np.flatnonzero(np.abs(vecs[:, i]) > tol)
        if nz.size and vecs[nz[0], i] < 0:
            vecs[:, i] *= -1
    return vecs


def jacobi_matrix(model: HypersurfaceModel) -> np.ndarray:
    """Matrix of X -> X - eta(X) xi + alpha A X - g(A xi, X) A xi."""
    xi, eta, A = model.frame.xi, model.frame.eta, model.A
    a_xi = A @ xi
    alpha = float(xi @ a_xi)
    return np.eye(model.dim) - np.outer(xi, eta) + alpha * A - np.outer(a_xi, a_xi)


def structure_jacobi(model: HypersurfaceModel) -> JacobiOperator:
    R = jacobi_matrix(model)
    w, v = np.linalg.eigh(0.5 * (R + R.T))
    R.setflags(write=False)
    return JacobiOperator(R, w, _fix_signs(v))
