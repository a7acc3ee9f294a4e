"""k-th generalized Tanaka-Webster apparatus at a point.

Only the difference between the generalized Tanaka-Webster connection and the
Levi-Civita connection is needed pointwise: the Cho operator

    F_X Y = g(phi A X, Y) xi - eta(Y) phi A X - k eta(X) phi Y,

its antisymmetrisation T_X Y = F_X Y - F_Y X, and the commutator
[T_X, R_xi] Y, whose symmetric / skew-symmetric parts are the Codazzi-type and
Killing-type conditions. Tensors of type (1,2) are stored as arrays ``t[a, i, j]``
holding the a-th coordinate of the value on (e_i, e_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .contact_frame import DomainError
from .curvature import jacobi_matrix
from .hypersurface_models import HypersurfaceModel, classify_type_a

K_MIN = 0.01
TIE_RTOL = 1e-12


class PredictorInapplicable(ValueError):
    """The closed-form predictor only covers type (A) models."""


@dataclass(frozen=True, eq=False)
class TorsionFamily:
    model: HypersurfaceModel
    k: float
    # -1 flips the whole Cho operator; only used to inject faults in tests
    cho_sign: float = 1.0

    def __post_init__(self):
        if not abs(self.k) >= K_MIN:
            raise DomainError(f"|k| must be >= {K_MIN}, got k={self.k!r}")

    @cached_property
    def phi_A(self) -> np.ndarray:
        return self.model.frame.phi @ self.model.A

    @cached_property
    def jacobi(self) -> np.ndarray:
        return jacobi_matrix(self.model)

    @cached_property
    def cho_tensor(self) -> np.ndarray:
        """F[a, i, j] = (F_{e_i} e_j)_a."""
        fr = self.model.frame
        P, xi, eta, phi = self.phi_A, fr.xi, fr.eta, fr.phi
        F = (
            np.einsum("a,ji->aij", xi, P)
            - np.einsum("j,ai->aij", eta, P)
            - self.k * np.einsum("i,aj->aij", eta, phi)
        )
        return self.cho_sign * F

    @cached_property
    def torsion_tensor(self) -> np.ndarray:
        F = self.cho_tensor
        return F - F.transpose(0, 2, 1)

    @cached_property
    def rxit_tensor(self) -> np.ndarray:
        T, R = self.torsion_tensor, self.jacobi
        return np.einsum("aib,bj->aij", T, R) - np.einsum("ab,bij->aij", R, T)


def cho_operator(tf: TorsionFamily, X) -> np.ndarray:
    """Matrix of Y -> F_X Y."""
    return np.einsum("aij,i->aj", tf.cho_tensor, np.asarray(X, dtype=float))


def torsion_operator(tf: TorsionFamily, X) -> np.ndarray:
    """Matrix of Y -> T_X Y."""
    return np.einsum("aij,i->aj", tf.torsion_tensor, np.asarray(X, dtype=float))


def rxit(tf: TorsionFamily, X, Y) -> np.ndarray:
    """[T_X, R_xi] Y."""
    T = torsion_operator(tf, X)
    R = tf.jacobi
    Y = np.asarray(Y, dtype=float)
    return T @ (R @ Y) - R @ (T @ Y)


@dataclass(frozen=True, eq=False)
class ResidualReport:
    sym_residual: float
    skew_residual: float
    vanish_residual: float
    sym_witness: tuple[int, int]
    skew_witness: tuple[int, int]
    vanish_witness: tuple[int, int]
    sym_table: np.ndarray = field(repr=False)
    skew_table: np.ndarray = field(repr=False)
    vanish_table: np.ndarray = field(repr=False)
    basis: str = "adapted"

    def as_dict(self) -> dict:
        return {
            "sym_residual": self.sym_residual,
            "skew_residual": self.skew_residual,
            "vanish_residual": self.vanish_residual,
            "sym_witness": list(self.sym_witness),
            "skew_witness": list(self.skew_witness),
            "vanish_witness": list(self.vanish_witness),
            "basis": self.basis,
        }


def _witness(table: np.ndarray) -> tuple[float, tuple[int, int]]:
    top = float(table.max())
    # lowest lexicographic pair among near-ties
    hits = np.argwhere(table >= top - TIE_RTOL * max(1.0, top))
    i, j = (int(v) for v in hits[0])
    return top, (i, j)


def condition_residuals(tf: TorsionFamily, basis: np.ndarray | None = None) -> ResidualReport:
    """Sup-over-basis residuals of the symmetric, skew-symmetric and vanishing conditions.

    ``basis`` optionally gives another orthonormal basis as matrix columns; the
    residuals are then taken over pairs of those vectors.
    """
    rx = tf.rxit_tensor
    label = "adapted"
    if basis is not None:
        Q = np.asarray(basis, dtype=float)
        if Q.shape != (tf.model.dim, tf.model.dim):
            raise DomainError("basis must be a square matrix of the tangent dimension")
        if np.abs(Q.T @ Q - np.eye(Q.shape[0])).max() > 1e-10:
            raise DomainError("basis must be orthonormal")
        rx = np.einsum("apq,pi,qj->aij", rx, Q, Q)
        label = "custom"
    swapped = rx.transpose(0, 2, 1)
    sym = np.linalg.norm(rx - swapped, axis=0)
    skew = np.linalg.norm(rx + swapped, axis=0)
    van = np.linalg.norm(rx, axis=0)
    s, sw = _witness(sym)
    k, kw = _witness(skew)
    v, vw = _witness(van)
    return ResidualReport(s, k, v, sw, kw, vw, sym, skew, van, label)


@dataclass(frozen=True)
class PredictedResiduals:
    sym_residual: float
    skew_residual: float
    vanish_residual: float
    d_eigenvalues: tuple[float, ...]


def d_eigenvalues(model: HypersurfaceModel, tol: float = 1e-9) -> tuple[float, ...]:
    """Distinct principal curvatures on the holomorphic distribution."""
    fr = model.frame
    D = np.eye(fr.dim)[:, 1:]
    w = np.linalg.eigvalsh(D.T @ model.A @ D)
    out: list[float] = []
    for lam in w:
        if not out or abs(lam - out[-1]) > tol:
            out.append(float(lam))
    return tuple(out)


def typeA_residual_predictor(tf: TorsionFamily, tol: float = 1e-10) -> PredictedResiduals:
    """Closed-form residuals for type (A) models.

    Mixed pairs (xi, Y) with A Y = lambda Y contribute |(lambda - k)(1 + alpha lambda)|
    to all three conditions; pairs (X, phi X) inside one eigenspace contribute
    4|lambda (1 + alpha lambda)| to the symmetric one and half that to vanishing.
    """
    is_a, res = classify_type_a(tf.model, tol)
    if not is_a:
        raise PredictorInapplicable(f"model is not of type (A): |phi A - A phi| = {res:.3g}")
    alpha, k = tf.model.alpha, tf.k
    lams = d_eigenvalues(tf.model)
    mixed = [abs((lam - k) * (1 + alpha * lam)) for lam in lams]
    inner = [abs(2 * lam) * abs(2 + 2 * alpha * lam) for lam in lams]
    return PredictedResiduals(
        sym_residual=max(max(a, b) for a, b in zip(mixed, inner)),
        skew_residual=max(mixed),
        vanish_residual=max(max(a, b / 2) for a, b in zip(mixed, inner)),
        d_eigenvalues=lams,
    )


@dataclass(frozen=True)
class ParallelismResiduals:
    xi: float
    phi: float
    g: float
    eta: float

    def max(self) -> float:
        return max(self.xi, self.phi, self.g, self.eta)

    def as_dict(self) -> dict[str, float]:
        return {"xi": self.xi, "phi": self.phi, "g": self.g, "eta": self.eta}


def gtw_parallelism_residuals(tf: TorsionFamily) -> ParallelismResiduals:
    """Pointwise check that xi, phi, g and eta are parallel for the new connection.

    Covariant derivatives of the Levi-Civita connection enter only through
    nabla_X xi = phi A X and (nabla_X phi) Y = eta(Y) A X - g(A X, Y) xi.
    """
    fr = tf.model.frame
    F, P, A = tf.cho_tensor, tf.phi_A, tf.model.A
    xi, eta, phi = fr.xi, fr.eta, fr.phi
    # column i: phi A e_i + F_{e_i} xi
    r_xi = np.linalg.norm(P + np.einsum("aij,j->ai", F, xi), axis=0).max()
    # [a, i, j]: eta(e_j) A e_i - g(A e_i, e_j) xi + F_{e_i} phi e_j - phi F_{e_i} e_j
    nabla_phi = np.einsum("j,ai->aij", eta, A) - np.einsum("ji,a->aij", A, xi)
    r_phi = nabla_phi + np.einsum("aib,bj->aij", F, phi) - np.einsum("ab,bij->aij", phi, F)
    r_phi = np.linalg.norm(r_phi, axis=0).max()
    # g(F_X Y, Z) + g(Y, F_X Z): F_X must be skew-adjoint
    r_g = np.abs(F + F.transpose(2, 1, 0)).max()
    # (nabla_X eta) Y = g(Y, phi A X) against eta(F_X Y)
    r_eta = np.abs(P.T - np.einsum("a,aij->ij", eta, F)).max()
    return ParallelismResiduals(float(r_xi), float(r_phi), float(r_g), float(r_eta))
