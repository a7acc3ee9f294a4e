"""Pointwise shape-operator models of real hypersurfaces in CP^m.

Each model is an adapted frame plus a symmetric shape operator ``A``. The
Takagi type A1/A2 models use the closed-form principal curvatures; the generic
Hopf model pairs curvatures on phi-planes with Maeda's rule; the non-Hopf
model realises the block structure with ``A xi = alpha xi + beta U``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .contact_frame import DEFAULT_TOL, AlmostContactFrame, DomainError, adapted_frame

R_MIN = 0.05
MAEDA_GUARD = 1e-8


class MaedaSingularity(DomainError):
    """A principal curvature with 2*lambda - alpha = 0 was requested."""


class ModelKind(str, enum.Enum):
    A1 = "A1"
    A2 = "A2"
    HOPF_GENERIC = "HopfGeneric"
    NON_HOPF = "NonHopf"

    @property
    def is_hopf(self) -> bool:
        return self is not ModelKind.NON_HOPF


@dataclass(frozen=True)
class Eigenspace:
    value: float
    multiplicity: int
    indices: tuple[int, ...]


@dataclass(frozen=True)
class ModelParams:
    alpha: float
    r: float | None = None
    n: int | None = None
    beta: float | None = None
    spectrum: tuple[Eigenspace, ...] = ()
    u_index: int | None = None


@dataclass(frozen=True, eq=False)
class HypersurfaceModel:
    frame: AlmostContactFrame
    A: np.ndarray
    kind: ModelKind
    params: ModelParams

    def __post_init__(self):
        a = np.array(self.A, dtype=float)
        a.setflags(write=False)
        object.__setattr__(self, "A", a)
        if a.shape != (self.frame.dim, self.frame.dim):
            raise DomainError(f"shape operator must be {self.frame.dim}x{self.frame.dim}")

    @property
    def m(self) -> int:
        return self.frame.m

    @property
    def dim(self) -> int:
        return self.frame.dim

    @property
    def alpha(self) -> float:
        return float(self.frame.xi @ self.A @ self.frame.xi)

    @property
    def A_xi(self) -> np.ndarray:
        return self.A @ self.frame.xi

    def describe(self) -> dict:
        """Flat descriptor used in scan reports."""
        p = self.params
        return {
            "kind": self.kind.value,
            "r": p.r,
            "n": p.n,
            "m": self.m,
            "alpha": p.alpha,
            "beta": p.beta,
        }


def model_invariant_residuals(model: HypersurfaceModel) -> dict[str, float]:
    """Residuals of the structural invariants every model must satisfy."""
    A, xi = model.A, model.frame.xi
    out = {
        "symmetry": float(np.abs(A - A.T).max()),
        "alpha": abs(model.alpha - model.params.alpha),
    }
    if model.kind.is_hopf:
        out["hopf"] = float(np.abs(A @ xi - model.alpha * xi).max())
    else:
        u = np.zeros(model.dim)
        u[model.params.u_index] = 1.0
        expected = model.alpha * xi + model.params.beta * u
        out["non_hopf"] = float(np.abs(A @ xi - expected).max())
        out["eta_u"] = abs(float(model.frame.eta @ u))
    return out


def check_model(model: HypersurfaceModel, tol: float = DEFAULT_TOL) -> None:
    bad = {k: v for k, v in model_invariant_residuals(model).items() if v > tol}
    if bad:
        raise DomainError(f"model invariants violated: {bad}")
    if model.kind is ModelKind.NON_HOPF and model.params.beta == 0:
        raise DomainError("non-Hopf model needs beta != 0")


def _check_radius(r: float, r_min: float) -> None:
    if not (r_min < r < math.pi / 2 - r_min):
        raise DomainError(
            f"radius r={r!r} outside ({r_min}, pi/2 - {r_min}); principal curvatures diverge"
        )


def _spectrum(diag: np.ndarray, start: int = 1) -> tuple[Eigenspace, ...]:
    """Group equal diagonal entries (exact match) from ``start`` onward, in order of first appearance."""
    groups: dict[float, list[int]] = {}
    for i in range(start, len(diag)):
        groups.setdefault(float(diag[i]), []).append(i)
    return tuple(Eigenspace(v, len(ix), tuple(ix)) for v, ix in groups.items())


def geodesic_sphere(r: float, m: int, r_min: float = R_MIN) -> HypersurfaceModel:
    """Type A1: 2 cot 2r on xi and cot r on the whole holomorphic distribution."""
    _check_radius(r, r_min)
    frame = adapted_frame(m)
    alpha = 2.0 / math.tan(2 * r)
    lam = 1.0 / math.tan(r)
    diag = np.full(frame.dim, lam)
    diag[0] = alpha
    params = ModelParams(alpha=alpha, r=r, spectrum=_spectrum(diag))
    return HypersurfaceModel(frame, np.diag(diag), ModelKind.A1, params)


def tube_a2(r: float, n: int, m: int, r_min: float = R_MIN) -> HypersurfaceModel:
    """Type A2: tube of radius r over CP^n.

    ``-tan r`` occupies the first ``n`` phi-planes (dimension 2n) and ``cot r``
    the remaining ``m - 1 - n`` planes.
    """
    if m < 3:
        raise DomainError(f"type A2 needs m >= 3, got {m}")
    if not (0 < n < m - 1):
        raise DomainError(f"type A2 needs 0 < n < m-1, got n={n}, m={m}")
    _check_radius(r, r_min)
    frame = adapted_frame(m)
    alpha = 2.0 / math.tan(2 * r)
    diag = np.empty(frame.dim)
    diag[0] = alpha
    diag[1 : 2 * n + 1] = -math.tan(r)
    diag[2 * n + 1 :] = 1.0 / math.tan(r)
    params = ModelParams(alpha=alpha, r=r, n=n, spectrum=_spectrum(diag))
    return HypersurfaceModel(frame, np.diag(diag), ModelKind.A2, params)


def maeda_partner(alpha: float, lam: float) -> float:
    """Principal curvature of phi X when A X = lambda X on a Hopf hypersurface."""
    denom = 2.0 * lam - alpha
    if abs(denom) <= MAEDA_GUARD:
        raise MaedaSingularity(f"2*lambda - alpha = {denom!r} for lambda={lam}, alpha={alpha}")
    return (alpha * lam + 2.0) / denom


LambdaSpec = Union[float, Sequence[float]]


def _expand_multiplicities(entries: Sequence[LambdaSpec]) -> list[float]:
    out: list[float] = []
    for e in entries:
        if isinstance(e, (int, float)):
            out.append(float(e))
        else:
            lam, mult = e
            if int(mult) != mult or mult < 1:
                raise DomainError(f"multiplicity must be a positive integer, got {mult!r}")
            out.extend([float(lam)] * int(mult))
    return out


def hopf_model(m: int, alpha: float, lambdas: Sequence[LambdaSpec]) -> HypersurfaceModel:
    """Generic Hopf model: each phi-plane (X, phi X) carries (lambda, mu(lambda)).

    ``lambdas`` lists one entry per plane; an entry may be ``(lambda, count)``
    to repeat it over several planes.
    """
    frame = adapted_frame(m)
    lams = _expand_multiplicities(lambdas)
    if len(lams) != frame.n_planes:
        raise DomainError(
            f"need {frame.n_planes} phi-plane curvatures for m={m}, got {len(lams)}"
        )
    diag = np.empty(frame.dim)
    diag[0] = alpha
    for i, lam in enumerate(lams):
        a, b = frame.plane(i)
        diag[a] = lam
        diag[b] = maeda_partner(alpha, lam)
    params = ModelParams(alpha=float(alpha), spectrum=_spectrum(diag))
    return HypersurfaceModel(frame, np.diag(diag), ModelKind.HOPF_GENERIC, params)


def nonhopf_model(
    m: int,
    alpha: float,
    beta: float,
    du_lambdas: Sequence[tuple[float, bool]],
) -> HypersurfaceModel:
    """Non-Hopf model with A xi = alpha xi + beta U and A phi U = -(1/alpha) phi U.

    U is the basis vector e_1 and phi U is e_2. The remaining phi-planes form
    D_U. Each ``(lambda, True)`` entry fills a whole plane with lambda; a
    ``(lambda, False)`` entry fills a single slot so that X and phi X may carry
    different curvatures.
    """
    if m < 3:
        raise DomainError(f"non-Hopf model needs m >= 3, got {m}")
    if alpha == 0:
        raise DomainError("alpha = 0 leaves A phi U = -(1/alpha) phi U undefined")
    if beta == 0:
        raise DomainError("beta = 0 makes the model Hopf")
    frame = adapted_frame(m)
    slots: list[float] = []
    for lam, paired in du_lambdas:
        slots.extend([float(lam)] * (2 if paired else 1))
    if len(slots) != frame.dim - 3:
        raise DomainError(f"D_U has dimension {frame.dim - 3}, got {len(slots)} slots")
    A = np.zeros((frame.dim, frame.dim))
    A[0, 0] = alpha
    A[0, 1] = A[1, 0] = beta
    A[1, 1] = (beta * beta - 1.0) / alpha
    A[2, 2] = -1.0 / alpha
    for i, lam in enumerate(slots):
        A[3 + i, 3 + i] = lam
    params = ModelParams(
        alpha=float(alpha),
        beta=float(beta),
        spectrum=_spectrum(np.diag(A), start=3),
        u_index=1,
    )
    return HypersurfaceModel(frame, A, ModelKind.NON_HOPF, params)


def commutator_residual(model: HypersurfaceModel) -> float:
    phi = model.frame.phi
    return float(np.abs(phi @ model.A - model.A @ phi).max())


def classify_type_a(model: HypersurfaceModel, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Type (A) test via phi A = A phi."""
    res = commutator_residual(model)
    return res <= tol, res
