"""Almost contact metric structure on a single tangent space.

The tangent space of a real hypersurface in CP^m has dimension 2m - 1. We fix
an orthonormal basis ordered as (xi, e_1, phi e_1, e_2, phi e_2, ...), so the
metric is the identity matrix and every structure tensor has integer entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10


class DomainError(ValueError):
    """Raised when a constructor receives parameters outside its domain."""


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AlmostContactFrame:
    """The tensors (phi, xi, eta, g) written in the adapted orthonormal basis.

    Columns of ``phi`` are the images of the basis vectors. ``eta`` is kept as
    its own covector so that deliberately broken frames can be studied.
    """

    m: int
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    g: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        dim = 2 * self.m - 1
        g = np.eye(dim) if self.g is None else self.g
        object.__setattr__(self, "phi", _frozen(self.phi))
        object.__setattr__(self, "xi", _frozen(self.xi))
        object.__setattr__(self, "eta", _frozen(self.eta))
        object.__setattr__(self, "g", _frozen(g))
        if self.phi.shape != (dim, dim):
            raise DomainError(f"phi must be {dim}x{dim}, got {self.phi.shape}")
        if self.xi.shape != (dim,) or self.eta.shape != (dim,):
            raise DomainError(f"xi and eta must have length {dim}")
        if not np.array_equal(self.g, np.eye(dim)):
            raise DomainError("only orthonormal frames are supported (g must be the identity)")

    @property
    def dim(self) -> int:
        return 2 * self.m - 1

    @property
    def basis(self) -> np.ndarray:
        """Basis vectors as the columns of the identity matrix."""
        return np.eye(self.dim)

    @property
    def n_planes(self) -> int:
        """Number of phi-invariant planes spanning the holomorphic distribution."""
        return self.m - 1

    def plane(self, i: int) -> tuple[int, int]:
        """Basis indices (X, phi X) of the i-th phi-invariant plane, 0-based."""
        if not 0 <= i < self.n_planes:
            raise IndexError(f"plane {i} out of range for m={self.m}")
        return 2 * i + 1, 2 * i + 2

    def inner(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(x @ self.g @ y)


def adapted_frame(m: int) -> AlmostContactFrame:
    """Build the adapted frame with ``phi e_{2i-1} = e_{2i}`` and ``xi = e_0``."""
    if int(m) != m or m < 2:
        raise DomainError(f"complex dimension m must be an integer >= 2, got {m!r}")
    m = int(m)
    dim = 2 * m - 1
    phi = np.zeros((dim, dim))
    for i in range(m - 1):
        a, b = 2 * i + 1, 2 * i + 2
        phi[b, a] = 1.0
        phi[a, b] = -1.0
    xi = np.zeros(dim)
    xi[0] = 1.0
    return AlmostContactFrame(m=m, phi=phi, xi=xi, eta=xi.copy())


@dataclass(frozen=True)
class ContactResiduals:
    phi_squared: float
    eta_xi: float
    metric_compat: float
    phi_xi: float

    def max(self) -> float:
        return max(self.phi_squared, self.eta_xi, self.metric_compat, self.phi_xi)

    def as_dict(self) -> dict[str, float]:
        return {
            "phi_squared": self.phi_squared,
            "eta_xi": self.eta_xi,
            "metric_compat": self.metric_compat,
            "phi_xi": self.phi_xi,
        }


def contact_residuals(frame: AlmostContactFrame) -> ContactResiduals:
    """Maximal violations of the almost contact metric identities over the basis."""
    phi, xi, eta, g = frame.phi, frame.xi, frame.eta, frame.g
    eye = np.eye(frame.dim)
    # phi^2 X = -X + eta(X) xi, columnwise
    r_phi2 = np.abs(phi @ phi + eye - np.outer(xi, eta)).max()
    r_eta = abs(float(eta @ xi) - 1.0)
    # g(phi X, phi Y) - g(X, Y) + eta(X) eta(Y)
    r_metric = np.abs(phi.T @ g @ phi - g + np.outer(eta, eta)).max()
    r_phixi = np.abs(phi @ xi).max()
    return ContactResiduals(float(r_phi2), float(r_eta), float(r_metric), float(r_phixi))


def skew_residual(frame: AlmostContactFrame) -> float:
    """max |g(phi X, Y) + g(X, phi Y)| over basis pairs."""
    gp = frame.g @ frame.phi
    return float(np.abs(gp + gp.T).max())


def check_frame(frame: AlmostContactFrame, tol: float = DEFAULT_TOL) -> None:
    res = contact_residuals(frame)
    if res.max() > tol:
        raise DomainError(f"frame violates almost contact identities: {res.as_dict()}")
