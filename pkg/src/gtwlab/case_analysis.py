"""Numeric replay of the scalar elimination chains behind the classification results.

Every chain is evaluated at concrete parameter values and returned as a
:class:`CaseTrace`: an ordered list of named steps with their computed values
and a final verdict. Divisions by quantities smaller than ``POLE_GUARD`` are
recorded as pole steps (value ``None``) instead of raising.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

from .contact_frame import DomainError
from .gtw import TorsionFamily, condition_residuals
from .hypersurface_models import geodesic_sphere, maeda_partner, tube_a2

POLE_GUARD = 1e-12
ZERO_TOL = 1e-9


class Verdict(str, enum.Enum):
    CONTRADICTION = "ContradictionReached"
    SOLUTION_FAMILY = "SolutionFamily"
    SCOPE_VIOLATION = "ScopeViolation"


@dataclass
class Step:
    label: str
    formula: str
    inputs: dict
    value: float | None
    pole: bool = False
    note: str = ""


@dataclass
class Candidate:
    """A hypersurface singled out by a branch, with its directly computed residual."""

    branch: str
    cot_r: float
    r: float | None
    kept: bool
    claimed_solution: bool
    model: dict | None = None
    direct_skew_residual: float | None = None
    agrees: bool | None = None
    note: str = ""


@dataclass
class CaseTrace:
    case: str
    params: dict
    steps: list[Step] = field(default_factory=list)
    verdict: Verdict = Verdict.CONTRADICTION
    scope_flags: dict = field(default_factory=dict)
    candidates: list[Candidate] = field(default_factory=list)

    def add(self, label, formula, value, pole=False, note="", **inputs) -> float | None:
        if value is not None:
            value = float(value)
        self.steps.append(Step(label, formula, dict(inputs), value, pole, note))
        return value

    def step(self, label: str) -> Step:
        for s in self.steps:
            if s.label == label:
                return s
        raise KeyError(label)

    def value(self, label: str) -> float | None:
        return self.step(label).value

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CaseTrace":
        return cls(
            case=d["case"],
            params=dict(d["params"]),
            steps=[Step(**s) for s in d["steps"]],
            verdict=Verdict(d["verdict"]),
            scope_flags=dict(d["scope_flags"]),
            candidates=[Candidate(**c) for c in d.get("candidates", [])],
        )


def _scope_flags(k: float, alpha: float | None) -> dict:
    if alpha is None:
        return {}
    ka = k * alpha
    return {"k_alpha_ne_minus_1": abs(ka + 1) > POLE_GUARD, "k_alpha_ne_1": abs(ka - 1) > POLE_GUARD}


def hopf_symmetric_trace(alpha: float, k: float) -> CaseTrace:
    """Hopf case of the symmetric condition: every branch ends in a contradiction."""
    if k == 0:
        raise DomainError("k must be nonzero")
    tr = CaseTrace("hopf_symmetric", {"alpha": alpha, "k": k}, scope_flags=_scope_flags(k, alpha))
    # 2(l + mu) + alpha (l + mu)^2 = 0 with l + mu = (2 l^2 + 2)/(2 l - alpha)
    if abs(alpha) < POLE_GUARD:
        tr.add("sum_forced", "alpha=0 => lambda+mu = 0", 0.0, alpha=alpha)
        tr.add(
            "sum_numerator_min",
            "min over lambda of 2 lambda^2 + 2",
            2.0,
            note="lambda+mu = (2 lambda^2+2)/(2 lambda-alpha) never vanishes",
        )
        tr.verdict = Verdict.CONTRADICTION
        return tr
    tr.add("alpha_nonzero", "alpha != 0", alpha)
    tr.add("sum_value", "alpha (lambda+mu) = -2", -2.0 / alpha, alpha=alpha)
    roots = [0.0, -2.0 / alpha]
    for i, lam in enumerate(roots):
        mu = maeda_partner(alpha, lam)
        tr.add(f"root_{i}", "lambda^2 alpha = -2 lambda", lam, alpha=alpha)
        tr.add(f"partner_{i}", "mu = (alpha lambda + 2)/(2 lambda - alpha)", mu, lam=lam)
        s = lam + mu
        tr.add(f"reduced_{i}", "2(lambda+mu) + alpha (lambda+mu)^2", 2 * s + alpha * s * s, lam=lam, mu=mu)
        # coefficient of phi Y in the (xi, Y) equation for A Y = lam Y, A phi Y = mu phi Y
        c = (lam - k) * (1 + alpha * lam) + 2 * (k - lam) * (1 + alpha * mu)
        tr.add(f"phi_coefficient_{i}", "(lambda-k)(1+alpha lambda) + 2(k-lambda)(1+alpha mu)", c, lam=lam, mu=mu, k=k)
    c0 = tr.value("phi_coefficient_0")
    tr.add("three_k", "-(phi coefficient at lambda=0) = 3k", -c0, k=k)
    tr.verdict = Verdict.CONTRADICTION
    return tr


def _direct_skew(model, k: float) -> float:
    return condition_residuals(TorsionFamily(model, k)).skew_residual


def _attach(c: Candidate, build, k: float, tol: float) -> Candidate:
    try:
        model = build()
    except DomainError as exc:
        c.note = f"model not constructible: {exc}"
        return c
    c.model = model.describe()
    c.direct_skew_residual = _direct_skew(model, k)
    c.agrees = c.claimed_solution == (c.direct_skew_residual <= tol)
    return c


def hopf_skew_trace(k: float, m: int = 3, n: int = 1, tol: float = ZERO_TOL) -> CaseTrace:
    """Hopf case of the skew-symmetric condition with direct cross-checks.

    Both the alpha = 0 branch and the alpha != 0 tube branch are replayed.
    Every kept candidate carries the skew residual of the actual A1 / A2 model
    so that disagreements between the derivation and the direct computation
    are visible. A geodesic sphere with cot r = k is also cross-checked.
    """
    if k == 0:
        raise DomainError("k must be nonzero")
    tr = CaseTrace("hopf_skew", {"k": k, "m": m, "n": n, "tol": tol})
    tr.add("mixed_factor", "(lambda-k)(1+alpha lambda) = 0", 0.0, note="lambda in {k, -1/alpha}")
    tr.add("d_pair_factor", "(lambda+mu)(mu-lambda) alpha = 0", 0.0, note="alpha != 0 forces phi A = A phi")

    # alpha = 0: only principal curvature on D is k, sphere of radius pi/4
    tr.add("branch_a_k2_minus_1", "k^2 - 1", k * k - 1, k=k)
    a_solution = abs(k - 1) <= POLE_GUARD
    if a_solution:
        c = Candidate("A:alpha=0 sphere r=pi/4", 1.0, math.pi / 4, True, True)
        tr.candidates.append(_attach(c, lambda: geodesic_sphere(math.pi / 4, m), k, tol))

    # alpha != 0: alpha^2 - k alpha + 1 = 0
    disc = k * k - 4
    tr.add("branch_b_discriminant", "k^2 - 4", disc, k=k)
    b_any = False
    if disc >= 0:
        sq = math.sqrt(disc)
        tr.add("alpha_plus", "(k + sqrt(k^2-4))/2", (k + sq) / 2, k=k)
        tr.add("alpha_minus", "(k - sqrt(k^2-4))/2", (k - sq) / 2, k=k)
        for label, cot in (("B:tube cot r=k", k), ("B:tube cot r=-1/k", -1.0 / k)):
            r = math.atan2(1.0, cot)  # arccot onto (0, pi)
            kept = 0 < r < math.pi / 2
            c = Candidate(label, cot, r if kept else None, kept, kept)
            if not kept:
                c.note = "cot r <= 0 gives r outside (0, pi/2)"
                tr.candidates.append(c)
                continue
            b_any = True
            tube_alpha = cot - 1.0 / cot
            tr.add(
                f"tube_alpha[{label}]",
                "2 cot 2r = cot r - tan r",
                tube_alpha,
                cot_r=cot,
            )
            tr.add(
                f"tube_quadratic[{label}]",
                "alpha^2 - k alpha + 1 at the tube's alpha",
                tube_alpha**2 - k * tube_alpha + 1,
                alpha=tube_alpha,
                k=k,
            )
            tr.candidates.append(_attach(c, lambda r=r: tube_a2(r, n, m), k, tol))
    else:
        tr.add("branch_b_empty", "k^2 < 4: no real alpha", disc, k=k)

    # geodesic sphere with cot r = k: the derivation excludes it unless k = 1
    if k > 0:
        r = math.atan2(1.0, k)
        c = Candidate("cross-check:sphere cot r=k", k, r, True, a_solution)
        tr.add("sphere_alpha", "2 cot 2r with cot r = k", k - 1.0 / k, k=k)
        tr.candidates.append(_attach(c, lambda: geodesic_sphere(r, m), k, tol))

    tr.verdict = Verdict.SOLUTION_FAMILY if (a_solution or b_any) else Verdict.CONTRADICTION
    return tr


def nonhopf_symmetric_trace(k: float, beta: float) -> CaseTrace:
    """Non-Hopf case of the symmetric condition, ending in a negative forced beta^2."""
    if k == 0 or beta == 0:
        raise DomainError("k and beta must be nonzero")
    tr = CaseTrace("nonhopf_symmetric", {"k": k, "beta": beta})
    alpha = tr.add("alpha", "alpha = -1/(3k)", -1.0 / (3 * k), k=k)
    tr.scope_flags = _scope_flags(k, alpha)
    tr.add("k_alpha", "k alpha = -1/3", k * alpha)
    tr.add("phi_u_curvature", "A phi U = -(1/alpha) phi U", -1.0 / alpha, alpha=alpha)
    lam = tr.add("lambda", "lambda = (2 alpha k + 1)/alpha", (2 * alpha * k + 1) / alpha, alpha=alpha, k=k)
    tr.add("mu", "mu = (alpha lambda - 1)/(2 alpha)", (alpha * lam - 1) / (2 * alpha), lam=lam)
    tr.add("lambda_plus_mu", "lambda + mu", lam + tr.value("mu"))

    # sub-branch lambda = -1/alpha on D_U
    b_first = tr.add("sub_bracket_first", "beta g([phi Y, Y], U) = 2/alpha^2", 2.0 / alpha**2, alpha=alpha)
    b_second = tr.add("sub_bracket_second", "beta g([phi Y, Y], U) = 2", 2.0)
    tr.add("sub_alpha_sq", "equating both brackets: alpha^2 = 1", 2.0 / b_second, rhs_first=b_first)
    tr.add("sub_excluded", "alpha = 1 configuration has R_xi = 0 and is covered by the flat-Jacobi classification", 1.0)

    tr.add("au_coefficient", "g(AU, U) = 3k(1 - beta^2)", 3 * k * (1 - beta**2), k=k, beta=beta)
    tr.add("nabla_xi_u", "g(nabla_xi U, phi U) = 9k + 1/(3k)", 9 * k + 1 / (3 * k), k=k)
    omega = tr.add("omega", "omega = -9k^2(1 + 2 beta^2)", -9 * k * k * (1 + 2 * beta**2), k=k, beta=beta)
    tr.add("omega_nonzero", "omega != 0", float(omega != 0))
    tr.add(
        "au_mismatch",
        "3k(1-beta^2) - (9k + 1/(3k)) at the given beta",
        tr.value("au_coefficient") - tr.value("nabla_xi_u"),
    )
    forced = tr.add("forced_beta_sq", "beta^2 = -2 - 1/(9k^2)", -2.0 - 1.0 / (9 * k * k), k=k)
    tr.verdict = Verdict.CONTRADICTION if forced < 0 else Verdict.SOLUTION_FAMILY
    return tr


def product_identity_residuals(k: float, alpha: float, beta: float) -> tuple[float, float]:
    """Residual of (k^2-(k alpha+1))(beta^2-(k alpha+1)) = -k alpha beta^2, two ways.

    The first value evaluates the identity directly. The second substitutes the
    bracket from the first Codazzi relation into the second one and rescales by
    alpha*beta/2; both vanish exactly when the two bracket relations agree.
    """
    lhs = (k * k - (k * alpha + 1)) * (beta * beta - (k * alpha + 1))
    direct = lhs + k * alpha * beta * beta
    bracket = (2 * k * k - 2 * k * alpha - 2) / beta
    elim = ((beta * beta - 1) / alpha - k) * bracket + 2 * k * beta
    return direct, alpha * beta / 2 * elim


def nonhopf_skew_trace(k: float, alpha: float, beta: float) -> CaseTrace:
    """Non-Hopf case of the skew-symmetric condition under k alpha != 1.

    With k alpha = 1 the derivation's standing assumption fails and the trace
    stops with ``ScopeViolation``. The stated result is phrased for
    k alpha = 1 while the derivation needs k alpha != 1; this replay follows
    the derivation.
    """
    if k == 0 or alpha == 0 or beta == 0:
        raise DomainError("k, alpha and beta must be nonzero")
    tr = CaseTrace("nonhopf_skew", {"k": k, "alpha": alpha, "beta": beta}, scope_flags=_scope_flags(k, alpha))
    tr.add("k_alpha", "k alpha", k * alpha)
    if not tr.scope_flags["k_alpha_ne_1"]:
        tr.add("scope", "k alpha = 1 violates the standing assumption", k * alpha - 1)
        tr.verdict = Verdict.SCOPE_VIOLATION
        return tr
    tr.add("phi_u_curvature", "A phi U = -(1/alpha) phi U", -1.0 / alpha, alpha=alpha)
    tr.add("au_coefficient", "g(AU, U) = (beta^2 - 1)/alpha", (beta**2 - 1) / alpha)
    rhs_first = tr.add("rhs_first", "beta g([phi X, X], U) = 2k^2 - 2k alpha - 2", 2 * k * k - 2 * k * alpha - 2, k=k, alpha=alpha)
    tr.add("bracket_first", "g([phi X, X], U) from the first relation", rhs_first / beta)
    coeff = tr.add("coeff_second", "(beta^2 - 1)/alpha - k", (beta**2 - 1) / alpha - k)
    tr.add("rhs_second", "-2k beta", -2 * k * beta)
    if abs(coeff) < POLE_GUARD:
        tr.add(
            "pole_second",
            "k = (beta^2-1)/alpha forces 2 beta k = 0",
            None,
            pole=True,
            note="impossible since k, beta != 0",
        )
        tr.verdict = Verdict.CONTRADICTION
        return tr
    tr.add("bracket_second", "g([phi X, X], U) from the second relation", -2 * k * beta / coeff)
    direct, via = product_identity_residuals(k, alpha, beta)
    tr.add("product_identity_lhs", "(k^2-(k alpha+1))(beta^2-(k alpha+1))", direct - k * alpha * beta**2)
    tr.add("product_identity_rhs", "-k alpha beta^2", -k * alpha * beta**2)
    tr.add("product_identity_residual", "|lhs - rhs|", abs(direct))
    tr.add("product_identity_residual_elim", "|alpha beta/2 * bracket mismatch|", abs(via))
    consistent = abs(direct) <= ZERO_TOL
    if not consistent:
        tr.add("brackets_inconsistent", "the two bracket values differ", abs(tr.value("bracket_first") - tr.value("bracket_second")))
    if abs(k * alpha + 1) <= POLE_GUARD:
        tr.add("sub_k_sq", "k = -1/alpha: k^2 beta^2 = beta^2 gives k^2", k * k)
        tr.add("sub_alpha_sq", "alpha^2", alpha * alpha)
        tr.add("sub_excluded", "k^2 = alpha^2 = 1 configuration has R_xi = 0 and is covered by the flat-Jacobi classification", 1.0)
    else:
        tr.add(
            "excluded_classified",
            "D_U curvature k not in {0, -1/alpha, (beta^2-1)/alpha}: excluded by the principal-curvature classification",
            k,
        )
    tr.verdict = Verdict.CONTRADICTION
    return tr


TRACES = {
    "hopf-symmetric": hopf_symmetric_trace,
    "hopf-skew": hopf_skew_trace,
    "nonhopf-symmetric": nonhopf_symmetric_trace,
    "nonhopf-skew": nonhopf_skew_trace,
}
