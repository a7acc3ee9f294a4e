import json
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gtwlab.case_analysis import (
    TRACES,
    CaseTrace,
    Verdict,
    hopf_skew_trace,
    hopf_symmetric_trace,
    nonhopf_skew_trace,
    nonhopf_symmetric_trace,
    product_identity_residuals,
)
from gtwlab.contact_frame import DomainError

nonzero = st.floats(-5, 5).filter(lambda x: abs(x) > 0.05)


def _finite_or_pole(trace):
    for s in trace.steps:
        if s.pole:
            assert s.value is None
        else:
            assert isinstance(s.value, float) and math.isfinite(s.value)


# --- Hopf, symmetric ----------------------------------------------------------


def test_hopf_symmetric_alpha2_k1():
    tr = hopf_symmetric_trace(2.0, 1.0)
    assert {tr.value("root_0"), tr.value("root_1")} == {0.0, -1.0}
    assert tr.value("partner_0") == -1.0
    assert tr.value("three_k") == 3.0
    assert tr.verdict is Verdict.CONTRADICTION


def test_hopf_symmetric_alpha0():
    tr = hopf_symmetric_trace(0.0, 1.0)
    assert tr.step("sum_forced").value == 0.0
    # (2 lambda^2 + 2) is bounded below by 2, so lambda + mu = 0 is impossible
    assert tr.value("sum_numerator_min") == 2.0
    assert tr.verdict is Verdict.CONTRADICTION


def test_hopf_symmetric_alpha_minus3():
    tr = hopf_symmetric_trace(-3.0, 2.0)
    assert tr.value("root_1") == pytest.approx(2 / 3)
    assert tr.value("three_k") == 6.0


@given(alpha=nonzero, k=nonzero)
def test_hopf_symmetric_always_contradicts(alpha, k):
    tr = hopf_symmetric_trace(alpha, k)
    assert tr.verdict is Verdict.CONTRADICTION
    assert tr.value("three_k") == pytest.approx(3 * k, rel=1e-12)
    for i in (0, 1):
        assert tr.value(f"reduced_{i}") == pytest.approx(0.0, abs=1e-9 * (1 + 1 / alpha**2))
    _finite_or_pole(tr)


# --- Hopf, skew ---------------------------------------------------------------


def test_hopf_skew_k1():
    tr = hopf_skew_trace(1.0)
    assert tr.verdict is Verdict.SOLUTION_FAMILY
    a = [c for c in tr.candidates if c.branch.startswith("A:")]
    assert len(a) == 1 and a[0].r == pytest.approx(math.pi / 4)
    assert a[0].direct_skew_residual <= 1e-12 and a[0].agrees
    assert not [c for c in tr.candidates if c.branch.startswith("B:")]
    assert tr.value("branch_b_discriminant") == -3.0


def test_hopf_skew_k2():
    tr = hopf_skew_trace(2.0)
    assert tr.value("alpha_plus") == tr.value("alpha_minus") == 1.0
    by = {c.branch: c for c in tr.candidates}
    kept = by["B:tube cot r=k"]
    assert kept.kept and kept.cot_r == 2.0
    assert not by["B:tube cot r=-1/k"].kept
    # the direct computation does not confirm the listed tube
    assert kept.direct_skew_residual == pytest.approx(0.625, abs=1e-12)
    assert kept.claimed_solution and kept.agrees is False


def test_hopf_skew_k3():
    tr = hopf_skew_trace(3.0)
    assert tr.value("alpha_plus") == pytest.approx((3 + math.sqrt(5)) / 2)
    assert tr.value("alpha_minus") == pytest.approx((3 - math.sqrt(5)) / 2)
    kept = [c for c in tr.candidates if c.branch.startswith("B:") and c.kept]
    assert len(kept) == 1 and kept[0].r == pytest.approx(0.3217505544, abs=1e-9)
    assert kept[0].direct_skew_residual == pytest.approx(10 / 27, abs=1e-12)


@pytest.mark.parametrize("k", [0.5, 2.0, 3.0])
def test_hopf_skew_sphere_cross_check(k):
    tr = hopf_skew_trace(k)
    c = next(c for c in tr.candidates if c.branch.startswith("cross-check"))
    assert c.direct_skew_residual <= 1e-12
    assert c.claimed_solution is False and c.agrees is False


def test_hopf_skew_negative_k_keeps_other_root():
    tr = hopf_skew_trace(-2.0)
    by = {c.branch: c for c in tr.candidates}
    assert not by["B:tube cot r=k"].kept
    assert by["B:tube cot r=-1/k"].kept and by["B:tube cot r=-1/k"].cot_r == 0.5


@given(k=st.floats(-1.99, 1.99).filter(lambda k: abs(k) > 0.01 and abs(abs(k) - 1) > 1e-6))
def test_hopf_skew_branches_empty_for_small_k(k):
    tr = hopf_skew_trace(k)
    assert not [c for c in tr.candidates if c.branch[:2] in ("A:", "B:")]
    assert tr.verdict is Verdict.CONTRADICTION
    _finite_or_pole(tr)


def test_hopf_skew_rejects_zero_k():
    with pytest.raises(DomainError):
        hopf_skew_trace(0.0)


# --- non-Hopf, symmetric ------------------------------------------------------


def test_nonhopf_symmetric_k1_beta1():
    tr = nonhopf_symmetric_trace(1.0, 1.0)
    assert tr.value("alpha") == pytest.approx(-1 / 3)
    assert tr.value("omega") == -27.0
    assert tr.value("forced_beta_sq") == pytest.approx(-19 / 9)
    assert tr.verdict is Verdict.CONTRADICTION
    assert tr.scope_flags == {"k_alpha_ne_minus_1": True, "k_alpha_ne_1": True}


def test_nonhopf_symmetric_k_half_beta2():
    tr = nonhopf_symmetric_trace(0.5, 2.0)
    assert tr.value("alpha") == pytest.approx(-2 / 3)
    assert tr.value("omega") == pytest.approx(-20.25)
    assert tr.value("forced_beta_sq") == pytest.approx(-2 - 4 / 9)


@given(k=nonzero, beta=nonzero)
def test_nonhopf_symmetric_properties(k, beta):
    tr = nonhopf_symmetric_trace(k, beta)
    assert tr.value("k_alpha") == pytest.approx(-1 / 3)
    assert tr.value("sub_alpha_sq") == 1.0
    assert tr.value("forced_beta_sq") < 0
    assert tr.verdict is Verdict.CONTRADICTION
    _finite_or_pole(tr)


# --- non-Hopf, skew -----------------------------------------------------------


def test_nonhopf_skew_k2_alpha1_beta1():
    tr = nonhopf_skew_trace(2.0, 1.0, 1.0)
    assert tr.value("rhs_first") == 2.0
    assert tr.value("coeff_second") == -2.0
    assert tr.value("product_identity_lhs") == -2.0
    assert tr.value("product_identity_rhs") == -2.0
    assert tr.value("product_identity_residual") == 0.0
    assert tr.verdict is Verdict.CONTRADICTION


def test_nonhopf_skew_sub_case():
    tr = nonhopf_skew_trace(-1.0, 1.0, 0.5)
    assert tr.value("sub_k_sq") == 1.0 and tr.value("sub_alpha_sq") == 1.0
    assert tr.step("sub_excluded") is not None
    assert tr.scope_flags["k_alpha_ne_minus_1"] is False


def test_nonhopf_skew_scope_violation():
    tr = nonhopf_skew_trace(1.0, 1.0, 1.0)
    assert tr.verdict is Verdict.SCOPE_VIOLATION
    assert tr.scope_flags["k_alpha_ne_1"] is False


def test_nonhopf_skew_pole_flag():
    # k = (beta^2 - 1)/alpha makes the second relation degenerate
    tr = nonhopf_skew_trace(1.5, 2.0, 2.0)
    s = tr.step("pole_second")
    assert s.pole and s.value is None
    assert tr.verdict is Verdict.CONTRADICTION
    _finite_or_pole(tr)


def test_nonhopf_skew_inconsistent_brackets():
    tr = nonhopf_skew_trace(1.0, 2.0, 3.0)
    assert tr.value("brackets_inconsistent") == pytest.approx(2 / 3)
    assert tr.value("product_identity_residual") == 6.0


@given(k=nonzero, alpha=nonzero, beta=nonzero)
def test_product_identity_two_ways(k, alpha, beta):
    assume(abs(k * alpha - 1) > 1e-3)
    assume(abs((beta**2 - 1) / alpha - k) > 1e-3)
    direct, via = product_identity_residuals(k, alpha, beta)
    scale = 1 + abs(k * alpha * beta**2) + (1 + abs(k) + abs(k * alpha)) ** 2 * (1 + beta**2)
    assert abs(abs(direct) - abs(via)) <= 1e-10 * scale


@given(k=nonzero, alpha=nonzero, beta=nonzero)
def test_nonhopf_skew_always_terminates(k, alpha, beta):
    tr = nonhopf_skew_trace(k, alpha, beta)
    assert tr.verdict in (Verdict.CONTRADICTION, Verdict.SCOPE_VIOLATION)
    _finite_or_pole(tr)


# --- serialization ------------------------------------------------------------


@pytest.mark.parametrize(
    "trace",
    [
        hopf_symmetric_trace(2.0, 1.0),
        hopf_skew_trace(2.0),
        nonhopf_symmetric_trace(1.0, 1.0),
        nonhopf_skew_trace(1.5, 2.0, 2.0),
    ],
    ids=lambda t: t.case,
)
def test_json_round_trip(trace):
    d = json.loads(json.dumps(trace.to_dict()))
    assert set(d) >= {"steps", "verdict", "scope_flags"}
    back = CaseTrace.from_dict(d)
    assert back.to_dict() == trace.to_dict()


def test_registry_names():
    assert set(TRACES) == {"hopf-symmetric", "hopf-skew", "nonhopf-symmetric", "nonhopf-skew"}
