"""Grid scans over models and k, with CSV / JSON reports.

A scan config is a JSON document::

    {
      "models": [
        {"kind": "A1", "r": ["pi/6", "pi/4", "pi/3"], "m": 3},
        {"kind": "A2", "r": {"arccot": [2, 3]}, "n": 1, "m": 3},
        {"kind": "HopfGeneric", "m": 3, "alpha": [1.0], "lambdas": [0.0, 2.0]},
        {"kind": "NonHopf", "m": 3, "alpha": 2.0, "beta": [1.0], "du_lambdas": [[0.5, true]]}
      ],
      "k_grid": [1, 2],
      "tolerances": {"identity_tol": 1e-10, "residual_zero_tol": 1e-9},
      "output": {"format": "csv", "path": "scan.csv"},
      "seed": 0
    }

Scalar parameters may be given as single values or lists; lists are expanded
as a cartesian product in the order listed. Radii accept numbers, strings
such as ``"pi/4"`` or ``"3*pi/8"``, and ``{"arccot": value-or-list}``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

from .case_analysis import (
    CaseTrace,
    hopf_skew_trace,
    hopf_symmetric_trace,
    nonhopf_skew_trace,
    nonhopf_symmetric_trace,
)
from .contact_frame import DEFAULT_TOL, DomainError
from .gtw import (
    K_MIN,
    PredictorInapplicable,
    TorsionFamily,
    condition_residuals,
    d_eigenvalues,
    typeA_residual_predictor,
)
from .hypersurface_models import (
    R_MIN,
    HypersurfaceModel,
    ModelKind,
    classify_type_a,
    geodesic_sphere,
    hopf_model,
    nonhopf_model,
    tube_a2,
)

CSV_COLUMNS = [
    "kind", "r", "n", "m", "alpha", "beta", "k",
    "sym_residual", "skew_residual", "vanish_residual",
    "pred_sym", "pred_skew", "pred_vanish",
    "predictor_match", "branch_annotation", "discrepancy_flag",
]
PREDICTOR_TOL = 1e-10
BRANCH_TOL = 1e-9


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class ModelSpec:
    kind: ModelKind
    params: dict[str, list]


@dataclass
class ScanConfig:
    model_specs: list[ModelSpec]
    k_grid: list[float]
    identity_tol: float = DEFAULT_TOL
    residual_zero_tol: float = 1e-9
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = 0
    r_min: float = R_MIN
    include_traces: bool = False


_PI_RE = re.compile(r"^\s*(?:([0-9.]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.]+))?\s*$")


def _parse_radius(v, path: str) -> list[float]:
    if isinstance(v, dict):
        if set(v) != {"arccot"}:
            raise ConfigError(path, "radius object must be {\"arccot\": ...}")
        vals = v["arccot"] if isinstance(v["arccot"], list) else [v["arccot"]]
        out = []
        for i, c in enumerate(vals):
            if not isinstance(c, (int, float)) or isinstance(c, bool):
                raise ConfigError(f"{path}.arccot[{i}]", "must be a number")
            out.append(math.atan2(1.0, float(c)))
        return out
    if isinstance(v, list):
        return [r for i, x in enumerate(v) for r in _parse_radius(x, f"{path}[{i}]")]
    if isinstance(v, str):
        mt = _PI_RE.match(v)
        if not mt:
            raise ConfigError(path, f"cannot parse radius {v!r}")
        num = float(mt.group(1)) if mt.group(1) else 1.0
        den = float(mt.group(2)) if mt.group(2) else 1.0
        return [num * math.pi / den]
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return [float(v)]
    raise ConfigError(path, f"invalid radius {v!r}")


def _as_list(v, path: str, typ=float) -> list:
    vals = v if isinstance(v, list) else [v]
    out = []
    for i, x in enumerate(vals):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(f"{path}[{i}]" if isinstance(v, list) else path, f"expected a number, got {x!r}")
        if typ is int and int(x) != x:
            raise ConfigError(f"{path}[{i}]", f"expected an integer, got {x!r}")
        out.append(typ(x))
    return out


_REQUIRED = {
    ModelKind.A1: ("r", "m"),
    ModelKind.A2: ("r", "n", "m"),
    ModelKind.HOPF_GENERIC: ("m", "alpha", "lambdas"),
    ModelKind.NON_HOPF: ("m", "alpha", "beta", "du_lambdas"),
}


def _parse_model(d: Any, path: str, r_min: float) -> ModelSpec:
    if not isinstance(d, dict):
        raise ConfigError(path, "model spec must be an object")
    try:
        kind = ModelKind(d.get("kind"))
    except ValueError:
        raise ConfigError(f"{path}.kind", f"unknown kind {d.get('kind')!r}") from None
    allowed = set(_REQUIRED[kind]) | {"kind"}
    for key in d:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", f"unexpected field for kind {kind.value}")
    for key in _REQUIRED[kind]:
        if key not in d:
            raise ConfigError(f"{path}.{key}", "missing required field")
    params: dict[str, list] = {}
    for key in _REQUIRED[kind]:
        p = f"{path}.{key}"
        v = d[key]
        if key == "r":
            params[key] = _parse_radius(v, p)
            for i, r in enumerate(params[key]):
                if not (r_min < r < math.pi / 2 - r_min):
                    raise ConfigError(f"{p}[{i}]", f"radius {r!r} outside ({r_min}, pi/2 - {r_min})")
        elif key in ("m", "n"):
            params[key] = _as_list(v, p, int)
        elif key in ("alpha", "beta"):
            params[key] = _as_list(v, p)
        elif key == "lambdas":
            if not isinstance(v, list) or not v:
                raise ConfigError(p, "expected a non-empty list")
            entries = []
            for i, e in enumerate(v):
                if isinstance(e, list) and len(e) == 2:
                    entries.append((float(e[0]), int(e[1])))
                elif isinstance(e, (int, float)) and not isinstance(e, bool):
                    entries.append(float(e))
                else:
                    raise ConfigError(f"{p}[{i}]", "expected a number or [lambda, multiplicity]")
            params[key] = [entries]
        elif key == "du_lambdas":
            if not isinstance(v, list):
                raise ConfigError(p, "expected a list of [lambda, paired]")
            entries = []
            for i, e in enumerate(v):
                if not (isinstance(e, list) and len(e) == 2 and isinstance(e[1], bool)):
                    raise ConfigError(f"{p}[{i}]", "expected [lambda, paired]")
                entries.append((float(e[0]), e[1]))
            params[key] = [entries]
    return ModelSpec(kind, params)


def parse_config(d: Any) -> ScanConfig:
    """Validate a decoded JSON config; errors name the offending field path."""
    if not isinstance(d, dict):
        raise ConfigError("$", "config must be an object")
    known = {"models", "model_specs", "k_grid", "tolerances", "output", "seed", "r_min", "include_traces"}
    for key in d:
        if key not in known:
            raise ConfigError(f"$.{key}", "unknown field")
    r_min = d.get("r_min", R_MIN)
    if isinstance(r_min, bool) or not isinstance(r_min, (int, float)) or not 0 < r_min < math.pi / 4:
        raise ConfigError("$.r_min", "must be a number in (0, pi/4)")
    key = "models" if "models" in d else "model_specs"
    models = d.get(key, [])
    if not isinstance(models, list):
        raise ConfigError(f"$.{key}", "must be a list")
    specs = [_parse_model(m, f"$.{key}[{i}]", r_min) for i, m in enumerate(models)]
    if "k_grid" not in d:
        raise ConfigError("$.k_grid", "missing required field")
    k_grid = _as_list(d["k_grid"], "$.k_grid")
    for i, k in enumerate(k_grid):
        if abs(k) < K_MIN:
            raise ConfigError(f"$.k_grid[{i}]", f"|k| must be >= {K_MIN}")
    tols = d.get("tolerances", {})
    if not isinstance(tols, dict):
        raise ConfigError("$.tolerances", "must be an object")
    for t in tols:
        if t not in ("identity_tol", "residual_zero_tol"):
            raise ConfigError(f"$.tolerances.{t}", "unknown tolerance")
        if isinstance(tols[t], bool) or not isinstance(tols[t], (int, float)) or tols[t] <= 0:
            raise ConfigError(f"$.tolerances.{t}", "must be a positive number")
    out = d.get("output", {})
    if not isinstance(out, dict):
        raise ConfigError("$.output", "must be an object")
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("$.output.format", "must be 'csv' or 'json'")
    seed = d.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError("$.seed", "must be an integer")
    return ScanConfig(
        model_specs=specs,
        k_grid=k_grid,
        identity_tol=float(tols.get("identity_tol", DEFAULT_TOL)),
        residual_zero_tol=float(tols.get("residual_zero_tol", 1e-9)),
        output_format=fmt,
        output_path=out.get("path"),
        seed=seed,
        r_min=float(r_min),
        include_traces=bool(d.get("include_traces", False)),
    )


def load_config(path: str) -> ScanConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}") from None
    return parse_config(data)


# ---------------------------------------------------------------- grid


def expand_spec(spec: ModelSpec) -> list[dict]:
    keys = list(spec.params)
    return [dict(zip(keys, combo), kind=spec.kind) for combo in itertools.product(*(spec.params[k] for k in keys))]


def build_model(cell: dict, r_min: float = R_MIN) -> HypersurfaceModel:
    kind = cell["kind"]
    if kind is ModelKind.A1:
        return geodesic_sphere(cell["r"], cell["m"], r_min=r_min)
    if kind is ModelKind.A2:
        return tube_a2(cell["r"], cell["n"], cell["m"], r_min=r_min)
    if kind is ModelKind.HOPF_GENERIC:
        return hopf_model(cell["m"], cell["alpha"], cell["lambdas"])
    return nonhopf_model(cell["m"], cell["alpha"], cell["beta"], cell["du_lambdas"])


def _cell_descriptor(cell: dict) -> dict:
    return {
        "kind": cell["kind"].value,
        "r": cell.get("r"),
        "n": cell.get("n"),
        "m": cell.get("m"),
        "alpha": cell.get("alpha"),
        "beta": cell.get("beta"),
    }


# ----------------------------------------------------------- annotation


def takagi_identification(model: HypersurfaceModel, tol: float = BRANCH_TOL) -> tuple[str, float | None]:
    """Recognise A1 / A2 principal curvature data; returns (label, r)."""
    if model.kind is ModelKind.A1:
        return "A1", model.params.r
    if model.kind is ModelKind.A2:
        return "A2", model.params.r
    if model.kind is ModelKind.NON_HOPF or not classify_type_a(model)[0]:
        return "none", None
    lams = d_eigenvalues(model)
    alpha = model.alpha
    pos = [x for x in lams if x > 0]
    if len(lams) == 1 and pos and abs(alpha - (pos[0] - 1 / pos[0])) <= tol:
        return "A1", math.atan2(1.0, pos[0])
    if len(lams) == 2 and len(pos) == 1:
        c = pos[0]
        other = lams[0] if lams[1] == c else lams[1]
        if abs(other + 1 / c) <= tol and abs(alpha - (c - 1 / c)) <= tol:
            return "A2", math.atan2(1.0, c)
    return "none", None


def hopf_skew_branch(model: HypersurfaceModel, k: float, tol: float = BRANCH_TOL) -> tuple[bool, str]:
    """Whether the published Hopf skew-symmetric classification lists this model at k."""
    label, r = takagi_identification(model, tol)
    if label == "A1":
        if abs(k - 1) <= tol and abs(r - math.pi / 4) <= tol:
            return True, "sphere_pi/4_k=1"
        return False, "none"
    if label == "A2" and k * k >= 4:
        cot = 1 / math.tan(r)
        if abs(cot - k) <= tol:
            return True, "tube_cot_r=k"
        if abs(cot + 1 / k) <= tol:
            return True, "tube_cot_r=-1/k"
    return False, "none"


def nonhopf_exclusion(model: HypersurfaceModel, tol: float = BRANCH_TOL) -> str:
    """Which cited non-existence result covers a non-Hopf model, if any.

    Assumes the block structure built by :func:`nonhopf_model` on (xi, U, phi U).
    """
    A, alpha, beta = model.A, model.alpha, model.params.beta
    planes = [(float(A[i, i]), float(A[i + 1, i + 1])) for i in range(3, model.dim, 2)]
    if abs(alpha - 1) <= tol and any(abs(x + 1) <= tol and abs(y + 1) <= tol for x, y in planes):
        return "flat_jacobi"
    forbidden = (0.0, -1 / alpha, (beta * beta - 1) / alpha)
    paired = all(abs(x - y) <= tol for x, y in planes)
    if paired and all(abs(v - f) > tol for pl in planes for v in pl for f in forbidden):
        return "principal_classification"
    return "none"


def annotate(model: HypersurfaceModel, k: float, report, tol: float) -> tuple[str, bool]:
    """Branch annotation string and discrepancy flag for one grid cell."""
    sym_zero = report.sym_residual <= tol
    skew_zero = report.skew_residual <= tol
    parts: list[str] = []
    if model.kind.is_hopf:
        claimed, label = hopf_skew_branch(model, k)
        parts.append(f"hopf_skew:{label}")
        if skew_zero:
            parts.append("skew_zero:" + ("match" if claimed else "nomatch"))
        elif claimed:
            parts.append("skew_nonzero:claimed_solution")
        parts.append("hopf_sym:" + ("sym_zero" if sym_zero else "sym_nonzero"))
        flag = (claimed != skew_zero) or sym_zero
        return ";".join(parts), flag
    ka = k * model.alpha
    parts.append("nonhopf_sym:" + ("out_of_scope" if abs(ka + 1) <= BRANCH_TOL else "in_scope"))
    parts.append("nonhopf_skew:" + ("stated_scope" if abs(ka - 1) <= BRANCH_TOL else "proof_scope"))
    flag = False
    if sym_zero or skew_zero:
        excl = nonhopf_exclusion(model)
        parts.append(f"pointwise_zero:excluded_by_{excl}" if excl != "none" else "pointwise_zero:unexplained")
        flag = excl == "none"
    return ";".join(parts), flag


# ------------------------------------------------------------------ scan


@dataclass
class ScanRow:
    kind: str
    r: float | None
    n: int | None
    m: int | None
    alpha: float | None
    beta: float | None
    k: float
    sym_residual: float | None = None
    skew_residual: float | None = None
    vanish_residual: float | None = None
    pred_sym: float | None = None
    pred_skew: float | None = None
    pred_vanish: float | None = None
    predictor_match: bool | None = None
    branch_annotation: str = ""
    discrepancy_flag: bool = False
    skew_witness: list[int] | None = None
    error: str | None = None
    traces: list[CaseTrace] | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["traces"] = None if self.traces is None else [t.to_dict() for t in self.traces]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRow":
        d = dict(d)
        if d.get("traces") is not None:
            d["traces"] = [CaseTrace.from_dict(t) for t in d["traces"]]
        return cls(**d)


@dataclass
class ScanResult:
    rows: list[ScanRow] = field(default_factory=list)
    residual_zero_tol: float = 1e-9
    seed: int = 0

    @property
    def any_discrepancy(self) -> bool:
        return any(r.discrepancy_flag for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "residual_zero_tol": self.residual_zero_tol,
            "seed": self.seed,
            "columns": CSV_COLUMNS,
            "rows": [r.to_dict() for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScanResult":
        return cls([ScanRow.from_dict(r) for r in d["rows"]], d["residual_zero_tol"], d["seed"])


def _traces_for(model: HypersurfaceModel, k: float) -> list[CaseTrace]:
    if model.kind.is_hopf:
        return [hopf_symmetric_trace(model.alpha, k), hopf_skew_trace(k)]
    return [nonhopf_symmetric_trace(k, model.params.beta), nonhopf_skew_trace(k, model.alpha, model.params.beta)]


def evaluate_cell(cell: dict, k: float, config: ScanConfig) -> ScanRow:
    row = ScanRow(k=k, **_cell_descriptor(cell))
    try:
        model = build_model(cell, config.r_min)
    except DomainError as exc:
        row.error = str(exc)
        row.branch_annotation = f"error:{exc}"
        return row
    row.alpha = model.alpha
    tf = TorsionFamily(model, k)
    rep = condition_residuals(tf)
    row.sym_residual, row.skew_residual, row.vanish_residual = rep.sym_residual, rep.skew_residual, rep.vanish_residual
    row.skew_witness = list(rep.skew_witness)
    try:
        pred = typeA_residual_predictor(tf, config.identity_tol)
    except PredictorInapplicable:
        pass
    else:
        row.pred_sym, row.pred_skew, row.pred_vanish = pred.sym_residual, pred.skew_residual, pred.vanish_residual
        row.predictor_match = (
            abs(pred.sym_residual - rep.sym_residual) <= PREDICTOR_TOL
            and abs(pred.skew_residual - rep.skew_residual) <= PREDICTOR_TOL
            and abs(pred.vanish_residual - rep.vanish_residual) <= PREDICTOR_TOL
        )
    row.branch_annotation, row.discrepancy_flag = annotate(model, k, rep, config.residual_zero_tol)
    if row.predictor_match is False:
        row.discrepancy_flag = True
    if config.include_traces:
        row.traces = _traces_for(model, k)
    return row


def grid_cells(config: ScanConfig) -> list[tuple[dict, float]]:
    ks = sorted(config.k_grid)
    cells = [c for spec in config.model_specs for c in expand_spec(spec)]
    return [(c, k) for c in cells for k in ks]


def run_scan(config: ScanConfig, workers: int = 1) -> ScanResult:
    """Evaluate every (model, k) cell; rows are model-major, then k ascending."""
    tasks = grid_cells(config)
    rows: list[ScanRow | None] = [None] * len(tasks)
    if workers <= 1:
        for i, (cell, k) in enumerate(tasks):
            rows[i] = evaluate_cell(cell, k, config)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(evaluate_cell, cell, k, config): i for i, (cell, k) in enumerate(tasks)}
            for fut, i in futures.items():
                rows[i] = fut.result()
    return ScanResult(rows, config.residual_zero_tol, config.seed)  # type: ignore[arg-type]


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def emit_report(result: ScanResult, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in result.rows:
            d = asdict(row)
            w.writerow([_fmt(d[c]) for c in CSV_COLUMNS])
        return buf.getvalue().encode()
    if fmt == "json":
        return (json.dumps(result.to_dict(), indent=1, allow_nan=False) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_json_report(data: bytes | str) -> ScanResult:
    return ScanResult.from_dict(json.loads(data))


def write_report(result: ScanResult, fmt: str, path: str | None) -> bytes:
    payload = emit_report(result, fmt)
    if path:
        try:
            with open(path, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc.strerror}") from exc
    return payload
