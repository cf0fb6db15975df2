"""Invariant battery, JSON suite report and CSV point-cloud export."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .divisor import (
    product_components,
    theta_A_batch,
    translates_distinct,
    two_torsion_census,
)
from .errors import ComponentResidualTooLarge, Theta13Error
from .oracle import OracleConfig, direct_theta, enumerate_parities, fd_gradient
from .theta import (
    DEFAULT_EPS,
    classical_theta,
    classical_theta_gradient,
    eigenspace_dims,
    inverse_formula_residual,
    quasiperiodicity_residual,
    sample_points,
    symmetric_characteristics,
)
from .torus import (
    RealCharacteristic,
    SiegelMatrix,
    char_parity,
    kernel_one,
    lattice_basis,
    random_siegel,
)
from .zeros import sample_curve_points, smoothness_report

THRESHOLDS = {
    "census_separation": 1e3,
    "census_on_count": 10,
    "inverse_formula": 1e-9,
    "quasiperiodicity": 1e-10,
    "translate_witness": 1e-4,
    "product_component": 1e-10,
    "product_off_component": 1e-3,
    "product_factorization": 1e-10,
    "product_node_gradient": 1e-8,
    "smoothness_min_gradient": 1e-6,
    "oracle_value": 1e-11,
    "oracle_gradient": 1e-6,
}

PASS, FAIL, WARN, SKIPPED, ERROR = "pass", "fail", "warn", "skipped", "error"


@dataclass
class SuiteConfig:
    eps: float = DEFAULT_EPS
    seed: int = 0
    paranoid: bool = False
    n_oddness: int = 100
    n_quasi: int = 20
    n_smooth: int = 100
    n_translate_zeros: int = 12
    n_oracle: int = 200
    n_oracle_grad: int = 20


@dataclass
class SuiteReport:
    tool_version: str
    Z: list[float]
    seed: int
    eps: float
    thresholds: dict
    sections: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s["status"] not in (FAIL, ERROR) for s in self.sections.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "Z": self.Z,
            "seed": self.seed,
            "eps": self.eps,
            "thresholds": self.thresholds,
            "passed": self.passed,
            "sections": self.sections,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _clean(obj):
    """Make an object JSON-safe: numpy scalars become Python numbers, non-finite floats strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def dumps(obj) -> str:
    # float repr is the shortest string that round-trips, so no precision is lost
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def z_entries(Z: SiegelMatrix) -> list[float]:
    return [t for z in Z.entries() for t in (z.real, z.imag)]


def _status(ok: bool, warn_only: bool = False) -> str:
    if ok:
        return PASS
    return WARN if warn_only else FAIL


# -- sections ---------------------------------------------------------------


def census_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    res = two_torsion_census(Z, cfg.eps, strict=False)
    ok = (
        res.on_count == THRESHOLDS["census_on_count"]
        and res.separation_ratio > THRESHOLDS["census_separation"]
        and all(p == 1 for p in res.on_parities())
    )
    return {
        # the product locus is a degenerate stratum: extra 2-torsion zeros are expected
        "status": _status(ok, warn_only=Z.is_diagonal),
        "on_count": res.on_count,
        "even_odd": list(enumerate_parities()),
        "separation_ratio": res.separation_ratio,
        "scale": res.scale,
        "on_points": [str(c) for c in res.on_points],
        "values": {str(c): [v.value, v.tail_bound] for c, v in zip(res.characteristics, res.values)},
    }


def oddness_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    V = sample_points(Z, cfg.n_oddness, cfg.seed + 1)
    a = theta_A_batch(Z, V, cfg.eps)
    b = theta_A_batch(Z, -V, cfg.eps)
    gap = np.abs(a.values + b.values)
    # the two bounds agree up to rounding, so their sum is 2 * tail_bound
    allowed = a.bounds + b.bounds
    return {
        "status": _status(bool(np.all(gap <= allowed))),
        "n": len(V),
        "max_residual": float(np.max(gap)),
        "max_ratio_to_bound": float(np.max(gap / allowed)),
    }


def inverse_formula_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    rows = {}
    for ch, c in symmetric_characteristics(Z):
        for k, eta in zip(("0", "omega", "-omega"), kernel_one(Z)):
            rows[f"{ch} eta={k}"] = inverse_formula_residual(Z, c, eta, cfg.eps, seed=cfg.seed + 20)
    worst = max(rows.values())
    return {
        "status": _status(worst < THRESHOLDS["inverse_formula"]),
        "max_residual": worst,
        "residuals": rows,
    }


def quasiperiodicity_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    rng = np.random.default_rng(cfg.seed + 3)
    basis = lattice_basis(Z)
    chars = [
        RealCharacteristic((0.0, -1 / 3), (0.0, 0.0)),
        RealCharacteristic(rng.uniform(-0.5, 0.5, 2), rng.uniform(-0.5, 0.5, 2)),
    ]
    V = sample_points(Z, cfg.n_quasi, cfg.seed + 4)
    names = ["Z e1", "Z e2", "D e1", "D e2"]
    rows = {}
    for ch in chars:
        for sign in (1, -1):
            for k in range(4):
                lam = sign * basis[:, k]
                r = max(quasiperiodicity_residual(Z, ch, lam, v, cfg.eps) for v in V)
                rows[f"{ch} {'+' if sign > 0 else '-'}{names[k]}"] = r
    worst = max(rows.values())
    return {
        "status": _status(worst < THRESHOLDS["quasiperiodicity"]),
        "max_residual": worst,
        "residuals": rows,
    }


def eigenspace_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    rows, ok = {}, True
    for ch, c in symmetric_characteristics(Z):
        dims = eigenspace_dims(Z, c, cfg.eps)
        want = (2, 1) if char_parity(ch) == 1 else (1, 2)
        ok &= dims == want
        rows[str(ch)] = {"dims": list(dims), "expected": list(want)}
    return {"status": _status(ok), "characteristics": rows}


def translates_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    w = translates_distinct(Z, cfg.n_translate_zeros, cfg.seed, cfg.eps)
    off = w.best[~np.eye(len(w.best), dtype=bool)]
    return {
        "status": _status(w.all_distinct),
        "count": len(w.best),
        "pairs_distinct": int(np.sum(w.distinct[np.triu_indices(len(w.best), 1)])),
        "min_witness": float(np.min(off)),
        "witnesses": w.best,
    }


def product_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    if not Z.is_diagonal:
        return {"status": SKIPPED, "reason": "Z is not diagonal"}
    try:
        rep = product_components(Z.z11, Z.z22, cfg.eps, seed=cfg.seed)
        extra = {}
    except ComponentResidualTooLarge as exc:
        rep, extra = exc.report, {"error": str(exc)}
    ok = (
        rep.max_component_residual < THRESHOLDS["product_component"]
        and rep.off_component_min > THRESHOLDS["product_off_component"]
        and rep.factorization_residual < THRESHOLDS["product_factorization"]
        and rep.node_gradient < THRESHOLDS["product_node_gradient"]
        and rep.intersections_two_torsion
        and not extra
    )
    return {
        "status": _status(ok),
        "component_residuals": rep.component_residuals,
        "component_bounds": rep.component_bounds,
        "off_component_min": rep.off_component_min,
        "factorization_residual": rep.factorization_residual,
        "node_gradient": rep.node_gradient,
        "intersections_two_torsion": rep.intersections_two_torsion,
        "intersection_coords": rep.intersection_coords,
        **extra,
    }


def smoothness_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    rep = smoothness_report(Z, cfg.n_smooth, cfg.seed, cfg.eps)
    return {
        "status": _status(rep.min_relative > THRESHOLDS["smoothness_min_gradient"], warn_only=True),
        "n": rep.n,
        "scale": rep.scale,
        "min_gradient_relative": rep.min_relative,
        "mean_gradient": rep.mean_gradient,
        "max_gradient": rep.max_gradient,
        "max_residual": rep.max_residual,
        "lines_used": rep.lines_used,
        "lines_failed": rep.lines_failed,
    }


def oracle_comparison(Z: SiegelMatrix, n: int, n_grad: int, seed: int, eps: float = DEFAULT_EPS,
                      config: OracleConfig = OracleConfig()) -> dict:
    """Primary path against brute force on random characteristics and points."""
    rng = np.random.default_rng(seed)
    worst_val, worst_grad, radii = 0.0, 0.0, []
    for i in range(n):
        ch = RealCharacteristic(rng.uniform(-0.5, 0.5, 2), rng.uniform(-0.5, 0.5, 2))
        v = rng.uniform(-0.5, 0.5, 2) + 1j * rng.uniform(-0.5, 0.5, 2)
        primary = classical_theta(Z, ch, v, eps)
        radii.append(primary.radius_used)
        ref = direct_theta(Z, ch, v, config.box_radius)
        worst_val = max(worst_val, abs(primary.value - ref) / max(1.0, abs(ref)))
        if i < n_grad:
            g = np.array([t.value for t in classical_theta_gradient(Z, ch, v, eps)])
            f = fd_gradient(Z, ch, v, config.fd_step, config.box_radius)
            if np.linalg.norm(g) > 1e-3:
                worst_grad = max(worst_grad, float(np.linalg.norm(g - f) / np.linalg.norm(g)))
    return {
        "value_residual": worst_val,
        "gradient_residual": worst_grad,
        "max_primary_radius": max(radii),
        "box_radius": config.box_radius,
    }


def oracle_section(Z: SiegelMatrix, cfg: SuiteConfig) -> dict:
    if not cfg.paranoid:
        return {"status": SKIPPED, "reason": "enable with --paranoid"}
    out = oracle_comparison(Z, cfg.n_oracle, cfg.n_oracle_grad, cfg.seed + 5, cfg.eps)
    ok = (
        out["value_residual"] < THRESHOLDS["oracle_value"]
        and out["gradient_residual"] < THRESHOLDS["oracle_gradient"]
        and out["box_radius"] >= 2 * out["max_primary_radius"]
    )
    return {"status": _status(ok), **out}


SECTIONS = {
    "census": census_section,
    "oddness": oddness_section,
    "inverse_formula": inverse_formula_section,
    "quasiperiodicity": quasiperiodicity_section,
    "eigenspaces": eigenspace_section,
    "translates": translates_section,
    "product": product_section,
    "smoothness": smoothness_section,
    "oracle_comparison": oracle_section,
}


def run_suite(Z: SiegelMatrix, cfg: SuiteConfig | None = None) -> SuiteReport:
    """Run every section; a failing or raising section is recorded and the rest still run."""
    cfg = cfg or SuiteConfig()
    report = SuiteReport(__version__, z_entries(Z), cfg.seed, cfg.eps, dict(THRESHOLDS))
    for name, func in SECTIONS.items():
        try:
            report.sections[name] = func(Z, cfg)
        except Theta13Error as exc:
            report.sections[name] = {"status": ERROR, "error_type": type(exc).__name__, "error": str(exc)}
    return report


def random_suite(seed: int, cfg: SuiteConfig | None = None) -> SuiteReport:
    cfg = cfg or SuiteConfig(seed=seed)
    return run_suite(random_siegel(np.random.default_rng(seed)), cfg)


# -- trace ------------------------------------------------------------------

TRACE_HEADER = ["x1", "x2", "y1", "y2", "re_theta", "im_theta", "grad_norm"]


def trace_rows(Z: SiegelMatrix, n: int, seed: int = 0, eps: float = DEFAULT_EPS) -> list[list[float]]:
    if n < 1:
        raise ValueError("n must be at least 1")
    sample = sample_curve_points(Z, n, seed, eps)
    rows = []
    for p, val, g in zip(sample.points, sample.values, sample.gradient_norms):
        rows.append([*p.x, *p.y, val.real, val.imag, g])
    return rows


def emit_trace(Z: SiegelMatrix, n: int, seed: int, out_path, eps: float = DEFAULT_EPS) -> int:
    """Write the sampled curve points as CSV; returns the number of data rows."""
    rows = trace_rows(Z, n, seed, eps)
    with open(out_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        w.writerows([repr(float(t)) for t in r] for r in rows)
    return len(rows)
