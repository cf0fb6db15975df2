"""Zeros of theta_A on complex lines: argument-principle counts, Newton polish, curve sampling."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .divisor import divisor_scale, theta_A_batch
from .errors import BoundaryZero, NewtonDivergence, QuadratureStall, SamplingExhausted
from .theta import DEFAULT_EPS
from .torus import SiegelMatrix, TorusPoint, from_real_coords, reduce_mod_lattice

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W

MAX_DEPTH = 12
MAX_JITTER = 5
COUNT_TOL = 0.1
STABLE_TOL = 0.05
MAX_LEVELS = 14
NEWTON_STEP_TOL = 1e-12
NEWTON_MAX_ITER = 60


@dataclass(frozen=True)
class Window:
    """Axis-aligned rectangle [corner, corner + width + i height] in the t-plane."""

    corner: complex
    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError("window needs positive width and height")

    @property
    def center(self) -> complex:
        return self.corner + 0.5 * complex(self.width, self.height)

    def contains(self, t: complex, tol: float = 0.0) -> bool:
        d = t - self.corner
        return -tol <= d.real <= self.width + tol and -tol <= d.imag <= self.height + tol

    def vertices(self) -> list[complex]:
        c, w, h = self.corner, self.width, self.height
        return [c, c + w, c + complex(w, h), c + 1j * h]

    def quadrants(self, split: complex) -> list["Window"]:
        c = self.corner
        sx, sy = split.real - c.real, split.imag - c.imag
        return [
            Window(c, sx, sy),
            Window(c + sx, self.width - sx, sy),
            Window(c + 1j * sy, sx, self.height - sy),
            Window(c + complex(sx, sy), self.width - sx, self.height - sy),
        ]

    def shifted(self, dt: complex) -> "Window":
        return Window(self.corner + dt, self.width, self.height)


@dataclass(frozen=True, eq=False)
class ComplexLine:
    base: np.ndarray
    direction: np.ndarray
    window: Window

    @classmethod
    def make(cls, base, direction, window: Window) -> "ComplexLine":
        d = np.asarray(direction, dtype=complex)
        nrm = np.linalg.norm(d)
        if nrm == 0:
            raise ValueError("direction must be nonzero")
        b = np.asarray(base.v if isinstance(base, TorusPoint) else base, dtype=complex)
        return cls(b, d / nrm, window)

    def points(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=complex))
        return self.base[None, :] + t[:, None] * self.direction[None, :]

    def with_window(self, window: Window) -> "ComplexLine":
        return ComplexLine(self.base, self.direction, window)


def _restricted(Z, line, t, eps):
    """g(t) = theta_A(base + t dir) and g'(t) on an array of t."""
    b = theta_A_batch(Z, line.points(t), eps, grad=True)
    return b.values, b.grads @ line.direction


def _gl_nodes(segs):
    """Gauss-Legendre nodes/weights for a list of (a, b) segments, concatenated."""
    a = np.array([p for p, _ in segs])[:, None]
    h = np.array([q - p for p, q in segs])[:, None]
    return (a + h * _GL_X[None, :]).ravel(), (h * _GL_W[None, :])


def _winding(Z, line, window, eps, boundary_tol):
    """Raw (1/2 pi i) contour integral of g'/g by adaptive composite Gauss-Legendre.

    Every boundary segment is compared against its two halves; a segment is
    accepted once the two estimates agree to its share of the 0.05 budget.
    Returns None when the refinement does not settle.
    """
    verts = window.vertices()
    perimeter = 2 * (window.width + window.height)
    budget = STABLE_TOL * 2 * np.pi

    def integrate(segs):
        t, w = _gl_nodes(segs)
        # segment endpoints are never quadrature nodes, so probe them too
        ends = np.array([a for a, _ in segs])
        g, dg = _restricted(Z, line, np.concatenate([t, ends]), eps)
        if np.min(np.abs(g) / np.maximum(np.abs(dg), 1e-300)) < boundary_tol:
            raise BoundaryZero("zero on or next to the contour")
        n = t.size
        return np.sum(w * (dg[:n] / g[:n]).reshape(w.shape), axis=1)

    active = [(a, b) for a, b in zip(verts, verts[1:] + verts[:1])]
    coarse = integrate(active)
    total = 0.0
    for _ in range(MAX_LEVELS):
        halves = [h for a, b in active for h in ((a, 0.5 * (a + b)), (0.5 * (a + b), b))]
        fine = integrate(halves).reshape(-1, 2)
        nxt, nxt_coarse = [], []
        for (a, b), c, f in zip(active, coarse, fine):
            if abs(c - f.sum()) < budget * abs(b - a) / perimeter:
                total += f.sum()
            else:
                m = 0.5 * (a + b)
                nxt += [(a, m), (m, b)]
                nxt_coarse += [f[0], f[1]]
        if not nxt:
            return total / (2j * np.pi)
        active, coarse = nxt, np.array(nxt_coarse)
    return None


def _count(Z, line, window, eps, depth, boundary_tol):
    if depth > MAX_DEPTH:
        raise QuadratureStall(f"subdivision depth exceeded {MAX_DEPTH}")
    raw = _winding(Z, line, window, eps, boundary_tol)
    if raw is not None and abs(raw - round(raw.real)) < COUNT_TOL:
        return int(round(raw.real))
    total = 0
    for q in _split(Z, line, window, eps, depth, boundary_tol)[0]:
        total += q[1]
    return total


def _split(Z, line, window, eps, depth, boundary_tol, seed=0):
    """Quarter the window, moving the split point off any zero it would cut."""
    rng = np.random.default_rng(seed + 7919 * depth)
    for attempt in range(MAX_JITTER + 1):
        off = 0.0 if attempt == 0 else complex(*rng.uniform(-0.08, 0.08, size=2))
        split = window.corner + complex(window.width * (0.5 + off.real), window.height * (0.5 + off.imag))
        try:
            parts = [(q, _count(Z, line, q, eps, depth + 1, boundary_tol)) for q in window.quadrants(split)]
            return parts, split
        except BoundaryZero:
            continue
    raise BoundaryZero("could not place an interior split avoiding zeros")


def _jittered(func, line, jitter_seed):
    rng = np.random.default_rng(jitter_seed)
    window = line.window
    for attempt in range(MAX_JITTER + 1):
        try:
            return func(line.with_window(window)), window
        except BoundaryZero:
            if attempt == MAX_JITTER:
                raise
            window = line.window.shifted(complex(*rng.uniform(1e-4, 3e-4, size=2)))


def count_zeros_on_rectangle(
    line: ComplexLine, Z: SiegelMatrix, eps: float = DEFAULT_EPS, boundary_tol: float = 1e-8, jitter_seed: int = 0
) -> int:
    """Number of zeros of t -> theta_A(base + t dir) inside the line's window.

    If a zero sits on the contour the window corner is nudged by
    [1e-4, 3e-4] in both axes, at most five times.
    """
    n, _ = _jittered(lambda ln: _count(Z, ln, ln.window, eps, 0, boundary_tol), line, jitter_seed)
    return n


def _newton(Z, line, t0, window, eps):
    t = complex(t0)
    step = np.inf
    for _ in range(NEWTON_MAX_ITER):
        g, dg = _restricted(Z, line, t, eps)
        if dg[0] == 0:
            return None
        step = g[0] / dg[0]
        t -= step
        if not window.contains(t, tol=1e-9 * (1 + window.width + window.height)):
            return None
        if abs(step) < NEWTON_STEP_TOL:
            # one more step to confirm quadratic contraction
            g, dg = _restricted(Z, line, t, eps)
            last = g[0] / dg[0]
            if abs(last) <= max(abs(step), 1e-15 * (1 + abs(t))):
                return t - last if window.contains(t - last, 1e-9) else t
            return None
    return None


def _isolate(Z, line, window, n, eps, depth, boundary_tol, out):
    if n == 0:
        return
    if n == 1:
        t = _newton(Z, line, window.center, window, eps)
        if t is not None:
            out.append((t, window))
            return
        if depth >= MAX_DEPTH:
            raise NewtonDivergence("Newton failed inside an isolating rectangle", window)
    if depth >= MAX_DEPTH:
        raise QuadratureStall(f"could not isolate {n} zeros within depth {MAX_DEPTH}")
    for attempt in range(MAX_JITTER + 1):
        parts, _ = _split(Z, line, window, eps, depth, boundary_tol, seed=attempt)
        if sum(k for _, k in parts) == n:
            break
    else:
        raise QuadratureStall("child counts never matched the parent count")
    for q, k in parts:
        _isolate(Z, line, q, k, eps, depth + 1, boundary_tol, out)


@dataclass
class LineZeros:
    ts: list[complex]
    windows: list[Window]
    count: int
    window: Window
    residuals: list[float] = field(default_factory=list)


def locate_zeros_on_line(
    line: ComplexLine, Z: SiegelMatrix, eps: float = DEFAULT_EPS, boundary_tol: float = 1e-8, jitter_seed: int = 0
) -> LineZeros:
    """Isolate every zero in the window by subdivision, then polish each by Newton."""

    def run(ln):
        n = _count(Z, ln, ln.window, eps, 0, boundary_tol)
        found = []
        _isolate(Z, ln, ln.window, n, eps, 0, boundary_tol, found)
        return n, found

    (n, found), window = _jittered(run, line, jitter_seed)
    if len(found) != n:
        raise QuadratureStall(f"located {len(found)} zeros but counted {n}")
    ts = [t for t, _ in found]
    res = []
    if ts:
        res = list(np.abs(theta_A_batch(Z, line.points(ts), eps).values))
    return LineZeros(ts, [w for _, w in found], n, window, res)


# -- sampling -------------------------------------------------------------


@dataclass
class CurveSample:
    points: list[TorusPoint]
    residuals: list[float]
    gradient_norms: list[float]
    scale: float
    lines_used: int = 0
    lines_failed: int = 0
    values: list[complex] = field(default_factory=list)

    def __len__(self):
        return len(self.points)


def random_line(Z: SiegelMatrix, rng: np.random.Generator, half_width: float = 0.5) -> ComplexLine:
    base = from_real_coords(Z, rng.uniform(0, 1, 2), rng.uniform(0, 1, 2))
    d = rng.normal(size=2) + 1j * rng.normal(size=2)
    win = Window(complex(-half_width, -half_width), 2 * half_width, 2 * half_width)
    return ComplexLine.make(base, d, win)


def sample_curve_points(
    Z: SiegelMatrix, n: int, seed: int = 0, eps: float = DEFAULT_EPS, scale: float | None = None
) -> CurveSample:
    """Collect n points of C_A from zeros of theta_A along random lines.

    Lines are drawn from ``numpy.random.default_rng(seed)`` and processed in
    order, so the sample is reproducible.  Lines whose zero search raises are
    skipped and counted in ``lines_failed``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    if scale is None:
        scale = divisor_scale(Z, eps)
    raw = []
    used = failed = 0
    while len(raw) < n:
        if used >= 50 * n:
            raise SamplingExhausted(f"{used} lines gave only {len(raw)} of {n} points")
        line = random_line(Z, rng)
        used += 1
        try:
            found = locate_zeros_on_line(line, Z, eps, jitter_seed=used)
        except (BoundaryZero, QuadratureStall, NewtonDivergence):
            failed += 1
            continue
        raw.extend(line.points(found.ts))
    pts = [reduce_mod_lattice(Z, v) for v in raw[:n]]
    V = np.array([p.v for p in pts])
    b = theta_A_batch(Z, V, eps, grad=True)
    return CurveSample(
        pts,
        list(np.abs(b.values)),
        list(np.linalg.norm(b.grads, axis=1)),
        scale,
        used,
        failed,
        list(b.values),
    )


@dataclass
class SmoothnessReport:
    n: int
    scale: float
    min_gradient: float
    mean_gradient: float
    max_gradient: float
    max_residual: float
    lines_used: int
    lines_failed: int

    @property
    def min_relative(self) -> float:
        return self.min_gradient / self.scale

    @property
    def generic(self) -> bool:
        return self.min_relative > 1e-6


def smoothness_report(Z: SiegelMatrix, n: int = 200, seed: int = 0, eps: float = DEFAULT_EPS, sample: CurveSample | None = None) -> SmoothnessReport:
    """Gradient statistics of theta_A over sampled points of C_A."""
    if sample is None:
        sample = sample_curve_points(Z, n, seed, eps)
    g = np.array(sample.gradient_norms)
    return SmoothnessReport(
        len(sample), sample.scale, float(g.min()), float(g.mean()), float(g.max()),
        float(max(sample.residuals)), sample.lines_used, sample.lines_failed,
    )
