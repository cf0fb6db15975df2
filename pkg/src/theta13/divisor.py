"""The (1,3) theta divisor C_A = (theta_A = 0) and its verification sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ComponentResidualTooLarge, SeparationFailure
from .theta import (
    DEFAULT_EPS,
    ComplexCharacteristic,
    ThetaBatch,
    ThetaValue,
    canonical_theta_shifted_batch,
    classical_theta_batch,
    zero_complex_char,
)
from .torus import (
    PolarizationType,
    RealCharacteristic,
    SiegelMatrix,
    TorusPoint,
    char_parity,
    from_real_coords,
    make_siegel,
    polarization_kernel,
    riemann_form,
    to_real_coords,
    torus_add,
    two_torsion_points,
)

MINUS_OMEGA = RealCharacteristic((0.0, -1.0 / 3.0), (0.0, 0.0))
PLUS_OMEGA = RealCharacteristic((0.0, 1.0 / 3.0), (0.0, 0.0))

ON_DIVISOR_REL = 1e-6
MIN_SEPARATION = 1e3


def theta_A_batch(Z: SiegelMatrix, V, eps: float = DEFAULT_EPS, grad: bool = False) -> ThetaBatch:
    """theta[-omega; 0] - theta[omega; 0] at the rows of V."""
    return classical_theta_batch(Z, MINUS_OMEGA, V, eps, grad=grad) - classical_theta_batch(
        Z, PLUS_OMEGA, V, eps, grad=grad
    )


def theta_A(Z: SiegelMatrix, v, eps: float = DEFAULT_EPS) -> ThetaValue:
    return theta_A_batch(Z, np.asarray(v, dtype=complex)[None, :], eps).item(0)


def theta_A_gradient(Z: SiegelMatrix, v, eps: float = DEFAULT_EPS) -> np.ndarray:
    return theta_A_batch(Z, np.asarray(v, dtype=complex)[None, :], eps, grad=True).grads[0]


def theta_A_canonical_batch(Z: SiegelMatrix, V, eps: float = DEFAULT_EPS) -> ThetaBatch:
    c = zero_complex_char()
    w = Z.omega
    return canonical_theta_shifted_batch(Z, c, -w, V, eps) - canonical_theta_shifted_batch(Z, c, w, V, eps)


def theta_A_canonical(Z: SiegelMatrix, v, eps: float = DEFAULT_EPS) -> ThetaValue:
    return theta_A_canonical_batch(Z, np.asarray(v, dtype=complex)[None, :], eps).item(0)


def theta_AL_batch(Z: SiegelMatrix, c: ComplexCharacteristic, V, eps: float = DEFAULT_EPS) -> ThetaBatch:
    """theta^c_eta - exp(4 pi i Im H(eta, c2)) theta^c_{-eta} with eta = -omega.

    This choice of eta makes the c = 0 case coincide with theta_A_canonical.
    """
    eta = -Z.omega
    factor = np.exp(4j * np.pi * riemann_form(Z, eta, c.c2.astype(complex)).imag)
    first = canonical_theta_shifted_batch(Z, c, eta, V, eps)
    second = canonical_theta_shifted_batch(Z, c, -eta, V, eps)
    return ThetaBatch(
        first.values - factor * second.values,
        first.bounds + second.bounds,
        max(first.radius, second.radius),
        first.truncation + second.truncation,
    )


def theta_AL(Z: SiegelMatrix, c: ComplexCharacteristic, v, eps: float = DEFAULT_EPS) -> ThetaValue:
    return theta_AL_batch(Z, c, np.asarray(v, dtype=complex)[None, :], eps).item(0)


def theta_AL_sign(c_char: RealCharacteristic) -> int:
    """Eigenvalue of (-1)^* on theta_{A,L}: minus the parity of c."""
    return -char_parity(c_char)


def cell_grid(Z: SiegelMatrix, k: int = 8) -> np.ndarray:
    """A deterministic k*k set of points spread over the fundamental cell."""
    i, j = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    i, j = i.ravel(), j.ravel()
    x = np.stack([(i + 0.5) / k, (j + 0.5) / k], axis=1)
    y = np.stack([((3 * i + j) % k + 0.25) / k, ((i + 5 * j) % k + 0.75) / k], axis=1)
    return from_real_coords(Z, x, y)


def divisor_scale(Z: SiegelMatrix, eps: float = DEFAULT_EPS) -> float:
    """max |theta_A| over the 8x8 cell grid; the magnitude reference for residuals."""
    return float(np.max(np.abs(theta_A_batch(Z, cell_grid(Z), eps).values)))


def invariant_modulus(Z: SiegelMatrix, V, values) -> np.ndarray:
    """|theta(v)| exp(-pi Im v^T Y^{-1} Im v): the lattice-invariant size of a section."""
    V = np.atleast_2d(np.asarray(V, dtype=complex))
    s = V.imag @ Z.Yinv
    return np.abs(values) * np.exp(-np.pi * np.einsum("ij,ij->i", V.imag, s))


def invariant_scale(Z: SiegelMatrix, eps: float = DEFAULT_EPS) -> float:
    """max of the invariant modulus of theta_A over the cell grid."""
    grid = cell_grid(Z)
    return float(np.max(invariant_modulus(Z, grid, theta_A_batch(Z, grid, eps).values)))


def canonical_scale(Z: SiegelMatrix, eps: float = DEFAULT_EPS) -> float:
    return float(np.max(np.abs(theta_A_canonical_batch(Z, cell_grid(Z), eps).values)))


# -- 2-torsion census -----------------------------------------------------


@dataclass
class CensusResult:
    on_points: list[RealCharacteristic]
    off_points: list[RealCharacteristic]
    values: list[ThetaValue]
    separation_ratio: float
    scale: float
    characteristics: list[RealCharacteristic] = field(default_factory=list)

    @property
    def on_count(self) -> int:
        return len(self.on_points)

    def on_parities(self) -> list[int]:
        return [char_parity(ch) for ch in self.on_points]


def two_torsion_census(Z: SiegelMatrix, eps: float = DEFAULT_EPS, strict: bool = True) -> CensusResult:
    """Evaluate theta_A at all 16 two-torsion points and split them on/off C_A.

    A point is on the divisor when its invariant modulus is below 1e-6 times
    the invariant scale; raw |theta_A| grows like exp(pi x^T Y x) across the
    cell and would misfile points for strongly skew Y.  With ``strict`` a
    separation ratio below 1e3 raises SeparationFailure (census attached).
    """
    chars = two_torsion_points(Z)
    pts = np.array([ch.point(Z) for ch in chars])
    batch = theta_A_batch(Z, pts, eps)
    scale = invariant_scale(Z, eps)
    vals = [batch.item(i) for i in range(len(chars))]
    mags = invariant_modulus(Z, pts, batch.values)
    on_mask = mags < ON_DIVISOR_REL * scale
    on = [ch for ch, f in zip(chars, on_mask) if f]
    off = [ch for ch, f in zip(chars, on_mask) if not f]
    if not off:
        ratio = 0.0
    elif np.all(np.abs(batch.values[on_mask]) <= batch.bounds[on_mask]):
        ratio = math.inf
    else:
        ratio = float(np.min(mags[~on_mask]) / np.max(mags[on_mask]))
    result = CensusResult(on, off, vals, ratio, scale, chars)
    if strict and ratio < MIN_SEPARATION:
        raise SeparationFailure(
            f"separation ratio {ratio:.3g} below {MIN_SEPARATION:g}; modulus too special", result
        )
    return result


# -- kernel translates ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class DivisorHandle:
    """The translate C_A + shift, evaluated as v -> theta_A(v - shift)."""

    Z: SiegelMatrix
    shift: TorusPoint
    index: int = 0

    def evaluate(self, V, eps: float = DEFAULT_EPS) -> ThetaBatch:
        V = np.atleast_2d(np.asarray(V, dtype=complex))
        return theta_A_batch(self.Z, V - self.shift.v, eps)

    def __call__(self, v, eps: float = DEFAULT_EPS) -> ThetaValue:
        return self.evaluate(v, eps).item(0)

    def then(self, other: "DivisorHandle") -> "DivisorHandle":
        """Translate by this shift and then by ``other``'s."""
        return DivisorHandle(self.Z, torus_add(self.Z, self.shift, other.shift), -1)


def kernel_translates(Z: SiegelMatrix) -> list[DivisorHandle]:
    return [DivisorHandle(Z, p, i) for i, p in enumerate(polarization_kernel(Z))]


@dataclass
class TranslateWitnesses:
    """best[i, j] = max over zeros z of divisor i of the invariant modulus of divisor j at z, over scale."""

    best: np.ndarray
    scale: float
    threshold: float
    n_zeros: int

    @property
    def distinct(self) -> np.ndarray:
        ok = self.best > self.threshold
        np.fill_diagonal(ok, True)
        return ok

    @property
    def all_distinct(self) -> bool:
        return bool(np.all(self.distinct))


def translate_witnesses(
    Z: SiegelMatrix, zeros, eps: float = DEFAULT_EPS, threshold: float = 1e-4, scale: float | None = None
) -> TranslateWitnesses:
    """Certify pairwise distinctness of the nine translates from sampled zeros of theta_A.

    A zero z of theta_A gives the zero z + s_i of divisor i; divisor j is
    then evaluated there.  Sizes use the invariant modulus, so the
    certificate does not depend on which lattice cell a point lands in.
    """
    handles = kernel_translates(Z)
    Zs = np.atleast_2d(np.asarray(zeros, dtype=complex))
    if scale is None:
        scale = invariant_scale(Z, eps)
    k = len(handles)
    best = np.zeros((k, k))
    for i, hi in enumerate(handles):
        pts = Zs + hi.shift.v
        for j, hj in enumerate(handles):
            if i != j:
                vals = hj.evaluate(pts, eps).values
                best[i, j] = np.max(invariant_modulus(Z, pts - hj.shift.v, vals)) / scale
    return TranslateWitnesses(best, scale, threshold, len(Zs))


def translates_distinct(Z: SiegelMatrix, n_zeros: int = 12, seed: int = 0, eps: float = DEFAULT_EPS) -> TranslateWitnesses:
    from .zeros import sample_curve_points

    sample = sample_curve_points(Z, n_zeros, seed, eps)
    return translate_witnesses(Z, [p.v for p in sample.points], eps)


# -- product case ---------------------------------------------------------


def _terms_range(tau: complex, im_v: float, spread: float = 0.0) -> np.ndarray:
    t = tau.imag
    L = int(math.ceil(abs(im_v) / t + spread + math.sqrt(40.0 / (math.pi * t)))) + 2
    return np.arange(-L, L + 1, dtype=float)


def product_f(tau1: complex, v1) -> np.ndarray:
    """sum_l a_l with a_l = exp(pi i l^2 tau1 + 2 pi i v1 l)."""
    v1 = np.atleast_1d(np.asarray(v1, dtype=complex))
    out = np.empty(v1.shape, dtype=complex)
    for k, z in enumerate(v1):
        l = _terms_range(tau1, z.imag)
        out[k] = np.sum(np.exp(1j * np.pi * l * l * tau1 + 2j * np.pi * z * l))
    return out


def product_g(tau2: complex, v2) -> np.ndarray:
    """sum_l b^-_l - sum_l b^+_l with b^pm_l = exp(pi i (l pm 1/3)^2 tau2 + 2 pi i v2 (l pm 1/3))."""
    v2 = np.atleast_1d(np.asarray(v2, dtype=complex))
    out = np.empty(v2.shape, dtype=complex)
    for k, z in enumerate(v2):
        l = _terms_range(tau2, z.imag, 1.0)
        um, up = l - 1.0 / 3.0, l + 1.0 / 3.0
        bm = np.exp(1j * np.pi * um * um * tau2 + 2j * np.pi * z * um)
        bp = np.exp(1j * np.pi * up * up * tau2 + 2j * np.pi * z * up)
        out[k] = np.sum(bm) - np.sum(bp)
    return out


def product_siegel(tau1: complex, tau2: complex) -> SiegelMatrix:
    return make_siegel(tau1, 0.0, tau2)


def e_components(tau2: complex) -> list[complex]:
    """v2-positions of the three elliptic components: 0, 3/2, tau2/2."""
    return [0.0 + 0.0j, 1.5 + 0.0j, 0.5 * tau2]


def f_component(tau1: complex) -> complex:
    return 0.5 + 0.5 * tau1


def _dist_mod(z, p, w1, w2) -> float:
    best = math.inf
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            best = min(best, abs(z - p - a * w1 - b * w2))
    return best


@dataclass
class ProductReport:
    tau1: complex
    tau2: complex
    scale: float
    component_residuals: dict[str, float]
    component_bounds: dict[str, float]
    off_component_min: float
    factorization_residual: float
    node_gradient: float
    intersections_two_torsion: bool
    intersection_coords: list[list[float]]

    @property
    def max_component_residual(self) -> float:
        return max(self.component_residuals.values())


def product_components(
    tau1: complex, tau2: complex, eps: float = DEFAULT_EPS, seed: int = 0, n_samples: int = 100
) -> ProductReport:
    """Check the splitting of C_A into one elliptic curve F and three copies of E.

    For Z = diag(tau1, tau2), theta_A(v) = f(v1) g(v2); f vanishes on
    v1 = (1 + tau1)/2 and g on v2 in {0, 3/2, tau2/2}.
    """
    tau1, tau2 = complex(tau1), complex(tau2)
    if tau1.imag <= 0 or tau2.imag <= 0:
        raise ValueError("tau1 and tau2 need positive imaginary part")
    Z = product_siegel(tau1, tau2)
    rng = np.random.default_rng(seed)
    scale = divisor_scale(Z, eps)

    def cell1(k):
        s = rng.uniform(0, 1, size=(k, 2))
        return s[:, 0] + s[:, 1] * tau1

    def cell2(k):
        s = rng.uniform(0, 1, size=(k, 2))
        return 3.0 * s[:, 0] + s[:, 1] * tau2

    residuals, bounds = {}, {}
    p = f_component(tau1)
    V = np.stack([np.full(n_samples, p), cell2(n_samples)], axis=1)
    b = theta_A_batch(Z, V, eps)
    residuals["F: v1=(1+tau1)/2"] = float(np.max(np.abs(b.values)) / scale)
    bounds["F: v1=(1+tau1)/2"] = float(np.max(b.bounds) / scale)
    for name, e in zip(("E: v2=0", "E: v2=3/2", "E: v2=tau2/2"), e_components(tau2)):
        V = np.stack([cell1(n_samples), np.full(n_samples, e)], axis=1)
        b = theta_A_batch(Z, V, eps)
        residuals[name] = float(np.max(np.abs(b.values)) / scale)
        bounds[name] = float(np.max(b.bounds) / scale)

    # points kept a fixed distance away from every component
    margin = 0.2 * min(1.0, tau1.imag, tau2.imag)
    off = []
    while len(off) < n_samples:
        v1, v2 = cell1(1)[0], cell2(1)[0]
        if _dist_mod(v1, p, 1.0, tau1) < margin:
            continue
        if any(_dist_mod(v2, e, 3.0, tau2) < margin for e in e_components(tau2)):
            continue
        off.append((v1, v2))
    # raw |theta_A| swings by exp(pi x^T Y x) across a cell, so compare in the invariant norm
    off = np.array(off)
    inv_scale = invariant_scale(Z, eps)
    off_min = float(np.min(invariant_modulus(Z, off, theta_A_batch(Z, off, eps).values)) / inv_scale)

    g1 = np.array([(i + 0.5) / 10 + ((7 * i) % 10 + 0.5) / 10 * tau1 for i in range(10)])
    g2 = np.array([3.0 * (i + 0.5) / 10 + ((3 * i) % 10 + 0.5) / 10 * tau2 for i in range(10)])
    G1, G2 = np.meshgrid(g1, g2, indexing="ij")
    V = np.stack([G1.ravel(), G2.ravel()], axis=1)
    direct = theta_A_batch(Z, V, eps).values
    factored = product_f(tau1, V[:, 0]) * product_g(tau2, V[:, 1])
    fact_res = float(np.max(np.abs(direct - factored)) / scale)

    node = np.array([p, 0.0])
    node_grad = float(np.linalg.norm(theta_A_gradient(Z, node, eps)))

    coords, ok = [], True
    for e in e_components(tau2):
        x, y = to_real_coords(Z, np.array([p, e]))
        c = np.concatenate([x, y])
        coords.append([float(t) for t in c])
        ok &= bool(np.all(np.abs(2 * c - np.rint(2 * c)) < 1e-10))

    report = ProductReport(
        tau1, tau2, scale, residuals, bounds, off_min, fact_res, node_grad, ok, coords
    )
    worst = max(residuals[k] - 10 * bounds[k] for k in residuals)
    if worst > 0:
        raise ComponentResidualTooLarge(
            f"theta_A does not vanish on a component (excess {worst:.3g})", report
        )
    return report


def genus_of_polarization(d1: int, d2: int) -> int:
    """Arithmetic genus 1 + d1 d2 of a curve in the polarising class."""
    PolarizationType(d1, d2)
    return 1 + d1 * d2


def hurwitz_quotient_genus(curve_genus: int, branch_points: int) -> float:
    """g(C') from 2 g(C) - 2 = 2 (2 g(C') - 2) + b for a double cover C -> C'."""
    return ((2 * curve_genus - 2 - branch_points) / 2 + 2) / 2
