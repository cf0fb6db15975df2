"""Certified evaluation of classical and canonical Riemann theta functions.

Classical theta with real characteristic (c1, c2)::

    theta[c1; c2](v) = sum_l exp(pi i (l+c1)^T Z (l+c1) + 2 pi i (v+c2)^T (l+c1))

Canonical theta with complex characteristic c = c1 + c2 (c1 in Z R^2,
c2 in R^2) is summed over lambda in Z Z^2 with the Riemann form H and its
bilinear companion B, together with the exponential prefactor in H and B.

Every value carries ``tail_bound``, an upper bound on its absolute error:
the rigorous truncation tail plus a conservative floating point rounding
estimate.  The truncation part alone is ``truncation_bound`` and never
exceeds the requested ``eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EpsTooSmall, EtaNotInKernel, NotLatticeVector, RankAmbiguous
from .torus import (
    D,
    RealCharacteristic,
    SiegelMatrix,
    bilinear_form,
    from_real_coords,
    kernel_one,
    riemann_form,
    split_lattice,
    to_real_coords,
    two_torsion_points,
)

DEFAULT_EPS = 1e-12
R_MAX = 10_000
_U = np.finfo(float).eps
_CHUNK = 2048


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    tail_bound: float
    radius_used: int
    truncation_bound: float = 0.0

    def __abs__(self):
        return abs(self.value)

    def __sub__(self, other: "ThetaValue") -> "ThetaValue":
        return ThetaValue(
            self.value - other.value,
            self.tail_bound + other.tail_bound,
            max(self.radius_used, other.radius_used),
            self.truncation_bound + other.truncation_bound,
        )


@dataclass
class ThetaBatch:
    """Vectorised evaluation result for N points."""

    values: np.ndarray
    bounds: np.ndarray
    radius: int
    truncation: np.ndarray
    grads: np.ndarray | None = None
    grad_bounds: np.ndarray | None = None

    def __sub__(self, other: "ThetaBatch") -> "ThetaBatch":
        g = gb = None
        if self.grads is not None and other.grads is not None:
            g = self.grads - other.grads
            gb = self.grad_bounds + other.grad_bounds
        return ThetaBatch(
            self.values - other.values,
            self.bounds + other.bounds,
            max(self.radius, other.radius),
            self.truncation + other.truncation,
            g,
            gb,
        )

    def item(self, i: int = 0) -> ThetaValue:
        return ThetaValue(
            complex(self.values[i]), float(self.bounds[i]), self.radius, float(self.truncation[i])
        )


# -- truncation control ---------------------------------------------------


@lru_cache(maxsize=4096)
def _shell_parts(R: int, lam_min: float) -> tuple[float, float]:
    """log A, log B with A = sum_k N_k e_k and B = sum_k N_k e_k rho_k / sqrt(lam).

    Shell k covers R+k < ||w||_Y <= R+k+1 = rho_k; its terms are at most
    e_k = exp(-pi (R+k)^2) and it holds at most N_k = pi (rho_k/sqrt(lam) +
    sqrt(2)/2)^2 points of any translate of Z^2.
    """
    s = math.sqrt(lam_min)
    la, lb = [], []
    k = 0
    while True:
        rho = R + k + 1
        t = math.log(math.pi) + 2.0 * math.log(rho / s + 0.5 * math.sqrt(2.0)) - math.pi * (R + k) ** 2
        la.append(t)
        lb.append(t + math.log(rho / s))
        if k > 2 and t < la[0] - 60.0:
            break
        k += 1
    return _logsumexp(la), _logsumexp(lb)


def _logsumexp(xs) -> float:
    top = max(xs)
    return top + math.log(sum(math.exp(x - top) for x in xs))


def _log_shell_tail(R: int, lam_min: float, offset: float = 0.0, weighted: bool = False) -> float:
    """log of the tail sum over shells; ``weighted`` multiplies each shell by rho_k/sqrt(lam) + offset."""
    la, lb = _shell_parts(R, lam_min)
    if not weighted:
        return la
    if offset <= 0:
        return lb
    return _logsumexp([lb, la + math.log(offset)])


def _radius_for(log_scale: float, lam_min: float, eps: float, offset: float = 0.0, weighted: bool = False) -> int:
    """Smallest integer R >= 1 with exp(log_scale) * shell_tail(R) <= eps."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    target = math.log(eps) - log_scale
    guess = math.sqrt(max(0.0, -target) / math.pi)
    R = max(1, int(guess) - 2)
    while R <= R_MAX and _log_shell_tail(R, lam_min, offset, weighted) > target:
        R += 1
    if R > R_MAX:
        raise EpsTooSmall(f"truncation radius would exceed {R_MAX}; reduce v modulo the lattice")
    return R


def _lam_min(Y) -> float:
    if isinstance(Y, SiegelMatrix):
        return Y.lam_min
    return float(np.linalg.eigvalsh(np.asarray(Y, dtype=float))[0])


def truncation_radius(Y, c1, v, eps: float) -> int:
    """Integer Y-norm radius R certifying a truncation tail <= eps.

    Terms satisfy |term(l)| = K exp(-pi ||l + c1 - p||_Y^2) with centre
    p = -Y^{-1} Im v and K = exp(pi Im v^T Y^{-1} Im v); the tail outside
    the ellipse ||l + c1 - p||_Y <= R is bounded shell by shell using
    lambda_min(Y).  c1 only moves the point set and does not enter the bound.
    """
    Ymat = Y.Y if isinstance(Y, SiegelMatrix) else np.asarray(Y, dtype=float)
    lam = _lam_min(Ymat)
    if not lam > 0:
        raise ValueError("Y must be positive definite")
    im = np.imag(np.asarray(v, dtype=complex))
    log_scale = math.pi * float(im @ np.linalg.solve(Ymat, im))
    return _radius_for(log_scale, lam, eps)


# -- classical theta ------------------------------------------------------


def _as_points(V) -> tuple[np.ndarray, bool]:
    V = np.asarray(V, dtype=complex)
    single = V.ndim == 1
    return np.atleast_2d(V), single


def _box(centres: np.ndarray, R: int, Yinv: np.ndarray, shift: np.ndarray) -> np.ndarray:
    half = R * np.sqrt(np.diag(Yinv))
    lo = np.floor(centres.min(axis=0) - half - shift).astype(int)
    hi = np.ceil(centres.max(axis=0) + half - shift).astype(int)
    g1, g2 = np.meshgrid(np.arange(lo[0], hi[0] + 1), np.arange(lo[1], hi[1] + 1), indexing="ij")
    return np.stack([g1.ravel(), g2.ravel()], axis=1).astype(float)


def quasiperiodicity_exponent(Z: SiegelMatrix, ch: RealCharacteristic, m, n, v):
    """Exponent of the multiplier in theta(v + Z m + D n) = exp(.) theta(v).

    Shifting the summation index l -> l - m gives
    -pi i m^T Z m - 2 pi i m^T (v + c2) + 2 pi i c1^T D n.
    """
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    v = np.asarray(v, dtype=complex)
    c1, c2 = ch.a, ch.b
    mZm = np.einsum("...i,ij,...j->...", m, Z.matrix, m)
    return (
        -1j * np.pi * mZm
        - 2j * np.pi * np.einsum("...i,...i->...", m, v + c2)
        + 2j * np.pi * (n @ (D @ c1))
    )


def _classical_chunk(Z, ch, V, eps, grad, reduce):
    c1, c2 = ch.a, ch.b
    if reduce:
        V0, m, n = split_lattice(Z, V)
        arg_e = quasiperiodicity_exponent(Z, ch, m, n, V0)
    else:
        V0 = V
        m = np.zeros(V.shape, dtype=float)
        arg_e = np.zeros(len(V), dtype=complex)
    log_e = arg_e.real

    s = V0.imag @ Z.Yinv  # Y^{-1} Im v (Yinv symmetric)
    centres = -s
    logK = np.pi * np.einsum("ij,ij->i", V0.imag, s)
    pnorm = np.linalg.norm(centres, axis=1)
    lam = Z.lam_min
    R = _radius_for(float(np.max(logK + log_e)), lam, eps)
    if grad:
        R = max(
            R,
            _radius_for(
                float(np.max(logK + log_e)) + math.log(2 * math.pi), lam, eps,
                offset=float(pnorm.max()), weighted=True,
            ),
        )

    # The box contains every point's ellipse ||u - p||_Y <= R, so the tail
    # certificate holds; the Gaussian weight separates into a matrix product.
    half = R * np.sqrt(np.diag(Z.Yinv))
    lo = np.floor(centres.min(axis=0) - half - c1).astype(int)
    hi = np.ceil(centres.max(axis=0) + half - c1).astype(int)
    u1 = np.arange(lo[0], hi[0] + 1) + c1[0]
    u2 = np.arange(lo[1], hi[1] + 1) + c1[1]
    z11, z12, z22 = Z.matrix[0, 0], Z.matrix[0, 1], Z.matrix[1, 1]
    qarg = 1j * np.pi * (z11 * u1[:, None] ** 2 + 2 * z12 * u1[:, None] * u2[None, :] + z22 * u2[None, :] ** 2)
    C = np.exp(qarg)
    w = V0 + c2
    A = np.exp(2j * np.pi * w[:, 0:1] * u1[None, :])
    B = np.exp(2j * np.pi * w[:, 1:2] * u2[None, :])
    CB = B @ C.T
    S = np.einsum("ni,ni->n", A, CB)
    aA, aB, aC = np.abs(A), np.abs(B), np.abs(C)
    aCB = aB @ aC.T
    sumT = np.einsum("ni,ni->n", aA, aCB)
    M = len(u1) * len(u2)
    fudge = 2.0 + math.log2(max(M, 2)) + 3.0
    # |exponent| <= pi |u^T Z u| + 2 pi |v + c2| |u| on the box
    umax = math.hypot(np.max(np.abs(u1)), np.max(np.abs(u2)))
    amax = np.max(np.abs(qarg)) + 2 * np.pi * np.linalg.norm(w, axis=1) * umax
    rnd = 2 * _U * (amax + fudge) * sumT

    la, lb = _shell_parts(R, lam)
    trunc = np.exp(logK + la)
    e = np.exp(arg_e)
    ae = np.abs(e)
    values = e * S
    bounds = ae * (trunc + rnd) + np.abs(values) * (np.abs(arg_e) + 2.0) * 2 * _U
    out = dict(values=values, bounds=bounds, radius=R, truncation=ae * trunc)
    if grad:
        G = 2j * np.pi * np.stack(
            [np.einsum("ni,ni->n", A * u1[None, :], CB), np.einsum("ni,ni->n", A, (B * u2[None, :]) @ C.T)],
            axis=1,
        )
        gsum = np.stack(
            [np.einsum("ni,ni->n", aA * np.abs(u1)[None, :], aCB),
             np.einsum("ni,ni->n", aA, (aB * np.abs(u2)[None, :]) @ aC.T)],
            axis=1,
        )
        grnd = 2 * _U * 2 * np.pi * (amax + fudge + 1.0)[:, None] * gsum
        gtrunc = 2 * math.pi * (np.exp(logK + lb) + pnorm * np.exp(logK + la))
        grads = e[:, None] * (G - 2j * np.pi * m * S[:, None])
        mnorm = np.linalg.norm(m, axis=1)
        gb = (
            ae[:, None] * (gtrunc[:, None] + grnd + 2 * np.pi * mnorm[:, None] * (trunc + rnd)[:, None])
            + np.abs(grads) * (np.abs(arg_e) + 3.0)[:, None] * 2 * _U
        )
        out.update(grads=grads, grad_bounds=gb)
    return out


def classical_theta_batch(
    Z: SiegelMatrix, ch: RealCharacteristic, V, eps: float = DEFAULT_EPS, grad: bool = False, reduce: bool = True
) -> ThetaBatch:
    """Evaluate theta[c1; c2] at the rows of V (shape (N, 2)).

    With ``reduce`` (the default) each point is first moved into the
    fundamental cell and the exact quasi-periodicity multiplier is applied
    afterwards, so the accuracy does not degrade far from the origin.
    """
    V, _ = _as_points(V)
    parts = [
        _classical_chunk(Z, ch, V[i : i + _CHUNK], eps, grad, reduce)
        for i in range(0, len(V), _CHUNK)
    ]
    cat = lambda k: np.concatenate([p[k] for p in parts]) if parts[0].get(k) is not None else None
    return ThetaBatch(
        cat("values"), cat("bounds"), max(p["radius"] for p in parts), cat("truncation"),
        cat("grads"), cat("grad_bounds"),
    )


def classical_theta(Z: SiegelMatrix, ch: RealCharacteristic, v, eps: float = DEFAULT_EPS, reduce: bool = True) -> ThetaValue:
    return classical_theta_batch(Z, ch, np.asarray(v, dtype=complex)[None, :], eps, reduce=reduce).item(0)


def classical_theta_gradient(Z: SiegelMatrix, ch: RealCharacteristic, v, eps: float = DEFAULT_EPS):
    """Partial derivatives (d/dv1, d/dv2) of theta[c1; c2] at v, each certified."""
    b = classical_theta_batch(Z, ch, np.asarray(v, dtype=complex)[None, :], eps, grad=True)
    return tuple(
        ThetaValue(complex(b.grads[0, k]), float(b.grad_bounds[0, k]), b.radius, float(b.grad_bounds[0, k]))
        for k in range(2)
    )


def quasiperiodicity_residual(Z: SiegelMatrix, ch: RealCharacteristic, lam, v, eps: float = DEFAULT_EPS) -> float:
    """Relative mismatch |theta(v+lam) - e_lam(v) theta(v)| / scale.

    Both sides are summed directly, without lattice reduction, so the check
    does not reuse the multiplier it is testing.
    """
    lam = np.asarray(lam, dtype=complex)
    v = np.asarray(v, dtype=complex)
    x, y = to_real_coords(Z, lam)
    m, n = np.rint(x), np.rint(y)
    if np.max(np.abs(x - m)) > 1e-9 or np.max(np.abs(y - n)) > 1e-9:
        raise NotLatticeVector(f"{lam} is not in Z Z^2 + D Z^2")
    lhs = classical_theta(Z, ch, v + lam, eps, reduce=False).value
    rhs = np.exp(quasiperiodicity_exponent(Z, ch, m, n, v)) * classical_theta(Z, ch, v, eps, reduce=False).value
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return float(abs(lhs - rhs) / scale)


# -- canonical theta ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComplexCharacteristic:
    """c = c1 + c2 with c1 = Z a in Z R^2 and c2 in R^2.

    ``a`` is the real preimage of c1; ``c2`` is stored as the real vector
    itself (so for c = Z a + D b, c2 = D b).
    """

    a: np.ndarray
    c2: np.ndarray
    c: np.ndarray

    @classmethod
    def from_real(cls, Z: SiegelMatrix, a, b) -> "ComplexCharacteristic":
        a = np.asarray(a, dtype=float)
        c2 = D @ np.asarray(b, dtype=float)
        return cls(a, c2, Z.matrix @ a + c2)

    @classmethod
    def from_characteristic(cls, Z: SiegelMatrix, ch: RealCharacteristic) -> "ComplexCharacteristic":
        return cls.from_real(Z, ch.a, ch.b)

    @classmethod
    def from_point(cls, Z: SiegelMatrix, c) -> "ComplexCharacteristic":
        x, y = to_real_coords(Z, c)
        return cls.from_real(Z, x, y)

    def c1(self, Z: SiegelMatrix) -> np.ndarray:
        return Z.matrix @ self.a

    def residual(self, Z: SiegelMatrix) -> float:
        return float(np.max(np.abs(self.c1(Z) + self.c2 - self.c)))

    @property
    def b(self) -> np.ndarray:
        return np.linalg.solve(D, self.c2)


def zero_complex_char() -> ComplexCharacteristic:
    return ComplexCharacteristic(np.zeros(2), np.zeros(2), np.zeros(2, dtype=complex))


def _canonical_chunk(Z, c: ComplexCharacteristic, V, eps):
    W = V + c.c
    pre_arg = (
        -np.pi * riemann_form(Z, V, c.c)
        - 0.5 * np.pi * riemann_form(Z, c.c, c.c)
        + 0.5 * np.pi * bilinear_form(Z, W, W)
    )
    log_pre = pre_arg.real
    # |term(m)| = exp(-pi m^T Y m + 2 pi Im(w)^T m): centre +Y^{-1} Im w
    s = W.imag @ Z.Yinv
    logK = np.pi * np.einsum("ij,ij->i", W.imag, s)
    lam = Z.lam_min
    R = _radius_for(float(np.max(logK + log_pre)), lam, eps)
    Mset = _box(s, R, Z.Yinv, np.zeros(2))
    Lam = Mset @ Z.matrix.T  # lambda = Z m
    HB_w = riemann_form(Z, W[:, None, :], Lam[None, :, :]) - bilinear_form(Z, W[:, None, :], Lam[None, :, :])
    HB_ll = riemann_form(Z, Lam, Lam) - bilinear_form(Z, Lam, Lam)
    arg = np.pi * HB_w - 0.5 * np.pi * HB_ll[None, :]
    Dm = Mset[None, :, :] - s[:, None, :]
    inside = np.einsum("nmi,ij,nmj->nm", Dm, Z.Y, Dm) <= R * R
    T = np.where(inside, np.exp(np.where(inside, arg, 0.0)), 0.0)
    M = int(inside.sum(axis=1).max())
    S = T.sum(axis=1)
    rnd = 2 * _U * np.sum(np.abs(T) * (np.abs(arg) + 2.0 + math.log2(max(M, 2))), axis=1)
    trunc = np.exp(logK + _shell_parts(R, lam)[0])
    pre = np.exp(pre_arg)
    values = pre * S
    ap = np.abs(pre)
    bounds = ap * (trunc + rnd) + np.abs(values) * (np.abs(pre_arg) + 2.0) * 2 * _U
    return values, bounds, R, ap * trunc


def canonical_theta_batch(Z: SiegelMatrix, c: ComplexCharacteristic, V, eps: float = DEFAULT_EPS) -> ThetaBatch:
    V, _ = _as_points(V)
    parts = [_canonical_chunk(Z, c, V[i : i + _CHUNK], eps) for i in range(0, len(V), _CHUNK)]
    return ThetaBatch(
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        max(p[2] for p in parts),
        np.concatenate([p[3] for p in parts]),
    )


def canonical_theta(Z: SiegelMatrix, c: ComplexCharacteristic, v, eps: float = DEFAULT_EPS) -> ThetaValue:
    return canonical_theta_batch(Z, c, np.asarray(v, dtype=complex)[None, :], eps).item(0)


def _check_eta(Z: SiegelMatrix, eta) -> np.ndarray:
    eta = np.asarray(eta, dtype=complex)
    x, y = to_real_coords(Z, eta)
    k = 3.0 * x[1]
    ok = (
        np.max(np.abs(y)) < 1e-9
        and abs(x[0] - round(x[0])) < 1e-9
        and abs(k - round(k)) < 1e-9
    )
    if not ok:
        raise EtaNotInKernel(f"{eta} is not a lift of 0, omega or -omega in Z R^2")
    return eta


def automorphy_factor(Z: SiegelMatrix, eta, V, c: ComplexCharacteristic | None = None) -> np.ndarray:
    """a_L(eta, v) = chi(eta) exp(pi H(v, eta) + pi/2 H(eta, eta)) for eta in Z R^2.

    The semicharacter is extended to Z R^2 as chi(eta) = exp(2 pi i Im H(c, eta)),
    which is 1 when c2 = 0.  Dropping chi breaks the inversion identity by a
    sign for the six odd 2-torsion characteristics.
    """
    eta = np.asarray(eta, dtype=complex)
    log_chi = 0.0
    if c is not None:
        log_chi = 2j * np.pi * riemann_form(Z, c.c, eta).imag
    return np.exp(log_chi + np.pi * riemann_form(Z, V, eta) + 0.5 * np.pi * riemann_form(Z, eta, eta))


def canonical_theta_shifted_batch(
    Z: SiegelMatrix, c: ComplexCharacteristic, eta, V, eps: float = DEFAULT_EPS
) -> ThetaBatch:
    """theta^c_eta(v) = a_L(eta, v)^{-1} theta^c(v + eta) at the rows of V."""
    eta = _check_eta(Z, eta)
    V, _ = _as_points(V)
    a = automorphy_factor(Z, eta, V, c)
    inner = canonical_theta_batch(Z, c, V + eta, eps * float(np.min(np.abs(a))))
    inv = 1.0 / np.abs(a)
    vals = inner.values / a
    return ThetaBatch(
        vals,
        inner.bounds * inv + np.abs(vals) * 8 * _U * (1 + np.abs(np.log(a))),
        inner.radius,
        inner.truncation * inv,
    )


def canonical_theta_shifted(Z: SiegelMatrix, c: ComplexCharacteristic, eta, v, eps: float = DEFAULT_EPS) -> ThetaValue:
    return canonical_theta_shifted_batch(Z, c, eta, np.asarray(v, dtype=complex)[None, :], eps).item(0)


def inverse_formula_factor(Z: SiegelMatrix, c: ComplexCharacteristic, eta) -> complex:
    """exp(4 pi i Im H(eta + c1, c2))."""
    eta = np.asarray(eta, dtype=complex)
    return complex(np.exp(4j * np.pi * riemann_form(Z, eta + c.c1(Z), c.c2.astype(complex)).imag))


def inversion_image(Z: SiegelMatrix, c: ComplexCharacteristic, eta) -> np.ndarray:
    """The index -eta - 2 c1 appearing on the right of the Inverse Formula."""
    return -np.asarray(eta, dtype=complex) - 2.0 * c.c1(Z)


def sample_points(Z: SiegelMatrix, count: int, seed: int = 0, spread: float = 0.5) -> np.ndarray:
    """Points Z x + D y with x, y uniform in [-spread, spread]^2."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-spread, spread, size=(count, 2))
    y = rng.uniform(-spread, spread, size=(count, 2))
    return from_real_coords(Z, x, y)


def inverse_formula_residual(
    Z: SiegelMatrix, c: ComplexCharacteristic, eta, eps: float = DEFAULT_EPS, seed: int = 20, n_points: int = 20
) -> float:
    """max_v |theta^c_eta(-v) - F theta^c_{-eta-2c1}(v)| / scale over a fixed sample."""
    V = sample_points(Z, n_points, seed)
    lhs = canonical_theta_shifted_batch(Z, c, eta, -V, eps).values
    rhs = inverse_formula_factor(Z, c, eta) * canonical_theta_shifted_batch(
        Z, c, inversion_image(Z, c, eta), V, eps
    ).values
    scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)))
    return float(np.max(np.abs(lhs - rhs)) / scale)


def eigenspace_dims(
    Z: SiegelMatrix, c: ComplexCharacteristic, eps: float = DEFAULT_EPS, seed: int = 12, n_points: int = 12,
    return_singular_values: bool = False,
):
    """Dimensions (h_plus, h_minus) of the (+-1)-eigenspaces of (-1)^* on H^0(L).

    Each basis function theta^c_eta, eta in {0, omega, -omega}, is
    symmetrised with its image under (-1)^* as given by the Inverse Formula;
    the ranks of the sampled symmetrised and antisymmetrised families are
    the eigenspace dimensions.
    """
    V = sample_points(Z, n_points, seed)
    plus, minus = [], []
    for eta in kernel_one(Z):
        f = canonical_theta_shifted_batch(Z, c, eta, V, eps).values
        g = inverse_formula_factor(Z, c, eta) * canonical_theta_shifted_batch(
            Z, c, inversion_image(Z, c, eta), V, eps
        ).values
        plus.append(f + g)
        minus.append(f - g)
    dims, svals = [], []
    for rows in (plus, minus):
        sv = np.linalg.svd(np.array(rows), compute_uv=False)
        rel = sv / sv[0] if sv[0] > 0 else sv
        if np.any((rel >= 1e-10) & (rel <= 1e-6)):
            raise RankAmbiguous(f"singular values {rel} fall in the guard band")
        dims.append(int(np.sum(rel > 1e-8)))
        svals.append(rel)
    if return_singular_values:
        return tuple(dims), svals
    return tuple(dims)


def symmetric_characteristics(Z: SiegelMatrix) -> list[tuple[RealCharacteristic, ComplexCharacteristic]]:
    return [(ch, ComplexCharacteristic.from_characteristic(Z, ch)) for ch in two_torsion_points(Z)]
