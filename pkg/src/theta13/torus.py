"""Lattice, modulus and torsion arithmetic on A_Z = C^2 / (Z Z^2 + D Z^2), D = diag(1, 3).

Points of C^2 are written in real coordinates v = Z x + D y.  The Riemann
form is H(v, w) = v^T Im(Z)^{-1} conj(w), linear in the first slot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NotHalfInteger, NotPositiveDefinite

D = np.diag([1.0, 3.0])
D_INT = (1, 3)
PD_TOL = 1e-10
# Reduced coordinates this close to 1 are folded back to 0.
WRAP_TOL = 1e-12


@dataclass(frozen=True)
class PolarizationType:
    d1: int = 1
    d2: int = 3

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1 or self.d2 % self.d1:
            raise ValueError(f"invalid polarization type ({self.d1}, {self.d2})")


@dataclass(frozen=True, eq=False)
class SiegelMatrix:
    """Symmetric 2x2 complex matrix with positive definite imaginary part.

    Build through :func:`make_siegel`, which validates and fills the caches.
    """

    z11: complex
    z12: complex
    z22: complex
    matrix: np.ndarray = field(repr=False)
    Y: np.ndarray = field(repr=False)
    Yinv: np.ndarray = field(repr=False)
    lam_min: float = field(repr=False)

    @property
    def X(self) -> np.ndarray:
        return self.matrix.real

    @property
    def omega(self) -> np.ndarray:
        """Generator Z(0, 1/3) of the kernel part lying in Z R^2."""
        return self.matrix @ np.array([0.0, 1.0 / 3.0])

    @property
    def is_diagonal(self) -> bool:
        return self.z12 == 0

    def entries(self) -> tuple[complex, complex, complex]:
        return (self.z11, self.z12, self.z22)


def make_siegel(z11, z12, z22) -> SiegelMatrix:
    z11, z12, z22 = complex(z11), complex(z12), complex(z22)
    M = np.array([[z11, z12], [z12, z22]], dtype=complex)
    if not np.all(np.isfinite(M)):
        raise NotPositiveDefinite("entries must be finite")
    Y = M.imag.copy()
    lam = np.linalg.eigvalsh(Y)
    if lam[0] <= PD_TOL:
        raise NotPositiveDefinite(
            f"Im Z has smallest eigenvalue {lam[0]:.3g}; need > {PD_TOL:g}"
        )
    Yinv = np.linalg.inv(Y)
    for a in (M, Y, Yinv):
        a.setflags(write=False)
    return SiegelMatrix(z11, z12, z22, M, Y, Yinv, float(lam[0]))


def random_siegel(rng: np.random.Generator) -> SiegelMatrix:
    """Draw Z with Re Z uniform in [-1/2, 1/2] and Im Z = Q^T Q + 0.3 I."""
    re = rng.uniform(-0.5, 0.5, size=3)
    Q = rng.uniform(-1.0, 1.0, size=(2, 2))
    Y = Q.T @ Q + 0.3 * np.eye(2)
    return make_siegel(
        complex(re[0], Y[0, 0]), complex(re[1], Y[0, 1]), complex(re[2], Y[1, 1])
    )


def riemann_form(Z: SiegelMatrix, v, w) -> complex:
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.einsum("...i,ij,...j->...", v, Z.Yinv, w.conj())


def bilinear_form(Z: SiegelMatrix, v, w) -> complex:
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.einsum("...i,ij,...j->...", v, Z.Yinv, w)


def lattice_basis(Z: SiegelMatrix) -> np.ndarray:
    """Columns Z e1, Z e2, D e1, D e2 as a 2x4 complex array."""
    return np.hstack([Z.matrix, D.astype(complex)])


def lattice_vector(Z: SiegelMatrix, m, n) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    return m @ Z.matrix.T + n @ D


def to_real_coords(Z: SiegelMatrix, v):
    """Solve v = Z x + D y for real x, y.  Works on arrays of shape (..., 2)."""
    v = np.asarray(v, dtype=complex)
    x = v.imag @ Z.Yinv.T
    y = (v.real - x @ Z.X.T) / np.diag(D)
    return x, y


def from_real_coords(Z: SiegelMatrix, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x @ Z.matrix.T + y @ D


@dataclass(frozen=True)
class RealCharacteristic:
    c1: tuple[float, float]
    c2: tuple[float, float]

    def __post_init__(self):
        c1 = tuple(float(t) for t in self.c1)
        c2 = tuple(float(t) for t in self.c2)
        if len(c1) != 2 or len(c2) != 2 or not all(np.isfinite(c1 + c2)):
            raise ValueError("characteristic entries must be two finite reals each")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @property
    def a(self) -> np.ndarray:
        return np.array(self.c1)

    @property
    def b(self) -> np.ndarray:
        return np.array(self.c2)

    def point(self, Z: SiegelMatrix) -> np.ndarray:
        """The point Z c1 + D c2 of C^2."""
        return from_real_coords(Z, self.a, self.b)

    def __str__(self):
        f = lambda t: str(Fraction(t).limit_denominator(12))
        return f"[{','.join(map(f, self.c1))};{','.join(map(f, self.c2))}]"


ZERO_CHAR = RealCharacteristic((0.0, 0.0), (0.0, 0.0))


@dataclass(frozen=True, eq=False)
class TorusPoint:
    v: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @classmethod
    def from_complex(cls, Z: SiegelMatrix, v) -> "TorusPoint":
        v = np.asarray(v, dtype=complex)
        x, y = to_real_coords(Z, v)
        return cls(v, x, y)

    @classmethod
    def from_real(cls, Z: SiegelMatrix, x, y) -> "TorusPoint":
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return cls(from_real_coords(Z, x, y), x, y)

    def key(self, digits: int = 9) -> tuple:
        return tuple(np.round(np.concatenate([self.x, self.y]), digits) % 1.0)


def _wrap(t):
    frac = t - np.floor(t)
    return np.where(frac > 1.0 - WRAP_TOL, 0.0, frac)


def split_lattice(Z: SiegelMatrix, v):
    """Write v = v0 + Z m + D n with v0 in the half-open cell [0,1)^4.

    Returns ``(v0, m, n)`` with integer-valued float arrays m, n.  Accepts
    arrays of shape (..., 2).
    """
    x, y = to_real_coords(Z, v)
    x0, y0 = _wrap(x), _wrap(y)
    m = np.rint(x - x0)
    n = np.rint(y - y0)
    return from_real_coords(Z, x0, y0), m, n


def reduce_mod_lattice(Z: SiegelMatrix, v) -> TorusPoint:
    x, y = to_real_coords(Z, v)
    x0, y0 = _wrap(x), _wrap(y)
    return TorusPoint(from_real_coords(Z, x0, y0), x0, y0)


def torus_add(Z: SiegelMatrix, p: TorusPoint, q: TorusPoint) -> TorusPoint:
    return TorusPoint.from_real(Z, _wrap(p.x + q.x), _wrap(p.y + q.y))


def is_lattice_vector(Z: SiegelMatrix, v, tol: float = 1e-10) -> bool:
    x, y = to_real_coords(Z, v)
    return bool(
        np.all(np.abs(x - np.rint(x)) < tol) and np.all(np.abs(y - np.rint(y)) < tol)
    )


def two_torsion_points(Z: SiegelMatrix | None = None) -> list[RealCharacteristic]:
    """All 16 characteristics (c1, c2) with entries in {0, 1/2}."""
    out = []
    for bits in itertools.product((0, 1), repeat=4):
        h = [0.5 * t for t in bits]
        out.append(RealCharacteristic((h[0], h[1]), (h[2], h[3])))
    return out


def _doubled(t) -> int:
    d = 2.0 * float(t)
    k = round(d)
    if abs(d - k) > 1e-12 or k not in (0, 1):
        raise NotHalfInteger(f"{t!r} is not in {{0, 1/2}}")
    return k


def parity(c1, c2) -> int:
    """exp(4 pi i c1.c2) for half-integral c1, c2, evaluated exactly."""
    a = [_doubled(t) for t in c1]
    b = [_doubled(t) for t in c2]
    return -1 if (a[0] * b[0] + a[1] * b[1]) % 2 else 1


def char_parity(ch: RealCharacteristic) -> int:
    return parity(ch.c1, ch.c2)


def polarization_kernel(Z: SiegelMatrix) -> list[TorusPoint]:
    """The nine points Z(0, a/3) + (0, b), a, b in {0, 1, 2}, reduced.

    Ordered with b varying slowest, so the first three entries are
    K(L)_1 = {0, omega, 2 omega = -omega}.
    """
    pts = []
    for b in range(3):
        for a in range(3):
            pts.append(TorusPoint.from_real(Z, [0.0, a / 3.0], _wrap(np.array([0.0, b / 3.0]))))
    return pts


def kernel_one(Z: SiegelMatrix) -> list[np.ndarray]:
    """Representatives 0, omega, -omega of K(L)_1 as vectors in Z R^2."""
    w = Z.omega
    return [np.zeros(2, dtype=complex), w, -w]
