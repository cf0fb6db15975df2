"""Deliberately naive cross-checks for the primary evaluation path.

Nothing here reuses the truncation, reduction or vectorised machinery of
:mod:`theta13.theta`; the tests compare the two routes against each other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .torus import RealCharacteristic, SiegelMatrix


@dataclass(frozen=True)
class OracleConfig:
    box_radius: int = 20
    fd_step: float = 1e-5

    def __post_init__(self):
        if not 1 <= self.box_radius <= 64:
            raise ValueError("box_radius must lie in [1, 64]")
        if not 1e-7 <= self.fd_step <= 1e-3:
            raise ValueError("fd_step must lie in [1e-7, 1e-3]")


def _terms(Z, c1, c2, v, box_radius):
    l = np.arange(-box_radius, box_radius + 1, dtype=float)
    u1 = l[:, None] + c1[0]
    u2 = l[None, :] + c1[1]
    q = Z.z11 * u1 * u1 + 2 * Z.z12 * u1 * u2 + Z.z22 * u2 * u2
    lin = (v[0] + c2[0]) * u1 + (v[1] + c2[1]) * u2
    return np.exp(1j * np.pi * q + 2j * np.pi * lin).ravel()


def direct_theta(Z: SiegelMatrix, ch: RealCharacteristic, v, box_radius: int = 20) -> complex:
    """Plain sum of the classical theta series over the square |l_i| <= box_radius.

    Real and imaginary parts are accumulated with ``math.fsum`` (exactly
    rounded), so the summation order cannot cost accuracy.
    """
    if box_radius > 64:
        raise ValueError("box_radius must be at most 64")
    v = [complex(t) for t in v]
    t = _terms(Z, ch.c1, ch.c2, v, box_radius)
    return complex(math.fsum(t.real), math.fsum(t.imag))


def fd_gradient(
    Z: SiegelMatrix, ch: RealCharacteristic, v, h: float = 1e-5, box_radius: int = 20, directions: str = "both"
) -> np.ndarray:
    """Central-difference estimate of (d/dv1, d/dv2) theta[c1; c2](v).

    ``directions="both"`` averages the real-step and imaginary-step quotients
    (the Wirtinger derivative); for a holomorphic function their h^2 errors
    cancel.  ``"real"`` uses the real step only and is second order.
    """
    if not 1e-7 <= h <= 1e-3:
        raise ValueError("h must lie in [1e-7, 1e-3]")
    v = np.asarray(v, dtype=complex)
    out = np.zeros(2, dtype=complex)
    for k in range(2):
        e = np.zeros(2, dtype=complex)
        e[k] = 1.0
        f = lambda p: direct_theta(Z, ch, p, box_radius)
        real = (f(v + h * e) - f(v - h * e)) / (2 * h)
        if directions == "real":
            out[k] = real
            continue
        imag = (f(v + 1j * h * e) - f(v - 1j * h * e)) / (2j * h)
        out[k] = 0.5 * (real + imag)
    return out


def enumerate_parities() -> tuple[int, int]:
    """Count even and odd 2-torsion points by looping over doubled characteristics in {0,1}^4."""
    even = odd = 0
    for a1, a2, b1, b2 in itertools.product((0, 1), repeat=4):
        if (a1 * b1 + a2 * b2) % 2:
            odd += 1
        else:
            even += 1
    return even, odd


def parity_table() -> dict[tuple[int, int, int, int], int]:
    return {
        bits: (-1 if (bits[0] * bits[2] + bits[1] * bits[3]) % 2 else 1)
        for bits in itertools.product((0, 1), repeat=4)
    }


def one_variable_theta_null(tau: complex, terms: int = 30) -> complex:
    """sum_l exp(pi i l^2 tau), summed directly."""
    vals = [complex(np.exp(1j * np.pi * l * l * tau)) for l in range(-terms, terms + 1)]
    return complex(math.fsum(t.real for t in vals), math.fsum(t.imag for t in vals))
