import numpy as np
import pytest

from theta13.divisor import MINUS_OMEGA, PLUS_OMEGA, divisor_scale, product_siegel, theta_A_batch, theta_A_gradient
from theta13.errors import BoundaryZero
from theta13.oracle import fd_gradient
from theta13.report import dumps
from theta13.zeros import (
    ComplexLine,
    Window,
    count_zeros_on_rectangle,
    locate_zeros_on_line,
    random_line,
    sample_curve_points,
    smoothness_report,
)

TAU1, TAU2 = 1j, 1j


def dist_mod(z, p, w1, w2):
    """Distance from z to p modulo the lattice w1 Z + w2 Z."""
    best = np.inf
    for a in range(-2, 3):
        for b in range(-2, 3):
            best = min(best, abs(z - p - a * w1 - b * w2))
    return best


@pytest.fixture(scope="module")
def product():
    return product_siegel(TAU1, TAU2)


def v2_line(v1=0.31 + 0.17j, corner=complex(-0.37, -0.23)):
    return ComplexLine.make([v1, 0], [0, 1], Window(corner, 3.0, TAU2.imag))


def v1_line(v2=0.41 + 0.29j, corner=complex(-0.13, -0.21)):
    return ComplexLine.make([0, v2], [1, 0], Window(corner, 1.0, TAU1.imag))


class TestGeometry:
    def test_window_validation(self):
        with pytest.raises(ValueError):
            Window(0, 0.0, 1.0)

    def test_direction_validation(self):
        with pytest.raises(ValueError):
            ComplexLine.make([0, 0], [0, 0], Window(0, 1, 1))

    def test_direction_normalised(self):
        line = ComplexLine.make([0, 0], [3, 4j], Window(0, 1, 1))
        assert np.linalg.norm(line.direction) == pytest.approx(1.0)

    def test_quadrants_tile(self):
        w = Window(1 + 1j, 2.0, 3.0)
        qs = w.quadrants(1.5 + 2j)
        assert sum(q.width * q.height for q in qs) == pytest.approx(6.0)


class TestProductCounts:
    def test_v2_line(self, product):
        assert count_zeros_on_rectangle(v2_line(), product) == 3

    def test_v1_line(self, product):
        assert count_zeros_on_rectangle(v1_line(), product) == 1

    def test_empty_window(self, product):
        line = ComplexLine.make([0.31 + 0.17j, 0], [0, 1], Window(0.6 + 0.1j, 0.3, 0.2))
        assert count_zeros_on_rectangle(line, product) == 0

    def test_v2_roots(self, product):
        res = locate_zeros_on_line(v2_line(), product)
        assert res.count == len(res.ts) == 3
        targets = [0.0, 1.5, TAU2 / 2]
        for p in targets:
            assert min(dist_mod(t, p, 3.0, TAU2) for t in res.ts) < 1e-9

    def test_v1_root(self, product):
        res = locate_zeros_on_line(v1_line(), product)
        assert len(res.ts) == 1
        assert dist_mod(res.ts[0], (1 + TAU1) / 2, 1.0, TAU1) < 1e-9

    def test_skew_tau(self):
        tau1, tau2 = 0.3 + 0.9j, -0.25 + 1.2j
        Z = product_siegel(tau1, tau2)
        line = ComplexLine.make([0.2 + 0.1j, 0], [0, 1], Window(complex(-0.37, -0.23), 3.0, tau2.imag))
        res = locate_zeros_on_line(line, Z)
        for p in (0.0, 1.5, tau2 / 2):
            assert min(dist_mod(t, p, 3.0, tau2) for t in res.ts) < 1e-9

    def test_zero_on_corner_is_jittered(self, product):
        # v2 = 0 sits exactly on the corner; the window is nudged off it
        line = v2_line(corner=0j)
        assert count_zeros_on_rectangle(line, product) == 3

    def test_boundary_zero_without_jitter_budget(self, product, monkeypatch):
        import theta13.zeros as zr

        monkeypatch.setattr(zr, "MAX_JITTER", 0)
        with pytest.raises(BoundaryZero):
            count_zeros_on_rectangle(v2_line(corner=0j), product)


class TestLocate:
    def test_residuals_and_containment(self, Z_generic):
        rng = np.random.default_rng(11)
        scale = divisor_scale(Z_generic)
        found = 0
        for _ in range(6):
            line = random_line(Z_generic, rng)
            res = locate_zeros_on_line(line, Z_generic)
            assert len(res.ts) == res.count == count_zeros_on_rectangle(line, Z_generic)
            for t, w in zip(res.ts, res.windows):
                assert w.contains(t, tol=1e-9)
            assert all(r < 1e-10 * scale for r in res.residuals)
            found += res.count
        assert found > 0

    def test_additive_under_subdivision(self, Z_generic):
        rng = np.random.default_rng(12)
        for _ in range(4):
            line = random_line(Z_generic, rng)
            total = count_zeros_on_rectangle(line, Z_generic)
            w = line.window
            split = w.corner + complex(w.width * rng.uniform(0.3, 0.7), w.height * rng.uniform(0.3, 0.7))
            parts = [count_zeros_on_rectangle(line.with_window(q), Z_generic) for q in w.quadrants(split)]
            assert all(k >= 0 for k in parts)
            assert sum(parts) == total


@pytest.fixture(scope="module")
def sample(Z_generic):
    return sample_curve_points(Z_generic, 100, seed=0)


class TestSampling:
    def test_size_and_residuals(self, sample):
        assert len(sample) == 100
        assert len(sample.residuals) == len(sample.gradient_norms) == 100
        assert max(sample.residuals) < 1e-8 * sample.scale

    def test_symmetric_curve(self, Z_generic, sample):
        V = np.array([p.v for p in sample.points])
        assert np.max(np.abs(theta_A_batch(Z_generic, -V).values)) < 1e-8 * sample.scale

    def test_reduced(self, sample):
        for p in sample.points:
            assert np.all((p.x >= 0) & (p.x < 1)) and np.all((p.y >= 0) & (p.y < 1))

    def test_deterministic(self, Z_generic, sample):
        again = sample_curve_points(Z_generic, 100, seed=0)
        enc = lambda s: dumps([[p.x, p.y] for p in s.points] + [s.residuals])
        assert enc(again) == enc(sample)

    def test_gradients_match_finite_differences(self, Z_generic, sample):
        for p, g in list(zip(sample.points, sample.gradient_norms))[:10]:
            fd = fd_gradient(Z_generic, MINUS_OMEGA, p.v) - fd_gradient(Z_generic, PLUS_OMEGA, p.v)
            assert abs(np.linalg.norm(fd) - g) < 1e-5 * g

    def test_rejects_empty(self, Z_generic):
        with pytest.raises(ValueError):
            sample_curve_points(Z_generic, 0)


class TestSmoothness:
    def test_generic(self, Z_generic):
        rep = smoothness_report(Z_generic, n=50, seed=1)
        assert rep.n == 50
        assert rep.min_gradient <= rep.mean_gradient <= rep.max_gradient
        assert rep.generic

    def test_product_node(self, product):
        assert np.linalg.norm(theta_A_gradient(product, [(1 + TAU1) / 2, 0])) < 1e-8
