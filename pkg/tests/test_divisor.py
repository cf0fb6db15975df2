import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theta13.divisor import (
    DivisorHandle,
    e_components,
    f_component,
    genus_of_polarization,
    hurwitz_quotient_genus,
    invariant_modulus,
    kernel_translates,
    product_components,
    product_f,
    product_g,
    product_siegel,
    theta_A,
    theta_A_batch,
    theta_A_canonical,
    theta_A_canonical_batch,
    theta_A_gradient,
    theta_AL,
    theta_AL_batch,
    theta_AL_sign,
    translate_witnesses,
    two_torsion_census,
)
from theta13.errors import SeparationFailure
from theta13.theta import ComplexCharacteristic, sample_points, zero_complex_char
from theta13.torus import (
    ZERO_CHAR,
    char_parity,
    lattice_vector,
    random_siegel,
    torus_add,
    two_torsion_points,
)
from theta13.zeros import sample_curve_points

from .conftest import random_zs
from .frozen import GENUS, KERNEL_ORDER, ON_DIVISOR_COUNT, PRODUCT_ON_COUNT


@pytest.fixture(scope="module")
def curve(Z_generic):
    return sample_curve_points(Z_generic, 20, seed=4)


class TestThetaA:
    def test_vanishes_at_origin(self, Z_random):
        for Z in Z_random:
            t = theta_A(Z, [0, 0])
            assert abs(t.value) <= t.tail_bound

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**31))
    def test_odd(self, seed):
        Z = random_siegel(np.random.default_rng(seed))
        V = sample_points(Z, 20, seed)
        a, b = theta_A_batch(Z, V), theta_A_batch(Z, -V)
        assert np.all(np.abs(a.values + b.values) <= a.bounds + b.bounds)

    def test_product_component(self, Z_identity, rng):
        for v2 in rng.normal(size=5) + 1j * rng.normal(size=5):
            t = theta_A(Z_identity, [(1 + 1j) / 2, v2])
            assert abs(t.value) <= t.tail_bound

    def test_invariant_modulus_is_periodic(self, Z_generic, rng):
        V = sample_points(Z_generic, 10, seed=3)
        W = V + lattice_vector(Z_generic, [1, -1], [0, 2])
        a = invariant_modulus(Z_generic, V, theta_A_batch(Z_generic, V).values)
        b = invariant_modulus(Z_generic, W, theta_A_batch(Z_generic, W).values)
        assert np.allclose(a, b, rtol=1e-9)


class TestCanonicalForms:
    def test_canonical_vanishes_at_origin(self, Z_generic):
        t = theta_A_canonical(Z_generic, [0, 0])
        assert abs(t.value) <= t.tail_bound

    def test_canonical_odd(self, Z_generic):
        V = sample_points(Z_generic, 20, seed=1)
        a, b = theta_A_canonical_batch(Z_generic, V), theta_A_canonical_batch(Z_generic, -V)
        assert np.all(np.abs(a.values + b.values) <= a.bounds + b.bounds)

    def test_zero_sets_agree(self, Z_generic, curve):
        V = np.array([p.v for p in curve.points])
        canon = theta_A_canonical_batch(Z_generic, V)
        scale = np.max(np.abs(theta_A_canonical_batch(Z_generic, sample_points(Z_generic, 64, 0)).values))
        assert np.max(np.abs(canon.values)) < 1e-8 * scale

    def test_al_at_zero_characteristic(self, Z_generic):
        V = sample_points(Z_generic, 5, seed=2)
        a = theta_AL_batch(Z_generic, zero_complex_char(), V).values
        b = theta_A_canonical_batch(Z_generic, V).values
        assert np.array_equal(a, b)

    def test_translation_identity(self, Z_generic, curve):
        # (theta_A = 0) is the translate by c of (theta_AL = 0)
        V = np.array([p.v for p in curve.points])
        for ch in two_torsion_points(Z_generic)[:6]:
            c = ComplexCharacteristic.from_characteristic(Z_generic, ch)
            at = theta_AL_batch(Z_generic, c, V + c.c)
            G = sample_points(Z_generic, 64, 0) + c.c
            ref = np.max(invariant_modulus(Z_generic, G, theta_AL_batch(Z_generic, c, G).values))
            assert np.max(invariant_modulus(Z_generic, V + c.c, at.values)) < 1e-8 * ref
            assert np.all(np.abs(at.values) <= at.bounds)

    def test_eigenvector_sign(self, Z_generic):
        V = sample_points(Z_generic, 10, seed=7)
        for ch in two_torsion_points(Z_generic):
            c = ComplexCharacteristic.from_characteristic(Z_generic, ch)
            a = theta_AL_batch(Z_generic, c, -V).values
            b = theta_AL_batch(Z_generic, c, V).values
            s = theta_AL_sign(ch)
            assert s == -char_parity(ch)
            assert np.max(np.abs(a - s * b)) / np.max(np.abs(b)) < 1e-9

    def test_scalar_wrappers(self, Z_generic):
        c = zero_complex_char()
        v = [0.1 + 0.2j, -0.3j]
        assert theta_AL(Z_generic, c, v).value == theta_AL_batch(Z_generic, c, [v]).values[0]


class TestCensus:
    def test_generic(self, Z_random):
        for Z in Z_random:
            res = two_torsion_census(Z)
            assert res.on_count == ON_DIVISOR_COUNT
            assert len(res.off_points) == 16 - ON_DIVISOR_COUNT
            assert ZERO_CHAR in res.on_points
            assert res.separation_ratio > 1e3
            # the empirical on-set is the set of even points
            assert all(p == 1 for p in res.on_parities())

    def test_stable_under_eps(self, Z_random):
        for Z in Z_random[:3]:
            sets = {frozenset(map(str, two_torsion_census(Z, eps).on_points)) for eps in (1e-10, 1e-12, 1e-14)}
            assert len(sets) == 1

    def test_hurwitz_surrogate(self, Z_generic):
        b = two_torsion_census(Z_generic).on_count
        assert hurwitz_quotient_genus(genus_of_polarization(1, 3), b) == 0

    def test_product_extra_points(self, Z_identity):
        # the product locus carries three extra 2-torsion zeros, all exact
        res = two_torsion_census(Z_identity)
        assert res.on_count == PRODUCT_ON_COUNT
        assert res.separation_ratio == float("inf")

    def test_low_separation_refused(self, Z_generic, monkeypatch):
        import theta13.divisor as div

        # with a huge on-threshold every point is "on" and nothing separates
        monkeypatch.setattr(div, "ON_DIVISOR_REL", 10.0)
        with pytest.raises(SeparationFailure) as exc:
            div.two_torsion_census(Z_generic)
        assert exc.value.census.on_count == 16

    def test_product_values_factor(self):
        tau1, tau2 = 0.2 + 1.1j, -0.1 + 0.9j
        Z = product_siegel(tau1, tau2)
        res = two_torsion_census(Z, strict=False)
        wants = [product_f(tau1, ch.point(Z)[:1])[0] * product_g(tau2, ch.point(Z)[1:])[0] for ch in res.characteristics]
        top = max(abs(w) for w in wants)
        for val, want in zip(res.values, wants):
            assert abs(val.value - want) < 1e-12 * top


class TestTranslates:
    def test_count_and_base(self, Z_generic):
        handles = kernel_translates(Z_generic)
        assert len(handles) == KERNEL_ORDER
        V = sample_points(Z_generic, 5, 0)
        assert np.array_equal(handles[0].evaluate(V).values, theta_A_batch(Z_generic, V).values)

    def test_handle_shift(self, Z_generic):
        h = kernel_translates(Z_generic)[4]
        v = np.array([0.2 + 0.1j, 0.3 - 0.2j])
        assert h(v).value == pytest.approx(theta_A(Z_generic, v - h.shift.v).value, rel=1e-12)

    def test_group_action(self, Z_generic):
        hs = kernel_translates(Z_generic)
        keys = {h.shift.key() for h in hs}
        for a in hs:
            for b in hs:
                assert a.then(b).shift.key() == torus_add(Z_generic, a.shift, b.shift).key()
                assert a.then(b).shift.key() in keys

    def test_witnesses(self, Z_generic, curve):
        w = translate_witnesses(Z_generic, [p.v for p in curve.points])
        assert w.best.shape == (9, 9)
        assert w.all_distinct
        # a zero of divisor i is a zero of divisor i
        base = DivisorHandle(Z_generic, kernel_translates(Z_generic)[0].shift)
        assert max(abs(base(p.v).value) for p in curve.points) < 1e-8 * curve.scale


class TestProduct:
    def test_square_lattice(self):
        rep = product_components(1j, 1j)
        assert rep.max_component_residual < 1e-10
        assert rep.off_component_min > 1e-3
        assert rep.factorization_residual < 1e-10
        assert rep.node_gradient < 1e-8
        assert rep.intersections_two_torsion
        assert len(rep.component_residuals) == 4

    def test_component_locations(self):
        tau1, tau2 = 0.3 + 1.2j, -0.2 + 0.8j
        assert f_component(tau1) == pytest.approx((1 + tau1) / 2)
        assert e_components(tau2) == pytest.approx([0, 1.5, tau2 / 2])
        assert abs(product_f(tau1, np.array([f_component(tau1)]))[0]) < 1e-14
        assert np.max(np.abs(product_g(tau2, np.array(e_components(tau2))))) < 1e-14

    def test_node_gradient(self, Z_identity):
        assert np.linalg.norm(theta_A_gradient(Z_identity, [(1 + 1j) / 2, 0])) < 1e-8

    def test_rejects_bad_tau(self):
        with pytest.raises(ValueError):
            product_components(1j, -1j)


class TestGenus:
    @pytest.mark.parametrize("d, g", sorted(GENUS.items()))
    def test_values(self, d, g):
        assert genus_of_polarization(*d) == g

    def test_invalid(self):
        with pytest.raises(ValueError):
            genus_of_polarization(2, 3)
