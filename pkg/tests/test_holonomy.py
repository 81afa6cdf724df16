import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from klein_bundles.errors import NotFixedError, UsageError
from klein_bundles.holonomy import (
    FlatConnection,
    PathSpec,
    holonomy_unit_loop,
    parallel_transport,
    realness_composition,
    realness_sign,
)
from klein_bundles.picard import LineBundleClass
from klein_bundles.torus import TorusPoint

F = Fraction


def closed_form(z0, tau):
    # d s/dt = -A(1) s with A(1) = -2 pi i Im(z0)/tau, solved by hand
    return cmath.exp(2j * math.pi * z0.imag / tau)


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
def test_unit_loop_matches_hand_solution(tau):
    for z0 in (0j, 0.3 + 0.1j, 0.7 + tau / 2 * 1j, 0.5 + 0.9 * tau * 1j):
        C = FlatConnection(z0, tau)
        assert abs(parallel_transport(C, PathSpec.unit_loop()) - closed_form(z0, tau)) < 1e-9


def test_trivial_and_minus_one():
    assert abs(parallel_transport(FlatConnection(0.4, 1.0), PathSpec.unit_loop()) - 1) < 1e-9
    assert abs(parallel_transport(FlatConnection(2j, 4.0), PathSpec.unit_loop()) + 1) < 1e-9


@given(st.floats(0, 1), st.floats(0, 1), st.sampled_from([0.5, 1.0, 2.0]))
def test_connection_is_unitary(x, y, tau):
    C = FlatConnection(complex(x, y * tau), tau)
    assert abs(abs(parallel_transport(C, PathSpec.unit_loop(2000))) - 1) < 1e-12


@given(st.floats(0, 1), st.floats(0, 1))
def test_form_is_imaginary(x, y):
    C = FlatConnection(complex(x, y), 1.3)
    for v in (1, 1j, 0.3 - 0.2j):
        assert abs(C.form(v).real) < 1e-15


def test_closed_form_helper():
    C = FlatConnection(0.2 + 0.35j, 0.7)
    assert holonomy_unit_loop(C) == pytest.approx(closed_form(C.z0, 0.7))


@pytest.mark.parametrize("z0", [0.3 + 0.4j, 0.8 + 0.25j])
def test_rk2_error_quarters_when_steps_double(z0):
    C = FlatConnection(z0, 1.0)
    exact = closed_form(z0, 1.0)
    errs = [abs(parallel_transport(C, PathSpec.unit_loop(n), method="rk2") - exact) for n in (200, 400, 800)]
    for e1, e2 in zip(errs, errs[1:]):
        assert 3.5 < e1 / e2 < 4.5


def test_concatenated_halves_equal_full_loop():
    C = FlatConnection(0.1 + 0.3j, 1.0)
    first = parallel_transport(C, PathSpec.half_segment(0))
    second = parallel_transport(C, PathSpec.half_segment(0.5))
    assert abs(first * second - parallel_transport(C, PathSpec.unit_loop())) < 1e-12


def test_empty_polyline_is_identity():
    C = FlatConnection(0.2j, 1.0)
    assert parallel_transport(C, PathSpec.polyline([0.3 + 0.1j, 0.3 + 0.1j])) == 1


def test_flat_connection_requires_degree_zero():
    with pytest.raises(UsageError):
        FlatConnection.for_class(LineBundleClass(2, TorusPoint(0, 0)))


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("d", [-2, 0, 4])
def test_realness_sign(tau, d):
    for a in (F(0), F(3, 10), F(5, 7)):
        assert realness_sign(LineBundleClass(d, TorusPoint(a, 0)), tau) == 1
        assert realness_sign(LineBundleClass(d, TorusPoint(a, F(1, 2))), tau) == -1


def test_realness_sign_needs_fixed_class():
    with pytest.raises(NotFixedError):
        realness_sign(LineBundleClass(1, TorusPoint(0, 0)))
    with pytest.raises(NotFixedError):
        realness_sign(LineBundleClass(0, TorusPoint(0, F(1, 3))))


@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_sign_independent_of_scaling(c):
    # rescaling eta by c multiplies the composition by |c|^2 > 0
    Lbad = LineBundleClass(0, TorusPoint(F(1, 4), F(1, 2)))
    v = realness_composition(Lbad, 1.0, scale=c, steps=500)
    assert v.real < 0 and abs(v.imag) < 1e-9 * abs(c) ** 2


def test_bad_tau():
    with pytest.raises(UsageError):
        FlatConnection(0j, -1.0)
