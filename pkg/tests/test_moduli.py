import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import grid
from klein_bundles.errors import AmbiguityError, DomainError, ExcludedLocusError, UsageError
from klein_bundles.moduli import (
    CircleTag,
    ModuliKind,
    canonical_key,
    construct_stable_real,
    exists_stable,
    fixed_locus_delta,
    fixed_point_sign,
    key_of_atom,
    moduli_descriptor,
    pushforward_recipe,
    real_locus_in_coprime_moduli,
)
from klein_bundles.torus import TorusPoint

F = Fraction


@pytest.mark.parametrize(
    "r,d,kind,dim",
    [
        (1, 0, ModuliKind.CIRCLE, 1),
        (3, 2, ModuliKind.CIRCLE, 1),
        (2, 2, ModuliKind.TORUS_QUOTIENT, 2),
        (2, 0, ModuliKind.PUNCTURED_TORUS_QUOTIENT, 2),
        (4, 2, ModuliKind.TORUS_QUOTIENT, 2),
        (6, 4, ModuliKind.PUNCTURED_TORUS_QUOTIENT, 2),
        (3, 1, ModuliKind.EMPTY, 0),
        (4, 0, ModuliKind.EMPTY, 0),
        (6, 6, ModuliKind.EMPTY, 0),
    ],
)
def test_descriptor_kinds(r, d, kind, dim):
    M = moduli_descriptor(r, d)
    assert (M.kind, M.dimension) == (kind, dim)


def test_circle_circumference():
    assert moduli_descriptor(3, 2).parametrization["circumference"] == F(1, 3)


def test_quotient_involution_freeness():
    assert moduli_descriptor(2, 2).involution.free
    assert not moduli_descriptor(2, 0).involution.free


def test_bad_rank():
    with pytest.raises(UsageError):
        moduli_descriptor(0, 2)


@given(st.integers(1, 12), st.integers(-12, 12))
def test_existence_rule(r, d):
    assert exists_stable(r, d) == (d % 2 == 0 and math.gcd(r, d) in (1, 2))


def test_circle_keys():
    assert canonical_key(3, 2, TorusPoint(F(2, 5), 0)).key == F(1, 15)
    assert canonical_key(3, 2, TorusPoint(F(2, 5), F(1, 3))).key == F(1, 15)
    with pytest.raises(DomainError, match="obstructed"):
        canonical_key(3, 2, TorusPoint(0, F(1, 6)))
    with pytest.raises(DomainError):
        canonical_key(3, 2, TorusPoint(0, F(1, 7)))


def test_empty_type_has_no_keys():
    with pytest.raises(DomainError):
        canonical_key(4, 0, TorusPoint(0, 0))


def test_float_keys_snap_and_refuse_boundaries():
    assert canonical_key(3, 2, TorusPoint(0.2, 0.0)).key == F(1, 5)
    with pytest.raises(AmbiguityError):
        canonical_key(3, 2, TorusPoint(1e-11, 0.0))


def test_gcd2_orbits():
    k1 = canonical_key(2, 2, TorusPoint(F(1, 4), F(1, 3)))
    k2 = canonical_key(2, 2, TorusPoint(F(3, 4), F(2, 3)))
    assert k1 == k2 and len(k1.orbit) == 2


def test_punctured_quotient_excludes_real_circle():
    with pytest.raises(ExcludedLocusError):
        canonical_key(2, 0, TorusPoint(F(1, 3), 0))
    k = canonical_key(2, 0, TorusPoint(F(1, 3), F(1, 2)))
    assert k.orbit == (TorusPoint(F(1, 3), F(1, 2)),)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_key_equality_is_orbit_equality(r):
    # brute force over the grid of denominator <= 2r^2 on the unit torus
    for d in range(-4, 5, 2):
        M = moduli_descriptor(r, d)
        if M.empty or M.kind is not ModuliKind.CIRCLE:
            continue
        pts = [TorusPoint(a, 0) for a in grid(2 * r * r)]
        for p in pts:
            for q in pts:
                same = (p.a - q.a) * r % 1 == 0
                assert (canonical_key(r, d, p) == canonical_key(r, d, q)) == same


@pytest.mark.parametrize("r", [1, 3, 5])
def test_fixed_locus(r):
    locus = fixed_locus_delta(r)
    assert [c.b for c in locus.circles] == [0, F(1, 2 * r)]
    assert [c.tag for c in locus.circles] == [CircleTag.REAL, CircleTag.OBSTRUCTED]


def test_fixed_locus_rejects_even():
    with pytest.raises(UsageError):
        fixed_locus_delta(2)


def test_fixed_point_signs():
    assert fixed_point_sign(3, TorusPoint(F(1, 7), 0)) == 1
    assert fixed_point_sign(3, TorusPoint(F(1, 7), F(1, 6))) == -1
    with pytest.raises(DomainError):
        fixed_point_sign(3, TorusPoint(0, F(1, 5)))


def test_real_locus_needs_coprime():
    assert real_locus_in_coprime_moduli(1, 0).circles[1].b == F(1, 2)
    with pytest.raises(DomainError):
        real_locus_in_coprime_moduli(2, 2)


def test_construct_examples():
    assert key_of_atom(construct_stable_real(3, 2, 0).atom).key == 0
    assert key_of_atom(construct_stable_real(3, 2, F(1, 3)).atom).key == 0
    built = construct_stable_real(5, 4, 0.1)
    assert built.atom.rank == 5 and built.atom.key == pytest.approx(0.1)
    with pytest.raises(DomainError):
        construct_stable_real(3, 3)


def test_pushforward_recipe():
    rec = pushforward_recipe(3, 2)
    assert rec.covering_degree == 3 and rec.intertwines and rec.source_sign == 1
    assert rec.source.degree == 2
    with pytest.raises(DomainError):
        pushforward_recipe(2, 2)
