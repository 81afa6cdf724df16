from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import fractions_mod1, grid
from oracles import brute_isomorphic
from klein_bundles.bundles import (
    BundleDesc,
    ConjPair,
    Ext2,
    Flavor,
    Line,
    Rank2Stratum,
    RealLine,
    RealStable,
    SelfExt,
    Stability,
    StableAtom,
    V,
    W,
    classify_rank2,
    complexify,
    is_isomorphic,
    normalize_desc,
    self_extension,
    stability,
)
from klein_bundles.errors import DomainError, NotClassifiedError, UsageError
from klein_bundles.picard import LineBundleClass, sigma_conj
from klein_bundles.torus import TorusPoint

F = Fraction


def L(d, a=0, b=0):
    return LineBundleClass(d, TorusPoint(a, b))


coords = fractions_mod1(12)
lines = st.builds(L, st.integers(-4, 4), coords, coords)
real_lines = st.builds(lambda n, a: L(2 * n, a, 0), st.integers(-2, 2), coords)

real_atoms = st.one_of(
    real_lines.map(RealLine),
    real_lines.map(SelfExt),
    lines.map(lambda x: ConjPair(Line(x))),
    st.builds(lambda a: RealStable(3, 2, a), coords),
)
real_descs = st.lists(real_atoms, min_size=1, max_size=3).map(lambda xs: BundleDesc.real(*xs))


def test_v_of_l_and_conjugate_agree():
    x = L(1, F(1, 5), F(3, 10))
    assert is_isomorphic(V(x), V(sigma_conj(x)))
    assert not is_isomorphic(V(x), V(L(1, F(1, 5), F(1, 10))))


def test_v_of_real_line_splits():
    x = L(0, F(2, 7), 0)
    assert is_isomorphic(V(x), BundleDesc.real(RealLine(x), RealLine(x)))
    assert normalize_desc(V(x)).atoms == (RealLine(x), RealLine(x))


def test_v_of_fixed_not_real_stays_stable():
    x = L(0, F(3, 10), F(1, 2))
    assert stability(V(x)) is Stability.STABLE
    assert classify_rank2(V(x)).stratum is Rank2Stratum.STABLE_20


def test_w_only_for_real_xi():
    with pytest.raises(DomainError):
        W(L(0, 0, F(1, 2)))
    assert not is_isomorphic(W(L(0, F(1, 3))), W(L(0, F(2, 3))))


def test_higher_self_extensions_not_classified():
    with pytest.raises(NotClassifiedError):
        self_extension(L(0), 3)


def test_stable_atom_needs_coprime_type():
    with pytest.raises(DomainError):
        StableAtom(2, 2, TorusPoint(0, 0))


def test_real_line_requires_real_class():
    with pytest.raises(DomainError):
        RealLine(L(1))


def test_real_stable_needs_even_degree():
    with pytest.raises(DomainError):
        RealStable(3, 1, 0)


def test_conj_of_stable_atom():
    F1 = StableAtom(2, 1, TorusPoint(F(1, 8), F(1, 8)))
    assert F1.conj() == StableAtom(2, 1, TorusPoint(F(3, 8), F(3, 8)))
    assert F1.conj().conj() == F1


def test_stability_examples():
    assert stability(BundleDesc.real(RealLine(L(0)), RealLine(L(2, 0, 0)))) is Stability.UNSTABLE
    assert stability(W(L(0))) is Stability.SEMISTABLE_NOT_POLYSTABLE
    assert stability(BundleDesc.real(RealLine(L(0)), RealLine(L(0, F(1, 2))))) is Stability.POLYSTABLE_NOT_STABLE
    assert stability(V(L(1))) is Stability.STABLE
    assert stability(BundleDesc.real(RealStable(3, 2, 0))) is Stability.STABLE


def test_mixed_flavors_rejected():
    with pytest.raises(UsageError):
        is_isomorphic(V(L(1)), BundleDesc.complex(Line(L(1))))
    with pytest.raises(UsageError):
        BundleDesc.real(Line(L(0)))


def test_complexify_of_v():
    x = L(1, F(1, 5), F(1, 3))
    C = complexify(V(x))
    assert C.flavor is Flavor.COMPLEX
    assert sorted(a.line for a in C.atoms) == sorted([x, sigma_conj(x)])


def test_rank2_twist_reduces_degree():
    x = L(5, F(1, 5), F(1, 3))
    c = classify_rank2(V(x))
    assert c.twist == 2 and c.untwisted.degree == 2
    assert c.stratum is Rank2Stratum.STABLE_22


def test_rank2_strata():
    assert classify_rank2(W(L(0, F(1, 3)))).stratum is Rank2Stratum.SELF_EXT
    split = BundleDesc.real(RealLine(L(0)), RealLine(L(2, F(1, 4))))
    assert classify_rank2(split).stratum is Rank2Stratum.SPLIT_UNSTABLE
    poly = BundleDesc.real(RealLine(L(0, F(2, 5))), RealLine(L(0, F(1, 5))))
    c = classify_rank2(poly)
    assert c.stratum is Rank2Stratum.POLY_NOT_STABLE and c.params == (F(1, 5), F(2, 5))


def test_rank2_needs_rank_two():
    with pytest.raises(UsageError):
        classify_rank2(BundleDesc.real(RealStable(3, 2, 0)))


@given(real_descs)
def test_normalize_idempotent_and_preserves_invariants(D):
    N = normalize_desc(D)
    assert normalize_desc(N) == N
    assert (N.rank, N.degree) == (D.rank, D.degree)
    assert is_isomorphic(D, N)


@given(real_descs, real_descs)
def test_isomorphism_matches_brute_force(D1, D2):
    assert is_isomorphic(D1, D2) == brute_isomorphic(D1, D2)


@given(real_descs)
def test_isomorphic_to_conjugate_twist(D):
    flipped = tuple(ConjPair(a.atom.conj()) if isinstance(a, ConjPair) else a for a in reversed(D.atoms))
    assert is_isomorphic(D, BundleDesc.real(*flipped))


@given(lines, lines)
def test_v_isomorphism_criterion(x, y):
    assert is_isomorphic(V(x), V(y)) == (y in (x, sigma_conj(x)))


@given(real_lines, real_lines)
def test_w_isomorphism_criterion(x, y):
    assert is_isomorphic(W(x), W(y)) == (x == y)


@given(real_descs)
def test_stability_agrees_with_slopes(D):
    slopes = {Fraction(a.degree, a.rank) for a in D.atoms}
    s = stability(D)
    assert (s is Stability.UNSTABLE) == (len(slopes) > 1)


def test_conj_pair_of_ext_is_semistable_only():
    D = BundleDesc.real(ConjPair(Ext2(L(0, F(1, 3), F(1, 4)))))
    assert stability(D) is Stability.SEMISTABLE_NOT_POLYSTABLE
    assert D.rank == 4


def test_small_grid_partition():
    # every pair of V(L), L of degree 0 on the 1/4 grid
    xs = [L(0, a, b) for a in grid(4) for b in grid(4)]
    for x in xs:
        for y in xs:
            assert is_isomorphic(V(x), V(y)) == brute_isomorphic(V(x), V(y))
