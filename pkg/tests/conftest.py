from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def fractions_mod1(max_den=24):
    return st.integers(1, max_den).flatmap(lambda q: st.integers(0, q - 1).map(lambda k: Fraction(k, q)))


def grid(max_den):
    """All fractions in [0, 1) with denominator at most max_den."""
    return sorted({Fraction(k, q) for q in range(1, max_den + 1) for k in range(q)})
