"""Arithmetic on the torus C/<1, i*tau> and its real structure.

A point is stored by its coordinates (a, b) with z = a + b*tau*i, both
reduced into [0, 1).  Storing b in units of tau makes every involution and
torsion computation independent of tau; tau only matters for the holonomy
kernel.

Coordinates are either exact (``fractions.Fraction``) or floats.  Exact
points never mix with float comparisons: anything that decides a
classification should be fed Fractions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import UsageError

Coord = Union[Fraction, float]

#: float coordinates this close to 0 or 1 are snapped to 0
SNAP_EPS = 1e-12


class Backing(enum.Enum):
    EXACT = "ExactRational"
    FLOAT = "Float"


class Convention(enum.Enum):
    SIGMA_STANDARD = "SigmaStandard"  # z -> conj(z) + 1/2
    SIGMA_PRIME = "SigmaPrime"  # z -> -conj(z) + i*tau/2


def is_exact(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def as_coord(x) -> Coord:
    """Coerce to a Fraction when exact, a float otherwise."""
    if isinstance(x, bool):
        raise UsageError("booleans are not coordinates")
    if is_exact(x):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            pass
        try:
            x = float(x)
        except ValueError:
            raise UsageError(f"cannot parse coordinate {x!r}") from None
    x = float(x)
    if not math.isfinite(x):
        raise UsageError(f"non-finite coordinate {x!r}")
    return x


def mod(x: Coord, m: Coord = 1) -> Coord:
    """Reduce ``x`` into [0, m), snapping float noise at the ends to 0."""
    if is_exact(x) and is_exact(m):
        return Fraction(x) % Fraction(m)
    x, m = float(x), float(m)
    r = x % m
    if r < SNAP_EPS * m or m - r < SNAP_EPS * m:
        return 0.0
    return r


@dataclass(frozen=True)
class KleinBottle:
    """The real curve (C/<1, i*tau>, sigma) for a modulus tau > 0."""

    tau: Coord = 1
    convention: Convention = Convention.SIGMA_STANDARD

    def __post_init__(self):
        tau = as_coord(self.tau)
        if not tau > 0:
            raise UsageError(f"tau must be positive, got {self.tau!r}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "convention", Convention(self.convention))

    def require_standard(self):
        if self.convention is not Convention.SIGMA_STANDARD:
            raise UsageError("only the SigmaStandard model is supported here; use normal_form_klein first")
        return self


@dataclass(frozen=True, order=True)
class TorusPoint:
    """Canonical coordinates of a point of C/<1, i*tau>.

    Construction always reduces ``a`` and ``b`` into [0, 1), so two
    TorusPoints compare equal exactly when they are the same point.
    """

    a: Coord = Fraction(0)
    b: Coord = Fraction(0)

    def __post_init__(self):
        a, b = as_coord(self.a), as_coord(self.b)
        # mixed input degrades to float, never the other way
        if is_exact(a) != is_exact(b):
            a, b = float(a), float(b)
        object.__setattr__(self, "a", mod(a))
        object.__setattr__(self, "b", mod(b))

    @property
    def backing(self) -> Backing:
        return Backing.EXACT if is_exact(self.a) else Backing.FLOAT

    @property
    def exact(self) -> bool:
        return self.backing is Backing.EXACT

    def __add__(self, other: TorusPoint) -> TorusPoint:
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return TorusPoint(self.a + other.a, self.b + other.b)

    def __neg__(self) -> TorusPoint:
        return TorusPoint(-self.a, -self.b)

    def __sub__(self, other: TorusPoint) -> TorusPoint:
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return self + (-other)

    def __mul__(self, n: int) -> TorusPoint:
        if not isinstance(n, int):
            return NotImplemented
        return TorusPoint(n * self.a, n * self.b)

    __rmul__ = __mul__

    def to_complex(self, tau) -> complex:
        return complex(float(self.a), float(self.b) * float(tau))

    def as_float(self) -> TorusPoint:
        return TorusPoint(float(self.a), float(self.b))

    def __repr__(self):
        return f"TorusPoint({self.a}, {self.b})"


ORIGIN = TorusPoint(0, 0)


def normalize(z_re, z_im, X: KleinBottle) -> TorusPoint:
    """Canonical representative of z = z_re + i*z_im modulo the lattice.

    Exact when ``z_re``, ``z_im`` and ``X.tau`` are all rational.
    """
    re, im = as_coord(z_re), as_coord(z_im)
    b = im / X.tau
    if is_exact(re) and is_exact(b):
        return TorusPoint(re, b)
    return TorusPoint(float(re), float(b))


def sigma_point(p: TorusPoint, X: KleinBottle | None = None) -> TorusPoint:
    """Image of ``p`` under z -> conj(z) + 1/2."""
    if X is not None:
        X.require_standard()
    half = Fraction(1, 2) if p.exact else 0.5
    return TorusPoint(p.a + half, -p.b)


@dataclass(frozen=True)
class IsomorphismNote:
    """Record of the biholomorphism between an input model and its normal form.

    The map sends w to ``multiplier * w`` on the covering plane.
    """

    multiplier: complex
    description: str

    def apply(self, w: complex) -> complex:
        return self.multiplier * w


def normal_form_klein(X: KleinBottle) -> tuple[KleinBottle, IsomorphismNote]:
    """Return the SigmaStandard model isomorphic to ``X``.

    (C/<1, i*tau>, -conj(z) + i*tau/2) is carried onto
    (C/<1, i/tau>, conj(z) + 1/2) by w -> -i*w/tau.
    """
    if X.convention is Convention.SIGMA_STANDARD:
        return X, IsomorphismNote(1 + 0j, "identity")
    tau = X.tau
    new_tau = 1 / tau if is_exact(tau) else 1.0 / tau
    note = IsomorphismNote(
        complex(0.0, -1.0 / float(tau)),
        f"w -> -i*w/tau with tau={tau}",
    )
    return KleinBottle(new_tau, Convention.SIGMA_STANDARD), note
