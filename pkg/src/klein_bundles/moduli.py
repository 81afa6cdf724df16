"""Moduli of stable real bundles of rank r and degree d, and their keys.

Stable real bundles exist only for even d with gcd(r, d) in {1, 2}.

* gcd = 1 (r odd): twisting a fixed real stable bundle by the real circle
  Pic^0(X) = R/Z is onto, with fibres the real r-torsion, so the moduli set
  is a circle of circumference 1/r.
* gcd = 2, r = 2r', d = 2d': every stable real bundle is ConjPair(F) with
  F stable of type (r', d').  Such F are points of the torus of side 1/r'
  and the moduli set is the quotient by conjugation
  delta(a, b) = (a + d'/(2r'), -b).  For odd d' this involution is free;
  for even d' the complexified real atoms (the circle b = 0) are removed
  first because ConjPair of those splits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AmbiguityError, DomainError, ExcludedLocusError, UsageError
from .bundles import RealStable
from .picard import LineBundleClass
from .holonomy import realness_sign
from .torus import TorusPoint, as_coord, is_exact, mod

#: float coordinates are snapped to rationals with at most this denominator
SNAP_DENOMINATOR = 10**6
#: float inputs closer than this to an orbit boundary are refused
BOUNDARY_TOL = 1e-9


class ModuliKind(enum.Enum):
    EMPTY = "Empty"
    CIRCLE = "Circle"
    TORUS_QUOTIENT = "TorusQuotient"
    PUNCTURED_TORUS_QUOTIENT = "PuncturedTorusQuotient"


def _check_rank(r):
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise UsageError(f"rank must be a positive integer, got {r!r}")
    return int(r)


def exists_stable(r: int, d: int) -> bool:
    r = _check_rank(r)
    return d % 2 == 0 and math.gcd(r, d) in (1, 2)


@dataclass(frozen=True)
class Involution:
    """(a, b) -> (a + shift, -b) on the torus of side ``side``."""

    shift: Fraction
    side: Fraction

    def __call__(self, p: TorusPoint) -> TorusPoint:
        return TorusPoint(mod(p.a + self.shift, self.side), mod(-p.b, self.side))

    @property
    def free(self) -> bool:
        return self.shift % self.side != 0


@dataclass(frozen=True)
class ModuliDesc:
    r: int
    d: int
    kind: ModuliKind
    dimension: int
    parametrization: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def empty(self) -> bool:
        return self.kind is ModuliKind.EMPTY

    @property
    def involution(self) -> Involution | None:
        if self.kind in (ModuliKind.TORUS_QUOTIENT, ModuliKind.PUNCTURED_TORUS_QUOTIENT):
            p = self.parametrization
            return Involution(p["involution_shift"], p["side"])
        return None


def moduli_descriptor(r: int, d: int) -> ModuliDesc:
    r = _check_rank(r)
    if not exists_stable(r, d):
        reason = "odd degree" if d % 2 else f"gcd(r, d) = {math.gcd(r, d)}"
        return ModuliDesc(r, d, ModuliKind.EMPTY, 0, {"reason": reason})
    if math.gcd(r, d) == 1:
        return ModuliDesc(r, d, ModuliKind.CIRCLE, 1, {"circumference": Fraction(1, r)})
    rp, dp = r // 2, d // 2
    side = Fraction(1, rp)
    shift = Fraction(dp, 2 * rp) % side
    params = {
        "side": side,
        "involution_shift": shift,
        "involution": f"(a, b) -> (a + {shift}, -b) mod {side}",
        "factor": {"rank": rp, "degree": dp},
    }
    if dp % 2:
        return ModuliDesc(r, d, ModuliKind.TORUS_QUOTIENT, 2, params | {"free": True})
    params |= {"free": False, "removed": "b = 0 (complexified real stable bundles)"}
    return ModuliDesc(r, d, ModuliKind.PUNCTURED_TORUS_QUOTIENT, 2, params)


# -- keys --------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class StableClassKey:
    """Canonical key of a stable real bundle of type (r, d).

    ``key`` is a Fraction in [0, 1/r) when gcd(r, d) = 1 and the
    lexicographically least point of a conjugation orbit otherwise;
    ``orbit`` lists the whole orbit in order.
    """

    r: int
    d: int
    key: object
    orbit: tuple = ()


def _snap(x, boundaries, side):
    """Exact rational for a coordinate; refuse floats hugging a boundary."""
    if is_exact(x):
        return Fraction(x)
    x = float(x)
    for t in boundaries:
        dist = abs((x - float(t) + float(side) / 2) % float(side) - float(side) / 2)
        if 0 < dist < BOUNDARY_TOL:
            raise AmbiguityError(f"{x!r} is within {BOUNDARY_TOL} of the orbit boundary {t}")
    return Fraction(x).limit_denominator(SNAP_DENOMINATOR)


def _exact_point(point, side, half_b) -> TorusPoint:
    if not isinstance(point, TorusPoint):
        point = TorusPoint(*point)
    a = _snap(point.a, (0,), side)
    b = _snap(point.b, (0, half_b), side)
    return TorusPoint(a, b)


def canonical_key(r: int, d: int, point) -> StableClassKey:
    """Key of the stable real bundle with complex coordinate ``point``.

    gcd = 1: ``point`` is a twist parameter; it must lie on the real circle
    (b = 0 mod 1/r), and the key is a mod 1/r.  gcd = 2: ``point`` is the
    coordinate of one stable summand F of the complexification.
    """
    r = _check_rank(r)
    desc = moduli_descriptor(r, d)
    if desc.empty:
        raise DomainError(f"no stable real bundles of rank {r} and degree {d}")

    if desc.kind is ModuliKind.CIRCLE:
        side = Fraction(1, r)
        p = _exact_point(point, side, side / 2)
        b = p.b % side
        if b == side / 2:
            raise DomainError(f"{p!r} lies on the obstructed fixed circle; no real bundle has this complexification")
        if b != 0:
            raise DomainError(f"{p!r} is not conjugation-fixed modulo {r}-torsion")
        key = p.a % side
        return StableClassKey(r, d, key, (key,))

    inv = desc.involution
    side = inv.side
    p = _exact_point(point, side, side / 2)
    p = TorusPoint(p.a % side, p.b % side)
    if desc.kind is ModuliKind.PUNCTURED_TORUS_QUOTIENT and p.b == 0:
        raise ExcludedLocusError(
            f"{p!r} is on the excluded real locus: that class is a complexified real bundle, not a ConjPair atom"
        )
    orbit = tuple(sorted({p, inv(p)}))
    return StableClassKey(r, d, orbit[0], orbit)


# -- fixed loci --------------------------------------------------------------


class CircleTag(enum.Enum):
    REAL = "real"
    OBSTRUCTED = "obstructed"


@dataclass(frozen=True)
class FixedCircle:
    """The circle {(t, b) : 0 <= t < side} inside the torus of side ``side``."""

    b: Fraction
    side: Fraction
    tag: CircleTag

    def __contains__(self, p: TorusPoint) -> bool:
        return mod(p.b, self.side) == self.b


@dataclass(frozen=True)
class FixedLocus:
    side: Fraction
    circles: tuple

    def tag_of(self, p: TorusPoint) -> CircleTag | None:
        for c in self.circles:
            if p in c:
                return c.tag
        return None

    def __contains__(self, p: TorusPoint) -> bool:
        return self.tag_of(p) is not None


def fixed_locus_delta(r: int) -> FixedLocus:
    """Fixed points of conjugation on Pic^0 / Gamma_r for odd r.

    Lifting the two fixed circles b = 0 and b = 1/2 of Pic^0 and reducing
    mod 1/r gives b = 0 and b = 1/(2r), since (r - 1)/2 is an integer.
    """
    r = _check_rank(r)
    if r % 2 == 0:
        raise UsageError(f"the fixed-locus formula is stated for odd r, got {r}")
    side = Fraction(1, r)
    return FixedLocus(
        side,
        (
            FixedCircle(Fraction(0), side, CircleTag.REAL),
            FixedCircle(side / 2, side, CircleTag.OBSTRUCTED),
        ),
    )


def lift_fixed_point(r: int, p: TorusPoint) -> LineBundleClass:
    """A conjugation-fixed degree-0 class of Pic^0 mapping to ``p`` mod Gamma_r."""
    for k in range(r):
        q = TorusPoint(p.a, p.b + Fraction(k, r))
        if q.b in (0, Fraction(1, 2)):
            return LineBundleClass(0, q)
    raise DomainError(f"{p!r} is not fixed by conjugation modulo {r}-torsion")


def real_locus_in_coprime_moduli(r: int, d: int) -> FixedLocus:
    """Inside M(r, d) of the complex curve: real circle and obstructed circle."""
    r = _check_rank(r)
    if d % 2 or math.gcd(r, d) != 1:
        raise DomainError(f"({r}, {d}) is not a coprime type with even degree")
    return fixed_locus_delta(r)


def fixed_point_sign(r: int, p: TorusPoint, tau=1.0) -> int:
    """Realness sign of a delta-fixed point, computed by holonomy on a lift."""
    return realness_sign(lift_fixed_point(r, p), tau)


# -- construction ------------------------------------------------------------


@dataclass(frozen=True)
class PushforwardRecipe:
    """Source data of the base real stable bundle of type (r, d).

    The isogeny C/<r, i*tau> -> C/<1, i*tau> has degree r and intertwines
    z -> conj(z) + r/2 upstairs with z -> conj(z) + 1/2 downstairs (r odd).
    The invariant part of the pushforward of the sum of Galois translates
    of ``source`` is a stable real bundle of rank r and degree d.
    """

    r: int
    d: int
    sublattice: tuple
    covering_degree: int
    upstairs_shift: Fraction
    intertwines: bool
    source: LineBundleClass
    source_sign: int


def pushforward_recipe(r: int, d: int, tau=1.0) -> PushforwardRecipe:
    r = _check_rank(r)
    if d % 2 or math.gcd(r, d) != 1:
        raise DomainError(f"the pushforward construction needs d even and gcd(r, d) = 1, got ({r}, {d})")
    shift = Fraction(r, 2)
    # f(sigma'(z)) - sigma(f(z)) = r/2 - 1/2 must be a lattice vector
    intertwines = (shift - Fraction(1, 2)).denominator == 1
    # the upstairs curve is C/<r, i*tau>; scaling by 1/r turns it into the
    # standard model with modulus tau/r, where xi = O(d*0) has b = 0
    source = LineBundleClass(d, TorusPoint(0, 0))
    sign = realness_sign(source, float(as_coord(tau)) / r)
    return PushforwardRecipe(r, d, (r, complex(0, float(as_coord(tau)))), r, shift, intertwines, source, sign)


@dataclass(frozen=True)
class ConstructedStable:
    atom: RealStable
    recipe: PushforwardRecipe
    twist: object


def construct_stable_real(r: int, d: int, t=0, tau=1.0) -> ConstructedStable:
    """The base bundle twisted by the real degree-0 class phi(t)."""
    recipe = pushforward_recipe(r, d, tau)
    t = as_coord(t)
    return ConstructedStable(RealStable(r, d, t), recipe, t)


def key_of_atom(atom: RealStable) -> StableClassKey:
    return canonical_key(atom.rank, atom.degree, TorusPoint(atom.key, 0))
