"""Line bundle classes on the complexified Klein bottle.

A class of degree d is stored as the point p of Pic^0 with
L = O(d*0) (x) phi(p), where phi(z) = O(z - 0).  In these coordinates the
conjugation L -> sigma^* conj(L) reads

    (d, (a, b)) -> (d, (a + d/2, -b)),

since sigma^* conj(phi(z)) = phi(conj z) and O(d*0) goes to O(d*(1/2)).
For even d the fixed classes are the two circles b = 0 (complexified real
bundles) and b = 1/2 (fixed but obstructed); for odd d nothing is fixed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AmbiguityError, UsageError
from .torus import ORIGIN, TorusPoint, as_coord, mod

#: float points closer than this to a fixed circle count as on it
FIXED_TOL = 1e-9
#: float points between FIXED_TOL and this distance are ambiguous
AMBIGUITY_BAND = 1e-7


@dataclass(frozen=True, order=True)
class LineBundleClass:
    degree: int
    point: TorusPoint = ORIGIN
    tau: object = field(default=None, compare=False)  # only checked for mismatches

    def __post_init__(self):
        if isinstance(self.degree, bool) or int(self.degree) != self.degree:
            raise UsageError(f"degree must be an integer, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))
        if not isinstance(self.point, TorusPoint):
            object.__setattr__(self, "point", TorusPoint(*self.point))
        if self.tau is not None:
            object.__setattr__(self, "tau", as_coord(self.tau))

    @classmethod
    def of(cls, degree: int, a=0, b=0, tau=None) -> LineBundleClass:
        return cls(degree, TorusPoint(a, b), tau)

    @property
    def a(self):
        return self.point.a

    @property
    def b(self):
        return self.point.b

    def __repr__(self):
        return f"LineBundleClass(d={self.degree}, a={self.a}, b={self.b})"


def _common_tau(L1: LineBundleClass, L2: LineBundleClass):
    if L1.tau is not None and L2.tau is not None and L1.tau != L2.tau:
        raise UsageError(f"line bundles live on different curves (tau={L1.tau} vs {L2.tau})")
    return L1.tau if L1.tau is not None else L2.tau


def tensor(L1: LineBundleClass, L2: LineBundleClass) -> LineBundleClass:
    tau = _common_tau(L1, L2)
    return LineBundleClass(L1.degree + L2.degree, L1.point + L2.point, tau)


def dual(L: LineBundleClass) -> LineBundleClass:
    return LineBundleClass(-L.degree, -L.point, L.tau)


def power(L: LineBundleClass, n: int) -> LineBundleClass:
    return LineBundleClass(n * L.degree, n * L.point, L.tau)


def sigma_conj(L: LineBundleClass) -> LineBundleClass:
    """The class of sigma^* conj(L)."""
    shift = Fraction(L.degree, 2) if L.point.exact else L.degree / 2
    return LineBundleClass(L.degree, TorusPoint(L.a + shift, -L.b), L.tau)


def real_reference(n: int = 1) -> LineBundleClass:
    """O(n*D) with D = 0 + sigma(0), a real line bundle of degree 2n."""
    return LineBundleClass(2 * n, TorusPoint(Fraction(n, 2), 0))


def untwist_even(L: LineBundleClass) -> LineBundleClass:
    """Degree-0 class L (x) O(-n*D) for L of even degree 2n."""
    if L.degree % 2:
        raise UsageError("only even-degree classes can be untwisted by the real reference")
    ref = real_reference(L.degree // 2)
    return LineBundleClass(0, L.point - ref.point, L.tau)


class FixedClassKind(enum.Enum):
    NOT_FIXED = "NotFixed"
    REALIZABLE_REAL = "RealizableReal"
    FIXED_NOT_REAL = "FixedNotReal"

    @property
    def fixed(self) -> bool:
        return self is not FixedClassKind.NOT_FIXED


def _circle_distance(x, target) -> float:
    d = float(mod(x - target))
    return min(d, 1.0 - d)


def classify_fixed(L: LineBundleClass, tol: float = FIXED_TOL) -> FixedClassKind:
    """Decide whether sigma^* conj(L) = L and, if so, whether L is real.

    Exact inputs are decided exactly.  Float inputs within ``tol`` of a
    fixed circle are put on it; inside the band (tol, AMBIGUITY_BAND) an
    AmbiguityError is raised rather than guessing.
    """
    if L.degree % 2:
        return FixedClassKind.NOT_FIXED
    b = L.b
    if L.point.exact:
        if b == 0:
            return FixedClassKind.REALIZABLE_REAL
        if b == Fraction(1, 2):
            return FixedClassKind.FIXED_NOT_REAL
        return FixedClassKind.NOT_FIXED

    band = max(AMBIGUITY_BAND, tol)
    for target, kind in ((0.0, FixedClassKind.REALIZABLE_REAL), (0.5, FixedClassKind.FIXED_NOT_REAL)):
        dist = _circle_distance(b, target)
        if dist <= tol:
            return kind
        if dist < band:
            raise AmbiguityError(f"b={b!r} is {dist:.3g} from the fixed circle b={target}; ambiguous at tolerance {tol}")
    return FixedClassKind.NOT_FIXED


def is_real(L: LineBundleClass) -> bool:
    return classify_fixed(L) is FixedClassKind.REALIZABLE_REAL


def real_line_bundle_exists(d: int) -> bool:
    return d % 2 == 0


@dataclass(frozen=True)
class TorsionSubgroup:
    order: int
    real_only: bool
    elements: frozenset

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))


def torsion_subgroup(r: int, real_only: bool = False) -> TorsionSubgroup:
    """The r-torsion of Pic^0, or its intersection with the real circle."""
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise UsageError(f"torsion order must be a positive integer, got {r!r}")
    r = int(r)
    if real_only:
        elements = frozenset(TorusPoint(Fraction(k, r), 0) for k in range(r))
    else:
        elements = frozenset(TorusPoint(Fraction(m, r), Fraction(n, r)) for m in range(r) for n in range(r))
    return TorsionSubgroup(r, bool(real_only), elements)
