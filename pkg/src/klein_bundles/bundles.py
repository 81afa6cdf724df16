"""Descriptors for direct sums of indecomposable bundles.

Complex atoms live on the complexified curve:

* ``Line(L)``            a line bundle,
* ``Ext2(xi)``           the nontrivial self-extension of xi (rank 2),
* ``StableAtom(r, d, p)`` a stable bundle with gcd(r, d) = 1.

A stable atom is a point p of Pic^0 / Gamma_r, i.e. coordinates in
[0, 1/r)^2, measured from a base bundle E0(r, d); E ~ E0 (x) phi(p).  For
even d the base is real (the pushforward construction of ``moduli``), for
odd d it is the bundle with determinant O(d*0).  Conjugation then acts by

    (a, b) -> (a + d/(2r), -b)  mod 1/r,

which for r = 1 is the line bundle rule of ``picard``.

Real atoms are ``RealLine``, ``SelfExt`` (the rank-2 W(xi)), ``RealStable``
(coprime rank and even degree, keyed by a point of the real circle mod 1/r)
and ``ConjPair(F)`` (the real bundle underlying F + sigma^* conj(F)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, NotClassifiedError, UsageError
from .picard import (
    FIXED_TOL,
    FixedClassKind,
    LineBundleClass,
    classify_fixed,
    real_reference,
    sigma_conj,
    tensor,
)
from .torus import TorusPoint, as_coord, is_exact, mod


class Flavor(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


def _half(x):
    return Fraction(1, 2) if is_exact(x) else 0.5


def _side(r: int, like) -> Fraction | float:
    return Fraction(1, r) if is_exact(like) else 1.0 / r


def _near_zero_mod(x, m, tol=FIXED_TOL) -> bool:
    """x == 0 mod m, exactly for Fractions, within tol (in units of m) for floats."""
    if is_exact(x) and is_exact(m):
        return Fraction(x) % Fraction(m) == 0
    y = float(x) / float(m) % 1.0
    return min(y, 1.0 - y) <= tol


# -- complex atoms -----------------------------------------------------------


@dataclass(frozen=True)
class Line:
    line: LineBundleClass

    rank = 1
    flavor = Flavor.COMPLEX
    stable = True
    polystable = True

    @property
    def degree(self) -> int:
        return self.line.degree

    def conj(self) -> Line:
        return Line(sigma_conj(self.line))

    def twist(self, M: LineBundleClass) -> Line:
        return Line(tensor(self.line, M))

    def sort_key(self):
        return (0, 1, self.degree, self.line.a, self.line.b)


@dataclass(frozen=True)
class Ext2:
    """Nontrivial extension of xi by xi; unique up to isomorphism."""

    xi: LineBundleClass

    rank = 2
    flavor = Flavor.COMPLEX
    stable = False
    polystable = False

    @property
    def degree(self) -> int:
        return 2 * self.xi.degree

    def conj(self) -> Ext2:
        return Ext2(sigma_conj(self.xi))

    def twist(self, M: LineBundleClass) -> Ext2:
        return Ext2(tensor(self.xi, M))

    def sort_key(self):
        return (1, 2, self.degree, self.xi.a, self.xi.b)


def self_extension(xi: LineBundleClass, rank: int = 2) -> Ext2:
    if rank != 2:
        raise NotClassifiedError(f"iterated self-extensions of rank {rank} are not classified here")
    return Ext2(xi)


@dataclass(frozen=True)
class StableAtom:
    rank: int
    degree: int
    point: TorusPoint

    flavor = Flavor.COMPLEX
    stable = True
    polystable = True

    def __post_init__(self):
        r, d = int(self.rank), int(self.degree)
        if r < 1:
            raise UsageError(f"rank must be positive, got {self.rank!r}")
        if math.gcd(r, d) != 1:
            raise DomainError(f"no stable bundle of rank {r} and degree {d}: gcd is {math.gcd(r, d)}")
        p = self.point if isinstance(self.point, TorusPoint) else TorusPoint(*self.point)
        side = _side(r, p.a)
        object.__setattr__(self, "rank", r)
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "point", TorusPoint(mod(p.a, side), mod(p.b, side)))

    def conj(self) -> StableAtom:
        p = self.point
        shift = Fraction(self.degree, 2 * self.rank) if p.exact else self.degree / (2 * self.rank)
        return StableAtom(self.rank, self.degree, TorusPoint(p.a + shift, -p.b))

    def twist(self, M: LineBundleClass) -> StableAtom:
        if self.rank == 1:
            return StableAtom(1, self.degree + M.degree, self.point + M.point)
        raise NotClassifiedError("twisting higher-rank stable atoms would change the base-point convention")

    def sort_key(self):
        return (2, self.rank, self.degree, self.point.a, self.point.b)


ComplexAtom = Union[Line, Ext2, StableAtom]


# -- real atoms --------------------------------------------------------------


@dataclass(frozen=True)
class RealLine:
    line: LineBundleClass

    rank = 1
    flavor = Flavor.REAL
    stable = True
    polystable = True

    def __post_init__(self):
        if classify_fixed(self.line) is not FixedClassKind.REALIZABLE_REAL:
            raise DomainError(f"{self.line!r} is not the complexification of a real line bundle")

    @property
    def degree(self) -> int:
        return self.line.degree

    def twist(self, M: LineBundleClass) -> RealLine:
        return RealLine(tensor(self.line, M))

    def sort_key(self):
        return (10, 1, self.degree, self.line.a, self.line.b)


@dataclass(frozen=True)
class SelfExt:
    """W(xi): the nontrivial extension of the real line bundle xi by itself."""

    xi: LineBundleClass

    rank = 2
    flavor = Flavor.REAL
    stable = False
    polystable = False

    def __post_init__(self):
        if classify_fixed(self.xi) is not FixedClassKind.REALIZABLE_REAL:
            raise DomainError(f"W(xi) needs a real line bundle xi, got {self.xi!r}")

    @property
    def degree(self) -> int:
        return 2 * self.xi.degree

    def twist(self, M: LineBundleClass) -> SelfExt:
        return SelfExt(tensor(self.xi, M))

    def sort_key(self):
        return (11, 2, self.degree, self.xi.a, self.xi.b)


@dataclass(frozen=True)
class RealStable:
    rank: int
    degree: int
    key: object = Fraction(0)

    flavor = Flavor.REAL
    stable = True
    polystable = True

    def __post_init__(self):
        r, d = int(self.rank), int(self.degree)
        if r < 1:
            raise UsageError(f"rank must be positive, got {self.rank!r}")
        if d % 2:
            raise DomainError(f"real bundles have even degree, got {d}")
        if math.gcd(r, d) != 1:
            raise DomainError(f"real stable atoms need gcd(rank, degree) = 1, got ({r}, {d})")
        key = as_coord(self.key)
        object.__setattr__(self, "rank", r)
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "key", mod(key, _side(r, key)))

    def sort_key(self):
        return (12, self.rank, self.degree, self.key, 0)


@dataclass(frozen=True)
class ConjPair:
    """The real bundle underlying F + sigma^* conj(F)."""

    atom: ComplexAtom

    flavor = Flavor.REAL

    def __post_init__(self):
        if getattr(self.atom, "flavor", None) is not Flavor.COMPLEX:
            raise UsageError(f"ConjPair wraps a complex atom, got {self.atom!r}")

    @property
    def rank(self) -> int:
        return 2 * self.atom.rank

    @property
    def degree(self) -> int:
        return 2 * self.atom.degree

    @property
    def stable(self) -> bool:
        return self.atom.stable

    @property
    def polystable(self) -> bool:
        return self.atom.polystable

    def twist(self, M: LineBundleClass) -> ConjPair:
        return ConjPair(self.atom.twist(M))

    def sort_key(self):
        return (13,) + self.atom.sort_key()


RealAtom = Union[RealLine, SelfExt, RealStable, ConjPair]
Atom = Union[ComplexAtom, RealAtom]


# -- descriptors -------------------------------------------------------------


@dataclass(frozen=True)
class BundleDesc:
    atoms: tuple
    flavor: Flavor = Flavor.REAL

    def __post_init__(self):
        atoms = tuple(self.atoms)
        flavor = Flavor(self.flavor)
        if not atoms:
            raise UsageError("a bundle descriptor needs at least one atom")
        for atom in atoms:
            if getattr(atom, "flavor", None) is not flavor:
                raise UsageError(f"{atom!r} is not a {flavor.value} atom")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "flavor", flavor)

    @classmethod
    def real(cls, *atoms) -> BundleDesc:
        return cls(atoms, Flavor.REAL)

    @classmethod
    def complex(cls, *atoms) -> BundleDesc:
        return cls(atoms, Flavor.COMPLEX)

    @property
    def rank(self) -> int:
        return sum(a.rank for a in self.atoms)

    @property
    def degree(self) -> int:
        return sum(a.degree for a in self.atoms)

    def __add__(self, other: BundleDesc) -> BundleDesc:
        if other.flavor is not self.flavor:
            raise UsageError("cannot add descriptors of different flavors")
        return BundleDesc(self.atoms + other.atoms, self.flavor)


def V(L: LineBundleClass) -> BundleDesc:
    """V(L): the real rank-2 bundle with complexification L + sigma^* conj(L)."""
    return BundleDesc.real(ConjPair(Line(L)))


def W(xi: LineBundleClass) -> BundleDesc:
    return BundleDesc.real(SelfExt(xi))


def slope(D: BundleDesc) -> Fraction:
    return Fraction(D.degree, D.rank)


def atom_slope(atom) -> Fraction:
    return Fraction(atom.degree, atom.rank)


# -- normal form -------------------------------------------------------------


def _canonical_complex(atom: ComplexAtom) -> ComplexAtom:
    if isinstance(atom, StableAtom) and atom.rank == 1:
        return Line(LineBundleClass(atom.degree, atom.point))
    return atom


def _split_real_pair(F: ComplexAtom):
    """Real atoms R with F = R (x) C when F is a complexified real atom, else None."""
    if isinstance(F, Line):
        if F.degree % 2 == 0 and classify_fixed(F.line) is FixedClassKind.REALIZABLE_REAL:
            return RealLine(F.line)
    elif isinstance(F, Ext2):
        if F.xi.degree % 2 == 0 and classify_fixed(F.xi) is FixedClassKind.REALIZABLE_REAL:
            return SelfExt(F.xi)
    elif isinstance(F, StableAtom):
        if F.degree % 2 == 0 and _near_zero_mod(F.point.b, _side(F.rank, F.point.b)):
            return RealStable(F.rank, F.degree, F.point.a)
    return None


def _normalize_atom(atom) -> list:
    if isinstance(atom, RealStable) and atom.rank == 1:
        return [RealLine(LineBundleClass(atom.degree, TorusPoint(atom.key, 0)))]
    if isinstance(atom, ConjPair):
        F = _canonical_complex(atom.atom)
        real = _split_real_pair(F)
        if real is not None:
            return [real, real]
        return [ConjPair(min(F, F.conj(), key=lambda x: x.sort_key()))]
    if atom.flavor is Flavor.COMPLEX:
        return [_canonical_complex(atom)]
    return [atom]


def normalize_desc(D: BundleDesc) -> BundleDesc:
    """Canonical form: complexified-real pairs split, atoms sorted.

    Idempotent, and preserves rank, degree and isomorphism class.
    """
    atoms = [b for a in D.atoms for b in _normalize_atom(a)]
    atoms.sort(key=lambda a: a.sort_key())
    return BundleDesc(tuple(atoms), D.flavor)


def is_isomorphic(D1: BundleDesc, D2: BundleDesc) -> bool:
    if D1.flavor is not D2.flavor:
        raise UsageError("cannot compare real and complex descriptors")
    return normalize_desc(D1).atoms == normalize_desc(D2).atoms


# -- stability ---------------------------------------------------------------


class Stability(enum.Enum):
    STABLE = "Stable"
    POLYSTABLE_NOT_STABLE = "PolystableNotStable"
    SEMISTABLE_NOT_POLYSTABLE = "SemistableNotPolystable"
    UNSTABLE = "Unstable"


def stability(D: BundleDesc) -> Stability:
    """Stability type of a direct sum of the atoms above.

    Every atom is semistable, so the sum is semistable exactly when all
    slopes agree; it is polystable when every atom is, and stable only
    when it is a single stable atom.
    """
    N = normalize_desc(D)
    slopes = {atom_slope(a) for a in N.atoms}
    if len(slopes) > 1:
        return Stability.UNSTABLE
    if not all(a.polystable for a in N.atoms):
        return Stability.SEMISTABLE_NOT_POLYSTABLE
    if len(N.atoms) == 1 and N.atoms[0].stable:
        return Stability.STABLE
    return Stability.POLYSTABLE_NOT_STABLE


# -- complexification --------------------------------------------------------


def _complexify_atom(atom) -> list:
    if isinstance(atom, RealLine):
        return [Line(atom.line)]
    if isinstance(atom, SelfExt):
        return [Ext2(atom.xi)]
    if isinstance(atom, RealStable):
        return [StableAtom(atom.rank, atom.degree, TorusPoint(atom.key, _zero_like(atom.key)))]
    if isinstance(atom, ConjPair):
        return [atom.atom, atom.atom.conj()]
    raise UsageError(f"not a real atom: {atom!r}")


def _zero_like(x):
    return Fraction(0) if is_exact(x) else 0.0


def complexify(D: BundleDesc) -> BundleDesc:
    """D (x)_R C, as a normalized complex descriptor of the same rank and degree."""
    if D.flavor is not Flavor.REAL:
        raise UsageError("complexify expects a real descriptor")
    atoms = [c for a in D.atoms for c in _complexify_atom(a)]
    return normalize_desc(BundleDesc(tuple(atoms), Flavor.COMPLEX))


# -- rank two ----------------------------------------------------------------


class Rank2Stratum(enum.Enum):
    STABLE_22 = "Stable22"
    STABLE_20 = "Stable20"
    POLY_NOT_STABLE = "PolyNotStable"
    SELF_EXT = "SelfExtStratum"
    SPLIT_UNSTABLE = "SplitUnstable"


@dataclass(frozen=True)
class Rank2Class:
    """Stratum plus canonical parameters, after twisting by O(-n*D).

    ``twist`` is n: the input is ``untwisted (x) O(n*D)`` with D = 0 + sigma(0).
    """

    stratum: Rank2Stratum
    params: tuple
    twist: int
    untwisted: BundleDesc


def _orbit_min(p: TorusPoint, image: TorusPoint) -> TorusPoint:
    return min(p, image)


def classify_rank2(D: BundleDesc) -> Rank2Class:
    if D.flavor is not Flavor.REAL:
        raise UsageError("classify_rank2 expects a real descriptor")
    if D.rank != 2:
        raise UsageError(f"classify_rank2 expects rank 2, got {D.rank}")
    if D.degree % 2:
        raise DomainError(f"real rank-2 bundles have even degree, got {D.degree}")
    n = D.degree // 4
    M = real_reference(-n)
    N = normalize_desc(BundleDesc(tuple(a.twist(M) for a in normalize_desc(D).atoms), Flavor.REAL))
    atoms = N.atoms

    if len(atoms) == 2:
        l1, l2 = (a.line for a in atoms)
        if l1.degree != l2.degree:
            return Rank2Class(Rank2Stratum.SPLIT_UNSTABLE, (l1, l2), n, N)
        return Rank2Class(Rank2Stratum.POLY_NOT_STABLE, tuple(sorted((l1.a, l2.a))), n, N)

    (atom,) = atoms
    if isinstance(atom, SelfExt):
        return Rank2Class(Rank2Stratum.SELF_EXT, (atom.xi.a,), n, N)
    L = atom.atom.line
    key = _orbit_min(L.point, sigma_conj(L).point)
    stratum = Rank2Stratum.STABLE_22 if L.degree == 1 else Rank2Stratum.STABLE_20
    return Rank2Class(stratum, (key,), n, N)
