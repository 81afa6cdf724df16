"""Flat unitary connections on degree-0 line bundles and their holonomy.

The bundle phi(z0) is the trivial bundle with Dolbeault operator
dbar - (pi*z0/tau) dzbar, and its flat unitary connection has form

    A = (pi/tau) * (conj(z0) dz - z0 dzbar),

which is purely imaginary on every tangent vector.  Parallel transport
along a path gamma solves s' = -A(gamma'(t)) s.  Around the loop t -> t
the exact answer is exp(2*pi*i*Im(z0)/tau); the realness obstruction of a
sigma-fixed class is the sign of that holonomy.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NotFixedError, UsageError
from .picard import LineBundleClass, classify_fixed, untwist_even
from .torus import as_coord

DEFAULT_STEPS = 10_000
DEFAULT_TOL = 1e-9
#: |Re(holonomy)| must exceed this for a sign to be read off
SIGN_THRESHOLD = 0.5


@dataclass(frozen=True)
class FlatConnection:
    z0: complex
    tau: float = 1.0

    def __post_init__(self):
        z0 = complex(self.z0)
        if not (math.isfinite(z0.real) and math.isfinite(z0.imag)):
            raise UsageError(f"non-finite z0 {self.z0!r}")
        tau = float(as_coord(self.tau))
        if not tau > 0:
            raise UsageError(f"tau must be positive, got {self.tau!r}")
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def for_class(cls, L: LineBundleClass, tau=1.0) -> FlatConnection:
        """Connection on the degree-0 class L (coordinates (a, b) -> z0 = a + b*tau*i)."""
        if L.degree != 0:
            raise UsageError("flat connections are attached to degree-0 classes; untwist first")
        return cls(L.point.to_complex(float(tau)), tau)

    def form(self, v):
        """A(v) for tangent vector(s) v (complex scalar or numpy array)."""
        z0 = self.z0
        return (math.pi / self.tau) * (z0.conjugate() * v - z0 * np.conj(v))


class PathKind(enum.Enum):
    UNIT_LOOP = "UnitLoop"
    HALF_SEGMENT = "HalfSegment"
    POLYLINE = "PolyLine"


@dataclass(frozen=True)
class PathSpec:
    kind: PathKind = PathKind.UNIT_LOOP
    steps: int = DEFAULT_STEPS
    base: complex = 0j
    waypoints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "kind", PathKind(self.kind))
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            raise UsageError(f"steps must be a positive integer, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "base", complex(self.base))
        object.__setattr__(self, "waypoints", tuple(complex(w) for w in self.waypoints))

    @classmethod
    def unit_loop(cls, steps=DEFAULT_STEPS):
        return cls(PathKind.UNIT_LOOP, steps)

    @classmethod
    def half_segment(cls, base=0j, steps=DEFAULT_STEPS):
        return cls(PathKind.HALF_SEGMENT, steps, base)

    @classmethod
    def polyline(cls, waypoints, steps=DEFAULT_STEPS):
        return cls(PathKind.POLYLINE, steps, 0j, tuple(waypoints))

    @property
    def closed(self) -> bool:
        if self.kind is PathKind.UNIT_LOOP:
            return True
        if self.kind is PathKind.POLYLINE and len(self.waypoints) > 1:
            # closed on the torus only up to a lattice vector, which the
            # caller knows; on the plane we require equality
            return self.waypoints[0] == self.waypoints[-1]
        return False

    def segments(self):
        """Straight pieces (start, end) of the path on the covering plane."""
        if self.kind is PathKind.UNIT_LOOP:
            return [(0j, 1 + 0j)]
        if self.kind is PathKind.HALF_SEGMENT:
            return [(self.base, self.base + 0.5)]
        w = self.waypoints
        return list(zip(w[:-1], w[1:]))


def _segment_factors(C: FlatConnection, start: complex, end: complex, steps: int, method: str):
    """Per-step amplification factors of the integrator on one straight piece."""
    h = 1.0 / steps
    # velocity is constant on a straight piece, so is A(gamma')
    a = C.form(np.full(steps, end - start))
    if method == "expmid":
        return np.exp(-h * a)
    if method == "rk2":
        return 1.0 - h * a + 0.5 * (h * a) ** 2
    raise UsageError(f"unknown integrator {method!r}")


def parallel_transport(C: FlatConnection, path: PathSpec, method: str = "expmid") -> complex:
    """Transport factor exp(-integral of A) along ``path``.

    ``method="expmid"`` is the exponential midpoint rule (unitary, exact on
    straight pieces); ``method="rk2"`` is the explicit midpoint rule, whose
    global error is O(1/steps^2).
    """
    s = 1 + 0j
    for start, end in path.segments():
        if start == end:
            continue
        factors = _segment_factors(C, start, end, path.steps, method)
        s *= complex(np.prod(factors))
    return s


def holonomy_unit_loop(C: FlatConnection) -> complex:
    """Closed form exp(2*pi*i*Im(z0)/tau) of the holonomy around t -> t."""
    return cmath.exp(2j * math.pi * C.z0.imag / C.tau)


def sign_of(value: complex) -> int:
    re = value.real
    if re >= SIGN_THRESHOLD:
        return 1
    if re <= -SIGN_THRESHOLD:
        return -1
    raise DomainError(f"holonomy {value!r} is not close to +1 or -1; the class is not conjugation-fixed")


def realness_composition(L: LineBundleClass, tau=1.0, scale: complex = 1, steps: int = DEFAULT_STEPS) -> complex:
    """The scalar by which (sigma^* conj(eta)) o eta acts, eta = scale * transport.

    eta is parallel transport along t -> t, t in [0, 1/2]; its conjugate
    partner is transport along the second half of the unit loop.  Scaling
    eta by c multiplies the composition by c * conj(c).
    """
    if not classify_fixed(L).fixed:
        raise NotFixedError(f"{L!r} is not fixed by L -> sigma^* conj(L)")
    L0 = untwist_even(L)
    C = FlatConnection.for_class(L0, tau)
    eta = scale * parallel_transport(C, PathSpec.half_segment(0, steps))
    partner = complex(scale).conjugate() * parallel_transport(C, PathSpec.half_segment(0.5, steps))
    return partner * eta


def realness_sign(L: LineBundleClass, tau=1.0, steps: int = DEFAULT_STEPS) -> int:
    """+1 if the fixed class L comes from a real line bundle, -1 if obstructed.

    Read off the holonomy of the flat connection, not from the coordinates.
    """
    return sign_of(realness_composition(L, tau, steps=steps))
