"""
Primitives of the hyperbolic plane on the upper half-plane model.

Boundary points live on the extended real line. All arithmetic runs at the
active mpmath precision, so every operation here has O(ulp) relative error
at that precision. Expressions containing the point at infinity are
evaluated by cancelling the factors that contain it, never by substituting
a large number.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from mpmath import mp

from src.FluteType.exceptions import DomainError

PointLike = Union["BoundaryPoint", int, float, str, None, "mp.mpf"]


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the extended real line. ``value is None`` is infinity."""
    value: Optional[object] = None

    def __post_init__(self):
        if self.value is None:
            return
        v = mp.mpf(self.value)
        if mp.isnan(v):
            raise DomainError("boundary point cannot be NaN")
        object.__setattr__(self, "value", None if mp.isinf(v) else v)

    @classmethod
    def infinity(cls) -> "BoundaryPoint":
        return cls(None)

    @classmethod
    def of(cls, x: PointLike) -> "BoundaryPoint":
        """Coerce numbers, ``"inf"`` and None into a BoundaryPoint."""
        if isinstance(x, BoundaryPoint):
            return x
        if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞")):
            return cls.infinity()
        return cls(x)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "inf" if self.is_infinite else mp.nstr(self.value, 20)


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic from ``initial`` to ``terminal``."""
    initial: BoundaryPoint
    terminal: BoundaryPoint

    def __post_init__(self):
        object.__setattr__(self, "initial", BoundaryPoint.of(self.initial))
        object.__setattr__(self, "terminal", BoundaryPoint.of(self.terminal))
        if self.initial == self.terminal:
            raise DomainError(f"geodesic endpoints coincide at {self.initial}")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.terminal, self.initial)

    def shares_endpoint_with(self, other: "Geodesic") -> int:
        """Number of endpoints shared with another geodesic."""
        mine = {self.initial, self.terminal}
        return len(mine & {other.initial, other.terminal})


@dataclass(frozen=True)
class MobiusMap:
    """Orientation-preserving Möbius map z -> (a z + b) / (c z + d)."""
    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, mp.mpf(getattr(self, name)))
        if self.determinant <= 0:
            raise DomainError(f"Möbius map must have positive determinant, got {self.determinant}")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_three_points(cls, p: PointLike, q: PointLike, r: PointLike) -> "MobiusMap":
        """The map sending (p, q, r) to (0, 1, inf).

        Only defined when p, q, r run in the positive cyclic order of the
        boundary; otherwise the map would reverse orientation.
        """
        p, q, r = (BoundaryPoint.of(x) for x in (p, q, r))
        require_distinct({"p": p, "q": q, "r": r})
        if p.is_infinite:
            return cls(0, q.value - r.value, 1, -r.value)
        if q.is_infinite:
            return cls(1, -p.value, 1, -r.value)
        if r.is_infinite:
            return cls(1, -p.value, 0, q.value - p.value)
        qr, qp = q.value - r.value, q.value - p.value
        return cls(qr, -p.value * qr, qp, -r.value * qp)

    @property
    def determinant(self):
        return self.a * self.d - self.b * self.c

    def normalized(self) -> "MobiusMap":
        """Same map scaled to determinant 1."""
        s = mp.sqrt(self.determinant)
        return MobiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """The map self ∘ other."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def __call__(self, z: PointLike) -> BoundaryPoint:
        z = BoundaryPoint.of(z)
        if z.is_infinite:
            return BoundaryPoint.infinity() if self.c == 0 else BoundaryPoint(self.a / self.c)
        den = self.c * z.value + self.d
        if den == 0:
            return BoundaryPoint.infinity()
        return BoundaryPoint((self.a * z.value + self.b) / den)

    def apply_geodesic(self, g: Geodesic) -> Geodesic:
        return Geodesic(self(g.initial), self(g.terminal))


def require_distinct(points: dict) -> None:
    for (n1, p1), (n2, p2) in combinations(points.items(), 2):
        if p1 == p2:
            raise DomainError(f"coincident points {n1} and {n2} ({p1})")


def cross_ratio(a: PointLike, b: PointLike, c: PointLike, d: PointLike):
    """Cross-ratio ((b - a)(d - c)) / ((c - b)(d - a)).

    Positive exactly when b lies on the arc from a to c that avoids d.

    Raises:
        DomainError: if two of the points coincide.
    """
    a, b, c, d = (BoundaryPoint.of(x) for x in (a, b, c, d))
    require_distinct({"a": a, "b": b, "c": c, "d": d})
    if a.is_infinite:
        return (d.value - c.value) / (c.value - b.value)
    if b.is_infinite:
        return -(d.value - c.value) / (d.value - a.value)
    if c.is_infinite:
        return -(b.value - a.value) / (d.value - a.value)
    if d.is_infinite:
        return (b.value - a.value) / (c.value - b.value)
    return ((b.value - a.value) * (d.value - c.value)) / ((c.value - b.value) * (d.value - a.value))


def shear_of_edge(a: PointLike, b: PointLike, c: PointLike, d: PointLike):
    """Shear along the geodesic (a, c) between triangles {a, c, d} and {a, b, c}."""
    cr = cross_ratio(a, b, c, d)
    if cr <= 0:
        raise DomainError(
            f"cross-ratio {mp.nstr(cr, 10)} is not positive; "
            "points do not bound an embedded quadrilateral in this order"
        )
    return mp.log(cr)


def disjoint_geodesic_distance(g1: Geodesic, g2: Geodesic):
    """Hyperbolic distance between two disjoint geodesics.

    Uses the invariant q = ((x1 - x2)(y1 - y2)) / ((x1 - y2)(y1 - x2)), which
    equals tanh^2(rho/2) or its reciprocal depending on the orientations.

    Raises:
        DomainError: if the geodesics cross or share an endpoint.
    """
    q = -cross_ratio(g1.initial, g2.initial, g1.terminal, g2.terminal)
    if q <= 0:
        raise DomainError("geodesics intersect")
    t = q if q < 1 else 1 / q
    if t >= 1:
        raise DomainError("geodesics are not disjoint")
    return 2 * mp.atanh(mp.sqrt(t))


def cayley_chord(x: PointLike, y: PointLike):
    """Euclidean chord between two boundary points after z -> (z - i)/(z + i)."""
    x, y = BoundaryPoint.of(x), BoundaryPoint.of(y)
    if x == y:
        return mp.zero
    if x.is_infinite:
        x, y = y, x
    if y.is_infinite:
        return 2 / mp.sqrt(x.value ** 2 + 1)
    return 2 * abs(x.value - y.value) / mp.sqrt((x.value ** 2 + 1) * (y.value ** 2 + 1))
