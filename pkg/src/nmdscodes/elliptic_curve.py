"""Short Weierstrass curves y^2 = x^3 + a4 x + b over exact finite fields.

Characteristic at least 5 throughout, so the short form is fully
general.  Points are affine coordinate pairs or the point at infinity;
the group law is the usual chord-and-tangent construction.  Curve groups
are determined exactly: E(F_q) is isomorphic to Z_n1 + Z_n2 with
n1 | gcd(n2 * n1, q - 1), and the isomorphism is realized explicitly by
a generator pair and a full discrete-log table (the groups handled here
are small enough to tabulate).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import budget as _budget
from .errors import BudgetError, CertificationError, HypothesisError
from .finite_field import (
    FieldElement,
    FieldSpec,
    QuadraticExtension,
    frobenius as _ff_frobenius,
    is_square,
    sqrt,
)
from .numtheory import divisors, factorize
from .subset_designs import AbelianGroup, GroupElement


@dataclass(frozen=True)
class Point:
    """A curve point: affine (x, y) or infinity (both None)."""

    x: FieldElement | None
    y: FieldElement | None

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise ValueError("affine points need both coordinates")

    @classmethod
    def infinity(cls) -> "Point":
        return cls(None, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def encode(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({self.x.encode()};{self.y.encode()})"

    def __repr__(self) -> str:
        return self.encode()


@dataclass(frozen=True)
class GroupStructure:
    """Invariant factors of E(F_q): Z_n1 + Z_n2 with n1 | n2 (n1 = 1 for cyclic)."""

    n1: int
    n2: int

    @property
    def order(self) -> int:
        return self.n1 * self.n2

    def encode(self) -> str:
        return f"{self.n1}x{self.n2}" if self.n1 > 1 else str(self.n2)


@dataclass(frozen=True)
class Curve:
    field: FieldSpec
    a4: FieldElement
    b: FieldElement

    def __post_init__(self) -> None:
        a4, b = self.field(self.a4), self.field(self.b)
        object.__setattr__(self, "a4", a4)
        object.__setattr__(self, "b", b)
        f = self.field
        disc = f(4) * a4 * a4 * a4 + f(27) * b * b
        if not disc:
            raise HypothesisError(f"singular curve: 4*a4^3 + 27*b^2 = 0 over {f!r}")

    @classmethod
    def from_coefficients(
        cls, field: FieldSpec, a4: int | FieldElement, b: int | FieldElement
    ) -> "Curve":
        return cls(field, field(a4), field(b))

    def encode(self) -> str:
        return f"q={self.field.encode()};a4={self.a4.encode()};b={self.b.encode()}"

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * x * x + self.a4 * x + self.b

    def contains(self, pt: Point) -> bool:
        if pt.is_infinity:
            return True
        if pt.x.spec != self.field:
            return False
        return pt.y * pt.y == self.rhs(pt.x)

    def _require(self, pt: Point) -> None:
        if not self.contains(pt):
            raise HypothesisError(f"point {pt.encode()} is not on {self.encode()}")

    # -- group law -------------------------------------------------------

    def negate(self, pt: Point) -> Point:
        if pt.is_infinity:
            return pt
        return Point(pt.x, -pt.y)

    def add(self, p1: Point, p2: Point) -> Point:
        self._require(p1)
        self._require(p2)
        if p1.is_infinity:
            return p2
        if p2.is_infinity:
            return p1
        if p1.x == p2.x:
            if p1.y != p2.y or not p1.y:
                return Point.infinity()
            # tangent line
            f = self.field
            slope = (f(3) * p1.x * p1.x + self.a4) / (f(2) * p1.y)
        else:
            slope = (p2.y - p1.y) / (p2.x - p1.x)
        x3 = slope * slope - p1.x - p2.x
        y3 = slope * (p1.x - x3) - p1.y
        return Point(x3, y3)

    def multiply(self, n: int, pt: Point) -> Point:
        self._require(pt)
        if n < 0:
            n, pt = -n, self.negate(pt)
        acc = Point.infinity()
        base = pt
        while n > 0:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    # -- point enumeration and structure ----------------------------------

    def points(self, budget: int | None = None) -> list[Point]:
        """All rational points: infinity first, then affine points in
        lexicographic order of (x, y) coefficient vectors."""
        limit = _budget.enumeration_budget(
            budget if budget is not None else _budget.POINT_CANDIDATES
        )
        if self.field.order > limit:
            raise BudgetError(
                f"field order {self.field.order} exceeds point budget {limit}"
            )
        pts = [Point.infinity()]
        for x in self.field.elements():
            v = self.rhs(x)
            if not v:
                pts.append(Point(x, self.field.zero()))
            elif is_square(v):
                y = sqrt(v)
                pts.append(Point(x, y))
                pts.append(Point(x, -y))
        pts[1:] = sorted(pts[1:], key=lambda P: (P.x.coeffs, P.y.coeffs))
        return pts

    def group_structure(
        self, points: list[Point] | None = None, budget: int | None = None
    ) -> GroupStructure:
        """Exact invariant factors (n1, n2) of the rational point group.

        n1 is the largest candidate with n1^2 | N and n1 | gcd(N, q - 1)
        whose n1-torsion has exactly n1^2 points; existence of such a
        decomposition is guaranteed, and the Hasse interval |N-(q+1)| <=
        2*sqrt(q) is asserted as a sanity check on the enumeration.
        """
        pts = self.points(budget) if points is None else points
        n = len(pts)
        q = self.field.order
        if (n - q - 1) ** 2 > 4 * q:
            raise CertificationError(
                f"point count {n} violates the Hasse bound for q={q}"
            )
        candidates = [
            d for d in divisors(gcd_int(n, q - 1)) if d * d <= n and n % (d * d) == 0
        ]
        for n1 in sorted(candidates, reverse=True):
            tor = sum(1 for pt in pts if self.multiply(n1, pt).is_infinity)
            if tor == n1 * n1:
                return GroupStructure(n1, n // n1)
        raise CertificationError("no valid invariant-factor split found")  # unreachable

    def frobenius_map(self, pt: Point, q: int) -> Point:
        """Coordinatewise q-power Frobenius."""
        self._require(pt)
        if pt.is_infinity:
            return pt
        return Point(_ff_frobenius(pt.x, q), _ff_frobenius(pt.y, q))

    def change_field(self, ext: QuadraticExtension) -> "Curve":
        """The same curve with coefficients embedded into ext."""
        if ext.base != self.field:
            raise ValueError("extension does not extend this curve's field")
        return Curve(ext.ext, ext.embed(self.a4), ext.embed(self.b))


def gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def point_order(curve: Curve, pt: Point, group_order: int) -> int:
    """Exact order of pt given the group order (divisor refinement)."""
    order = group_order
    for p, e in factorize(group_order).items():
        order //= p**e
        probe = curve.multiply(order, pt)
        while not probe.is_infinity:
            probe = curve.multiply(p, probe)
            order *= p
    return order


@dataclass(frozen=True)
class PointGroupMap:
    """An explicit isomorphism E(F_q) -> Z_n1 + Z_n2.

    to_element and from_point are total on the rational points; the
    generator pair realizes (1,0) and (0,1).
    """

    curve: Curve
    group: AbelianGroup
    generators: tuple[Point, ...]
    to_element: dict[Point, GroupElement]

    def __call__(self, pt: Point) -> GroupElement:
        return self.to_element[pt]


def point_group_isomorphism(
    curve: Curve, points: list[Point] | None = None, budget: int | None = None
) -> PointGroupMap:
    """Build the full discrete-log table realizing the group structure.

    Deterministic: generators are chosen first-in-canonical-order, and
    for the rank-2 case a candidate is accepted once all n1*n2
    combinations [a]g1 + [b]g2 are distinct.
    """
    pts = curve.points(budget) if points is None else points
    n = len(pts)
    structure = curve.group_structure(pts)
    n1, n2 = structure.n1, structure.n2
    if n1 == 1:
        group = AbelianGroup((n2,))
        gen = next(
            pt for pt in pts if point_order(curve, pt, n) == n2
        )
        table: dict[Point, GroupElement] = {}
        acc = Point.infinity()
        for a in range(n2):
            table[acc] = group.element((a,))
            acc = curve.add(acc, gen)
        return PointGroupMap(curve, group, (gen,), table)
    group = AbelianGroup((n1, n2))
    g2 = next(pt for pt in pts if point_order(curve, pt, n) == n2)
    for cand in pts:
        if cand.is_infinity or point_order(curve, cand, n) != n1:
            continue
        table = {}
        ok = True
        row_start = Point.infinity()
        for a in range(n1):
            acc = row_start
            for b in range(n2):
                if acc in table:
                    ok = False
                    break
                table[acc] = group.element((a, b))
                acc = curve.add(acc, g2)
            if not ok:
                break
            row_start = curve.add(row_start, cand)
        if ok and len(table) == n:
            return PointGroupMap(curve, group, (cand, g2), table)
    raise CertificationError("no generator pair found")  # unreachable


def find_trace_zero_point(
    curve: Curve, ext: QuadraticExtension
) -> tuple[Point, Curve, FieldElement]:
    """First point Q over F_{q^2} with x(Q) in F_q and Q + frob(Q) = infinity.

    Scans x in canonical order for the first non-square right-hand side;
    the square root drawn in the extension then gives Q = (x, y) with
    y^q = -y, so Q and its Frobenius conjugate sum to infinity.  Returns
    (Q, curve over the extension, the base-field x).
    """
    if ext.base != curve.field:
        raise ValueError("extension does not extend the curve's field")
    lifted = curve.change_field(ext)
    q = curve.field.order
    for x in curve.field.elements():
        v = curve.rhs(x)
        if v and not is_square(v):
            y = sqrt(ext.embed(v))
            pt = Point(ext.embed(x), y)
            if not lifted.contains(pt):
                raise CertificationError("lifted point fails the curve equation")
            conj = lifted.frobenius_map(pt, q)
            if not lifted.add(pt, conj).is_infinity:
                raise CertificationError(
                    "trace-zero construction failed: Q + frob(Q) != infinity"
                )
            return pt, lifted, x
    raise CertificationError(
        f"every x in F_{q} gives a square right-hand side; no trace-zero point"
    )
