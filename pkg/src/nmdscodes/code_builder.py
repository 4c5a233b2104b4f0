"""Evaluation codes from elliptic-curve function spaces.

The divisor is D = k(Q + phi(Q)) for a trace-zero point Q over F_{q^2}
whose x-coordinate x_Q lies in F_q.  A basis of the associated function
space is

    1,  1/(x - x_Q)^i (1 <= i <= k),  y/(x - x_Q)^j (2 <= j <= k),

2k functions in total, all defined over F_q and finite at every rational
point (no rational point has x = x_Q because x^3 + a4 x + b is a
non-square there).  Evaluating them at all of E(F_q) gives a 2k x n
generator matrix; by construction the code is [n, 2k, >= n - 2k], and it
is near-MDS exactly when some 2k rational points sum to infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import budget as _budget
from .elliptic_curve import Curve, Point, point_group_isomorphism
from .errors import BudgetError, CertificationError, HypothesisError
from .finite_field import FieldElement, FieldSpec, QuadraticExtension
from .linalg import kernel_basis, rank
from .subset_designs import count_subsets

__all__ = [
    "RRFunction",
    "DivisorSpec",
    "LinearCode",
    "make_divisor",
    "rr_basis",
    "evaluate_rr",
    "build_code",
    "dual_code",
    "classify_mds_nmds",
    "nmds_structural_check",
    "codeword_vanishing_on",
]


@dataclass(frozen=True)
class RRFunction:
    """One basis function: the constant 1, 1/(x-x_pole)^power, or
    y/(x-x_pole)^power.  x_pole fixes the base field for all kinds."""

    kind: str  # "one" | "inv_pow" | "y_inv_pow"
    power: int
    x_pole: FieldElement

    def __post_init__(self) -> None:
        if self.kind not in ("one", "inv_pow", "y_inv_pow"):
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.kind == "inv_pow" and self.power < 1:
            raise ValueError("inv_pow needs power >= 1")
        if self.kind == "y_inv_pow" and self.power < 2:
            raise ValueError("y_inv_pow needs power >= 2 to stay pole-free at infinity")


@dataclass(frozen=True)
class DivisorSpec:
    """D = k(Q + phi(Q)) with Q trace-zero over the quadratic extension."""

    k: int
    q_point: Point
    phi_q: Point
    x_base: FieldElement  # x(Q) as a base-field element

    def __post_init__(self) -> None:
        if self.k < 1:
            raise HypothesisError(f"k must be >= 1, got {self.k}")


def make_divisor(curve: Curve, ext: QuadraticExtension, k: int) -> DivisorSpec:
    """Construct D = k(Q + phi(Q)) from the first trace-zero point."""
    from .elliptic_curve import find_trace_zero_point

    q_point, lifted, x_base = find_trace_zero_point(curve, ext)
    phi_q = lifted.frobenius_map(q_point, curve.field.order)
    return DivisorSpec(k=k, q_point=q_point, phi_q=phi_q, x_base=x_base)


def rr_basis(divisor: DivisorSpec) -> list[RRFunction]:
    """The 2k basis functions for D = k(Q + phi(Q))."""
    k = divisor.k
    xp = divisor.x_base
    basis = [RRFunction("one", 0, xp)]
    basis += [RRFunction("inv_pow", i, xp) for i in range(1, k + 1)]
    basis += [RRFunction("y_inv_pow", j, xp) for j in range(2, k + 1)]
    return basis


def evaluate_rr(f: RRFunction, pt: Point) -> FieldElement:
    """Evaluate a basis function at a rational point.

    At infinity the constant evaluates to 1 and every other basis
    function vanishes (all have strictly positive valuation there), so
    the column at infinity is (1, 0, ..., 0).
    """
    spec = f.x_pole.spec
    if pt.is_infinity:
        return spec.one() if f.kind == "one" else spec.zero()
    if f.kind == "one":
        return spec.one()
    diff = pt.x - f.x_pole
    if not diff:
        raise HypothesisError(
            f"point {pt.encode()} hits the pole x = {f.x_pole.encode()}"
        )
    inv = diff.inverse() ** f.power
    if f.kind == "inv_pow":
        return inv
    return pt.y * inv


@dataclass(frozen=True)
class LinearCode:
    """An [n, k_dim] code over field, given by a full-rank generator matrix.

    eval_points records the coordinate labels (curve points) when the
    code came from an evaluation construction; dual codes inherit them.
    """

    field: FieldSpec
    n: int
    k_dim: int
    gen: tuple[tuple[FieldElement, ...], ...]
    eval_points: tuple[Point, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.gen) != self.k_dim or any(len(r) != self.n for r in self.gen):
            raise ValueError("generator matrix shape disagrees with (n, k_dim)")

    def gen_rows_int(self) -> list[list[int]]:
        """Residue rows; prime fields only."""
        if self.field.degree != 1:
            raise ValueError("integer rows only make sense over prime fields")
        return [[v.coeffs[0] for v in row] for row in self.gen]

    def to_json(self) -> dict:
        return {
            "field": self.field.encode(),
            "n": self.n,
            "k": self.k_dim,
            "gen": [[v.encode() for v in row] for row in self.gen],
        }

    def text_grid(self) -> str:
        """Plain text matrix, rows of space-separated entries."""
        return "\n".join(" ".join(v.encode() for v in row) for row in self.gen)


def build_code(
    curve: Curve,
    divisor: DivisorSpec,
    points: list[Point] | None = None,
    budget: int | None = None,
) -> LinearCode:
    """Evaluate the basis at all rational points; [n, 2k] generator matrix.

    Requires 0 < 2k < n.  Full rank 2k is asserted exactly; a deficiency
    would contradict the construction and raises CertificationError.
    """
    pts = curve.points(budget) if points is None else points
    n = len(pts)
    k = divisor.k
    if not 0 < 2 * k < n:
        raise HypothesisError(f"need 0 < 2k < n, got k={k}, n={n}")
    basis = rr_basis(divisor)
    spec = curve.field
    gen = tuple(tuple(evaluate_rr(f, pt) for pt in pts) for f in basis)
    code = LinearCode(field=spec, n=n, k_dim=2 * k, gen=gen, eval_points=tuple(pts))
    if rank([list(r) for r in code.gen], spec) != 2 * k:
        raise CertificationError("generator matrix is rank deficient")
    return code


def dual_code(code: LinearCode) -> LinearCode:
    """The dual [n, n - k_dim] code via an exact null-space computation."""
    ker = kernel_basis([list(r) for r in code.gen], code.field)
    gen = tuple(tuple(row) for row in ker)
    return LinearCode(
        field=code.field,
        n=code.n,
        k_dim=code.n - code.k_dim,
        gen=gen,
        eval_points=code.eval_points,
    )


def classify_mds_nmds(
    curve: Curve,
    divisor: DivisorSpec,
    points: list[Point] | None = None,
) -> str:
    """"NMDS" when some 2k rational points sum to infinity, else "MDS".

    The count of such 2k-subsets is evaluated in closed form through the
    explicit isomorphism E(F_q) -> Z_n1 + Z_n2.
    """
    iso = point_group_isomorphism(curve, points)
    return _classify_from_count(
        count_subsets(iso.group, 2 * divisor.k, iso.group.zero())
    )


def _classify_from_count(n_zero_sum: int) -> str:
    return "NMDS" if n_zero_sum > 0 else "MDS"


def nmds_structural_check(code: LinearCode, budget: int | None = None) -> bool:
    """Decide near-MDS-ness directly from the generator matrix.

    Checks the three defining column conditions for an [n, k] code:
    every k-1 columns are independent, some k columns are dependent, and
    every k+1 columns have full rank k.  Column-subset enumeration is
    budgeted; over budget raises BudgetError.
    """
    n, k = code.n, code.k_dim
    if not 1 <= k <= n - 1:
        raise HypothesisError(f"need 1 <= k_dim <= n-1, got k={k}, n={n}")
    work = comb(n, k - 1) + comb(n, k) + comb(n, k + 1)
    limit = _budget.enumeration_budget(
        budget if budget is not None else _budget.COLUMN_SUBSETS
    )
    if work > limit:
        raise BudgetError(f"{work} column subsets exceed budget {limit}")
    spec = code.field
    cols = [[code.gen[r][c] for r in range(k)] for c in range(n)]

    def col_rank(idx: tuple[int, ...]) -> int:
        rows = [[cols[c][r] for c in idx] for r in range(k)]
        return rank(rows, spec)

    if any(col_rank(idx) != k - 1 for idx in combinations(range(n), k - 1)):
        return False
    if not any(col_rank(idx) < k for idx in combinations(range(n), k)):
        return False
    if any(col_rank(idx) != k for idx in combinations(range(n), k + 1)):
        return False
    return True


def codeword_vanishing_on(code: LinearCode, positions: tuple[int, ...]) -> list[FieldElement]:
    """A nonzero codeword vanishing on the given positions.

    The column submatrix must have a one-dimensional kernel on message
    space; used to exhibit minimum-weight codewords from known supports.
    """
    sub = [[code.gen[r][c] for c in positions] for r in range(code.k_dim)]
    # message vectors m with m * G[:, positions] = 0: kernel of transpose
    trans = [[sub[r][c] for r in range(code.k_dim)] for c in range(len(positions))]
    ker = kernel_basis(trans, code.field)
    if len(ker) != 1:
        raise CertificationError(
            f"expected a unique codeword direction, kernel has dimension {len(ker)}"
        )
    msg = ker[0]
    word = []
    zero = code.field.zero()
    for c in range(code.n):
        acc = zero
        for r in range(code.k_dim):
            if msg[r]:
                acc = acc + msg[r] * code.gen[r][c]
        word.append(acc)
    return word
