"""Weight distributions, minimum-weight support designs, and the
assurance checks tying them together.

Near-MDS [n, k, n-k] codes have their whole weight distribution pinned
by n, k, q and the single count A_{n-k}; for the elliptic construction
of length p^2 that count has a closed form.  The minimum-weight supports
are exactly the complements of zero-sum 2k-subsets of the point group,
which is what makes the design structure decidable both by formula and
by literal enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from . import budget as _budget
from .code_builder import LinearCode, DivisorSpec, build_code, codeword_vanishing_on, dual_code
from .elliptic_curve import Curve, Point, PointGroupMap, point_group_isomorphism
from .errors import BudgetError, CertificationError, HypothesisError
from .subset_designs import (
    AbelianGroup,
    DesignCheckReport,
    DesignInstance,
    GroupElement,
    count_subsets,
    subset_sum_masks,
    verify_design,
)

__all__ = [
    "WeightDistribution",
    "SupportFamily",
    "TwoDesignCertificate",
    "weight_distribution_bruteforce",
    "macwilliams_transform",
    "min_weight_count_formula",
    "nmds_weight_distribution",
    "min_weight_supports",
    "supports_of_weight",
    "zero_sum_witness_positions",
    "pin_min_distance",
    "support_design_lambda",
    "lambda_closed_form",
    "lambda_dual_closed_form",
    "certify_two_design",
    "disjoint_support_pairing",
    "simplicity_bound_h",
    "all_weights_nonzero",
    "all_weights_nonzero_check",
    "am_hypothesis_check",
]


@dataclass(frozen=True)
class WeightDistribution:
    """Exact codeword counts by Hamming weight, counts[w] = A_w."""

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def total(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int:
        for w in range(1, len(self.counts)):
            if self.counts[w]:
                return w
        raise ValueError("zero code has no minimum weight")

    def nonzero_weights(self) -> list[int]:
        return [w for w in range(1, len(self.counts)) if self.counts[w]]

    def enumerator(self) -> str:
        """Human-readable weight enumerator, e.g. '1 + 72z^3 + ...'."""
        terms = []
        for w, a in enumerate(self.counts):
            if not a:
                continue
            if w == 0:
                terms.append(str(a))
            else:
                terms.append(f"{a}z^{w}" if a != 1 else f"z^{w}")
        return " + ".join(terms) if terms else "0"


def weight_distribution_bruteforce(
    code: LinearCode, budget: int | None = None
) -> WeightDistribution:
    """Enumerate all q^k_dim codewords and tally weights (prime fields).

    The message space is swept in numpy chunks with exact int64
    arithmetic (entries stay below q^2 * k_dim, far under 2^63).
    """
    q = code.field.order
    if code.field.degree != 1:
        raise BudgetError("brute-force sweeps are implemented for prime fields only")
    total = q**code.k_dim
    limit = _budget.enumeration_budget(
        budget if budget is not None else _budget.SWEEP_MESSAGES
    )
    if total > limit:
        raise BudgetError(f"{total} messages exceed sweep budget {limit}")
    gen = np.array(code.gen_rows_int(), dtype=np.int64)
    p = code.field.p
    counts = np.zeros(code.n + 1, dtype=np.int64)
    chunk = 1 << 16
    k = code.k_dim
    radix = q ** np.arange(k, dtype=np.int64)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        msgs = (idx[:, None] // radix[None, :]) % q
        words = (msgs @ gen) % p
        weights = np.count_nonzero(words, axis=1)
        counts += np.bincount(weights, minlength=code.n + 1)
    return WeightDistribution(tuple(int(c) for c in counts))


def macwilliams_transform(dist: WeightDistribution, q: int, k_dim: int) -> WeightDistribution:
    """Dual weight distribution via the MacWilliams identity (exact)."""
    n = dist.n
    out = []
    for j in range(n + 1):
        acc = 0
        for i, a_i in enumerate(dist.counts):
            if not a_i:
                continue
            # Krawtchouk K_j(i) = sum_s (-1)^s C(i,s) C(n-i, j-s) (q-1)^(j-s)
            kj = 0
            for s in range(0, min(i, j) + 1):
                term = comb(i, s) * comb(n - i, j - s) * (q - 1) ** (j - s)
                kj += -term if s % 2 else term
            acc += a_i * kj
        if acc % q**k_dim:
            raise CertificationError("MacWilliams transform is not integral")
        out.append(acc // q**k_dim)
    return WeightDistribution(tuple(out))


def min_weight_count_formula(p: int, q: int, k: int) -> int:
    """A_{n-k_dim} = A_{p^2-2k} for the length-p^2 construction, exact.

    (q - 1) * [C(p^2, 2k) + (p^2 - 1) * C(p, 2k/p)] / p^2, requiring
    p | k; the division is asserted exact.
    """
    if k % p:
        raise HypothesisError(f"k must be divisible by p, got k={k}, p={p}")
    num = (q - 1) * (comb(p * p, 2 * k) + (p * p - 1) * comb(p, 2 * k // p))
    if num % (p * p):
        raise CertificationError("minimum-weight count is not integral")
    return num // (p * p)


def nmds_weight_distribution(
    n: int, k_dim: int, q: int, a_min: int
) -> tuple[WeightDistribution, WeightDistribution]:
    """Full primal and dual distributions of an [n, k_dim, n - k_dim]
    near-MDS code from the single count a_min = A_{n-k_dim}.

    Both distributions are checked to be nonnegative and to sum to the
    right power of q; a violation signals an invalid a_min.
    """
    k = k_dim
    primal = [0] * (n + 1)
    primal[0] = 1
    primal[n - k] = a_min
    for s in range(1, k + 1):
        acc = 0
        for j in range(s):
            term = comb(n - k + s, j) * (q ** (s - j) - 1)
            acc += -term if j % 2 else term
        val = comb(n, k - s) * acc
        tail = comb(k, s) * a_min
        val += -tail if s % 2 else tail
        if val < 0:
            raise CertificationError(f"negative primal count at weight {n - k + s}")
        primal[n - k + s] = val
    dual = [0] * (n + 1)
    dual[0] = 1
    dual[k] = a_min
    for s in range(1, n - k + 1):
        acc = 0
        for j in range(s):
            term = comb(k + s, j) * (q ** (s - j) - 1)
            acc += -term if j % 2 else term
        val = comb(n, k + s) * acc
        tail = comb(n - k, s) * a_min
        val += -tail if s % 2 else tail
        if val < 0:
            raise CertificationError(f"negative dual count at weight {k + s}")
        dual[k + s] = val
    pd = WeightDistribution(tuple(primal))
    dd = WeightDistribution(tuple(dual))
    if pd.total() != q**k or dd.total() != q ** (n - k):
        raise CertificationError("distribution totals disagree with q^k / q^(n-k)")
    return pd, dd


# ----------------------------------------------------------------------
# Minimum-weight supports.


@dataclass(frozen=True)
class SupportFamily:
    """Distinct supports of the minimum-weight codewords.

    Each support corresponds to exactly q - 1 codewords (the nonzero
    scalings of one codeword); divided records that the codeword count
    was divided out, so blocks is a set-like family.
    """

    weight: int
    v: int
    blocks: tuple[tuple[int, ...], ...]
    divided: bool

    def design_instance(self) -> DesignInstance:
        return DesignInstance(v=self.v, block_size=self.weight, blocks=self.blocks)


def _group_values_in_point_order(
    iso: PointGroupMap, points: Sequence[Point]
) -> list[GroupElement]:
    return [iso(pt) for pt in points]


def min_weight_supports(
    curve: Curve,
    divisor: DivisorSpec,
    points: list[Point] | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> SupportFamily:
    """Supports of the weight-(n-2k) codewords: complements of zero-sum
    2k-subsets of the point group.

    Enumerates the smaller of the two complementary subset sizes (the
    total point sum is zero, so zero-sum 2k-sets and zero-sum (n-2k)-sets
    are complements of each other) and certifies the family size against
    the closed-form count.
    """
    iso = point_group_isomorphism(curve, points)
    pts = curve.points() if points is None else points
    n = len(pts)
    k2 = 2 * divisor.k
    w = n - k2
    group = iso.group
    values = _group_values_in_point_order(iso, pts)
    total = group.zero()
    for v in values:
        total = total + v
    if total:
        raise CertificationError("rational points do not sum to zero")
    size = min(k2, w)
    masks = subset_sum_masks(values, size, group.zero(), budget=budget, threads=threads)
    expected = count_subsets(group, k2, group.zero())
    if len(masks) != expected:
        raise CertificationError(
            f"enumerated {len(masks)} zero-sum {size}-subsets, closed form says {expected}"
        )
    full = (1 << n) - 1
    if size == k2:
        masks = [full ^ m for m in masks]
    blocks = tuple(
        tuple(i for i in range(n) if (m >> i) & 1) for m in sorted(masks)
    )
    return SupportFamily(weight=w, v=n, blocks=blocks, divided=True)


def zero_sum_witness_positions(
    curve: Curve, divisor: DivisorSpec, points: list[Point] | None = None
) -> tuple[int, ...]:
    """Positions of one zero-sum 2k-subset of the points, deterministically.

    For E(F_q) = Z_p + Z_p each coset of the first-generator line sums to
    zero, so a union of 2k/p cosets works at any scale; otherwise falls
    back to a small search over combinations.
    """
    iso = point_group_isomorphism(curve, points)
    pts = curve.points() if points is None else points
    k2 = 2 * divisor.k
    group = iso.group
    index_of = {iso(pt): i for i, pt in enumerate(pts)}
    if len(group.factors) == 2 and group.factors[0] == group.factors[1]:
        p = group.factors[0]
        if k2 % p == 0 and k2 // p <= p:
            positions = []
            for j in range(k2 // p):
                for i in range(p):
                    positions.append(index_of[group.element((i, j))])
            return tuple(sorted(positions))
    values = _group_values_in_point_order(iso, pts)
    masks = subset_sum_masks(values, k2, group.zero())
    if not masks:
        raise CertificationError("no zero-sum subset exists; the code is MDS")
    m = min(masks)
    return tuple(i for i in range(len(pts)) if (m >> i) & 1)


def pin_min_distance(code: LinearCode, vanish_at: tuple[int, ...]) -> int:
    """Exact minimum distance of a near-MDS evaluation code.

    The construction guarantees d >= n - k_dim; exhibiting a codeword
    vanishing on a k_dim-subset (weight exactly n - k_dim) pins d.
    """
    if len(vanish_at) != code.k_dim:
        raise HypothesisError("witness must vanish on exactly k_dim positions")
    word = codeword_vanishing_on(code, vanish_at)
    weight = sum(1 for v in word if v)
    if weight != code.n - code.k_dim:
        raise CertificationError(
            f"witness codeword has weight {weight}, expected {code.n - code.k_dim}"
        )
    return weight


# ----------------------------------------------------------------------
# Two-design certification.


def support_design_lambda(a_w: int, q: int, n: int, w: int, t: int) -> Fraction:
    """t-coverage of the support family of a weight-w codeword class:
    lambda = C(w,t) * A_w / ((q-1) * C(n,t))."""
    return Fraction(comb(w, t) * a_w, (q - 1) * comb(n, t))


def lambda_closed_form(p: int, k: int) -> int:
    """Pair coverage of the minimum-weight support design, exact.

    The field size cancels out of lambda = b * C(w,2) / C(v,2) because
    the block count b = A_min / (q-1) drops its q-1 factor.
    """
    num = 2 * comb(p * p - 2 * k, 2) * (comb(p * p, 2 * k) + (p * p - 1) * comb(p, 2 * k // p))
    den = p**4 * (p * p - 1)
    frac = Fraction(num, den)
    if frac.denominator != 1:
        raise CertificationError("closed-form lambda is not integral")
    return int(frac)


def lambda_dual_closed_form(p: int, k: int) -> int:
    """Pair coverage of the complementary (dual minimum-weight) design."""
    w = p * p - 2 * k
    num = 4 * k * (2 * k - 1) * comb(w, 2) * (
        comb(p * p, 2 * k) + (p * p - 1) * comb(p, 2 * k // p)
    )
    den = p**4 * (p * p - 1) * w * (w - 1)
    frac = Fraction(num, den)
    if frac.denominator != 1:
        raise CertificationError("closed-form dual lambda is not integral")
    return int(frac)


@dataclass(frozen=True)
class TwoDesignCertificate:
    """Outcome of certifying the minimum-weight supports as 2-designs.

    mode is "measured" when the block families were enumerated and
    verified coverage-by-coverage, "theory-implied" when only the closed
    forms were evaluated (enumeration over budget).
    """

    v: int
    primal_block_size: int
    lambda_primal: int
    lambda_dual: int
    block_count: int
    mode: str
    primal_report: DesignCheckReport | None
    dual_report: DesignCheckReport | None

    def to_json(self) -> dict:
        out = {
            "v": self.v,
            "block_size": self.primal_block_size,
            "t": 2,
            "lambda": self.lambda_primal,
            "lambda_dual": self.lambda_dual,
            "b": self.block_count,
            "mode": self.mode,
        }
        if self.primal_report is not None:
            out["primal"] = self.primal_report.to_json()
        if self.dual_report is not None:
            out["dual"] = self.dual_report.to_json()
        return out


def certify_two_design(
    curve: Curve,
    divisor: DivisorSpec,
    points: list[Point] | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> TwoDesignCertificate:
    """Verify that minimum-weight supports of the code and its dual both
    form 2-designs with the closed-form coverage numbers.

    Measured mode enumerates the supports, runs verify_design on the
    family and on its complements, and demands exact agreement with the
    closed forms; any mismatch is a CertificationError.  When the
    enumeration exceeds its budget the certificate falls back to
    theory-implied mode (closed forms and integrality only).
    """
    pts = curve.points() if points is None else points
    n = len(pts)
    q = curve.field.order
    k = divisor.k
    p_sq = n
    p = _integer_sqrt_exact(p_sq)
    if p is None or k % p:
        raise HypothesisError("certification needs n = p^2 and p | k")
    lam = lambda_closed_form(p, k)
    lam_dual = lambda_dual_closed_form(p, k)
    a_min = min_weight_count_formula(p, q, k)
    block_count = a_min // (q - 1)
    size = min(2 * k, n - 2 * k)
    limit = _budget.enumeration_budget(
        budget if budget is not None else _budget.SUBSET_CANDIDATES
    )
    if comb(n, size) > limit:
        return TwoDesignCertificate(
            v=n,
            primal_block_size=n - 2 * k,
            lambda_primal=lam,
            lambda_dual=lam_dual,
            block_count=block_count,
            mode="theory-implied",
            primal_report=None,
            dual_report=None,
        )
    family = min_weight_supports(curve, divisor, points=pts, budget=budget, threads=threads)
    if len(family.blocks) != block_count:
        raise CertificationError(
            f"support family size {len(family.blocks)} != A_min/(q-1) = {block_count}"
        )
    primal_report = verify_design(family.design_instance(), 2, budget=budget)
    if not primal_report.is_design or primal_report.lam != lam:
        raise CertificationError(
            f"measured primal design {primal_report} disagrees with lambda = {lam}"
        )
    complements = tuple(
        tuple(i for i in range(n) if i not in set(b)) for b in family.blocks
    )
    dual_design = DesignInstance(v=n, block_size=2 * k, blocks=complements)
    dual_report = verify_design(dual_design, 2, budget=budget)
    if not dual_report.is_design or dual_report.lam != lam_dual:
        raise CertificationError(
            f"measured dual design {dual_report} disagrees with lambda = {lam_dual}"
        )
    return TwoDesignCertificate(
        v=n,
        primal_block_size=n - 2 * k,
        lambda_primal=lam,
        lambda_dual=lam_dual,
        block_count=block_count,
        mode="measured",
        primal_report=primal_report,
        dual_report=dual_report,
    )


def _integer_sqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


# ----------------------------------------------------------------------
# Assmus-Mattson style checks.


def disjoint_support_pairing(
    primal: SupportFamily, dual: SupportFamily
) -> list[tuple[int, int]]:
    """Match each primal minimum-weight support to a disjoint dual one.

    Near-MDS codes pair their minimum-weight codewords with dual
    minimum-weight codewords of disjoint support; returns (i, j) index
    pairs (first disjoint dual block per primal block, in block order)
    and raises CertificationError if any primal block has no partner.
    """
    if primal.v != dual.v:
        raise HypothesisError("support families live on different point sets")
    dual_sets = [set(b) for b in dual.blocks]
    pairs = []
    for i, block in enumerate(primal.blocks):
        bset = set(block)
        for j, dset in enumerate(dual_sets):
            if not (bset & dset):
                pairs.append((i, j))
                break
        else:
            raise CertificationError(
                f"primal support {block} meets every dual minimum-weight support"
            )
    return pairs


def simplicity_bound_h(n: int, d: int, q: int) -> int:
    """Largest h <= n with h - floor((h + q - 2)/(q - 1)) < d.

    Codeword classes of weight w <= h have no repeated supports, so the
    support families at those weights are simple.
    """
    best = 0
    for h in range(n + 1):
        if h - (h + q - 2) // (q - 1) < d:
            best = h
    return best


def all_weights_nonzero(dist: WeightDistribution, d: int) -> bool:
    """Whether A_w > 0 for every d <= w <= n."""
    return all(dist.counts[w] > 0 for w in range(d, dist.n + 1))


def all_weights_nonzero_check(
    code: LinearCode,
    dist: WeightDistribution | None = None,
    budget: int | None = None,
) -> bool:
    """Whether every weight from the minimum distance up to n occurs.

    Accepts a precomputed distribution (the recurrence path works too);
    otherwise sweeps the code by brute force.
    """
    if dist is None:
        dist = weight_distribution_bruteforce(code, budget=budget)
    return all_weights_nonzero(dist, dist.min_weight())


def am_hypothesis_check(
    code: LinearCode,
    t: int = 2,
    dist: WeightDistribution | None = None,
    dual_dist: WeightDistribution | None = None,
    min_weight_design: bool | None = None,
    budget: int | None = None,
) -> str:
    """Which design-existence route applies to the code at strength t.

    "AM-satisfied": t < min(d, d_dual) and the codewords of C have at
    most d_dual - t nonzero weights in 1..n-t (the classical transform
    route, which then yields designs at every weight).
    "GAM-only": the classical count fails, but the code is near-MDS with
    min(k, n-k) >= 3 and its minimum-weight supports form a t-design,
    which still propagates designs to all weights.
    "neither": no route applies.

    Distributions and the minimum-weight design verdict are computed by
    brute force when not supplied (budget permitting).
    """
    if dist is None:
        dist = weight_distribution_bruteforce(code, budget=budget)
    if dual_dist is None:
        dual_dist = macwilliams_transform(dist, code.field.order, code.k_dim)
    n = code.n
    d = dist.min_weight()
    d_dual = dual_dist.min_weight()
    if t < min(d, d_dual):
        nonzero = [w for w in dist.nonzero_weights() if w <= n - t]
        if len(nonzero) <= d_dual - t:
            return "AM-satisfied"
    is_nmds = d == n - code.k_dim and d_dual == code.k_dim
    if is_nmds and min(code.k_dim, n - code.k_dim) >= 3:
        if min_weight_design is None:
            min_weight_design = _min_weight_design_measured(code, d, t, budget)
        if min_weight_design:
            return "GAM-only"
    return "neither"


def supports_of_weight(
    code: LinearCode, w: int, budget: int | None = None
) -> SupportFamily:
    """Distinct supports of the weight-w codewords, by message sweep.

    Each support must be hit exactly q - 1 times (the scalar multiples
    of one codeword); anything else means repeated supports, which the
    near-MDS minimum-weight layers never have, so it is reported as a
    CertificationError.
    """
    q = code.field.order
    if code.field.degree != 1:
        raise BudgetError("support sweeps are implemented for prime fields only")
    total = q**code.k_dim
    limit = _budget.enumeration_budget(
        budget if budget is not None else _budget.SWEEP_MESSAGES
    )
    if total > limit:
        raise BudgetError(f"{total} messages exceed sweep budget {limit}")
    gen = np.array(code.gen_rows_int(), dtype=np.int64)
    p = code.field.p
    k = code.k_dim
    radix = q ** np.arange(k, dtype=np.int64)
    hits: dict[tuple[int, ...], int] = {}
    chunk = 1 << 16
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        msgs = (idx[:, None] // radix[None, :]) % q
        words = (msgs @ gen) % p
        weights = np.count_nonzero(words, axis=1)
        for row in np.nonzero(weights == w)[0]:
            sup = tuple(int(c) for c in np.nonzero(words[row])[0])
            hits[sup] = hits.get(sup, 0) + 1
    for sup, count in hits.items():
        if count != q - 1:
            raise CertificationError(
                f"support {sup} carries {count} codewords, expected {q - 1}"
            )
    return SupportFamily(
        weight=w, v=code.n, blocks=tuple(sorted(hits)), divided=True
    )


def _min_weight_design_measured(
    code: LinearCode, d: int, t: int, budget: int | None
) -> bool:
    """Check the minimum-weight supports directly from a codeword sweep."""
    family = supports_of_weight(code, d, budget=budget)
    if not family.blocks or t > d:
        return False
    return verify_design(family.design_instance(), t, budget=budget).is_design
