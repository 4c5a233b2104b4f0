"""Subset sums in finite abelian groups and the block designs they form.

For a finite abelian group G and x in G, B_k^x denotes the family of
k-element subsets of G summing to x (and B_k^{x,*} the same over the
nonzero elements).  This module provides exact counts of those families,
both through a closed form and through literal enumeration, plus a
t-design verifier for explicit block lists.

Counts use the invariant-factor data of G: the exponent, the torsion
sizes #G[d], and for each x the largest divisor layer e(x) = max{d :
d | exp(G), x in dG}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as _cartesian
from math import comb, gcd
from typing import Iterator, Sequence

import numpy as np

from . import budget as _budget
from .errors import BudgetError, CertificationError, HypothesisError
from .numtheory import divisors, factorize, mobius, padic_valuation

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "DesignInstance",
    "DesignCheckReport",
    "DesignParameters",
    "group_invariants",
    "count_subsets",
    "count_subsets_full",
    "count_subsets_nonzero",
    "brute_force_counts",
    "brute_force_count_table",
    "subset_sum_blocks",
    "is_design_subset_sums",
    "verify_design",
    "design_parameters",
    "mobius",
]


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian group in invariant-factor form Z_n1 + ... + Z_nm.

    The factors must form a divisibility chain n1 | n2 | ... | nm with
    every factor >= 2.  The trivial group is factors == ().
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        for n in self.factors:
            if n < 2:
                raise ValueError(f"invariant factors must be >= 2, got {n}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"factors must form a divisibility chain: {self.factors}")

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse the canonical encoding, e.g. '3x3' or '2x4x8'."""
        parts = [s for s in text.strip().split("x") if s]
        return cls(tuple(int(s) for s in parts))

    def encode(self) -> str:
        return "x".join(str(n) for n in self.factors) if self.factors else "1"

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def element(self, residues: Sequence[int]) -> "GroupElement":
        res = tuple(int(r) % n for r, n in zip(residues, self.factors))
        if len(res) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} residues, got {len(residues)}"
            )
        return GroupElement(self, res)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements in canonical (lexicographic) order."""
        for res in _cartesian(*(range(n) for n in self.factors)):
            yield GroupElement(self, res)

    def element_index(self, e: "GroupElement") -> int:
        """Position of e in canonical order."""
        idx = 0
        for r, n in zip(e.residues, self.factors):
            idx = idx * n + r
        return idx

    def torsion_count(self, d: int) -> int:
        """#G[d]: number of elements killed by d."""
        n = 1
        for f in self.factors:
            n *= gcd(d, f)
        return n


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    residues: tuple[int, ...]

    def _same(self, other: "GroupElement") -> None:
        if other.group != self.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._same(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % n
                for a, b, n in zip(self.residues, other.residues, self.group.factors)
            ),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple(-a % n for a, n in zip(self.residues, self.group.factors)),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, m: int) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple(a * m % n for a, n in zip(self.residues, self.group.factors)),
        )

    def __bool__(self) -> bool:
        return any(self.residues)

    def encode(self) -> str:
        return ",".join(str(r) for r in self.residues)


def group_invariants(
    group: AbelianGroup, x: GroupElement
) -> tuple[int, int, dict[int, int]]:
    """(exponent, e(x), {d: #G[d] for d | exponent}).

    e(x) is the largest divisor d of the exponent with x in dG, decided
    componentwise: x in dG iff gcd(d, n_i) divides x_i for every i.
    """
    exp = group.exponent
    torsion = {d: group.torsion_count(d) for d in divisors(exp)}
    e_x = 1
    for d in divisors(exp):
        if all(r % gcd(d, n) == 0 for r, n in zip(x.residues, group.factors)):
            e_x = d
    return exp, e_x, torsion


def count_subsets_full(group: AbelianGroup, k: int, x: GroupElement) -> int:
    """Number of k-element subsets of G with sum x (closed form).

    "Full" means subsets are drawn from the whole group, zero included,
    in contrast to count_subsets_nonzero.  Exact for every finite
    abelian group.  The divisibility of the outer sum by |G| is
    asserted; a failure would mean the formula or its inputs are wrong.
    """
    n = group.order
    if not 0 <= k <= n:
        raise HypothesisError(f"k must be in 0..{n}, got {k}")
    if k == 0:
        return 1 if not x else 0
    exp, e_x, torsion = group_invariants(group, x)
    total = 0
    for s in divisors(gcd(exp, k)):
        inner = 0
        for d in divisors(gcd(e_x, s)):
            inner += mobius(s // d) * torsion[d]
        sign = -1 if (k + k // s) % 2 else 1
        total += sign * comb(n // s, k // s) * inner
    if total % n:
        raise CertificationError(
            f"subset count not divisible by group order: {total} / {n}"
        )
    return total // n


count_subsets = count_subsets_full


def count_subsets_nonzero(group: AbelianGroup, k: int, x: GroupElement) -> int:
    """Number of k-subsets of G \\ {0} with sum x (closed form)."""
    n = group.order
    if not 0 <= k <= n - 1:
        raise HypothesisError(f"k must be in 0..{n - 1}, got {k}")
    if k == 0:
        return 1 if not x else 0
    exp, e_x, torsion = group_invariants(group, x)
    total = 0
    for s in divisors(exp):
        inner = 0
        for d in divisors(gcd(e_x, s)):
            inner += mobius(s // d) * torsion[d]
        sign = -1 if (k + k // s) % 2 else 1
        total += sign * comb(n // s - 1, k // s) * inner
    if total % n:
        raise CertificationError(
            f"nonzero subset count not divisible by group order: {total} / {n}"
        )
    return total // n


# ----------------------------------------------------------------------
# Literal enumeration.  Each element is packed into one integer with a
# bit field per invariant factor wide enough that k-fold sums cannot
# carry, so a subset's componentwise sum is a single integer addition.


def _pack(
    group: AbelianGroup, values: Sequence[GroupElement], k: int, index_bits: bool
) -> tuple[list[int], list[int], list[int], int]:
    offsets: list[int] = []
    widths: list[int] = []
    off = 0
    for n in group.factors:
        w = max((max(k, 1) * (n - 1)).bit_length(), 1)
        offsets.append(off)
        widths.append(w)
        off += w
    packed = []
    for idx, v in enumerate(values):
        word = (1 << (off + idx)) if index_bits else 0
        for r, o in zip(v.residues, offsets):
            word |= r << o
        packed.append(word)
    return packed, offsets, widths, off


def _check_subset_budget(n_values: int, k: int, budget: int | None) -> None:
    limit = _budget.enumeration_budget(
        budget if budget is not None else _budget.SUBSET_CANDIDATES
    )
    candidates = comb(n_values, k)
    if candidates > limit:
        raise BudgetError(
            f"C({n_values},{k}) = {candidates} subsets exceeds the budget {limit}"
        )


def brute_force_counts(
    group: AbelianGroup,
    k: int,
    x: GroupElement,
    exclude_zero: bool = False,
    budget: int | None = None,
) -> int:
    """Oracle: literally enumerate k-subsets and count those summing to x."""
    values = [g for g in group.elements() if not (exclude_zero and not g)]
    if not 0 <= k <= len(values):
        raise HypothesisError(f"k must be in 0..{len(values)}, got {k}")
    _check_subset_budget(len(values), k, budget)
    packed, offsets, widths, _ = _pack(group, values, k, index_bits=False)
    moduli = group.factors
    want = x.residues
    count = 0
    for combo in combinations(packed, k):
        s = sum(combo)
        for n, o, w, t in zip(moduli, offsets, widths, want):
            if ((s >> o) & ((1 << w) - 1)) % n != t:
                break
        else:
            count += 1
    return count


def brute_force_count_table(
    group: AbelianGroup,
    k: int,
    exclude_zero: bool = False,
    budget: int | None = None,
) -> dict[GroupElement, int]:
    """One enumeration pass bucketed by sum: {x: #subsets summing to x}."""
    values = [g for g in group.elements() if not (exclude_zero and not g)]
    if not 0 <= k <= len(values):
        raise HypothesisError(f"k must be in 0..{len(values)}, got {k}")
    _check_subset_budget(len(values), k, budget)
    packed, offsets, widths, _ = _pack(group, values, k, index_bits=False)
    moduli = group.factors
    table: dict[tuple[int, ...], int] = {}
    for combo in combinations(packed, k):
        s = sum(combo)
        key = tuple(
            ((s >> o) & ((1 << w) - 1)) % n
            for n, o, w in zip(moduli, offsets, widths)
        )
        table[key] = table.get(key, 0) + 1
    return {GroupElement(group, res): c for res, c in table.items()}


def _masks_shard(args: tuple) -> list[int]:
    """Enumerate one shard of subset_sum_masks: combinations whose lowest
    position is fixed.  Top-level so process pools can pickle it."""
    packed, moduli, offsets, widths, want, base, k, first = args
    head = packed[first]
    out = []
    for combo in combinations(packed[first + 1 :], k - 1):
        s = head + sum(combo)
        for n, o, w, t in zip(moduli, offsets, widths, want):
            if ((s >> o) & ((1 << w) - 1)) % n != t:
                break
        else:
            out.append(s >> base)
    return out


_PARALLEL_THRESHOLD = 200_000


def subset_sum_masks(
    values: Sequence[GroupElement],
    k: int,
    target: GroupElement,
    budget: int | None = None,
    threads: int = 1,
) -> list[int]:
    """Bitmasks (over positions in values) of k-subsets summing to target.

    With threads > 1 the enumeration is sharded by lowest position
    across a process pool; shard order keeps the output identical to
    the serial scan.
    """
    group = target.group
    if not 0 <= k <= len(values):
        raise HypothesisError(f"k must be in 0..{len(values)}, got {k}")
    _check_subset_budget(len(values), k, budget)
    packed, offsets, widths, base = _pack(group, values, k, index_bits=True)
    moduli = group.factors
    want = target.residues
    if threads > 1 and k >= 1 and comb(len(values), k) >= _PARALLEL_THRESHOLD:
        from concurrent.futures import ProcessPoolExecutor

        jobs = [
            (packed, moduli, offsets, widths, want, base, k, first)
            for first in range(len(values) - k + 1)
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_masks_shard, jobs))
        return [m for part in parts for m in part]
    out: list[int] = []
    for combo in combinations(packed, k):
        s = sum(combo)
        for n, o, w, t in zip(moduli, offsets, widths, want):
            if ((s >> o) & ((1 << w) - 1)) % n != t:
                break
        else:
            out.append(s >> base)
    return out


def subset_sum_blocks(
    group: AbelianGroup,
    k: int,
    x: GroupElement,
    exclude_zero: bool = False,
    budget: int | None = None,
) -> "DesignInstance":
    """B_k^x (or B_k^{x,*}) as an explicit block list over element indices.

    Point i is the i-th group element in canonical order; with
    exclude_zero the points are the nonzero elements, re-indexed from 0.
    """
    values = [g for g in group.elements() if not (exclude_zero and not g)]
    masks = subset_sum_masks(values, k, x, budget=budget)
    nv = len(values)
    blocks = tuple(
        tuple(i for i in range(nv) if (m >> i) & 1) for m in masks
    )
    return DesignInstance(v=nv, block_size=k, blocks=blocks)


# ----------------------------------------------------------------------
# Designs.


@dataclass(frozen=True)
class DesignInstance:
    """An explicit block list over points 0..v-1, all blocks the same size."""

    v: int
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "blocks", tuple(tuple(int(i) for i in b) for b in self.blocks)
        )
        for b in self.blocks:
            if len(b) != self.block_size:
                raise ValueError(f"block {b} does not have size {self.block_size}")
            if any(not 0 <= i < self.v for i in b):
                raise ValueError(f"block {b} has points outside 0..{self.v - 1}")
            if any(x >= y for x, y in zip(b, b[1:])):
                raise ValueError(f"block {b} is not strictly increasing")


@dataclass(frozen=True)
class DesignCheckReport:
    """Outcome of verify_design, serializable for the CLI."""

    v: int
    block_size: int
    t: int
    is_design: bool
    lam: int | None
    block_count: int
    simple: bool
    witness: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "k": self.block_size,
            "t": self.t,
            "lambda": self.lam,
            "b": self.block_count,
            "simple": self.simple,
            "is_design": self.is_design,
        }


def verify_design(
    design: DesignInstance, t: int, budget: int | None = None
) -> DesignCheckReport:
    """Check whether the block list is a t-design by exact coverage counting.

    Every one of the C(v,t) point t-subsets must be covered by the same
    number of blocks.  Refuses (BudgetError) rather than sampling when
    the coverage map would exceed the budget.  An empty block list is a
    vacuous non-design.
    """
    v, k = design.v, design.block_size
    if not 1 <= t <= k:
        raise HypothesisError(f"need 1 <= t <= block size {k}, got t={t}")
    cells = comb(v, t)
    limit = _budget.enumeration_budget(
        budget if budget is not None else _budget.COVERAGE_CELLS
    )
    if cells > limit:
        raise BudgetError(f"coverage map C({v},{t}) = {cells} exceeds budget {limit}")
    b = len(design.blocks)
    simple = len(set(design.blocks)) == b
    if b == 0:
        return DesignCheckReport(v, k, t, False, None, 0, simple, None)

    if t <= 2 and v <= 2048 and b * v <= 2**28:
        lam, witness = _coverage_by_matmul(design, t)
    else:
        lam, witness = _coverage_by_dict(design, t)
    is_design = witness is None
    if is_design and comb(v, t) * lam != comb(k, t) * b:
        raise CertificationError(
            f"coverage identity violated: C({v},{t})*{lam} != C({k},{t})*{b}"
        )
    return DesignCheckReport(v, k, t, is_design, lam if is_design else lam, b, simple, witness)


def _coverage_by_matmul(
    design: DesignInstance, t: int
) -> tuple[int, tuple[int, ...] | None]:
    v = design.v
    a = np.zeros((len(design.blocks), v), dtype=np.int64)
    for r, block in enumerate(design.blocks):
        a[r, list(block)] = 1
    if t == 1:
        cov = a.sum(axis=0)
        lam = int(cov[0])
        bad = np.nonzero(cov != lam)[0]
        return lam, ((int(bad[0]),) if bad.size else None)
    gram = a.T @ a
    lam = int(gram[0, 1])
    iu, ju = np.triu_indices(v, k=1)
    bad = np.nonzero(gram[iu, ju] != lam)[0]
    if bad.size:
        w = int(bad[0])
        return lam, (int(iu[w]), int(ju[w]))
    return lam, None


def _coverage_by_dict(
    design: DesignInstance, t: int
) -> tuple[int, tuple[int, ...] | None]:
    cov: dict[tuple[int, ...], int] = {}
    for block in design.blocks:
        for sub in combinations(block, t):
            cov[sub] = cov.get(sub, 0) + 1
    ref = tuple(range(t))
    lam = cov.get(ref, 0)
    for sub in combinations(range(design.v), t):
        if cov.get(sub, 0) != lam:
            return lam, sub
    return lam, None


@dataclass(frozen=True)
class DesignParameters:
    """Derived parameters of a t-(v, k, lambda) design.

    lambdas[i] is the coverage number of i-subsets, i = 0..t, so
    lambdas[0] is the block count b and lambdas[t] the given lambda.
    lambda_complement is the t-coverage of the complementary design.
    integral is False when some derived value is not an integer, which
    certifies the claimed parameters are impossible.
    """

    v: int
    k: int
    t: int
    lam: int
    lambdas: tuple[Fraction, ...]
    lambda_complement: Fraction
    integral: bool

    @property
    def b(self) -> Fraction:
        return self.lambdas[0]


def design_parameters(v: int, k: int, t: int, lam: int) -> DesignParameters:
    """Exact lambda_i ladder and complementary-design lambda."""
    if not 1 <= t <= k <= v:
        raise HypothesisError(f"need 1 <= t <= k <= v, got t={t}, k={k}, v={v}")
    lambdas = []
    for i in range(t + 1):
        val = Fraction(lam) * comb(v - i, t - i) / comb(k - i, t - i)
        lambdas.append(val)
    lam_c = Fraction(lam) * comb(v - t, k) / comb(v - t, k - t)
    integral = all(x.denominator == 1 for x in lambdas) and lam_c.denominator == 1
    return DesignParameters(v, k, t, lam, tuple(lambdas), lam_c, integral)


# ----------------------------------------------------------------------
# Closed-form design predicate for subset-sum families.


def _is_p_group(group: AbelianGroup) -> int | None:
    fac = factorize(group.order) if group.order > 1 else {}
    if len(fac) == 1:
        return next(iter(fac))
    return None


def _one_design_p_group(group: AbelianGroup, k: int, x: GroupElement, p: int) -> bool:
    """1-design criterion for (G, B_k^x), G an abelian p-group, p odd.

    Holds iff exp(G) | k, or v_p(k) >= 1 + min over components with
    x_i != 0 of v_p(x_i).  (Components with x_i = 0 contribute nothing;
    for x = 0 only the exponent condition remains.)
    """
    if k % group.exponent == 0:
        return True
    vk = padic_valuation(k, p)
    finite = [padic_valuation(r, p) for r in x.residues if r]
    return bool(finite) and vk >= 1 + min(finite)


def is_design_subset_sums(
    group: AbelianGroup,
    k: int,
    x: GroupElement,
    t: int,
    budget: int | None = None,
    closed_form: bool | None = None,
) -> bool:
    """Whether (G, B_k^x) is a t-design.

    Uses the closed-form criteria where they are established: for odd-p
    abelian p-groups, t = 1 in general and t = 2 when every invariant
    factor equals p (elementary), where B_k^x is a 2-design iff p | k
    and x = 0.  Everything else is decided by enumerating the blocks and
    verifying coverage, subject to the enumeration budget.

    closed_form=True insists on the closed-form path and raises
    HypothesisError where none is known; closed_form=False forces
    enumeration.
    """
    if x.group != group:
        raise HypothesisError("x must belong to the group")
    if not 1 <= k <= group.order:
        raise HypothesisError(f"k must be in 1..{group.order}, got {k}")
    if t < 1:
        raise HypothesisError(f"t must be >= 1, got {t}")

    p = _is_p_group(group)
    have_closed = (
        p is not None
        and p % 2 == 1
        and (t == 1 or (t == 2 and all(f == p for f in group.factors)))
    )
    if closed_form is None:
        closed_form = have_closed
    if closed_form:
        if not have_closed:
            raise HypothesisError(
                "no closed-form t-design criterion for this group and t"
            )
        # an empty family (k = |G| with x != 0) counts as a non-design,
        # matching verify_design on the enumerated blocks
        if count_subsets(group, k, x) == 0:
            return False
        if t == 1:
            return _one_design_p_group(group, k, x, p)
        return k % p == 0 and not x
    design = subset_sum_blocks(group, k, x, budget=budget)
    if t > k:
        return False
    return verify_design(design, t, budget=budget).is_design
