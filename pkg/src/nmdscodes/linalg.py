"""Exact Gaussian elimination over finite fields.

Matrices are lists of rows of FieldElement.  For prime fields there are
numpy-backed fast paths working on int64 residue matrices; both routes
are exact (no floating point).
"""

from __future__ import annotations

import numpy as np

from .finite_field import FieldElement, FieldSpec

Matrix = list[list[FieldElement]]


def rank(rows: Matrix, spec: FieldSpec) -> int:
    """Rank of the matrix over the field."""
    if not rows:
        return 0
    if spec.degree == 1:
        return rank_mod_p(to_int_matrix(rows), spec.p)
    work = [list(r) for r in rows]
    return _eliminate(work, spec)


def _eliminate(work: Matrix, spec: FieldSpec) -> int:
    """In-place row reduction; returns the rank."""
    nrows = len(work)
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c].inverse()
        work[r] = [v * inv for v in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == nrows:
            break
    return r


def kernel_basis(rows: Matrix, spec: FieldSpec) -> Matrix:
    """Basis of the right kernel {v : rows @ v = 0}, as row vectors."""
    if not rows:
        return []
    ncols = len(rows[0])
    if spec.degree == 1:
        ker = kernel_mod_p(to_int_matrix(rows), spec.p)
        return [[spec(int(x)) for x in v] for v in ker]
    work = [list(r) for r in rows]
    rk = _eliminate(work, spec)
    work = work[:rk]
    pivots = []
    for row in work:
        for c, v in enumerate(row):
            if v:
                pivots.append(c)
                break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = spec.zero(), spec.one()
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -work[i][f]
        basis.append(v)
    return basis


def to_int_matrix(rows: Matrix) -> np.ndarray:
    """Residue matrix for a prime-field FieldElement matrix."""
    return np.array([[v.coeffs[0] for v in row] for row in rows], dtype=np.int64)


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        rows_below = np.nonzero(a[r:, c])[0]
        if rows_below.size == 0:
            continue
        piv = r + rows_below[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def kernel_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Right-kernel basis over F_p, rows are basis vectors."""
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        rows_below = np.nonzero(a[r:, c])[0]
        if rows_below.size == 0:
            continue
        piv = r + rows_below[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-a[i, f]) % p
    return basis
