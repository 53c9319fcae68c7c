"""Exact linear algebra over the rationals.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  Everything
is immutable and exact; there is no floating point anywhere in the package.
Row reduction pivots on the first nonzero column in canonical order, so
reduced bases and solved coordinates are reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(entries: Iterable) -> Vec:
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero_vec(v: Vec) -> bool:
    return all(c == 0 for c in v)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, v: Vec) -> Vec:
    if c == 1:
        return v
    return tuple(c * x for x in v)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zero_mat(nrows: int, ncols: int | None = None) -> Mat:
    ncols = nrows if ncols is None else ncols
    return tuple(zero_vec(ncols) for _ in range(nrows))


def identity_mat(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


def is_zero_mat(m: Mat) -> bool:
    return all(is_zero_vec(r) for r in m)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(vec_add(x, y) for x, y in zip(a, b))


def mat_scale(c, m: Mat) -> Mat:
    if c == 1:
        return m
    return tuple(vec_scale(c, r) for r in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    # rows of a against columns of b
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a
    )


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in m)


def mat_pow(m: Mat, k: int) -> Mat:
    out = identity_mat(len(m))
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def nilpotency_index(m: Mat, cap: int | None = None) -> int | None:
    """Least k with m^k = 0, or None if no such k <= cap (default: dim)."""
    n = len(m)
    cap = n if cap is None else cap
    power = identity_mat(n)
    for k in range(cap + 1):
        if is_zero_mat(power):
            return k
        power = mat_mul(power, m)
    if is_zero_mat(power):
        return cap + 1
    return None


def row_reduce(rows: Sequence[Vec]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form with unit pivots; returns (rows, pivot columns).

    Zero rows are dropped.  Pivoting always takes the first nonzero column,
    scanning rows in the order given, so the result is deterministic.
    """
    work = [list(r) for r in rows if not is_zero_vec(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    reduced: list[list[Fraction]] = []
    for col in range(ncols):
        pivot_row = None
        for r in work:
            if r[col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work.remove(pivot_row)
        inv = 1 / pivot_row[col]
        pivot_row = [inv * x for x in pivot_row]
        for r in work:
            f = r[col]
            if f != 0:
                for j in range(col, ncols):
                    r[j] -= f * pivot_row[j]
        work = [r for r in work if any(x != 0 for x in r)]
        for r in reduced:
            f = r[col]
            if f != 0:
                for j in range(col, ncols):
                    r[j] -= f * pivot_row[j]
        reduced.append(pivot_row)
        pivots.append(col)
        if not work:
            break
    return [tuple(r) for r in reduced], pivots


def rank(rows: Sequence[Vec]) -> int:
    return len(row_reduce(rows)[0])


class SpanBasis:
    """A row-reduced basis of a subspace, supporting exact membership tests."""

    def __init__(self, rows: Sequence[Vec] = ()):  # rows need not be independent
        self.rows, self.pivots = row_reduce(rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Residue of v modulo the span (zero iff v is a member)."""
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f != 0:
                for j in range(p, len(w)):
                    w[j] -= f * row[j]
        return tuple(w)

    def contains(self, v: Vec) -> bool:
        return is_zero_vec(self.reduce(v))

    def add(self, v: Vec) -> bool:
        """Insert v if independent; returns True when the span grew."""
        if self.contains(v):
            return False
        self.rows, self.pivots = row_reduce(list(self.rows) + [v])
        return True

    def coordinates(self, v: Vec) -> Vec | None:
        """Coefficients of v on the reduced basis rows, or None if outside."""
        w = list(v)
        coords = []
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            coords.append(f)
            if f != 0:
                for j in range(p, len(w)):
                    w[j] -= f * row[j]
        if any(x != 0 for x in w):
            return None
        return tuple(coords)


class CoordSpan:
    """Row space that can express members as combinations of the inserted reps.

    Unlike SpanBasis, dependence answers come with exact coordinates over the
    representative vectors in insertion order, which is what the closure
    engine needs to read off structure constants.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.reps: list[Vec] = []
        self._rows: list[tuple[list[Fraction], list[Fraction]]] = []
        self._pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.reps)

    def solve(self, v: Vec) -> Vec | None:
        """Coordinates of v over the reps, or None if v is outside the span."""
        w = list(v)
        combo = [ZERO] * len(self.reps)
        for (row, cmb), p in zip(self._rows, self._pivots):
            f = w[p]
            if f != 0:
                for j in range(p, self.ncols):
                    w[j] -= f * row[j]
                for k in range(len(cmb)):
                    combo[k] += f * cmb[k]
        if any(x != 0 for x in w):
            return None
        return tuple(combo)

    def insert(self, v: Vec) -> Vec | None:
        """Add v as a new rep if independent; returns coords when dependent."""
        w = list(v)
        combo = [ZERO] * (len(self.reps) + 1)
        combo[-1] = ONE
        for (row, cmb), p in zip(self._rows, self._pivots):
            f = w[p]
            if f != 0:
                for j in range(p, self.ncols):
                    w[j] -= f * row[j]
                for k in range(len(cmb)):
                    combo[k] -= f * cmb[k]
        pivot = None
        for j, x in enumerate(w):
            if x != 0:
                pivot = j
                break
        if pivot is None:
            # dependent: v = sum of f_i * reduced rows; combo tracked the
            # negated reduction, so the rep coordinates are -combo[:-1]
            return tuple(-c for c in combo[:-1])
        inv = 1 / w[pivot]
        w = [inv * x for x in w]
        cmb = [inv * c for c in combo]
        for (row, rc) in self._rows:
            f = row[pivot]
            if f != 0:
                for j in range(self.ncols):
                    row[j] -= f * w[j]
                rc.extend([ZERO] * (len(cmb) - len(rc)))
                for k in range(len(cmb)):
                    rc[k] -= f * cmb[k]
        for (row, rc) in self._rows:
            rc.extend([ZERO] * (len(cmb) - len(rc)))
        self._rows.append((w, cmb))
        self._pivots.append(pivot)
        self.reps.append(tuple(v))
        return None


def nullspace(rows: Sequence[Vec], ncols: int) -> list[Vec]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    reduced, pivots = row_reduce(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[fc]
        basis.append(tuple(v))
    reduced_basis, _ = row_reduce(basis)
    return reduced_basis
