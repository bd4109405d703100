"""Integer lattices: fraction-free elimination, Hermite normal form, kernels."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^n given by a Q-linearly independent basis."""

    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def to_json(self):
        return [list(v) for v in self.basis]


def _reduce_column(rows, partners, col, start):
    """Euclid on column `col` of rows[start:], mirroring every operation on partners.

    Leaves at most one nonzero entry (at index `start`) and returns True if
    that entry exists.
    """
    while True:
        live = [r for r in range(start, len(rows)) if rows[r][col] != 0]
        if not live:
            return False
        piv = min(live, key=lambda r: abs(rows[r][col]))
        rows[start], rows[piv] = rows[piv], rows[start]
        partners[start], partners[piv] = partners[piv], partners[start]
        a = rows[start][col]
        done = True
        for r in range(start + 1, len(rows)):
            b = rows[r][col]
            if b:
                q = b // a
                rows[r] = [x - q * y for x, y in zip(rows[r], rows[start])]
                partners[r] = [x - q * y for x, y in zip(partners[r], partners[start])]
                if rows[r][col]:
                    done = False
        if done:
            return True


def hermite_normal_form(vectors, n: int | None = None) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by `vectors`.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into [0, pivot).
    """
    rows = [list(map(int, v)) for v in vectors]
    if n is None:
        n = len(rows[0]) if rows else 0
    dummy = [[] for _ in rows]
    pivots = []
    r = 0
    for col in range(n):
        if r >= len(rows):
            break
        if _reduce_column(rows, dummy, col, r):
            if rows[r][col] < 0:
                rows[r] = [-x for x in rows[r]]
            pivots.append((r, col))
            r += 1
    rows = rows[:r]
    for i, col in pivots:
        p = rows[i][col]
        for k in range(i):
            q = rows[k][col] // p
            if q:
                rows[k] = [x - q * y for x, y in zip(rows[k], rows[i])]
    return rows


def lattice_kernel(M, ncols: int | None = None) -> IntegerLattice:
    """Basis of {m in Z^n : M m = 0}.

    Unimodular row operations on M^T (tracked in an identity partner) leave
    n - rank(M) zero rows whose partners span the kernel lattice. The result
    is returned in Hermite normal form, so every basis vector is primitive.
    """
    M = [list(map(int, row)) for row in M]
    if ncols is None:
        if not M:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(M[0])
    if any(len(row) != ncols for row in M):
        raise ValueError("ragged integer matrix")
    rows = [[M[i][j] for i in range(len(M))] for j in range(ncols)]
    partners = [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    r = 0
    for col in range(len(M)):
        if r >= ncols:
            break
        if _reduce_column(rows, partners, col, r):
            r += 1
    kernel = hermite_normal_form(partners[r:], ncols)
    return IntegerLattice(ncols, tuple(tuple(v) for v in kernel))


def integer_rank(M) -> int:
    rows = [list(map(int, row)) for row in M]
    return len(hermite_normal_form(rows)) if rows else 0


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
