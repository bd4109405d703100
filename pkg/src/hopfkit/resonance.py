"""Resonance relations lambda_s = lambda^m for multipliers in the punctured unit disk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import ValidationError
from .exact import GaussianRational

_LOG_TOL = 1e-9


class ResonanceRelation(NamedTuple):
    """The pair (s; m), read as the monomial vector field z^m d/dz_s.

    Indices are 0-based. With m = e_s this is the diagonal field Z_s, which
    is how basis symbols of the resonant Lie algebra are encoded.
    """

    s: int
    m: tuple

    @property
    def degree(self) -> int:
        return sum(self.m)

    @property
    def is_diagonal(self) -> bool:
        return self.degree == 1 and self.m[self.s] == 1

    def label(self) -> str:
        if self.is_diagonal:
            return f"Z{self.s + 1}"
        return f"xi[{self.s + 1};({','.join(map(str, self.m))})]"

    def to_json(self) -> dict:
        return {"s": self.s + 1, "m": list(self.m)}


@dataclass(frozen=True)
class Multipliers:
    """The eigenvalues lambda of the linear part of a contraction."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(GaussianRational.coerce(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 2:
            raise ValidationError("a Hopf manifold needs n >= 2 multipliers")
        for i, x in enumerate(entries):
            if not x:
                raise ValidationError(f"lambda[{i + 1}] is zero")
            if x.abs2() >= 1:
                raise ValidationError(f"lambda[{i + 1}] = {x} is not in the open unit disk")

    @classmethod
    def of(cls, *xs) -> Multipliers:
        return cls(tuple(xs))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def power(self, m) -> GaussianRational:
        """lambda^m, exact; negative exponents allowed."""
        out = GaussianRational(1)
        for x, e in zip(self.entries, m):
            if e:
                out = out * x**e
        return out

    @cached_property
    def log_moduli(self) -> tuple:
        """ln|lambda_j| in floating point, computed from the exact |lambda_j|^2."""
        out = []
        for x in self.entries:
            a = x.abs2()
            out.append(0.5 * (math.log(a.numerator) - math.log(a.denominator)))
        return tuple(out)

    @cached_property
    def modulus_order(self) -> tuple:
        """Permutation sorting indices by |lambda| ascending (exact comparison, stable)."""
        return tuple(sorted(range(self.n), key=lambda i: (self.entries[i].abs2(), i)))

    def to_json(self):
        return [x.to_json() for x in self.entries]


def compositions(total: int, parts: int):
    """All m in N^parts with |m| = total, in lexicographic order (descending first entry)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def resonance_bounds(lam: Multipliers) -> tuple:
    """Per-s interval [lo_s, hi_s] containing |m| for every relation (s; m).

    Uses ln|lam_s|/ln|lam_min| <= |m| <= ln|lam_s|/ln|lam_max|, rounded outward.
    """
    logs = lam.log_moduli
    order = lam.modulus_order
    l_min, l_max = logs[order[0]], logs[order[-1]]
    bounds = []
    for s in range(lam.n):
        lo = math.ceil(logs[s] / l_min - _LOG_TOL)
        hi = math.floor(logs[s] / l_max + _LOG_TOL)
        bounds.append((max(lo, 1), hi))
    return tuple(bounds)


@dataclass(frozen=True)
class ResonanceSet:
    lam: Multipliers
    relations: tuple
    bounds: tuple

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    def __contains__(self, rel):
        return tuple(rel) in self._lookup

    @cached_property
    def _lookup(self):
        return frozenset(tuple(r) for r in self.relations)

    @property
    def max_degree(self) -> int:
        return max((r.degree for r in self.relations), default=1)

    def to_json(self):
        return [r.to_json() for r in self.relations]


def enumerate_resonances(lam: Multipliers) -> ResonanceSet:
    """Every (s; m) with lam_s = lam^m exactly, sorted by s, then by m in descending lex order.

    Degrees are scanned one unit beyond the log bounds on each side; a float
    filter on log-moduli discards most candidates before the exact check.
    """
    bounds = resonance_bounds(lam)
    logs = lam.log_moduli
    n = lam.n
    relations = []
    for s in range(n):
        lo, hi = bounds[s]
        target = lam[s]
        found = []
        for d in range(max(lo - 1, 1), hi + 2):
            for m in compositions(d, n):
                if d == 1 and m[s] == 1:
                    continue
                est = sum(e * lg for e, lg in zip(m, logs))
                if abs(est - logs[s]) > 1e-7 * max(1.0, abs(logs[s])):
                    continue
                if lam.power(m) == target:
                    found.append(ResonanceRelation(s, m))
        relations.extend(sorted(found, key=lambda r: r.m, reverse=True))
    return ResonanceSet(lam, tuple(relations), bounds)


def basis_descriptor(lam: Multipliers) -> list:
    """Basis of g_lambda: Z_1..Z_n followed by one xi_{s,m} per relation."""
    n = lam.n
    diag = [ResonanceRelation(j, tuple(int(k == j) for k in range(n))) for j in range(n)]
    return diag + list(enumerate_resonances(lam).relations)
