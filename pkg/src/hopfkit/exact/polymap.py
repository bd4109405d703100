"""Sparse polynomial maps C^n -> C^n with Gaussian-rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import GaussianRational
from .linalg import mat_inv

Monomial = tuple[int, ...]
Poly = dict  # Monomial -> GaussianRational, no zero values


def unit_vector(n: int, j: int) -> Monomial:
    return tuple(int(k == j) for k in range(n))


def poly_add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + c * scale
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_scale(p: Poly, c) -> Poly:
    if not c:
        return {}
    return {m: a * c for m, a in p.items()}


def poly_mul(p: Poly, q: Poly, cap: int | None = None) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        d1 = sum(m1)
        for m2, c2 in q.items():
            if cap is not None and d1 + sum(m2) > cap:
                continue
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def poly_truncate(p: Poly, cap: int | None) -> Poly:
    if cap is None:
        return dict(p)
    return {m: c for m, c in p.items() if sum(m) <= cap}


def poly_diff(p: Poly, j: int) -> Poly:
    out = {}
    for m, c in p.items():
        if m[j]:
            mm = list(m)
            mm[j] -= 1
            out[tuple(mm)] = c * m[j]
    return out


class _PowerCache:
    """Truncated powers g_j**k, memoized per variable."""

    def __init__(self, comps, cap):
        self.comps = comps
        self.cap = cap
        n = len(comps)
        self.table = [[{tuple([0] * n): GaussianRational(1)}] for _ in comps]

    def get(self, j, k):
        powers = self.table[j]
        while len(powers) <= k:
            powers.append(poly_mul(powers[-1], self.comps[j], self.cap))
        return powers[k]


def poly_substitute(p: Poly, comps, cap: int | None = None, cache=None) -> Poly:
    """p(g_1, ..., g_n) truncated to total degree <= cap."""
    cache = cache or _PowerCache(comps, cap)
    n = len(comps)
    out: Poly = {}
    for m, c in p.items():
        term = {tuple([0] * n): c}
        for j, e in enumerate(m):
            if e:
                term = poly_mul(term, cache.get(j, e), cap)
        out = poly_add(out, term)
    return out


@dataclass(frozen=True, eq=False)
class PolyMap:
    """n sparse polynomials in n variables, keyed by exponent tuples."""

    n: int
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(self.components)}")
        comps = []
        for comp in self.components:
            clean = {}
            for m, c in dict(comp).items():
                m = tuple(int(e) for e in m)
                if len(m) != self.n or min(m) < 0:
                    raise ValueError(f"bad multi-index {m} for dimension {self.n}")
                c = GaussianRational.coerce(c)
                if c:
                    clean[m] = c
            comps.append(clean)
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def identity(cls, n: int) -> PolyMap:
        return cls(n, tuple({unit_vector(n, i): 1} for i in range(n)))

    @classmethod
    def diagonal(cls, lam) -> PolyMap:
        n = len(lam)
        return cls(n, tuple({unit_vector(n, i): lam[i]} for i in range(n)))

    @classmethod
    def from_terms(cls, n: int, terms) -> PolyMap:
        comps = [dict() for _ in range(n)]
        for i, m, a in terms:
            m = tuple(m)
            comps[i][m] = comps[i].get(m, 0) + GaussianRational.coerce(a)
        return cls(n, tuple(comps))

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash((self.n, tuple(frozenset(c.items()) for c in self.components)))

    @property
    def degree(self) -> int:
        return max((sum(m) for c in self.components for m in c), default=0)

    def terms(self):
        """Iterate (i, m, a) sorted by component then multi-index."""
        for i, comp in enumerate(self.components):
            for m in sorted(comp):
                yield i, m, comp[m]

    def truncate(self, cap: int) -> PolyMap:
        return PolyMap(self.n, tuple(poly_truncate(c, cap) for c in self.components))

    def linear_matrix(self):
        return [[c.get(unit_vector(self.n, j), GaussianRational(0)) for j in range(self.n)] for c in self.components]

    def nonlinear_part(self) -> PolyMap:
        return PolyMap(self.n, tuple({m: a for m, a in c.items() if sum(m) != 1} for c in self.components))

    def jacobian(self):
        return [[poly_diff(c, j) for j in range(self.n)] for c in self.components]

    def __add__(self, other):
        if not isinstance(other, PolyMap) or other.n != self.n:
            return NotImplemented
        return PolyMap(self.n, tuple(poly_add(a, b) for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        if not isinstance(other, PolyMap) or other.n != self.n:
            return NotImplemented
        return PolyMap(self.n, tuple(poly_add(a, b, -1) for a, b in zip(self.components, other.components)))

    def __repr__(self):
        parts = []
        for comp in self.components:
            if not comp:
                parts.append("0")
                continue
            mons = []
            for m in sorted(comp):
                z = "*".join(f"z{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(m) if e)
                mons.append(f"({comp[m]})" + (f"*{z}" if z else ""))
            parts.append(" + ".join(mons))
        return f"PolyMap({'; '.join(parts)})"

    def numeric(self):
        """Vectorized float evaluator: complex array (N, n) -> (N, n)."""
        compiled = []
        for comp in self.components:
            if comp:
                exps = np.array(list(comp.keys()), dtype=int)
                coefs = np.array([complex(c) for c in comp.values()])
            else:
                exps = np.zeros((0, self.n), dtype=int)
                coefs = np.zeros(0, dtype=complex)
            compiled.append((exps, coefs))

        def evaluate(z):
            z = np.asarray(z, dtype=complex)
            flat = z.reshape(-1, self.n)
            out = np.empty_like(flat)
            for i, (exps, coefs) in enumerate(compiled):
                mons = np.prod(flat[:, None, :] ** exps[None, :, :], axis=-1)
                out[:, i] = mons @ coefs
            return out.reshape(z.shape)

        return evaluate


def poly_compose(f: PolyMap, g: PolyMap, degree_cap: int | None = None) -> PolyMap:
    """f o g, truncated to total degree <= degree_cap (None: no truncation)."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    if degree_cap is not None and degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    cache = _PowerCache(g.components, degree_cap)
    return PolyMap(f.n, tuple(poly_substitute(c, g.components, degree_cap, cache) for c in f.components))


def apply_matrix(A, f: PolyMap) -> PolyMap:
    """The map z -> A f(z) for an exact n x n matrix A."""
    comps = []
    for i in range(f.n):
        acc = {}
        for j in range(f.n):
            if A[i][j]:
                acc = poly_add(acc, f.components[j], A[i][j])
        comps.append(acc)
    return PolyMap(f.n, tuple(comps))


def poly_inverse(f: PolyMap, degree_cap: int) -> PolyMap:
    """Compositional inverse of f (f(0) = 0, invertible linear part) up to degree_cap.

    Fixed-point iteration h <- L^{-1}(w - N(h)); each pass fixes one more degree.
    """
    if any(c.get(tuple([0] * f.n)) for c in f.components):
        raise ValueError("map must fix the origin")
    Linv = mat_inv(f.linear_matrix())
    N = f.nonlinear_part()
    ident = PolyMap.identity(f.n)
    h = apply_matrix(Linv, ident)
    for _ in range(max(degree_cap - 1, 0)):
        h = apply_matrix(Linv, ident - poly_compose(N, h, degree_cap))
    return h
