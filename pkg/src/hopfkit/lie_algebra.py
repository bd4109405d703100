"""The Lie algebra g_lambda of resonant polynomial vector fields.

Basis elements are monomial fields z^m d/dz_s, with Z_j = z_j d/dz_j. The
bracket of two monomial fields is

    [z^m d_s, z^n d_t] = n_s z^(m+n-e_s) d_t - m_t z^(m+n-e_t) d_s,

which covers [Z_j, xi_{s,m}] = (m_j - delta_js) xi_{s,m} as a special case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import ClosureError
from .exact import GaussianRational
from .resonance import Multipliers, ResonanceRelation, basis_descriptor


def monomial_bracket(a: ResonanceRelation, b: ResonanceRelation) -> dict:
    """[a, b] for monomial fields as {(t, k): integer coefficient}."""
    (s, m), (t, n) = a, b
    out: dict = {}
    if n[s]:
        k = tuple(x + y - (i == s) for i, (x, y) in enumerate(zip(m, n)))
        out[(t, k)] = out.get((t, k), 0) + n[s]
    if m[t]:
        k = tuple(x + y - (i == t) for i, (x, y) in enumerate(zip(m, n)))
        out[(s, k)] = out.get((s, k), 0) - m[t]
    return {key: c for key, c in out.items() if c}


@dataclass(frozen=True)
class LieAlgebraModel:
    lam: Multipliers
    basis: tuple
    # (i, j) -> {k: c}, only nonzero brackets; both orders stored
    brackets: dict = field(repr=False)
    grading: dict
    blocks: tuple
    nilradical: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict:
        return {tuple(sym): i for i, sym in enumerate(self.basis)}

    @property
    def reduced_dim(self) -> int:
        return self.dim - len(self.nilradical)

    def labels(self):
        return [b.label() for b in self.basis]

    def bracket_indices(self, i: int, j: int) -> dict:
        return self.brackets.get((i, j), {})

    def bracket_vectors(self, x, y):
        """Bracket of coefficient vectors (sequences indexed like `basis`)."""
        out = [GaussianRational(0)] * self.dim
        for (i, j), res in self.brackets.items():
            if x[i] and y[j]:
                c = x[i] * y[j]
                for k, v in res.items():
                    out[k] = out[k] + c * v
        return out

    def degree_of(self, i: int) -> int:
        return self.basis[i].degree

    def to_json(self):
        consts = []
        for (i, j), res in sorted(self.brackets.items()):
            if i < j:
                for k, c in sorted(res.items()):
                    consts.append({"i": self.basis[i].label(), "j": self.basis[j].label(),
                                   "k": self.basis[k].label(), "c": c})
        return {
            "basis": self.labels(),
            "structure_constants": consts,
            "grading": {str(l): [self.basis[i].label() for i in idx] for l, idx in sorted(self.grading.items())},
            "blocks": [[j + 1 for j in b] for b in self.blocks],
            "nilradical": [self.basis[i].label() for i in self.nilradical],
            "dim": self.dim,
            "reduced_dim": self.reduced_dim,
        }


@lru_cache(maxsize=128)
def build_model(lam: Multipliers) -> LieAlgebraModel:
    basis = tuple(basis_descriptor(lam))
    index = {tuple(sym): i for i, sym in enumerate(basis)}
    brackets = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            res = {}
            for key, c in monomial_bracket(a, b).items():
                k = index.get(key)
                if k is None:
                    raise ClosureError(
                        f"[{a.label()}, {b.label()}] produced z^{key[1]} d/dz{key[0] + 1}, "
                        "which is not a resonant monomial"
                    )
                res[k] = res.get(k, 0) + c
            res = {k: c for k, c in res.items() if c}
            if res:
                brackets[(i, j)] = res

    grading: dict = {}
    for i, sym in enumerate(basis):
        if not sym.is_diagonal:
            grading.setdefault(sym.degree, []).append(i)
    grading = {l: tuple(v) for l, v in grading.items()}

    blocks = []
    seen = set()
    for i in range(lam.n):
        if i in seen:
            continue
        blk = tuple(j for j in range(lam.n) if lam[j] == lam[i])
        seen.update(blk)
        blocks.append(blk)

    nil = tuple(i for i, sym in enumerate(basis) if sym.degree >= 2)
    return LieAlgebraModel(lam, basis, brackets, grading, tuple(blocks), nil)


@dataclass(frozen=True)
class ResonantField:
    """A linear combination of basis fields of g_lambda."""

    lam: Multipliers
    coeffs: dict

    def __post_init__(self):
        model = build_model(self.lam)
        clean = {}
        for sym, c in self.coeffs.items():
            sym = ResonanceRelation(sym[0], tuple(sym[1]))
            if tuple(sym) not in model.index:
                raise ValueError(f"{sym.label()} is not a basis field for lambda={self.lam}")
            c = GaussianRational.coerce(c)
            if c:
                clean[sym] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis_field(cls, lam, sym, c=1) -> ResonantField:
        return cls(lam, {sym: c})

    def vector(self):
        model = build_model(self.lam)
        v = [GaussianRational(0)] * model.dim
        for sym, c in self.coeffs.items():
            v[model.index[tuple(sym)]] = c
        return v

    @classmethod
    def from_vector(cls, lam, v) -> ResonantField:
        model = build_model(lam)
        return cls(lam, {model.basis[i]: c for i, c in enumerate(v) if c})

    def __eq__(self, other):
        if not isinstance(other, ResonantField):
            return NotImplemented
        return self.lam == other.lam and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lam, frozenset(self.coeffs.items())))

    def __add__(self, other):
        return ResonantField.from_vector(self.lam, [a + b for a, b in zip(self.vector(), other.vector())])

    def __neg__(self):
        return ResonantField(self.lam, {k: -v for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return ResonantField(self.lam, {k: v * c for k, v in self.coeffs.items()})

    def __repr__(self):
        terms = " + ".join(f"({c})*{sym.label()}" for sym, c in sorted(self.coeffs.items()))
        return f"ResonantField({terms or '0'})"


def bracket(X: ResonantField, Y: ResonantField) -> ResonantField:
    if X.lam != Y.lam:
        raise ValueError("fields live over different multipliers")
    model = build_model(X.lam)
    return ResonantField.from_vector(X.lam, model.bracket_vectors(X.vector(), Y.vector()))


def _nested(model, res, k):
    # [sum_a res[a] e_a, e_k]
    out = {}
    for a, c in res.items():
        for b, d in model.bracket_indices(a, k).items():
            out[b] = out.get(b, 0) + c * d
    return out


def verify_jacobi(model: LieAlgebraModel):
    """Check Jacobi on all basis triples; returns (ok, first violating triple or None)."""
    d = model.dim
    for i, j, k in itertools.product(range(d), repeat=3):
        total: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for key, v in _nested(model, model.bracket_indices(a, b), c).items():
                total[key] = total.get(key, 0) + v
        if any(total.values()):
            return False, (model.basis[i], model.basis[j], model.basis[k])
    return True, None
