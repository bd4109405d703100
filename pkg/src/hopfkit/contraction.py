"""Resonant contractions gamma = d_lambda + sum a_{m,i} z^m e_i in normal form."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ClosureError, NonResonantTermError, TriangularityError, ValidationError
from .exact import GaussianRational, PolyMap, poly_compose, poly_inverse
from .exact.linalg import as_matrix, identity, is_diagonalizable, is_zero, mat_mul, mat_sub, rank
from .exact.polymap import poly_mul, poly_substitute, unit_vector
from .lie_algebra import LieAlgebraModel, build_model
from .resonance import Multipliers, enumerate_resonances


@dataclass(frozen=True)
class ResonantMap:
    """gamma_i(z) = lambda_i z_i + sum over terms (i, m, a) of a z^m.

    Term indices are 0-based. Resonance of the terms is checked by `validate`,
    not at construction.
    """

    lam: Multipliers
    terms: tuple = ()

    def __post_init__(self):
        n = self.lam.n
        clean = []
        seen = set()
        for i, m, a in self.terms:
            m = tuple(int(e) for e in m)
            if not 0 <= i < n:
                raise ValidationError(f"term component index {i + 1} out of range 1..{n}")
            if len(m) != n or min(m) < 0:
                raise ValidationError(f"term multi-index {m} is not in N^{n}")
            if m == unit_vector(n, i):
                raise ValidationError(f"term ({i + 1};{m}) would change the multiplier lambda_{i + 1}")
            if (i, m) in seen:
                raise ValidationError(f"duplicate term ({i + 1};{m})")
            seen.add((i, m))
            a = GaussianRational.coerce(a)
            if a:
                clean.append((i, m, a))
        object.__setattr__(self, "terms", tuple(sorted(clean, key=lambda t: (t[0], t[1]))))

    @classmethod
    def diagonal(cls, lam) -> ResonantMap:
        return cls(lam if isinstance(lam, Multipliers) else Multipliers(tuple(lam)))

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def is_diagonal(self) -> bool:
        return not self.terms

    @property
    def is_linear(self) -> bool:
        return all(sum(m) == 1 for _, m, _ in self.terms)

    @cached_property
    def polymap(self) -> PolyMap:
        n = self.n
        diag = [(i, unit_vector(n, i), self.lam[i]) for i in range(n)]
        return PolyMap.from_terms(n, diag + list(self.terms))

    def linear_matrix(self):
        return self.polymap.linear_matrix()

    def to_json(self):
        return {
            "lambda": self.lam.to_json(),
            "terms": [{"i": i + 1, "m": list(m), "a": a.to_json()} for i, m, a in self.terms],
        }


@dataclass(frozen=True)
class Diagnostics:
    resonant: bool
    triangular: bool
    messages: tuple = ()


def is_triangular_term(i: int, m) -> bool:
    """Upper triangular: component i only involves z_{i+1}, ..., z_n."""
    return all(e == 0 for e in m[: i + 1])


def validate(gamma: ResonantMap, require_triangular: bool = False) -> Diagnostics:
    """Check resonance of every term and (optionally) upper-triangular shape."""
    res = enumerate_resonances(gamma.lam)
    for i, m, _ in gamma.terms:
        if (i, m) not in res:
            raise NonResonantTermError(
                f"term ({i + 1};{m}) is not a resonance: lambda_{i + 1} = {gamma.lam[i]} "
                f"but lambda^m = {gamma.lam.power(m)}"
            )
    # degree-1 terms only couple equal multipliers; the linear part keeps
    # eigenvalues lambda iff that coupling is nilpotent
    N = [[GaussianRational(0)] * gamma.n for _ in range(gamma.n)]
    for i, m, a in gamma.terms:
        if sum(m) == 1:
            N[i][m.index(1)] = a
    P = N
    for _ in range(gamma.n - 1):
        P = mat_mul(P, N)
    if not is_zero(P):
        raise ValidationError("linear part does not have eigenvalues lambda (off-diagonal part not nilpotent)")
    bad = [(i, m) for i, m, _ in gamma.terms if not is_triangular_term(i, m)]
    msgs = tuple(f"term ({i + 1};{m}) is not upper triangular" for i, m in bad)
    if require_triangular and bad:
        raise TriangularityError(msgs[0])
    return Diagnostics(True, not bad, msgs)


def degree_cap(lam: Multipliers) -> int:
    return enumerate_resonances(lam).max_degree


def invert(gamma: ResonantMap) -> PolyMap:
    """Exact inverse; the resonant inverse is polynomial of degree <= max resonance degree."""
    return poly_inverse(gamma.polymap, degree_cap(gamma.lam))


def conjugate_diagonal(gamma: ResonantMap, mu) -> ResonantMap:
    """d_mu o gamma o d_mu^{-1}: each coefficient a_{m,i} becomes (mu_i / mu^m) a_{m,i}."""
    mu = [GaussianRational.coerce(x) for x in mu]
    terms = []
    for i, m, a in gamma.terms:
        scale = mu[i]
        for x, e in zip(mu, m):
            scale = scale / x**e
        terms.append((i, m, a * scale))
    return ResonantMap(gamma.lam, tuple(terms))


@dataclass(frozen=True)
class PushforwardMatrix:
    """Matrix of X -> dgamma (X o gamma^{-1}); column j is the image of basis[j]."""

    matrix: tuple
    basis: tuple

    def kernel_dim_of_id_minus(self) -> int:
        d = len(self.basis)
        return d - rank(mat_sub(identity(d), [list(r) for r in self.matrix]))

    def to_json(self):
        return {
            "basis": [b.label() for b in self.basis],
            "matrix": [[x.to_json() for x in row] for row in self.matrix],
        }


def pushforward_polymap(model: LieAlgebraModel, f: PolyMap, f_inv: PolyMap | None = None):
    """Exact matrix of f_* on g_lambda for any f in G_lambda.

    Everything is expanded without truncation, so any part of f_* X outside
    the resonant span is detected rather than dropped.
    """
    if f_inv is None:
        f_inv = poly_inverse(f, degree_cap(model.lam))
    n = f.n
    jac = f.jacobian()
    jac_at = {}
    d = model.dim
    M = [[GaussianRational(0)] * d for _ in range(d)]
    for col, (s, m) in enumerate(model.basis):
        x_at = poly_substitute({m: GaussianRational(1)}, f_inv.components)
        for i in range(n):
            if (i, s) not in jac_at:
                jac_at[(i, s)] = poly_substitute(jac[i][s], f_inv.components)
            comp = poly_mul(jac_at[(i, s)], x_at)
            for k, c in comp.items():
                row = model.index.get((i, k))
                if row is None:
                    raise ClosureError(
                        f"pushforward of {model.basis[col].label()} has component z^{k} d/dz{i + 1} "
                        "outside g_lambda"
                    )
                M[row][col] = M[row][col] + c
    return M


def pushforward(gamma: ResonantMap) -> PushforwardMatrix:
    model = build_model(gamma.lam)
    M = pushforward_polymap(model, gamma.polymap, invert(gamma))
    return PushforwardMatrix(tuple(tuple(r) for r in M), model.basis)


@dataclass(frozen=True)
class TangentCohomology:
    h0: int
    h1: int
    higher: int = 0  # h^k for every k >= 2

    def to_json(self):
        return {"h0": self.h0, "h1": self.h1, "h_k_ge_2": self.higher}


def tangent_cohomology(gamma: ResonantMap) -> TangentCohomology:
    k = pushforward(gamma).kernel_dim_of_id_minus()
    return TangentCohomology(k, k, 0)


@dataclass(frozen=True)
class DeformationFamily:
    """Family gamma_t with i-th component coefficients t^{n_{i,m}} a_{m,i}."""

    base: ResonantMap
    exponents: dict

    def evaluate_at(self, t) -> ResonantMap:
        t = GaussianRational.coerce(t)
        terms = [(i, m, a * t ** self.exponents[(i, m)]) for i, m, a in self.base.terms]
        return ResonantMap(self.base.lam, tuple(terms))

    def to_json(self):
        return [{"i": i + 1, "m": list(m), "n": e} for (i, m), e in sorted(self.exponents.items())]


def deformation_exponent(i: int, m) -> int:
    """n_{i,m} = sum_j j m_j - i, with 1-based j and i."""
    return sum((j + 1) * e for j, e in enumerate(m)) - (i + 1)


def deformation_family(gamma: ResonantMap) -> DeformationFamily:
    validate(gamma)
    exps = {}
    for i, m, _ in gamma.terms:
        e = deformation_exponent(i, m)
        if e <= 0:
            raise TriangularityError(f"term ({i + 1};{m}) has n_(i,m) = {e} <= 0; gamma is not upper triangular")
        exps[(i, m)] = e
    return DeformationFamily(gamma, exps)


def deformation_conjugator(n: int, t) -> list:
    """mu = (t^-1, t^-2, ..., t^-n)."""
    t = GaussianRational.coerce(t)
    return [t ** (-(j + 1)) for j in range(n)]


def conjugate_by_polymap(gamma: PolyMap, mu) -> PolyMap:
    """d_mu o gamma o d_mu^{-1} via composition of polynomial maps."""
    d_mu = PolyMap.diagonal(mu)
    d_inv = PolyMap.diagonal([GaussianRational(1) / x for x in mu])
    return poly_compose(d_mu, poly_compose(gamma, d_inv))


class Verdict(str, enum.Enum):
    VAISMAN = "Vaisman"
    NOT_VAISMAN = "NotVaisman"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class VaismanStatus:
    verdict: Verdict
    lee_field: tuple | None
    diagnostic: str

    def __post_init__(self):
        if (self.verdict is Verdict.VAISMAN) != (self.lee_field is not None):
            raise ValueError("lee_field is present exactly for a Vaisman verdict")

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "lee_field": list(self.lee_field) if self.lee_field is not None else None,
            "diagnostic": self.diagnostic,
        }


def lee_coefficients(lam) -> tuple:
    """(ln|lambda_1|, ..., ln|lambda_n|); exact inputs go through their squared modulus."""
    out = []
    for x in lam:
        if isinstance(x, GaussianRational):
            a = x.abs2()
            out.append(0.5 * (math.log(a.numerator) - math.log(a.denominator)))
        else:
            out.append(math.log(abs(complex(x))))
    return tuple(out)


def vaisman_status(gamma: ResonantMap) -> VaismanStatus:
    """Decide Vaisman existence where the normal form makes it decidable.

    Diagonal -> Vaisman. Non-diagonalizable linear part -> not Vaisman, since
    conjugate germs have conjugate linear parts. In dimension 2 any nonzero
    resonant term gives a non-diagonal Hopf surface. Everything else is left
    undetermined: linearizability of nonlinear normal forms is not decided here.
    """
    if gamma.is_diagonal:
        return VaismanStatus(Verdict.VAISMAN, lee_coefficients(gamma.lam), "diagonal contraction d_lambda")
    if not is_diagonalizable(gamma.linear_matrix()):
        return VaismanStatus(Verdict.NOT_VAISMAN, None, "linear part is not diagonalizable")
    if gamma.n == 2:
        return VaismanStatus(Verdict.NOT_VAISMAN, None, "non-diagonal Hopf surface (nonzero resonant term)")
    return VaismanStatus(
        Verdict.UNDETERMINED, None,
        "nonlinear resonant normal form in dimension >= 3; linearizability not decided",
    )


def vaisman_status_linear(A) -> VaismanStatus:
    """Linear contraction z -> A z given by an exact matrix."""
    A = as_matrix(A)
    eig = np.linalg.eigvals(np.array([[complex(x) for x in row] for row in A]))
    if np.any(np.abs(eig) >= 1) or np.any(eig == 0):
        raise ValidationError("matrix is not a contraction (eigenvalues must lie in the punctured unit disk)")
    if not is_diagonalizable(A):
        return VaismanStatus(Verdict.NOT_VAISMAN, None, "minimal polynomial is not squarefree")
    mods = sorted(np.abs(eig))
    return VaismanStatus(Verdict.VAISMAN, tuple(float(np.log(r)) for r in mods), "diagonalizable linear contraction")
