"""Cohomological and analytic invariants of primary Hopf manifolds."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .contraction import ResonantMap
from .exact import IntegerLattice, gaussian_factor, hermite_normal_form, lattice_kernel
from .resonance import Multipliers, compositions, resonance_bounds

HODGE_FOOTNOTE = (
    "The published statement lists (n-1,n) among the nonzero Hodge numbers; "
    "Serre duality and the weight computation give (n,n-1), which is what is emitted."
)


def _require_dim(n: int):
    if n < 2:
        raise ValueError("Hopf manifolds have dimension n >= 2")


@dataclass(frozen=True)
class HodgeTable:
    n: int
    entries: dict
    footnote: str = ""

    def __getitem__(self, pq):
        return self.entries.get(tuple(pq), 0)

    def matrix(self):
        return [[self[p, q] for q in range(self.n + 1)] for p in range(self.n + 1)]

    def serre_dual(self) -> bool:
        return all(self[p, q] == self[self.n - p, self.n - q] for p, q in product(range(self.n + 1), repeat=2))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * v for (p, q), v in self.entries.items())

    def to_json(self):
        out = {"n": self.n, "matrix": self.matrix()}
        if self.footnote:
            out["footnote"] = self.footnote
        return out


@dataclass(frozen=True)
class BottChernTable:
    n: int
    entries: dict

    def __getitem__(self, pq):
        return self.entries.get(tuple(pq), 0)

    def matrix(self):
        return [[self[p, q] for q in range(self.n + 1)] for p in range(self.n + 1)]

    def symmetric(self) -> bool:
        return all(self[p, q] == self[q, p] for p, q in product(range(self.n + 1), repeat=2))

    def to_json(self):
        return {"n": self.n, "matrix": self.matrix()}


def hodge_numbers(n: int) -> HodgeTable:
    _require_dim(n)
    ones = {(0, 0), (0, 1), (n, n - 1), (n, n)}
    return HodgeTable(n, {pq: 1 for pq in ones}, HODGE_FOOTNOTE)


def bott_chern_numbers(n: int) -> BottChernTable:
    _require_dim(n)
    ones = {(0, 0), (1, 1), (n - 1, n), (n, n - 1), (n, n)}
    return BottChernTable(n, {pq: 1 for pq in ones})


def betti_numbers(n: int) -> list:
    """Betti numbers of S^1 x S^(2n-1)."""
    _require_dim(n)
    b = [0] * (2 * n + 1)
    for k in (0, 1, 2 * n - 1, 2 * n):
        b[k] = 1
    return b


# truncated Dolbeault oracle


@dataclass(frozen=True)
class SideDims:
    side: str
    ker_dim: int
    coker_dim: int
    monomials: int


@dataclass(frozen=True)
class TruncatedOracleResult:
    n: int
    k: int
    l: int
    degree_cap: int
    holomorphic: SideDims | None
    laurent: SideDims | None

    @property
    def value(self) -> int:
        """h^{k,l} = dim ker on H^l(W, Omega^k) + dim coker on H^{l-1}(W, Omega^k)."""
        n = self.n
        total = 0
        if self.l == 0:
            total += self.holomorphic.ker_dim
        if self.l == 1:
            total += self.holomorphic.coker_dim
        if self.l == n - 1:
            total += self.laurent.ker_dim
        if self.l == n:
            total += self.laurent.coker_dim
        return total


def _side_scan(lam: Multipliers, k: int, D: int, side: str) -> SideDims:
    n = lam.n
    ker = 0
    count = 0
    forms = list(combinations(range(n), k))
    for d in range(D + 1):
        if side == "holomorphic":
            alphas = list(compositions(d, n))
        else:
            # strictly negative exponents with sum |alpha_i| = d
            if d < n:
                continue
            alphas = [tuple(-(x + 1) for x in c) for c in compositions(d - n, n)]
        for alpha in alphas:
            for I in forms:
                beta = list(alpha)
                for i in I:
                    beta[i] += 1
                count += 1
                if lam.power(beta) == 1:
                    ker += 1
    # Id - d* acts diagonally on monomials by (1 - weight); the cokernel is
    # spanned by the same weight-one monomials as the kernel.
    return SideDims(side, ker, ker, count)


def truncated_dolbeault_oracle(lam: Multipliers, k: int, l: int, D: int) -> TruncatedOracleResult:
    """Hodge number h^{k,l} of W_{d_lambda} from a monomial weight scan up to degree D.

    Holomorphic side: z^alpha dz_I with alpha in N^n. Laurent side (standing in
    for H^{n-1}(W, O)): alpha in (Z_<0)^n. The weight of (alpha, I) is
    lambda^alpha prod_{i in I} lambda_i, compared with 1 exactly.
    """
    n = lam.n
    if l not in (0, 1, n - 1, n):
        raise ValueError(f"l must be one of 0, 1, n-1, n; got {l}")
    if not 0 <= k <= n:
        raise ValueError(f"form degree k={k} out of range")
    need = max(hi for _, hi in resonance_bounds(lam)) + 1
    if D < need:
        raise ValueError(f"degree cap D={D} below resonance bound + 1 = {need}")
    holo = _side_scan(lam, k, D, "holomorphic") if l in (0, 1) else None
    laur = _side_scan(lam, k, D, "laurent") if l in (n - 1, n) else None
    return TruncatedOracleResult(n, k, l, D, holo, laur)


def oracle_hodge_table(lam: Multipliers, D: int) -> HodgeTable:
    n = lam.n
    entries = {}
    for p in range(n + 1):
        for q in sorted({0, 1, n - 1, n}):
            v = truncated_dolbeault_oracle(lam, p, q, D).value
            if v:
                entries[(p, q)] = v
    return HodgeTable(n, entries)


# algebraic dimension


def exponent_data(lam: Multipliers):
    """Prime-exponent matrix P (rows: Gaussian primes, cols: lambda_i) and unit exponents u."""
    facts = [gaussian_factor(x) for x in lam]
    primes = sorted({p for f in facts for p in f.primes}, key=lambda p: (p[0] ** 2 + p[1] ** 2, p))
    P = [[f.exponent(p) for f in facts] for p in primes]
    u = [f.unit_exp for f in facts]
    return primes, P, u


@dataclass(frozen=True)
class AlgDimResult:
    rank: int
    kernel_basis: IntegerLattice
    reduction_note: str | None = None

    def to_json(self):
        return {
            "rank": self.rank,
            "kernel_basis": self.kernel_basis.to_json(),
            "reduction_note": self.reduction_note,
        }


def psi_kernel(lam: Multipliers) -> IntegerLattice:
    """ker(m -> lambda^m) in Z^n.

    lambda^m = 1 iff P m = 0 and u.m = 0 mod 4; the congruence is linearized
    with a slack variable k (u.m - 4k = 0) and the slack coordinate dropped.
    """
    n = lam.n
    _, P, u = exponent_data(lam)
    rows = [row + [0] for row in P] + [u + [-4]]
    K = lattice_kernel(rows, n + 1)
    basis = hermite_normal_form([v[:n] for v in K.basis], n)
    for m in basis:
        if lam.power(m) != 1:
            raise ArithmeticError(f"kernel generator {m} fails lambda^m = 1")
    return IntegerLattice(n, tuple(tuple(v) for v in basis))


def _psi_injective(lam_entries) -> bool:
    if len(lam_entries) == 0:
        return True
    if len(lam_entries) == 1:
        # lambda^m = 1 forces m = 0 for 0 < |lambda| < 1
        return True
    return psi_kernel(Multipliers(tuple(lam_entries))).rank == 0


def algebraic_dimension(lam: Multipliers) -> AlgDimResult:
    K = psi_kernel(lam)
    return AlgDimResult(K.rank, K, reduction_note(lam))


def reduction_note(lam: Multipliers) -> str | None:
    """Describe the algebraic reduction when some multiplier repeats k+1 times
    and the remaining multipliers (with one copy of the repeated one) have
    injective psi; otherwise None."""
    n = lam.n
    for i in range(n):
        group = [j for j in range(n) if lam[j] == lam[i]]
        if group[0] != i or len(group) < 2:
            continue
        k = len(group) - 1
        rest = [lam[i]] + [lam[j] for j in range(n) if j not in group]
        if _psi_injective(rest):
            coords = ",".join(f"z{j + 1}" for j in group)
            return f"algebraic reduction is CP^{k}, via projection to ({coords})"
    return None


# Kodaira dimension and metric flags


@dataclass(frozen=True)
class KodairaReport:
    kodaira_dimension: float
    plurigenera: str
    canonical_divisor: str | None
    reason: str

    def to_json(self):
        return {
            "kodaira_dimension": "-inf",
            "plurigenera": self.plurigenera,
            "canonical_divisor": self.canonical_divisor,
            "reason": self.reason,
        }


def kodaira_report(gamma: ResonantMap) -> KodairaReport:
    n = gamma.n
    if gamma.is_diagonal:
        div = " - ".join(f"W{j + 1}" for j in range(n))
        return KodairaReport(
            float("-inf"), "P_t = 0 for all t >= 1", f"-{div}",
            "dz_1...dz_n/(z_1...z_n) is d_lambda-invariant; its divisor is anti-effective",
        )
    return KodairaReport(
        float("-inf"), "P_t = 0 for all t >= 1", None,
        "upper semicontinuity of plurigenera along the degeneration to d_lambda",
    )


def metric_flags(n: int) -> dict:
    _require_dim(n)
    return {
        "lcK": "yes",
        "pluriclosed": "no" if n > 2 else "yes (on surfaces pluriclosed = Gauduchon, which always exist)",
        "strongly_gauduchon": "no",
        "balanced": "no",
    }
