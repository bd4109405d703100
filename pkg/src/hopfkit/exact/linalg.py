"""Dense exact linear algebra and univariate polynomials over Q(i).

Matrices are lists of rows of GaussianRational; polynomials are coefficient
lists, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

from .gaussian import GaussianRational

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def as_matrix(rows):
    return [[GaussianRational.coerce(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B)) if A[i][k] and B[k][j]), ZERO)
             for j in range(len(B[0]))] for i in range(len(A))]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def is_zero(A) -> bool:
    return not any(x for row in A for x in row)


def row_echelon(A):
    """Reduced row echelon form; returns (R, pivot columns)."""
    R = [list(row) for row in A]
    pivots = []
    r = 0
    ncols = len(R[0]) if R else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(A) -> int:
    if not A:
        return 0
    return len(row_echelon(A)[1])


def nullspace(A):
    """Basis of {x : A x = 0} as a list of vectors."""
    ncols = len(A[0])
    R, pivots = row_echelon(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis


def mat_inv(A):
    n = len(A)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


# univariate polynomials


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    lead = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * lead
        q[k] = c
        a = _trim([x - (c * b[i - k] if 0 <= i - k < len(b) else ZERO) for i, x in enumerate(a)])
    return _trim(q), a


def poly_gcd(a, b):
    """Monic gcd."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return a
    inv = a[-1].inverse()
    return [x * inv for x in a]


def poly_deriv(p):
    return _trim([p[k] * k for k in range(1, len(p))])


def charpoly(A):
    """Characteristic polynomial det(xI - A) by Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = mat_mul(A, M)
        for i in range(n):
            M[i][i] = M[i][i] + coeffs[n - k + 1]
        AM = mat_mul(A, M)
        trace = sum((AM[i][i] for i in range(n)), ZERO)
        coeffs[n - k] = -trace / k
    return coeffs


def poly_of_matrix(p, A):
    """Horner evaluation p(A)."""
    n = len(A)
    result = [[ZERO] * n for _ in range(n)]
    for c in reversed(p):
        result = mat_mul(result, A)
        for i in range(n):
            result[i][i] = result[i][i] + c
    return result


def is_diagonalizable(A) -> bool:
    """Exact test: the squarefree part of the characteristic polynomial kills A."""
    p = charpoly(A)
    g = poly_gcd(p, poly_deriv(p))
    sqfree, rem = poly_divmod(p, g)
    assert not rem
    return is_zero(poly_of_matrix(sqfree, A))
