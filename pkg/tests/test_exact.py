from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import gaussian_rationals, nonzero_gaussian
from hopfkit.exact import (
    GR,
    GaussianRational,
    PolyMap,
    gaussian_factor,
    hermite_normal_form,
    lattice_kernel,
    parse_rational,
    poly_compose,
    poly_inverse,
)
from hopfkit.exact.gaussian import normalize_associate
from hopfkit.exact.linalg import charpoly, is_diagonalizable, mat_inv, mat_mul, identity, rank


def to_sympy(x: GaussianRational):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)


# --- Gaussian rationals


def test_parse_rational_accepts_exact_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(-2) == -2
    assert parse_rational(" -7/14 ") == Fraction(-1, 2)
    for bad in ("0.5", "1e3", True, "x", "1/0"):
        with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
            parse_rational(bad)


def test_json_roundtrip_and_string():
    x = GR(Fraction(1, 4), Fraction(-1, 2))
    assert GaussianRational.from_json(x.to_json()) == x
    assert GaussianRational.from_json("1/2") == Fraction(1, 2)
    assert str(GR(0, 1)) == "i"
    assert str(GR(Fraction(1, 4), -2)) == "1/4-2i"


@given(gaussian_rationals, gaussian_rationals, nonzero_gaussian)
def test_field_axioms_against_sympy(a, b, c):
    assert to_sympy(a * b - c) == sympy.expand(to_sympy(a) * to_sympy(b) - to_sympy(c))
    q = (a + b) / c
    assert sympy.simplify(to_sympy(q) - (to_sympy(a) + to_sympy(b)) / to_sympy(c)) == 0
    assert c * c.inverse() == 1
    assert (c ** -3) * (c ** 3) == 1


@given(nonzero_gaussian)
def test_factorization_recomposes(x):
    fac = gaussian_factor(x)
    assert fac.recompose() == x
    for (a, b) in fac.primes:
        # primes normalized to the first quadrant
        assert a > 0 and b >= 0
        norm = a * a + b * b
        assert sympy.isprime(norm) or (b == 0 and sympy.isprime(a) and a % 4 == 3)


@given(nonzero_gaussian)
def test_factorization_norm_consistent(x):
    fac = gaussian_factor(x)
    norm = Fraction(1)
    for (a, b), e in fac.factors:
        norm *= Fraction(a * a + b * b) ** e
    assert norm == x.abs2()


def test_factorization_examples():
    f = gaussian_factor(GR(Fraction(1, 2)))
    assert dict(f.factors) == {(1, 1): -2}
    f = gaussian_factor(GR(Fraction(1, 2), Fraction(1, 2)))
    assert dict(f.factors) == {(1, 1): -1}
    f = gaussian_factor(GR(5))
    assert set(f.primes) == {(2, 1), (1, 2)}


def test_factor_zero_rejected():
    with pytest.raises(ValueError):
        gaussian_factor(GR(0))


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_normalize_associate(a, b):
    if a == 0 and b == 0:
        return
    (p, q), k = normalize_associate((a, b))
    assert p > 0 and q >= 0
    assert GR(0, 1) ** k * GR(p, q) == GR(a, b)


# --- integer lattices


def kernel_in_span(vec, basis):
    if not basis:
        return all(v == 0 for v in vec)
    B = sympy.Matrix(basis).T
    sol, params = B.gauss_jordan_solve(sympy.Matrix(vec))
    sol = sol.subs({p: 0 for p in params})
    return all(s.is_integer for s in sol)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=3))
def test_lattice_kernel_matches_sympy(rows):
    K = lattice_kernel(rows, 4)
    M = sympy.Matrix(rows)
    assert K.rank == 4 - M.rank()
    for v in K.basis:
        assert all(x == 0 for x in M * sympy.Matrix(v))
    # saturation: every integral kernel vector is an integral combination
    for v in M.nullspace():
        den = sympy.ilcm(*[x.q for x in v]) if len(v) else 1
        w = [int(x * den) for x in v]
        g = sympy.igcd(*w)
        w = [x // g for x in w]
        assert kernel_in_span(w, [list(b) for b in K.basis])


def test_lattice_kernel_examples():
    assert lattice_kernel([[1, 1]], 2).basis == ((1, -1),)
    assert lattice_kernel([[1, 0], [0, 1]], 2).rank == 0
    assert lattice_kernel([[2, 2, 1], [0, 0, 0]], 3).basis == ((1, 0, -2), (0, 1, -2))


def test_hnf_is_canonical():
    a = hermite_normal_form([[2, 4, 0], [1, 2, 3]], 3)
    b = hermite_normal_form([[1, 2, 3], [3, 6, 3]], 3)
    assert a == b


# --- matrices


@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_charpoly_rank_inverse_vs_sympy(entries):
    A = [[GR(entries[3 * r + c]) for c in range(3)] for r in range(3)]
    S = sympy.Matrix(3, 3, entries)
    lam = sympy.Symbol("x")
    coeffs = [to_sympy(c) for c in charpoly(A)]
    assert sympy.Poly(sum(c * lam**k for k, c in enumerate(coeffs)), lam) == S.charpoly(lam)
    assert rank(A) == S.rank()
    if S.det() != 0:
        assert mat_mul(A, mat_inv(A)) == identity(3)


def _unimodular(seed):
    # product of elementary integer matrices; determinant 1
    a, b, c = seed
    L = [[GR(1), GR(0), GR(0)], [GR(a), GR(1), GR(0)], [GR(b), GR(c), GR(1)]]
    U = [[GR(1), GR(c), GR(a)], [GR(0), GR(1), GR(b)], [GR(0), GR(0), GR(1)]]
    return mat_mul(L, U)


@given(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
    st.lists(st.integers(-4, 4), min_size=3, max_size=3),
    st.booleans(),
)
def test_diagonalizable_on_constructed_conjugates(seed, eig, jordan):
    # P D P^-1 is diagonalizable; P J P^-1 with a genuine Jordan block is not
    P = _unimodular(seed)
    D = [[GR(eig[i]) if i == j else GR(0) for j in range(3)] for i in range(3)]
    if jordan:
        D[1][1] = D[0][0]
        D[0][1] = GR(1)
    A = mat_mul(mat_mul(P, D), mat_inv(P))
    assert is_diagonalizable(A) == (not jordan)


def test_jordan_block_not_diagonalizable():
    assert not is_diagonalizable([[GR(Fraction(1, 2)), GR(1)], [GR(0), GR(Fraction(1, 2))]])


# --- polynomial maps

no_constant_maps = st.lists(
    st.tuples(st.integers(0, 1), st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3)),
    max_size=4,
).map(lambda ts: PolyMap.from_terms(2, [(i, m, a) for i, m, a in ts if sum(m) > 0]))


@given(no_constant_maps, no_constant_maps, no_constant_maps)
def test_compose_associative(f, g, h):
    assert poly_compose(f, poly_compose(g, h)) == poly_compose(poly_compose(f, g), h)


def test_compose_example():
    f = PolyMap.from_terms(2, [(0, (1, 0), 1), (0, (0, 2), 1), (1, (0, 1), 1)])
    g = PolyMap.from_terms(2, [(0, (1, 0), 1), (1, (0, 1), 2)])
    assert poly_compose(f, g) == PolyMap.from_terms(2, [(0, (1, 0), 1), (0, (0, 2), 4), (1, (0, 1), 2)])


def test_inverse_example_and_identity():
    f = PolyMap.from_terms(2, [(0, (1, 0), Fraction(1, 4)), (0, (0, 2), 1), (1, (0, 1), Fraction(1, 2))])
    g = poly_inverse(f, 2)
    assert g == PolyMap.from_terms(2, [(0, (1, 0), 4), (0, (0, 2), -16), (1, (0, 1), 2)])
    assert poly_compose(f, g) == PolyMap.identity(2)
    assert poly_compose(g, f) == PolyMap.identity(2)


def test_numeric_evaluator_matches_exact():
    import numpy as np

    f = PolyMap.from_terms(2, [(0, (1, 0), GR(Fraction(1, 4), 1)), (0, (0, 2), 3), (1, (0, 1), Fraction(1, 2))])
    z = np.array([[0.3 + 0.1j, -0.2 + 0.5j]])
    out = f.numeric()(z)[0]
    exact = [complex(GR(Fraction(1, 4), 1)) * z[0, 0] + 3 * z[0, 1] ** 2, 0.5 * z[0, 1]]
    assert np.allclose(out, exact, atol=1e-15)
