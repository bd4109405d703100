import math
import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import symbolic_pushforward, symbols
from hopfkit.contraction import (
    ResonantMap,
    Verdict,
    conjugate_by_polymap,
    conjugate_diagonal,
    deformation_conjugator,
    deformation_exponent,
    deformation_family,
    invert,
    lee_coefficients,
    pushforward,
    pushforward_polymap,
    tangent_cohomology,
    vaisman_status,
    vaisman_status_linear,
    validate,
)
from hopfkit.errors import ClosureError, NonResonantTermError, TriangularityError, ValidationError
from hopfkit.exact import GR, PolyMap, poly_compose, poly_inverse
from hopfkit.exact.linalg import mat_mul
from hopfkit.lie_algebra import build_model
from hopfkit.resonance import Multipliers, enumerate_resonances

F = Fraction
RES_SURFACE = ResonantMap(Multipliers.of(F(1, 4), F(1, 2)), ((0, (0, 2), 1),))


def to_sympy(x):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)


def polymap_to_sympy(f, z):
    return [sympy.expand(sum(to_sympy(c) * sympy.Mul(*[zi**e for zi, e in zip(z, m)]) for m, c in comp.items()))
            for comp in f.components]


def test_validate_examples():
    assert validate(ResonantMap.diagonal([F(1, 2), F(1, 3)])).triangular
    assert validate(RES_SURFACE).triangular
    with pytest.raises(NonResonantTermError, match="1/9"):
        validate(ResonantMap(Multipliers.of(F(1, 2), F(1, 3)), ((0, (0, 2), 1),)))


def test_validate_triangularity():
    g = ResonantMap(Multipliers.of(F(1, 2), F(1, 2)), ((1, (1, 0), 1),))
    assert not validate(g).triangular
    with pytest.raises(TriangularityError):
        validate(g, require_triangular=True)


def test_validate_rejects_non_nilpotent_linear_coupling():
    g = ResonantMap(Multipliers.of(F(1, 2), F(1, 2)), ((0, (0, 1), 1), (1, (1, 0), 1)))
    with pytest.raises(ValidationError):
        validate(g)


def test_construction_rejects_bad_terms():
    lam = Multipliers.of(F(1, 4), F(1, 2))
    for terms in (((2, (0, 2), 1),), ((0, (0, -1), 1),), ((0, (1, 0), 1),), ((0, (0, 2), 1), (0, (0, 2), 2))):
        with pytest.raises(ValidationError):
            ResonantMap(lam, terms)


def test_inverse_example():
    inv = invert(RES_SURFACE)
    assert inv == PolyMap.from_terms(2, [(0, (1, 0), 4), (0, (0, 2), -16), (1, (0, 1), 2)])
    # invert twice via the generic routine
    assert poly_inverse(inv, 2) == RES_SURFACE.polymap


def test_pushforward_matrix_example():
    M = pushforward(RES_SURFACE)
    assert [b.label() for b in M.basis] == ["Z1", "Z2", "xi[1;(0,2)]"]
    assert [list(r) for r in M.matrix] == [[1, 0, 0], [0, 1, 0], [-4, 8, 1]]


def test_pushforward_matches_symbolic_oracle():
    z = symbols(2)
    g = polymap_to_sympy(RES_SURFACE.polymap, z)
    gi = polymap_to_sympy(invert(RES_SURFACE), z)
    model = build_model(RES_SURFACE.lam)
    M = pushforward(RES_SURFACE).matrix
    for col, (s, m) in enumerate(model.basis):
        X = [0, 0]
        X[s] = sympy.Mul(*[zi**e for zi, e in zip(z, m)])
        push = symbolic_pushforward(g, gi, X, z)
        expected = [sympy.expand(sum(to_sympy(M[row][col]) * (sympy.Mul(*[zi**e for zi, e in zip(z, model.basis[row].m)]) if model.basis[row].s == k else 0)
                                     for row in range(model.dim))) for k in range(2)]
        assert [sympy.expand(p - e) for p, e in zip(push, expected)] == [0, 0]


@pytest.mark.parametrize("lam,expected", [((F(1, 2), F(1, 3)), 2), ((F(1, 2), F(1, 2)), 4), ((F(1, 4), F(1, 2)), 3)])
def test_diagonal_cohomology_is_dim_g(lam, expected):
    tc = tangent_cohomology(ResonantMap.diagonal(lam))
    assert tc.h0 == tc.h1 == expected == build_model(Multipliers(lam)).dim
    assert tc.higher == 0


def test_resonant_surface_cohomology():
    tc = tangent_cohomology(RES_SURFACE)
    assert (tc.h0, tc.h1) == (2, 2)


def random_resonant_map(lam, rng, triangular=False):
    rels = [r for r in enumerate_resonances(lam) if not triangular or all(e == 0 for e in r.m[: r.s + 1])]
    terms = []
    for r in rels:
        if r.degree == 1 and not triangular:
            continue  # keep the linear part diagonal so validation always passes
        if rng.random() < 0.7:
            terms.append((r.s, r.m, GR(F(rng.randint(-5, 5), rng.randint(1, 4)), F(rng.randint(-2, 2), rng.randint(1, 3)))))
    return ResonantMap(lam, tuple(terms))


def test_pushforward_is_lie_automorphism():
    rng = random.Random(7)
    lam = Multipliers.of(F(1, 2), F(1, 4), F(1, 8))
    model = build_model(lam)
    for _ in range(5):
        g = random_resonant_map(lam, rng)
        M = [list(r) for r in pushforward(g).matrix]
        col = lambda j: [M[r][j] for r in range(model.dim)]  # noqa: E731
        for i, j in product(range(model.dim), repeat=2):
            lhs = [GR(0)] * model.dim
            for k, c in model.bracket_indices(i, j).items():
                lhs = [a + c * b for a, b in zip(lhs, col(k))]
            assert lhs == model.bracket_vectors(col(i), col(j))


def test_pushforward_is_multiplicative():
    rng = random.Random(11)
    lam = Multipliers.of(F(1, 2), F(1, 4), F(1, 8))
    model = build_model(lam)
    for _ in range(4):
        g, h = random_resonant_map(lam, rng), random_resonant_map(lam, rng)
        gh = poly_compose(g.polymap, h.polymap)
        lhs = pushforward_polymap(model, gh)
        rhs = mat_mul([list(r) for r in pushforward(g).matrix], [list(r) for r in pushforward(h).matrix])
        assert lhs == rhs


def test_pushforward_detects_non_resonant_map():
    model = build_model(Multipliers.of(F(1, 2), F(1, 3)))
    f = PolyMap.from_terms(2, [(0, (1, 0), F(1, 2)), (0, (0, 2), 1), (1, (0, 1), F(1, 3))])
    with pytest.raises(ClosureError):
        pushforward_polymap(model, f, poly_inverse(f, 4))


def test_deformation_exponent_example():
    assert deformation_exponent(0, (0, 2)) == 3
    fam = deformation_family(RES_SURFACE)
    assert fam.evaluate_at(1) == RES_SURFACE
    assert fam.evaluate_at(0).is_diagonal


def test_deformation_rejects_non_triangular():
    g = ResonantMap(Multipliers.of(F(1, 2), F(1, 2)), ((1, (1, 0), 1),))
    with pytest.raises(TriangularityError):
        deformation_family(g)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool), st.integers(0, 1000))
def test_deformation_equals_conjugation(t, seed):
    rng = random.Random(seed)
    lam = rng.choice([
        Multipliers.of(F(1, 4), F(1, 2)),
        Multipliers.of(F(1, 2), F(1, 2)),
        Multipliers.of(F(1, 8), F(1, 4), F(1, 2)),
    ])
    g = random_resonant_map(lam, rng, triangular=True)
    mu = deformation_conjugator(lam.n, t)
    assert deformation_family(g).evaluate_at(t).polymap == conjugate_by_polymap(g.polymap, mu)


def test_conjugate_diagonal_scaling_law():
    eps = GR(3)
    g = conjugate_diagonal(RES_SURFACE, [eps, eps])
    assert g.terms == ((0, (0, 2), GR(F(1, 3))),)
    assert g.polymap == conjugate_by_polymap(RES_SURFACE.polymap, [eps, eps])


def test_vaisman_examples():
    st_ = vaisman_status(ResonantMap.diagonal([F(1, 2), F(1, 3)]))
    assert st_.verdict is Verdict.VAISMAN
    assert st_.lee_field == pytest.approx((math.log(0.5), math.log(1 / 3)), abs=1e-15)
    assert vaisman_status(RES_SURFACE).verdict is Verdict.NOT_VAISMAN
    jordan = ResonantMap(Multipliers.of(F(1, 2), F(1, 2)), ((0, (0, 1), 1),))
    assert vaisman_status(jordan).verdict is Verdict.NOT_VAISMAN
    nonlin = ResonantMap(Multipliers.of(F(1, 8), F(1, 4), F(1, 2)), ((0, (0, 0, 3), 1),))
    assert vaisman_status(nonlin).verdict is Verdict.UNDETERMINED


def test_vaisman_linear_matrix():
    J = [[F(1, 2), 1], [0, F(1, 2)]]
    assert vaisman_status_linear(J).verdict is Verdict.NOT_VAISMAN
    assert vaisman_status_linear([[F(1, 2), 1], [0, F(1, 3)]]).verdict is Verdict.VAISMAN
    with pytest.raises(ValidationError):
        vaisman_status_linear([[2, 0], [0, F(1, 2)]])


def test_vaisman_invariant_under_diagonal_conjugation():
    for g in (RES_SURFACE, ResonantMap.diagonal([F(1, 2), F(1, 2)])):
        for eps in (GR(2), GR(F(1, 3)), GR(0, 1)):
            assert vaisman_status(conjugate_diagonal(g, [eps, eps])).verdict is vaisman_status(g).verdict


def test_lee_coefficients_only_see_moduli():
    a = lee_coefficients([GR(F(1, 2)), GR(0, F(1, 2))])
    assert a[0] == pytest.approx(a[1], abs=1e-15)
