from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from liesym.lie import lie_bracket
from liesym.poly import Poly, VectorField
from liesym.symmetry import (
    centralizer_basis,
    check_linear_symmetry,
    check_orbital_symmetry,
    check_second_order_symmetry,
    check_symmetry,
    in_normalizer_span,
    normalizer_basis,
    prolong,
    same_span,
    second_order_symmetry_basis,
    second_order_system,
)
from oracles import all_monomials
from strategies import fields, small_rationals

x1, x2 = Poly.var(0, 2), Poly.var(1, 2)
ZERO = Poly.zero(2)
f213 = VectorField([x1**2 - x2**2, 2 * x1 * x2])
euler = VectorField.identity(2)
e1 = VectorField([Poly.const(1, 2), ZERO])


def test_symcheck_examples():
    g = VectorField([-x2, x1])
    f = VectorField.identity(2) + g
    assert check_symmetry(g, f)[0]
    assert check_symmetry(euler, VectorField([x1, 2 * x2]))[0]
    ok, res = check_symmetry(e1, euler)
    assert not ok and res == e1
    with pytest.raises(ValueError):
        check_symmetry(euler, VectorField.identity(3))


def test_orbital_examples():
    cert = check_orbital_symmetry(euler, f213)
    assert cert.valid and cert.cofactor == 1 and cert.residual.is_zero()
    cert = check_orbital_symmetry(euler, e1)
    assert cert.valid and cert.cofactor == -1
    cert = check_orbital_symmetry(euler, VectorField([x1, 2 * x2]))
    assert cert.valid and cert.cofactor.is_zero()
    with pytest.raises(ValueError):
        check_orbital_symmetry(euler, VectorField.zero(2))


def test_orbital_failure_reports_bracket():
    # [x e1, f] is not a multiple of f = (x1, 2 x2)
    h = VectorField([x1**2, ZERO])
    f = VectorField([x1, 2 * x2])
    cert = check_orbital_symmetry(h, f, 3)
    assert not cert.valid and cert.cofactor is None
    assert cert.residual == lie_bracket(h, f)


def test_orbital_nonconstant_cofactor():
    # [psi f, f] = -X_f(psi) f
    f = VectorField([x1 - x2, x1 + x2])
    h = f * x1
    cert = check_orbital_symmetry(h, f)
    assert cert.valid
    assert cert.cofactor == x2 - x1
    assert lie_bracket(h, f) == f * cert.cofactor


def _diag_centralizer_oracle(weights, bound):
    """Count monomial fields of weight zero by brute-force exponent enumeration."""
    n = len(weights)
    count = 0
    for m in all_monomials(n, bound):
        for j in range(n):
            if sum(e * w for e, w in zip(m, weights)) == weights[j]:
                count += 1
    return count


def test_centralizer_planar_resonant():
    basis = centralizer_basis(VectorField([x1, 2 * x2]), 2)
    assert _diag_centralizer_oracle([1, 2], 2) == 3
    assert list(basis) == [
        VectorField([x1, ZERO]),
        VectorField([ZERO, x2]),
        VectorField([ZERO, x1**2]),
    ]


def test_centralizer_three_dimensional_cases():
    v = [Poly.var(i, 3) for i in range(3)]
    # (1,2,3) carries resonances x1^2 e2 and x1 x2 e3
    b = centralizer_basis(VectorField([v[0], 2 * v[1], 3 * v[2]]), 2)
    assert len(b) == _diag_centralizer_oracle([1, 2, 3], 2) == 5
    b = centralizer_basis(VectorField([v[0], 3 * v[1], 5 * v[2]]), 2)
    assert len(b) == _diag_centralizer_oracle([1, 3, 5], 2) == 3
    assert all(g.degree() == 1 for g in b)


def test_centralizer_of_zero_field():
    b = centralizer_basis(VectorField.zero(2), 2)
    assert len(b) == 2 * 6


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=3), st.integers(0, 3))
def test_centralizer_dimension_matches_enumeration(weights, bound):
    f = VectorField.diagonal(weights)
    assert len(centralizer_basis(f, bound)) == _diag_centralizer_oracle(weights, bound)


def test_normalizer_examples():
    pairs = normalizer_basis(f213, 1, 0)
    assert in_normalizer_span(pairs, euler, Poly.const(1, 2))
    pairs = normalizer_basis(f213, 2, 0)
    assert in_normalizer_span(pairs, f213, ZERO)
    pairs = normalizer_basis(e1, 1, 1)
    assert in_normalizer_span(pairs, euler, Poly.const(-1, 2))
    assert not in_normalizer_span(pairs, euler, Poly.const(1, 2))


@settings(max_examples=20, deadline=None)
@given(fields(2, 2, 2))
def test_normalizer_certificates_and_centralizer_inclusion(f):
    assume(not f.is_zero())
    pairs = normalizer_basis(f, 1, 1)
    for h, lam in pairs:
        assert lie_bracket(h, f) == f * lam
    for g in centralizer_basis(f, 1):
        assert in_normalizer_span(pairs, g, ZERO)


@settings(max_examples=30, deadline=None)
@given(fields(2, 2, 2), fields(2, 2, 2), small_rationals)
def test_orbital_scaling_invariance(h, f, c):
    assume(not f.is_zero() and c != 0)
    a = check_orbital_symmetry(h, f, 2)
    b = check_orbital_symmetry(h, f * c, 2)
    assert a.valid == b.valid
    if a.valid:
        assert a.cofactor == b.cofactor


def test_linear_symmetry_examples():
    f = VectorField([x1 + x1**2 * x2, -x2 + 3 * x1 * x2**2])
    assert check_linear_symmetry([[1, 0], [0, 1]], f)
    assert check_linear_symmetry([[2, 0], [0, Fraction(1, 2)]], f)
    assert not check_linear_symmetry([[0, -1], [1, 0]], VectorField([x1, 2 * x2]))
    assert check_linear_symmetry([[0, -1], [1, 0]], VectorField([x1**3 + x1 * x2**2, x2**3 + x1**2 * x2]))
    with pytest.raises(ValueError):
        check_linear_symmetry([[1, 1], [2, 2]], f)


# -- second order -----------------------------------------------------------

v4 = [Poly.var(i, 4) for i in range(4)]
r2 = v4[0] ** 2 + v4[1] ** 2
central_h = VectorField([r2 * v4[0], r2 * v4[1]])


def test_prolong_examples():
    assert prolong(VectorField.identity(2)) == VectorField.identity(4)
    assert prolong(VectorField([-x2, x1])) == VectorField([-v4[1], v4[0], -v4[3], v4[2]])
    c = VectorField([Poly.const(2, 2), Poly.const(-1, 2)])
    assert prolong(c) == VectorField([Poly.const(2, 4), Poly.const(-1, 4), Poly.zero(4), Poly.zero(4)])


def test_second_order_central_force():
    assert check_second_order_symmetry(VectorField([-x2, x1]), central_h)[0]
    assert check_second_order_symmetry(VectorField.zero(2), central_h)[0]
    ok, res = check_second_order_symmetry(VectorField.identity(2), central_h)
    assert not ok
    assert res == central_h * -2


@st.composite
def second_order_pairs(draw):
    g = draw(fields(2, 2, 3))
    h = VectorField(
        [draw(fields(4, 2, 3))[0], draw(fields(4, 2, 3))[1]], 4
    )
    return g, h


@settings(max_examples=50, deadline=None)
@given(second_order_pairs())
def test_second_order_equals_prolonged_bracket(pair):
    g, h = pair
    ok, res = check_second_order_symmetry(g, h)
    br = lie_bracket(prolong(g), second_order_system(h))
    assert ok == br.is_zero()
    assert all(c.is_zero() for c in br.components[:2])
    assert VectorField(br.components[2:], 4) == -res


@settings(max_examples=15, deadline=None)
@given(fields(2, 3, 3))
def test_affine_solutions_equal_centralizer(h0):
    h = h0.extend(2, offset=2)
    affine = second_order_symmetry_basis(h, 1)
    assert same_span(list(affine), list(centralizer_basis(h0, 1)))
    # no quadratic solutions appear either
    assert same_span(list(second_order_symmetry_basis(h, 2)), list(affine))


@settings(max_examples=15, deadline=None)
@given(second_order_pairs())
def test_second_order_dimension_bound(pair):
    _, h = pair
    n = 2
    assert len(second_order_symmetry_basis(h, 2)) <= n + n * n


def test_free_particle_has_full_affine_algebra():
    h = VectorField.zero(4, 2)
    assert len(second_order_symmetry_basis(h, 2)) == 2 + 4


def test_central_force_symmetries():
    basis = second_order_symmetry_basis(central_h, 2)
    assert same_span(list(basis), [VectorField([-x2, x1])])
