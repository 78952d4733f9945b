from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liesym.lie import (
    adjoint_series,
    check_solution_preserving,
    divergence,
    lie_bracket,
    lie_derivative,
    lie_series_transport,
    series_value,
)
from liesym.poly import Poly, VectorField, compose
from oracles import bracket_at, lie_derivative_at
from strategies import fields, points, polys, small_rationals

x1, x2 = Poly.var(0, 2), Poly.var(1, 2)
y = [Poly.var(i, 3) for i in range(3)]
f213 = VectorField([x1**2 - x2**2, 2 * x1 * x2])
h_euler = VectorField.identity(2)


def test_lie_derivative_examples():
    assert lie_derivative(VectorField([x1, -x2]), x1 * x2).is_zero()
    assert lie_derivative(f213, Poly.const(4, 2)).is_zero()
    f = VectorField([y[0] ** 2 - y[1] * y[2], 2 * y[0] * y[1], 2 * y[0] * y[2]])
    assert lie_derivative(f, y[0] ** 2 + y[1] * y[2]) == 2 * y[0] * (y[0] ** 2 + y[1] * y[2])
    with pytest.raises(ValueError):
        lie_derivative(f, x1)


def test_bracket_examples():
    assert lie_bracket(f213, f213).is_zero()
    assert lie_bracket(h_euler, f213) == f213
    e1 = VectorField([Poly.const(1, 2), Poly.zero(2)])
    assert lie_bracket(h_euler, e1) == -e1
    with pytest.raises(ValueError):
        lie_bracket(f213, VectorField.identity(3))


def test_divergence_examples():
    assert divergence(VectorField([x1, 2 * x2])) == 3
    assert divergence(f213) == 4 * x1
    assert divergence(VectorField([Poly.const(2, 2), Poly.const(-1, 2)])).is_zero()


def test_solution_preserving_examples():
    ok, res = check_solution_preserving(VectorField.identity(2), f213, f213)
    assert ok and res.is_zero()

    v = [Poly.var(i, 4) for i in range(4)]
    r2 = v[0] ** 2 + v[1] ** 2
    f = VectorField([v[2], v[3], r2 * v[0], r2 * v[1]])
    Phi = VectorField([r2, v[2] ** 2 + v[3] ** 2, v[0] * v[2] + v[1] * v[3], v[0] * v[3] - v[1] * v[2]])
    w = [Poly.var(i, 4) for i in range(4)]
    g = VectorField([2 * w[2], 2 * w[0] * w[2], w[1] + w[0] ** 2, Poly.zero(4)])
    assert check_solution_preserving(Phi, f, g)[0]

    f = VectorField([x1 + 2 * x1**2 * x2, -x2 + 3 * x1 * x2**2])
    u = Poly.var(0, 1)
    assert check_solution_preserving(VectorField([x1 * x2]), f, VectorField([5 * u**2]))[0]
    ok, res = check_solution_preserving(VectorField([x1 * x2]), f, VectorField([4 * u**2]))
    assert not ok
    assert res == VectorField([x1**2 * x2**2])


def test_lie_series_examples():
    x = Poly.var(0, 1)
    s = lie_series_transport(VectorField([x]), x, 3)
    assert list(s.coefficients) == [x, x, x / 2, x / 6]
    assert s.parameter == "t" and s.order == 3
    s = lie_series_transport(VectorField([x1, -x2]), x1 * x2, 4)
    assert s[0] == x1 * x2 and all(c.is_zero() for c in s.coefficients[1:])
    s = lie_series_transport(VectorField.zero(2), x1 + x2, 2)
    assert s[1].is_zero() and s[2].is_zero()


def test_lie_series_of_linear_flow_is_exponential():
    # X_f^k(x) = x for f = x, so the partial sums approach e^t x
    x = Poly.var(0, 1)
    s = lie_series_transport(VectorField([x]), x, 5)
    val = series_value(s, 1)
    assert val == x * sum(Fraction(1, k) for k in [1, 1, 2, 6, 24, 120])


def test_adjoint_series_examples():
    s = adjoint_series(h_euler, f213, 2)
    assert list(s.coefficients) == [f213, f213, f213 / 2]
    s = adjoint_series(f213, f213, 3)
    assert all(c.is_zero() for c in s.coefficients[1:])
    with pytest.raises(ValueError):
        adjoint_series(f213, f213, -1)


@settings(max_examples=40, deadline=None)
@given(fields(2, 2), polys(2, 3), points())
def test_lie_derivative_matches_oracle(f, phi, pt):
    assert lie_derivative(f, phi)(pt) == lie_derivative_at(f, phi, pt)


@settings(max_examples=40, deadline=None)
@given(fields(2, 2), fields(2, 2), points())
def test_bracket_matches_oracle(f, g, pt):
    assert list(lie_bracket(f, g)(pt)) == bracket_at(f, g, pt)


@settings(max_examples=50, deadline=None)
@given(fields(2, 2), fields(2, 2))
def test_antisymmetry(f, g):
    assert lie_bracket(f, g) == -lie_bracket(g, f)


@settings(max_examples=50, deadline=None)
@given(fields(2, 2), fields(2, 2), fields(2, 2))
def test_jacobi_identity(f, g, h):
    total = (
        lie_bracket(f, lie_bracket(g, h))
        + lie_bracket(h, lie_bracket(f, g))
        + lie_bracket(g, lie_bracket(h, f))
    )
    assert total.is_zero()


@settings(max_examples=50, deadline=None)
@given(fields(2, 2), fields(2, 2), polys(2, 2), polys(2, 2))
def test_derivation_laws(f, g, phi, psi):
    assert lie_derivative(f, phi * psi) == lie_derivative(f, phi) * psi + phi * lie_derivative(f, psi)
    lhs = lie_derivative(lie_bracket(f, g), phi)
    rhs = lie_derivative(f, lie_derivative(g, phi)) - lie_derivative(g, lie_derivative(f, phi))
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(fields(2, 2), fields(2, 2), polys(2, 2))
def test_module_rule(f, g, psi):
    assert lie_bracket(f, g * psi) == g * lie_derivative(f, psi) + lie_bracket(f, g) * psi


def _triangular(draw_field_low, draw_field_high):
    """Field on Q^3 whose first two components only depend on x1, x2."""
    v = [Poly.var(i, 3) for i in range(3)]
    low = [c.subs(v[:2]) for c in draw_field_low.components]
    return VectorField(low + [draw_field_high[0]], 3), draw_field_low


@settings(max_examples=30, deadline=None)
@given(fields(2, 2), fields(2, 2), fields(3, 2), fields(3, 2))
def test_functoriality_projection(a1, a2, b1, b2):
    f1, g1 = _triangular(a1, b1)
    f2, g2 = _triangular(a2, b2)
    v = [Poly.var(i, 3) for i in range(3)]
    Phi = VectorField(v[:2], 3)
    assert check_solution_preserving(Phi, f1, g1)[0]
    assert check_solution_preserving(Phi, f2, g2)[0]
    ok, _ = check_solution_preserving(Phi, lie_bracket(f1, f2), lie_bracket(g1, g2))
    assert ok


invertible_2x2 = st.tuples(small_rationals, small_rationals, small_rationals, small_rationals).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0
)


@settings(max_examples=30, deadline=None)
@given(invertible_2x2, fields(2, 2), fields(2, 2))
def test_functoriality_linear_conjugation(t, f1, f2):
    a, b, c, d = t
    det = a * d - b * c
    T = VectorField.linear([[a, b], [c, d]])
    Tinv = VectorField.linear([[d / det, -b / det], [-c / det, a / det]])

    def push(f):
        # g(y) = T f(T^{-1} y)
        return compose(T, compose(f, Tinv))

    g1, g2 = push(f1), push(f2)
    assert check_solution_preserving(T, f1, g1)[0]
    assert check_solution_preserving(T, lie_bracket(f1, f2), lie_bracket(g1, g2))[0]


def riccati_field(a):
    """q_a(x) = x a x on 2x2 matrices, coordinates (x11, x12, x21, x22)."""
    v = [Poly.var(i, 4) for i in range(4)]
    X = [[v[0], v[1]], [v[2], v[3]]]
    XA = [[X[i][0] * a[0][j] + X[i][1] * a[1][j] for j in range(2)] for i in range(2)]
    XAX = [[XA[i][0] * X[0][j] + XA[i][1] * X[1][j] for j in range(2)] for i in range(2)]
    return VectorField([XAX[0][0], XAX[0][1], XAX[1][0], XAX[1][1]], 4)


mat2 = st.tuples(small_rationals, small_rationals, small_rationals, small_rationals).map(
    lambda t: [[t[0], t[1]], [t[2], t[3]]]
)


@settings(max_examples=30, deadline=None)
@given(mat2, mat2)
def test_riccati_fields_commute(a, b):
    assert lie_bracket(riccati_field(a), riccati_field(b)).is_zero()
