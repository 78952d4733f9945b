"""Lie derivatives, brackets, divergence and truncated Lie series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .poly import Poly, VectorField, compose, jacobian, mat_vec


def _require_square(f: VectorField, what: str = "f") -> None:
    if not f.is_square():
        raise ValueError(f"{what} must be a vector field (components = variables)")


def lie_derivative(f: VectorField, phi: Poly) -> Poly:
    """``X_f(phi) = sum_i dphi/dx_i * f_i``."""
    if f.nvars != phi.nvars or f.dim != f.nvars:
        raise ValueError("dimension mismatch between field and function")
    out = Poly.zero(phi.nvars)
    for i, fi in enumerate(f.components):
        if fi.terms and phi.depends_on(i):
            out = out + phi.diff(i) * fi
    return out


def directional(F: VectorField, v: VectorField) -> VectorField:
    """``DF(x) v(x)`` for a map ``F`` and a field ``v`` on the same space."""
    if F.nvars != v.nvars or v.dim != v.nvars:
        raise ValueError("dimension mismatch")
    return VectorField(mat_vec(jacobian(F), v.components), F.nvars)


def lie_bracket(f: VectorField, g: VectorField) -> VectorField:
    """``[f, g] = Dg f - Df g``."""
    if f.nvars != g.nvars:
        raise ValueError("dimension mismatch")
    _require_square(f, "f")
    _require_square(g, "g")
    return directional(g, f) - directional(f, g)


def divergence(f: VectorField) -> Poly:
    _require_square(f)
    out = Poly.zero(f.nvars)
    for i, fi in enumerate(f.components):
        out = out + fi.diff(i)
    return out


def solution_preserving_residual(Phi: VectorField, f: VectorField, g: VectorField) -> VectorField:
    """``DPhi f - g o Phi``; zero exactly when ``Phi`` maps solutions of ``f`` to those of ``g``."""
    _require_square(f, "f")
    _require_square(g, "g")
    if Phi.nvars != f.nvars or Phi.dim != g.nvars:
        raise ValueError(
            f"dimension mismatch: Phi is {Phi.nvars}->{Phi.dim}, f on {f.nvars}, g on {g.nvars}"
        )
    return directional(Phi, f) - compose(g, Phi)


def check_solution_preserving(Phi: VectorField, f: VectorField, g: VectorField) -> tuple[bool, VectorField]:
    res = solution_preserving_residual(Phi, f, g)
    return res.is_zero(), res


@dataclass(frozen=True)
class TruncatedSeries:
    """Partial sum ``sum_{k<=order} c_k t^k`` with ``1/k!`` already folded into ``c_k``."""

    parameter: str
    order: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("coefficient count must be order + 1")

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)


def lie_series_transport(f: VectorField, phi: Poly, order: int) -> TruncatedSeries:
    """Coefficients ``X_f^k(phi)/k!`` for ``k = 0..order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [phi]
    current = phi
    for k in range(1, order + 1):
        current = lie_derivative(f, current) / k
        coeffs.append(current)
    return TruncatedSeries("t", order, tuple(coeffs))


def adjoint_series(h: VectorField, f: VectorField, order: int) -> TruncatedSeries:
    """Coefficients ``(ad h)^k(f)/k!`` for ``k = 0..order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if h.nvars != f.nvars:
        raise ValueError("dimension mismatch")
    coeffs = [f]
    current = f
    for k in range(1, order + 1):
        current = lie_bracket(h, current) / k
        coeffs.append(current)
    return TruncatedSeries("s", order, tuple(coeffs))


def series_value(series: TruncatedSeries, t: Union[int, Fraction]):
    """Evaluate the partial sum at a rational parameter value."""
    t = Fraction(t)
    total = series.coefficients[0] * 1
    for k in range(1, series.order + 1):
        total = total + series.coefficients[k] * (t ** k)
    return total
