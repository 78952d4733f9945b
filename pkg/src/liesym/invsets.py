"""Invariant varieties: semi-invariants, first integrals, minors and reductions.

Divisibility and ideal membership are decided by bounded linear solves over Q,
never by Groebner bases. Every bound used is reported back to the caller.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lie import divergence, lie_derivative
from .poly import (
    Poly,
    VectorField,
    basis_key,
    columns_matrix,
    determinant,
    evaluate,
    jacobian,
    minor,
    monomials_up_to,
    subsets,
)


@dataclass(frozen=True)
class SemiInvariantCertificate:
    """``X_f(psi) = cofactor * psi`` when ``valid``."""

    psi: Poly
    cofactor: Poly | None
    valid: bool
    bound: int


@dataclass(frozen=True)
class MinorFamily:
    """``size x size`` minors, rows ascending, columns in the given order.

    ``index[k]`` is the ``(rows, cols)`` pair (zero-based) of ``minors[k]``.
    """

    size: int
    index: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    minors: tuple[Poly, ...]

    def nonzero(self) -> list[Poly]:
        return [m for m in self.minors if not m.is_zero()]

    def all_vanish(self) -> bool:
        return all(m.is_zero() for m in self.minors)


def _warn_constant(p: Poly, what: str) -> None:
    if p.is_constant():
        warnings.warn(f"{what} is constant; the certificate is degenerate", stacklevel=3)


def first_integral_check(f: VectorField, phi: Poly) -> bool:
    _warn_constant(phi, "first integral candidate")
    return lie_derivative(f, phi).is_zero()


def _solve_multiplier(target: Poly, factors: Sequence[Poly], bound: int) -> list[Poly] | None:
    """Polynomials ``mu_j`` of degree ``<= bound`` with ``target = sum mu_j factors_j``."""
    n = target.nvars
    monos = sorted(monomials_up_to(n, bound), key=basis_key)
    images = [phi * Poly.monomial(m) for phi in factors for m in monos]
    if target.is_zero():
        return [Poly.zero(n) for _ in factors]
    sol = linalg.solve_combination(images, target)
    if sol is None:
        return None
    k = len(monos)
    return [
        Poly(n, {m: c for m, c in zip(monos, sol[i * k:(i + 1) * k])}) for i in range(len(factors))
    ]


def semi_invariant_cofactor(f: VectorField, psi: Poly, bound: int | None = None) -> SemiInvariantCertificate:
    """Solve ``X_f(psi) = mu psi`` for polynomial ``mu``.

    Default bound: ``deg X_f(psi)`` minus the lowest degree of ``psi``.
    """
    if psi.is_zero():
        raise ValueError("psi must be nonzero")
    _warn_constant(psi, "semi-invariant candidate")
    xf = lie_derivative(f, psi)
    if bound is None:
        bound = max(0, xf.degree() - psi.low_degree())
    if xf.is_zero():
        return SemiInvariantCertificate(psi, Poly.zero(psi.nvars), True, bound)
    sol = _solve_multiplier(xf, [psi], bound)
    if sol is None:
        return SemiInvariantCertificate(psi, None, False, bound)
    return SemiInvariantCertificate(psi, sol[0], True, bound)


def invariant_variety_check(
    f: VectorField, phis: Sequence[Poly], mu_degree_bound: int
) -> tuple[bool, list[list[Poly]] | None]:
    """Invariance criterion ``X_f(phi_i) = sum_j mu_ij phi_j`` with ``deg mu_ij <= bound``.

    On success returns the cofactor matrix (one row per ``phi_i``).
    """
    if not phis:
        raise ValueError("need at least one polynomial")
    rows = []
    for phi in phis:
        sol = _solve_multiplier(lie_derivative(f, phi), phis, mu_degree_bound)
        if sol is None:
            return False, None
        rows.append(sol)
    return True, rows


def minors(fields: Sequence[VectorField], size: int) -> MinorFamily:
    """All ``size x size`` minors of the matrix whose columns are ``fields``."""
    M = columns_matrix(list(fields))
    nrows, ncols = len(M), len(fields)
    if not 1 <= size <= min(nrows, ncols):
        raise ValueError(f"minor size must lie in 1..{min(nrows, ncols)}")
    return _minor_family(M, size)


def _minor_family(M, size: int) -> MinorFamily:
    idx = []
    vals = []
    for cols in subsets(len(M[0]), size):
        for rows in subsets(len(M), size):
            idx.append((rows, cols))
            vals.append(minor(M, rows, cols))
    return MinorFamily(size, tuple(idx), tuple(vals))


def integrating_factor(f: VectorField, h: VectorField) -> SemiInvariantCertificate:
    """``phi = det(f, h)`` on the plane, certified by ``X_f(phi) = div f * phi``.

    ``1/phi`` is then an integrating factor wherever ``phi`` does not vanish.
    """
    if f.nvars != 2 or not f.is_square() or h.nvars != 2 or not h.is_square():
        raise ValueError("integrating_factor needs planar fields")
    return jacobi_multiplier(f, [h])


def jacobi_multiplier(f: VectorField, hs: Sequence[VectorField]) -> SemiInvariantCertificate:
    """``phi = det(f, h_1, ..., h_{n-1})`` with the check ``X_f(phi) = div f * phi``."""
    n = f.nvars
    if not f.is_square():
        raise ValueError("f must be a vector field")
    if len(hs) != n - 1:
        raise ValueError(f"need exactly {n - 1} auxiliary fields, got {len(hs)}")
    phi = determinant(columns_matrix([f, *hs]))
    if phi.is_zero():
        raise ValueError("determinant vanishes identically; the fields are dependent")
    div = divergence(f)
    ok = lie_derivative(f, phi) == div * phi
    return SemiInvariantCertificate(phi, div, ok, div.degree())


def jacobian_rank_minors(Phi: VectorField, s: int) -> MinorFamily:
    """All ``(s+1) x (s+1)`` minors of ``DPhi``; their zero set is the rank ``<= s`` locus."""
    J = jacobian(Phi)
    if not 0 <= s < min(Phi.dim, Phi.nvars):
        raise ValueError(f"s must lie in 0..{min(Phi.dim, Phi.nvars) - 1}")
    return _minor_family(J, s + 1)


def rank_at(Phi: VectorField, point: Sequence) -> int:
    """Rank of ``DPhi(point)``: the largest ``k`` with a nonvanishing ``k x k`` minor."""
    J = jacobian(Phi)
    pt = [Fraction(v) for v in point]
    top = min(Phi.dim, Phi.nvars)
    for k in range(top, 0, -1):
        fam = _minor_family(J, k)
        if any(evaluate(m, pt) for m in fam.minors):
            return k
    return 0


def generic_rank(Phi: VectorField) -> int:
    J = jacobian(Phi)
    for k in range(min(Phi.dim, Phi.nvars), 0, -1):
        if not _minor_family(J, k).all_vanish():
            return k
    return 0


def reduce_by_invariants(
    f: VectorField, Phi: Sequence[Poly], target_degree_bound: int
) -> VectorField | None:
    """Find ``g`` on ``Q^r`` with ``X_f(phi_i) = g_i(phi_1, ..., phi_r)`` exactly.

    Returns ``None`` when no ``g`` of degree ``<= target_degree_bound`` exists.
    When the ``phi_i`` satisfy polynomial relations the answer is not unique;
    the solution with free coefficients set to zero is returned.
    """
    r = len(Phi)
    if r < 1:
        raise ValueError("need at least one invariant")
    monos = sorted(monomials_up_to(r, target_degree_bound), key=basis_key)
    images = [Poly.monomial(m).subs(list(Phi)) for m in monos]
    comps = []
    for phi in Phi:
        target = lie_derivative(f, phi)
        sol = linalg.solve_combination(images, target) if not target.is_zero() else [Fraction(0)] * len(monos)
        if sol is None:
            return None
        comps.append(Poly(r, {m: c for m, c in zip(monos, sol)}))
    return VectorField(comps, r)
