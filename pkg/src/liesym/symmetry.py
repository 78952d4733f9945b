"""Verification and bounded discovery of symmetries of polynomial vector fields.

Discovery is degree-bounded linear algebra over Q: nothing is claimed beyond
the bound passed in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lie import lie_bracket
from .poly import Poly, VectorField, compose, mat_vec, monomials_up_to, basis_key


@dataclass(frozen=True)
class CofactorCertificate:
    """Outcome of solving ``[h, f] = lambda * f`` for a polynomial ``lambda``.

    ``cofactor`` is ``None`` when no solution of degree ``<= bound`` exists; then
    ``residual`` is the bracket itself.
    """

    cofactor: Poly | None
    residual: VectorField
    bound: int

    @property
    def valid(self) -> bool:
        return self.cofactor is not None and self.residual.is_zero()


@dataclass(frozen=True)
class FieldBasis:
    degree_bound: int
    basis: tuple[VectorField, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def contains(self, g: VectorField) -> bool:
        """Whether ``g`` lies in the span of the basis."""
        if g.is_zero():
            return True
        return linalg.solve_combination(list(self.basis), g) is not None


def _monomial_fields(nvars: int, dim: int, degree_bound: int) -> list[VectorField]:
    return [
        VectorField.unit(Poly.monomial(m), j, dim)
        for m, j in linalg.field_monomial_basis(nvars, dim, degree_bound)
    ]


def _combine(vec: Sequence[Fraction], elems: Sequence) -> object:
    out = None
    for c, e in zip(vec, elems):
        if c:
            out = e * c if out is None else out + e * c
    return out


def _echelon(vectors: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    return linalg.echelon_basis(vectors, ncols) if vectors else []


def check_symmetry(h: VectorField, f: VectorField) -> tuple[bool, VectorField]:
    """``h`` is an infinitesimal symmetry of ``f`` iff ``[h, f] = 0``."""
    b = lie_bracket(h, f)
    return b.is_zero(), b


def default_cofactor_bound(h: VectorField, f: VectorField) -> int:
    """``max(0, deg [h,f] - lowest degree of f)``."""
    b = lie_bracket(h, f)
    if b.is_zero():
        return 0
    return max(0, b.degree() - f.low_degree())


def check_orbital_symmetry(
    h: VectorField, f: VectorField, cofactor_degree_bound: int | None = None
) -> CofactorCertificate:
    """Find a polynomial ``lambda`` with ``[h, f] = lambda f``, degree-bounded."""
    if f.is_zero():
        raise ValueError("orbital symmetry is undefined for the zero field")
    b = lie_bracket(h, f)
    if cofactor_degree_bound is None:
        cofactor_degree_bound = default_cofactor_bound(h, f)
    bound = cofactor_degree_bound
    if b.is_zero():
        return CofactorCertificate(Poly.zero(f.nvars), b, bound)
    monos = sorted(monomials_up_to(f.nvars, bound), key=basis_key)
    images = [f * Poly.monomial(m) for m in monos]
    sol = linalg.solve_combination(images, b)
    if sol is None:
        return CofactorCertificate(None, b, bound)
    lam = Poly(f.nvars, {m: c for m, c in zip(monos, sol)})
    return CofactorCertificate(lam, b - f * lam, bound)


def centralizer_basis(f: VectorField, degree_bound: int) -> FieldBasis:
    """Basis of polynomial fields ``h`` of degree ``<= degree_bound`` with ``[h, f] = 0``.

    Returned in reduced echelon form over the monomial-field coordinates
    (ascending degree, graded lex descending, then component).
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    cands = _monomial_fields(f.nvars, f.dim, degree_bound)
    images = [lie_bracket(c, f) for c in cands]
    null = linalg.kernel_of_images(images)
    ech = _echelon(null, len(cands))
    return FieldBasis(degree_bound, tuple(_combine(v, cands) for v in ech))


def normalizer_basis(
    f: VectorField, degree_bound: int, cofactor_degree_bound: int
) -> list[tuple[VectorField, Poly]]:
    """Basis of pairs ``(h, lambda)`` with ``[h, f] = lambda f`` under both degree bounds."""
    if degree_bound < 0 or cofactor_degree_bound < 0:
        raise ValueError("degree bounds must be nonnegative")
    cands = _monomial_fields(f.nvars, f.dim, degree_bound)
    monos = sorted(monomials_up_to(f.nvars, cofactor_degree_bound), key=basis_key)
    images = [lie_bracket(c, f) for c in cands] + [-(f * Poly.monomial(m)) for m in monos]
    null = linalg.kernel_of_images(images)
    ech = _echelon(null, len(images))
    out = []
    k = len(cands)
    for v in ech:
        h = _combine(v[:k], cands) or VectorField.zero(f.nvars)
        lam = Poly(f.nvars, {m: c for m, c in zip(monos, v[k:])})
        out.append((h, lam))
    return out


def in_normalizer_span(pairs: list[tuple[VectorField, Poly]], h: VectorField, lam: Poly) -> bool:
    """Whether ``(h, lam)`` is a linear combination of the given normalizer pairs."""
    images = [[ph, pl] for ph, pl in pairs]
    return linalg.solve_combination(images, [h, lam]) is not None


def _as_fraction_matrix(T) -> list[list[Fraction]]:
    M = [[Fraction(a) for a in row] for row in T]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("T must be square")
    return M


def check_linear_symmetry(T, f: VectorField) -> bool:
    """``f(Tx) = T f(x)`` for an invertible rational matrix ``T``."""
    M = _as_fraction_matrix(T)
    if len(M) != f.nvars:
        raise ValueError("matrix size does not match the field")
    if linalg.rank(M) < len(M):
        raise ValueError("T is singular")
    Tx = VectorField.linear(M)
    lhs = compose(f, Tx)
    rhs = VectorField(
        [sum((fc * a for fc, a in zip(f.components, row) if a), Poly.zero(f.nvars)) for row in M],
        f.nvars,
    )
    return lhs == rhs


# -- second order -----------------------------------------------------------


def prolong(g: VectorField) -> VectorField:
    """Lift ``g`` on x-space to ``(g(x), Dg(x) y)`` on (x, y)-space."""
    n = g.nvars
    ge = g.extend(n, offset=n)
    ys = [Poly.var(n + i, 2 * n) for i in range(n)]
    Dg = [[c.diff(j) for j in range(n)] for c in ge.components]
    return VectorField(list(ge.components) + mat_vec(Dg, ys), 2 * n)


def second_order_residual(g: VectorField, h: VectorField) -> VectorField:
    """``D^2g(y,y) + Dg h - D_1h g - D_2h Dg y`` as a polynomial field in (x, y)."""
    n = g.nvars
    if not g.is_square():
        raise ValueError("g must be a vector field on x-space")
    if h.nvars != 2 * n or h.dim != n:
        raise ValueError(f"h must have {n} components in {2 * n} variables")
    ge = g.extend(n, offset=n)
    ys = [Poly.var(n + i, 2 * n) for i in range(n)]
    Dg = [[c.diff(j) for j in range(n)] for c in ge.components]
    Dgy = mat_vec(Dg, ys)
    out = []
    for k in range(n):
        gk = ge[k]
        second = Poly.zero(2 * n)
        for i in range(n):
            di = gk.diff(i)
            if di.is_zero():
                continue
            for j in range(n):
                dij = di.diff(j)
                if dij.terms:
                    second = second + dij * ys[i] * ys[j]
        term = second
        for i in range(n):
            if Dg[k][i].terms and h[i].terms:
                term = term + Dg[k][i] * h[i]
        hk = h[k]
        for i in range(n):
            d1 = hk.diff(i)
            if d1.terms and ge[i].terms:
                term = term - d1 * ge[i]
            d2 = hk.diff(n + i)
            if d2.terms and Dgy[i].terms:
                term = term - d2 * Dgy[i]
        out.append(term)
    return VectorField(out, 2 * n)


def check_second_order_symmetry(g: VectorField, h: VectorField) -> tuple[bool, VectorField]:
    """Point-symmetry condition of ``g`` for the second-order equation ``x'' = h(x, x')``."""
    res = second_order_residual(g, h)
    return res.is_zero(), res


def second_order_system(h: VectorField) -> VectorField:
    """First-order form ``(y, h(x, y))`` of ``x'' = h(x, x')``."""
    n = h.dim
    ys = [Poly.var(n + i, 2 * n) for i in range(n)]
    return VectorField(ys + list(h.components), 2 * n)


def second_order_symmetry_basis(h: VectorField, degree_bound: int) -> FieldBasis:
    """Basis of polynomial ``g`` of degree ``<= degree_bound`` satisfying the second-order condition."""
    n = h.dim
    if h.nvars != 2 * n:
        raise ValueError("h must live on (x, y)-space")
    cands = _monomial_fields(n, n, degree_bound)
    images = [second_order_residual(c, h) for c in cands]
    null = linalg.kernel_of_images(images)
    ech = _echelon(null, len(cands))
    return FieldBasis(degree_bound, tuple(_combine(v, cands) for v in ech))


def same_span(a: Sequence[VectorField], b: Sequence[VectorField]) -> bool:
    """Whether two lists of fields span the same Q-vector space."""
    if not a and not b:
        return True
    rows, _, _ = linalg.linear_system(list(a) + list(b))
    ra = linalg.rank([[r[j] for j in range(len(a))] for r in rows]) if a else 0
    rb = linalg.rank([[r[len(a) + j] for j in range(len(b))] for r in rows]) if b else 0
    rab = linalg.rank(rows) if rows else 0
    return ra == rb == rab
