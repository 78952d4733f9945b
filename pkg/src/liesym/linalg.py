"""Exact linear algebra over Q used by every bounded-ansatz solver.

All discovery problems here (centralizers, cofactors, reductions) are linear
in unknown coefficients. Each unknown contributes one column: the image of a
basis element under the linear map. Images are polynomials or vector fields,
flattened to coordinates keyed by ``(component, monomial)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .poly import Poly, VectorField, basis_key, monomials_up_to


def rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    A = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(A)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        pivot_row = A[r]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                row = A[i]
                A[i] = [a - f * b for a, b in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : A v = 0}``, one vector per free column, in reduced form."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def echelon_basis(vectors: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon basis of the span of ``vectors``."""
    R, _ = rref(vectors, ncols)
    return R


def solve(rows: list[list[Fraction]], rhs: list[Fraction], ncols: int) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` with free variables set to zero, or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    R, _ = rref([[Fraction(v) for v in r] for r in rows], len(rows[0]))
    return len(R)


def primitive_integer(v: Sequence[Fraction]) -> list[int]:
    """Clear denominators, divide by the content, make the first nonzero entry positive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g:
        ints = [a // g for a in ints]
    first = next((a for a in ints if a), 0)
    if first < 0:
        ints = [-a for a in ints]
    return ints


class Coordinates:
    """Flattens polynomials or fields into coordinate vectors over a shared key set."""

    def __init__(self):
        self.index: dict = {}

    def _key_of(self, comp: int, m: tuple) -> int:
        k = (comp, m)
        if k not in self.index:
            self.index[k] = len(self.index)
        return self.index[k]

    def sparse(self, obj) -> dict[int, Fraction]:
        if isinstance(obj, Poly):
            return {self._key_of(0, m): c for m, c in obj.terms.items()}
        if isinstance(obj, VectorField):
            out = {}
            for j, comp in enumerate(obj.components):
                for m, c in comp.terms.items():
                    out[self._key_of(j, m)] = c
            return out
        if isinstance(obj, (list, tuple)):
            # list of polys or fields stacked into one vector
            out = {}
            for j, part in enumerate(obj):
                comps = part.components if isinstance(part, VectorField) else (part,)
                for k, comp in enumerate(comps):
                    for m, c in comp.terms.items():
                        out[self._key_of((j, k), m)] = c
            return out
        raise TypeError(f"cannot coordinatize {type(obj).__name__}")


def linear_system(images: list, rhs=None) -> tuple[list[list[Fraction]], list[Fraction] | None, int]:
    """Build ``A`` (and ``b``) whose columns are the coordinates of ``images``.

    Returns ``(rows, rhs_vector, ncols)``.
    """
    coords = Coordinates()
    cols = [coords.sparse(im) for im in images]
    b = coords.sparse(rhs) if rhs is not None else None
    nrows = len(coords.index)
    ncols = len(images)
    rows = [[Fraction(0)] * ncols for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    rhs_vec = None
    if b is not None:
        rhs_vec = [Fraction(0)] * nrows
        for i, c in b.items():
            rhs_vec[i] = c
    return rows, rhs_vec, ncols


def kernel_of_images(images: list) -> list[list[Fraction]]:
    """Coefficient vectors ``c`` with ``sum c_k * images[k] == 0``."""
    rows, _, ncols = linear_system(images)
    return nullspace(rows, ncols)


def solve_combination(images: list, target) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_k * images[k] == target``, or ``None``."""
    rows, rhs, ncols = linear_system(images, target)
    if ncols == 0:
        return [] if not any(rhs) else None
    return solve(rows, rhs, ncols)


def field_monomial_basis(nvars: int, dim: int, degree_bound: int) -> list[tuple[tuple, int]]:
    """Pairs ``(m, j)`` for monomial fields ``x^m e_j`` of degree ``<= degree_bound``.

    Order: ascending degree, graded lex descending within a degree, then component.
    """
    ms = sorted(monomials_up_to(nvars, degree_bound), key=basis_key)
    return [(m, j) for m in ms for j in range(dim)]
