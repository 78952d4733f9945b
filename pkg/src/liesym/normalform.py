"""Degree-by-degree Poincare-Dulac normalization for diagonal linear parts.

At each degree ``r`` the homological equation ``[A, h_r] = f_r - f*_r`` is
solved monomial by monomial: a monomial field ``x^m e_j`` is an eigenvector of
``ad A`` with eigenvalue ``sum m_i lambda_i - lambda_j``. Nonresonant terms are
removed, resonant ones stay, and ``h_r`` has no resonant component. The whole
field is then conjugated by ``id + h_r`` and truncated before the next degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lie import directional, lie_bracket, lie_derivative
from .poly import Monomial, Poly, VectorField, compose, jacobian, mat_vec, monomials_of_degree
from .toral import DiagonalAction, weight


@dataclass(frozen=True)
class NormalFormResult:
    truncation_degree: int
    linear_part: DiagonalAction
    normal_form: VectorField
    generators: tuple[VectorField, ...]  # h_2 ... h_N
    transformation: VectorField
    resonant_monomials: tuple[tuple[Monomial, int], ...]
    # degree-r part of the working field just before degree r was normalized
    homogeneous_terms: tuple[VectorField, ...] = ()

    def generator(self, r: int) -> VectorField:
        return self.generators[r - 2]


@dataclass(frozen=True)
class NormalFormReport:
    valid: bool
    commutes: bool
    transformation_consistent: bool
    residual_low_degree: int  # -1 when no term of degree <= N survives
    residual: VectorField
    noncommuting_degrees: tuple[int, ...] = field(default_factory=tuple)


def resonant_monomials(A: DiagonalAction, degree: int) -> list[tuple[Monomial, int]]:
    """Monomial fields ``x^m e_j`` of exactly ``degree`` with ``sum m_i lambda_i = lambda_j``."""
    if degree < 2:
        raise ValueError("degree must be at least 2")
    return [
        (m, j)
        for m in monomials_of_degree(A.n, degree)
        for j in range(A.n)
        if weight(A, m, j) == 0
    ]


def diagonal_linear_part(f: VectorField) -> DiagonalAction:
    """Read ``Df(0)``; raise unless ``f(0) = 0`` and ``Df(0)`` is diagonal."""
    if not f.is_square():
        raise ValueError("f must be a vector field")
    n = f.nvars
    lam = []
    for j, c in enumerate(f.components):
        if c.constant_term():
            raise ValueError("f(0) must vanish")
        for i in range(n):
            e = tuple(1 if k == i else 0 for k in range(n))
            a = c.coeff(e)
            if i != j and a:
                raise ValueError("linear part is not diagonal")
            if i == j:
                lam.append(a)
    return DiagonalAction(lam)


def _inverse_apply(Dh: list[list[Poly]], v: list[Poly], N: int, r: int) -> list[Poly]:
    """``(I + Dh)^{-1} v`` truncated at degree ``N``; ``Dh`` has order ``r - 1 >= 1``."""
    total = [p.truncate(N) for p in v]
    term = total
    k = 1
    while k * (r - 1) <= N:
        term = [-p for p in mat_vec(Dh, term)]
        term = [p.truncate(N) for p in term]
        if all(p.is_zero() for p in term):
            break
        total = [a + b for a, b in zip(total, term)]
        k += 1
    return total


def _split_degree(A: DiagonalAction, part: VectorField) -> tuple[VectorField, VectorField]:
    """Return ``(h_r, resonant part)`` for a homogeneous degree-``r`` field."""
    n = part.nvars
    h = [dict() for _ in range(n)]
    keep = [dict() for _ in range(n)]
    for j, comp in enumerate(part.components):
        for m, c in comp.terms.items():
            w = weight(A, m, j)
            if w:
                h[j][m] = c / w
            else:
                keep[j][m] = c
    return (
        VectorField([Poly(n, t) for t in h], n),
        VectorField([Poly(n, t) for t in keep], n),
    )


def compose_transformation(n: int, generators, N: int) -> VectorField:
    """``(id + h_2) o (id + h_3) o ... o (id + h_N)`` truncated at degree ``N``."""
    Phi = VectorField.identity(n)
    for h in generators:
        step = VectorField.identity(n) + h
        Phi = compose(Phi, step, N)
    return Phi


def normal_form(f: VectorField, N: int) -> NormalFormResult:
    """Normalize ``f`` through degree ``N``.

    The result satisfies ``DPhi f* = f o Phi`` modulo terms of degree ``> N``.
    """
    if N < 1:
        raise ValueError("truncation degree must be at least 1")
    A = diagonal_linear_part(f)
    n = f.nvars
    current = f.truncate(N)
    Phi = VectorField.identity(n)
    gens = []
    before = []
    resonant: list[tuple[Monomial, int]] = []
    for r in range(2, N + 1):
        resonant.extend(resonant_monomials(A, r))
        part = current.homogeneous_part(r)
        before.append(part)
        h, _ = _split_degree(A, part)
        gens.append(h)
        if h.is_zero():
            continue
        step = VectorField.identity(n) + h
        pulled = compose(current, step, N)
        current = VectorField(_inverse_apply(jacobian(h), list(pulled.components), N, r), n)
        Phi = compose(Phi, step, N)
    return NormalFormResult(
        truncation_degree=N,
        linear_part=A,
        normal_form=current,
        generators=tuple(gens),
        transformation=Phi,
        resonant_monomials=tuple(resonant),
        homogeneous_terms=tuple(before),
    )


def verify_normal_form(result: NormalFormResult, f: VectorField) -> NormalFormReport:
    """Check commutation with the linear part and conjugacy modulo degree ``N + 1``.

    The transformation is rebuilt from the generators, so a corrupted
    generator shows up in the residual even if the stored map is untouched.
    """
    N = result.truncation_degree
    n = f.nvars
    As = result.linear_part.field()
    fstar = result.normal_form
    bad = tuple(
        r for r in range(2, N + 1) if not lie_bracket(As, fstar.homogeneous_part(r)).is_zero()
    )
    Phi = compose_transformation(n, result.generators, N)
    consistent = Phi == result.transformation
    # DPhi f* - f o Phi, both sides truncated at N
    res = directional(Phi, fstar).truncate(N) - compose(f, Phi, N)
    low = res.low_degree()
    valid = not bad and consistent and res.is_zero()
    return NormalFormReport(valid, not bad, consistent, low, res, bad)


def truncated_first_integral_inheritance_check(fstar: VectorField, phi: Poly, N: int) -> bool:
    """For a truncated first integral ``phi`` of ``f*``, check it is one of ``A_s x`` too."""
    A = diagonal_linear_part(fstar)
    if not lie_derivative(fstar, phi).truncate(N).is_zero():
        raise ValueError("phi is not a first integral of f* through degree N")
    return lie_derivative(A.field(), phi.truncate(N)).is_zero()
