"""Invariants of diagonal linear actions ``x -> diag(lambda) x``.

Generators of the invariant algebra are found by bounded enumeration followed
by an irreducibility filter. This is exact up to the bound and makes no
completeness claim past it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from . import linalg
from .poly import Monomial, Poly, VectorField, basis_key, monomials_of_degree


@dataclass(frozen=True)
class DiagonalAction:
    """Rational weights ``(lambda_1, ..., lambda_n)`` of a semisimple diagonal field."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Iterable):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in weights))
        if not self.weights:
            raise ValueError("need at least one weight")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def integer_weights(self) -> tuple[int, ...]:
        """Weights rescaled by a positive factor to coprime integers."""
        den = reduce(lcm, (w.denominator for w in self.weights), 1)
        ints = [int(w * den) for w in self.weights]
        g = reduce(gcd, ints, 0)
        return tuple(a // g for a in ints) if g else tuple(ints)

    def field(self) -> VectorField:
        return VectorField.diagonal(self.weights)

    def __str__(self) -> str:
        from .poly import fmt_scalar

        return ",".join(fmt_scalar(w) for w in self.weights)

    @classmethod
    def parse(cls, text: str) -> DiagonalAction:
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not p for p in parts):
            raise ValueError(f"bad weight list {text!r}")
        return cls(Fraction(p) for p in parts)


Actions = Union[DiagonalAction, Sequence[DiagonalAction]]


def _as_list(B: Actions) -> list[DiagonalAction]:
    if isinstance(B, DiagonalAction):
        return [B]
    acts = list(B)
    if not acts:
        raise ValueError("need at least one action")
    n = acts[0].n
    if any(a.n != n for a in acts):
        raise ValueError("actions must act on the same space")
    return acts


def weight(B: DiagonalAction, m: Sequence[int], component: int | None = None) -> Fraction:
    """``sum m_i lambda_i``, minus ``lambda_j`` for the monomial field ``x^m e_j``."""
    if len(m) != B.n:
        raise ValueError(f"monomial length {len(m)} does not match {B.n} weights")
    w = sum((e * l for e, l in zip(m, B.weights)), Fraction(0))
    if component is not None:
        if not 0 <= component < B.n:
            raise IndexError(f"component index {component} out of range")
        w -= B.weights[component]
    return w


def _is_invariant(acts: list[DiagonalAction], m: Monomial) -> bool:
    return all(sum(e * l for e, l in zip(m, a.integer_weights)) == 0 for a in acts)


def invariant_monomials(B: Actions, degree_bound: int) -> list[Monomial]:
    """All nonconstant weight-zero monomials of degree ``<= degree_bound``."""
    acts = _as_list(B)
    n = acts[0].n
    out = []
    for d in range(1, degree_bound + 1):
        out.extend(m for m in monomials_of_degree(n, d) if _is_invariant(acts, m))
    return sorted(out, key=basis_key)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def invariant_monomial_generators(B: Actions, degree_bound: int) -> list[Monomial]:
    """Irreducible weight-zero monomials up to ``degree_bound``.

    A weight-zero monomial is reducible exactly when a smaller weight-zero
    monomial divides it, so one pass in degree order suffices.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    gens: list[Monomial] = []
    for m in invariant_monomials(B, degree_bound):
        if not any(_divides(g, m) for g in gens):
            gens.append(m)
    return gens


def invariant_algebra_is_trivial(B: DiagonalAction) -> bool:
    """No nonconstant invariant monomial exists iff all weights are nonzero with one sign."""
    ws = B.weights
    return all(w > 0 for w in ws) or all(w < 0 for w in ws)


def monomial_relations(generators: Sequence[Sequence[int]]) -> list[list[int]]:
    """Primitive integer kernel vectors of the exponent matrix (columns = generators).

    A vector ``a`` encodes ``prod g_i^{a_i^+} = prod g_i^{a_i^-}``.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = len(generators[0])
    if any(len(g) != n for g in generators):
        raise ValueError("generators must have equal length")
    r = len(generators)
    rows = [[Fraction(generators[k][i]) for k in range(r)] for i in range(n)]
    null = linalg.nullspace(rows, r)
    return [linalg.primitive_integer(v) for v in null]


def relation_binomial(generators: Sequence[Sequence[int]], rel: Sequence[int]) -> Poly:
    """``prod y_i^{a_i^+} - prod y_i^{a_i^-}`` in the generator variables ``y``."""
    pos = tuple(max(a, 0) for a in rel)
    neg = tuple(max(-a, 0) for a in rel)
    return Poly.monomial(pos) - Poly.monomial(neg)


def weight_decompose(B: DiagonalAction, p: Poly) -> dict[Fraction, Poly]:
    """Split ``p`` into parts ``p_chi`` with ``X_B(p_chi) = chi * p_chi``."""
    if p.nvars != B.n:
        raise ValueError("polynomial and action dimensions differ")
    parts: dict[Fraction, dict] = {}
    for m, c in p.terms.items():
        parts.setdefault(weight(B, m), {})[m] = c
    return {w: Poly(p.nvars, t) for w, t in sorted(parts.items())}


def centralizer_monomials(B: DiagonalAction, degree_bound: int) -> list[tuple[Monomial, int]]:
    """Monomial fields ``x^m e_j`` of degree ``<= degree_bound`` commuting with ``diag(lambda) x``."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    return [
        (m, j)
        for m, j in linalg.field_monomial_basis(B.n, B.n, degree_bound)
        if weight(B, m, j) == 0
    ]


def monomial_field(m: Monomial, j: int, coeff=1) -> VectorField:
    return VectorField.unit(Poly.monomial(m, coeff), j, len(m))


def monomial_map(monomials: Sequence[Monomial]) -> VectorField:
    """The map ``x -> (x^{m_1}, ..., x^{m_r})``."""
    return VectorField([Poly.monomial(m) for m in monomials], len(monomials[0]))
