"""Exact multivariate polynomials and polynomial vector fields over Q.

Polynomials are sparse maps from exponent tuples to ``Fraction`` coefficients.
Terms are kept in graded lexicographic order with ``x1 > x2 > ... > xn``;
printing lists the largest term first.

Canonical text form uses normalized signs and explicit operators::

    -x1^2*x2 - x2^3
    1/3*x2^2 + x1

Zero prints as ``0``. The degree of the zero polynomial is ``-1``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


def grlex_key(m: Monomial) -> tuple:
    """Sort key; larger key means larger monomial in graded lex order."""
    return (sum(m), m)


def basis_key(m: Monomial) -> tuple:
    """Key for listing monomial bases: ascending degree, graded lex descending within a degree."""
    return (sum(m), tuple(-e for e in m))


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent tuples of total degree ``d``, largest first."""
    if d < 0:
        return []
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def monomials_up_to(nvars: int, d: int) -> list[Monomial]:
    """All exponent tuples of total degree ``<= d`` in basis order."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def default_names(nvars: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(nvars)]


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has length {len(m)}, expected {nvars}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = _to_fraction(c)
                if c:
                    clean[m] = c
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls(nvars)

    @classmethod
    def const(cls, c: Scalar, nvars: int) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        """The coordinate function ``x_{i+1}`` (``i`` is zero-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): 1})

    @classmethod
    def monomial(cls, m: Sequence[int], c: Scalar = 1) -> Poly:
        return cls(len(m), {tuple(m): c})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Poly:
        # terms already clean: tuples of right length, nonzero Fractions
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def low_degree(self) -> int:
        """Lowest total degree among nonzero terms; ``-1`` for zero."""
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def coeff(self, m: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded lex order, largest first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, d: int) -> Poly:
        """Drop all terms of total degree above ``d``."""
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if sum(m) <= d})

    def depends_on(self, i: int) -> bool:
        return any(m[i] for m in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Poly) -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return None

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        if isinstance(other, Poly):
            self._check(other)
            terms: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    terms[m] = terms.get(m, 0) + c1 * c2
            return Poly._raw(self.nvars, {m: c for m, c in terms.items() if c})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def mul_truncated(self, other: Poly, max_degree: int) -> Poly:
        """``(self * other).truncate(max_degree)`` without forming the dropped terms."""
        self._check(other)
        right = [(m, sum(m), c) for m, c in other.terms.items()]
        terms: dict = {}
        for m1, c1 in self.terms.items():
            room = max_degree - sum(m1)
            for m2, d2, c2 in right:
                if d2 <= room:
                    m = tuple(a + b for a, b in zip(m1, m2))
                    terms[m] = terms.get(m, 0) + c1 * c2
        return Poly._raw(self.nvars, {m: c for m, c in terms.items() if c})

    def __truediv__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: Poly) -> Poly:
        """Quotient ``self / other``; raises ``ArithmeticError`` if not exact."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term()
        rem = self
        quot: dict = {}
        while not rem.is_zero():
            m, c = rem.leading_term()
            if any(a < b for a, b in zip(m, lm)):
                raise ArithmeticError("polynomial division is not exact")
            qm = tuple(a - b for a, b in zip(m, lm))
            qc = c / lc
            quot[qm] = quot.get(qm, 0) + qc
            rem = rem - Poly._raw(self.nvars, {qm: qc}) * other
        return Poly(self.nvars, quot)

    # -- calculus and evaluation -------------------------------------------

    def diff(self, i: int) -> Poly:
        """Partial derivative with respect to variable ``i`` (zero-based)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                terms[dm] = c * e
        return Poly._raw(self.nvars, terms)

    def gradient(self) -> list[Poly]:
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        return evaluate(self, point)

    def subs(self, images: Sequence[Poly], max_degree: int | None = None) -> Poly:
        """Substitute ``images[i]`` for variable ``i``; the result lives in the images' ring.

        With ``max_degree`` the result is truncated there, and so is every
        intermediate product.
        """
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            raise ValueError("cannot substitute into a polynomial with no variables")
        target = images[0].nvars
        for q in images:
            if q.nvars != target:
                raise ValueError("substituted polynomials must share a variable count")
        # cache powers per variable
        if max_degree is None:
            mul = Poly.__mul__
        else:
            images = [q.truncate(max_degree) for q in images]

            def mul(a, b):
                return a.mul_truncated(b, max_degree)

        powers: list[dict[int, Poly]] = [{0: Poly.const(1, target), 1: q} for q in images]

        def pw(i: int, e: int) -> Poly:
            cache = powers[i]
            if e not in cache:
                cache[e] = mul(pw(i, e - 1), images[i])
            return cache[e]

        out = Poly.zero(target)
        for m, c in self.terms.items():
            t = Poly.const(c, target)
            for i, e in enumerate(m):
                if e:
                    t = mul(t, pw(i, e))
            out = out + t
        return out

    def extend(self, extra: int, offset: int = 0) -> Poly:
        """Embed into ``nvars + extra`` variables, inserting the new ones at ``offset``."""
        terms = {m[:offset] + (0,) * extra + m[offset:]: c for m, c in self.terms.items()}
        return Poly._raw(self.nvars + extra, terms)

    # -- comparison and printing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = default_names(self.nvars)
        if len(names) != self.nvars:
            raise ValueError("wrong number of variable names")
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            mag = abs(c)
            if not mono:
                body = _fmt_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_fraction(mag)}*{mono}"
            if k == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.to_str()!r})"


def _fmt_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def fmt_scalar(c: Fraction) -> str:
    return _fmt_fraction(c) if c >= 0 else "-" + _fmt_fraction(-c)


class VectorField:
    """Ordered tuple of polynomials over a common variable set.

    With ``len(components) == nvars`` this is a vector field; otherwise it is
    read as a polynomial map ``Q^nvars -> Q^len(components)``.
    """

    __slots__ = ("nvars", "components")

    def __init__(self, components: Iterable[Poly], nvars: int | None = None):
        comps = tuple(components)
        if nvars is None:
            if not comps:
                raise ValueError("empty field needs an explicit nvars")
            nvars = comps[0].nvars
        for c in comps:
            if not isinstance(c, Poly):
                raise TypeError("components must be Poly instances")
            if c.nvars != nvars:
                raise ValueError("all components must share the same variable count")
        self.nvars = nvars
        self.components = comps

    @classmethod
    def zero(cls, nvars: int, dim: int | None = None) -> VectorField:
        return cls([Poly.zero(nvars)] * (nvars if dim is None else dim), nvars)

    @classmethod
    def identity(cls, nvars: int) -> VectorField:
        return cls([Poly.var(i, nvars) for i in range(nvars)], nvars)

    @classmethod
    def linear(cls, matrix: Sequence[Sequence[Scalar]]) -> VectorField:
        """The linear field ``x -> M x``."""
        n = len(matrix[0])
        xs = [Poly.var(i, n) for i in range(n)]
        comps = []
        for row in matrix:
            if len(row) != n:
                raise ValueError("ragged matrix")
            comps.append(sum((x * _to_fraction(a) for x, a in zip(xs, row)), Poly.zero(n)))
        return cls(comps, n)

    @classmethod
    def diagonal(cls, weights: Sequence[Scalar]) -> VectorField:
        n = len(weights)
        return cls([Poly.var(i, n) * _to_fraction(w) for i, w in enumerate(weights)], n)

    @classmethod
    def unit(cls, p: Poly, j: int, dim: int | None = None) -> VectorField:
        """The field ``p * e_j`` (``j`` zero-based)."""
        dim = p.nvars if dim is None else dim
        comps = [Poly.zero(p.nvars)] * dim
        comps[j] = p
        return cls(comps, p.nvars)

    @property
    def dim(self) -> int:
        return len(self.components)

    def is_square(self) -> bool:
        return self.dim == self.nvars

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self) -> int:
        return max((c.degree() for c in self.components), default=-1)

    def low_degree(self) -> int:
        lows = [c.low_degree() for c in self.components if not c.is_zero()]
        return min(lows) if lows else -1

    def homogeneous_part(self, d: int) -> VectorField:
        return VectorField([c.homogeneous_part(d) for c in self.components], self.nvars)

    def truncate(self, d: int) -> VectorField:
        return VectorField([c.truncate(d) for c in self.components], self.nvars)

    def _check(self, other: VectorField) -> None:
        if self.nvars != other.nvars or self.dim != other.dim:
            raise ValueError(
                f"dimension mismatch: ({self.nvars}->{self.dim}) vs ({other.nvars}->{other.dim})"
            )

    def __add__(self, other: VectorField) -> VectorField:
        if not isinstance(other, VectorField):
            return NotImplemented
        self._check(other)
        return VectorField([a + b for a, b in zip(self, other)], self.nvars)

    def __sub__(self, other: VectorField) -> VectorField:
        if not isinstance(other, VectorField):
            return NotImplemented
        self._check(other)
        return VectorField([a - b for a, b in zip(self, other)], self.nvars)

    def __neg__(self) -> VectorField:
        return VectorField([-a for a in self], self.nvars)

    def __mul__(self, other) -> VectorField:
        if isinstance(other, (int, Fraction, Poly)):
            return VectorField([a * other for a in self], self.nvars)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> VectorField:
        if isinstance(other, (int, Fraction)):
            return VectorField([a / other for a in self], self.nvars)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.nvars, self.components))

    def to_strs(self, names: Sequence[str] | None = None) -> list[str]:
        return [c.to_str(names) for c in self.components]

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return "(" + ", ".join(self.to_strs(names)) + ")"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"VectorField({self.to_str()})"

    def __call__(self, *point) -> tuple[Fraction, ...]:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        return tuple(evaluate(c, point) for c in self.components)

    def extend(self, extra: int, offset: int = 0) -> VectorField:
        return VectorField([c.extend(extra, offset) for c in self], self.nvars + extra)


Matrix = list  # list of rows, entries Poly


def arith(a: Poly, b: Poly, op: str) -> Poly:
    """Exact ``add``, ``sub`` or ``mul`` of two polynomials in the same ring."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial(p: Poly, i: int) -> Poly:
    return p.diff(i)


def jacobian(F: VectorField) -> list[list[Poly]]:
    """Matrix with entry ``(i, j) = dF_i/dx_j``."""
    return [[c.diff(j) for j in range(F.nvars)] for c in F.components]


def mat_vec(M: Sequence[Sequence[Poly]], v: Sequence[Poly]) -> list[Poly]:
    nv = v[0].nvars if v else 0
    out = []
    for row in M:
        if len(row) != len(v):
            raise ValueError("matrix/vector size mismatch")
        acc = Poly.zero(nv)
        for a, b in zip(row, v):
            if a.terms and b.terms:
                acc = acc + a * b
        out.append(acc)
    return out


def compose(F: VectorField, G: VectorField, max_degree: int | None = None) -> VectorField:
    """``F o G`` for ``G: Q^n -> Q^m`` and ``F: Q^m -> Q^k``, optionally truncated."""
    if G.dim != F.nvars:
        raise ValueError(f"cannot compose: G has {G.dim} components but F takes {F.nvars} variables")
    return VectorField([c.subs(G.components, max_degree) for c in F.components], G.nvars)


def evaluate(p: Poly, point: Sequence[Scalar]) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has length {len(point)}, expected {p.nvars}")
    pt = [_to_fraction(v) for v in point]
    total = Fraction(0)
    for m, c in p.terms.items():
        t = c
        for v, e in zip(pt, m):
            if e:
                t *= v ** e
        total += t
    return total


def determinant(M: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square polynomial matrix.

    Cofactor expansion up to size 3, fraction-free Bareiss elimination above.
    """
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n <= 3:
        return _det_cofactor([list(r) for r in M])
    return _det_bareiss([list(r) for r in M])


def _det_cofactor(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = Poly.zero(M[0][0].nvars)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(M: list[list[Poly]]) -> Poly:
    n = len(M)
    nv = M[0][0].nvars
    sign = 1
    prev = Poly.const(1, nv)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(nv)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def minor(M: Sequence[Sequence[Poly]], rows: Sequence[int], cols: Sequence[int]) -> Poly:
    return determinant([[M[i][j] for j in cols] for i in rows])


def columns_matrix(fields: Sequence[VectorField]) -> list[list[Poly]]:
    """The ``dim x len(fields)`` matrix whose columns are the given fields."""
    if not fields:
        raise ValueError("need at least one field")
    dim = fields[0].dim
    for f in fields:
        if f.dim != dim or f.nvars != fields[0].nvars:
            raise ValueError("fields must share dimensions")
    return [[f[i] for f in fields] for i in range(dim)]


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))
