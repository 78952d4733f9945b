"""Text front end: polynomial expressions and system files.

Expression grammar (no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

``/`` only divides by a nonzero constant, which is how ``p/q`` literals are
read. ``^`` binds tighter than unary minus, so ``-x1^2`` is ``-(x1^2)``.

System files::

    # comment
    vars: x1 x2
    field f:
      x1^2 - x2^2
      2*x1*x2
    poly p: x1*x2
    weights B: 1,-1
    matrix T:
      0 -1
      1 0
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import Poly, VectorField, fmt_scalar
from .toral import DiagonalAction


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: Sequence[str] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {col}: {message}{detail}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        col = col0 + start
        if m.group(1):
            toks.append(_Tok("int", m.group(1), col))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(_Tok("op", ch, col))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _ExprParser:
    def __init__(self, text: str, names: Sequence[str], line: int = 1, col0: int = 1):
        self.names = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.line = line
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, expected: Sequence[str]):
        t = self.tok
        found = "end of line" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{msg}, found {found}", self.line, t.col, expected)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Poly:
        p = self.expr()
        if self.tok.kind != "end":
            self.error("unexpected token", ["+", "-", "*", "/", "^", "end of line"])
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            if self.accept("*"):
                p = p * self.unary()
            elif self.tok.kind == "op" and self.tok.text == "/":
                t = self.tok
                self.i += 1
                d = self.unary()
                if not d.is_constant() or d.is_zero():
                    raise ParseError("division only by a nonzero constant", self.line, t.col)
                p = p / d.constant_term()
            else:
                return p

    def unary(self) -> Poly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.accept("^"):
            t = self.tok
            if t.kind != "int":
                self.error("exponent must be a nonnegative integer literal", ["integer"])
            self.i += 1
            base = base ** int(t.text)
            if self.tok.kind == "op" and self.tok.text == "^":
                self.error("chained exponents need parentheses", ["+", "-", "*", "/", ")", "end of line"])
        return base

    def atom(self) -> Poly:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Poly.const(int(t.text), self.nvars)
        if t.kind == "name":
            if t.text not in self.names:
                raise ParseError(f"undeclared variable {t.text!r}", self.line, t.col)
            self.i += 1
            return Poly.var(self.names[t.text], self.nvars)
        if self.accept("("):
            p = self.expr()
            if not self.accept(")"):
                self.error("unbalanced parenthesis", [")"])
            return p
        self.error("expected an operand", ["integer", "variable", "(", "-"])


def parse_expression(text: str, names: Sequence[str], line: int = 1, col0: int = 1) -> Poly:
    """Parse one polynomial expression over the variables ``names``."""
    return _ExprParser(text, names, line, col0).parse()


def parse_rational(text: str, line: int = 1, col: int = 1) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational number {text.strip()!r}", line, col) from None


@dataclass
class SystemFile:
    vars: list[str]
    fields: dict[str, VectorField] = field(default_factory=dict)
    polys: dict[str, Poly] = field(default_factory=dict)
    actions: dict[str, DiagonalAction] = field(default_factory=dict)
    matrices: dict[str, list[list[Fraction]]] = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def names(self) -> set[str]:
        return set(self.fields) | set(self.polys) | set(self.actions) | set(self.matrices)


_HEADER = re.compile(r"^(field|poly|weights|matrix)\s+([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_system(text: str) -> SystemFile:
    """Parse a system file; raises ``ParseError`` with line and column on bad input."""
    system: SystemFile | None = None
    block = None  # (kind, name, header_line, items)
    blocks = []

    def close():
        nonlocal block
        if block is not None:
            blocks.append(block)
            block = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        stripped = body.strip()
        indent = len(body) - len(body.lstrip())
        if stripped.startswith("vars:") or stripped == "vars":
            if system is not None:
                raise ParseError("duplicate 'vars:' declaration", lineno, indent + 1)
            if blocks or block:
                raise ParseError("'vars:' must come first", lineno, indent + 1)
            if not stripped.startswith("vars:"):
                raise ParseError("missing ':'", lineno, indent + 5, [":"])
            rest = stripped[5:]
            names = [n for n in re.split(r"[\s,]+", rest.strip()) if n]
            if not names:
                raise ParseError("no variables declared", lineno, indent + 6, ["variable name"])
            seen = set()
            for nm in names:
                col = body.find(nm, indent + 5) + 1
                if not _NAME.match(nm):
                    raise ParseError(f"bad variable name {nm!r}", lineno, col)
                if nm in seen:
                    raise ParseError(f"duplicate variable {nm!r}", lineno, col)
                seen.add(nm)
            system = SystemFile(vars=names)
            continue
        m = _HEADER.match(stripped)
        if m:
            if system is None:
                raise ParseError("'vars:' must come first", lineno, indent + 1, ["vars:"])
            close()
            kind, name, rest = m.group(1), m.group(2), m.group(3)
            if name in system.names() or any(b[1] == name for b in blocks):
                raise ParseError(f"duplicate name {name!r}", lineno, body.find(name) + 1)
            rest_col = indent + m.start(3) + 1
            block = (kind, name, lineno, [])
            if rest.strip():
                block[3].append((lineno, rest, rest_col))
            continue
        if block is None:
            if system is None:
                raise ParseError("'vars:' must come first", lineno, indent + 1, ["vars:"])
            raise ParseError(
                "expression outside a block", lineno, indent + 1, ["field", "poly", "weights", "matrix"]
            )
        block[3].append((lineno, body, 1))
    close()
    if system is None:
        raise ParseError("missing 'vars:' declaration", 1, 1, ["vars:"])

    for kind, name, hline, items in blocks:
        if kind == "field":
            if not items:
                raise ParseError(f"field {name!r} has no components", hline, 1, ["expression"])
            comps = [parse_expression(t, system.vars, ln, c) for ln, t, c in items]
            system.fields[name] = VectorField(comps, system.nvars)
        elif kind == "poly":
            if len(items) != 1:
                ln = items[1][0] if items else hline
                raise ParseError(f"poly {name!r} needs exactly one expression", ln, 1)
            ln, t, c = items[0]
            system.polys[name] = parse_expression(t, system.vars, ln, c)
        elif kind == "weights":
            if len(items) != 1:
                raise ParseError(f"weights {name!r} must be given on one line", hline, 1)
            ln, t, c = items[0]
            parts = t.split(",")
            ws = []
            offset = 0
            for part in parts:
                ws.append(parse_rational(part, ln, c + offset))
                offset += len(part) + 1
            if len(ws) != system.nvars:
                raise ParseError(
                    f"weights {name!r} has {len(ws)} entries for {system.nvars} variables", ln, c
                )
            system.actions[name] = DiagonalAction(ws)
        else:
            if not items:
                raise ParseError(f"matrix {name!r} has no rows", hline, 1)
            rows = []
            for ln, t, c in items:
                rows.append([parse_rational(e, ln, c) for e in re.split(r"[\s,]+", t.strip()) if e])
            if any(len(r) != len(rows) for r in rows):
                raise ParseError(f"matrix {name!r} must be square", hline, 1)
            system.matrices[name] = rows
    return system


def render_system(system: SystemFile) -> str:
    """Canonical text of a system; ``parse_system(render_system(s))`` reproduces ``s``."""
    lines = ["vars: " + " ".join(system.vars)]
    for name, f in system.fields.items():
        lines.append(f"field {name}:")
        lines.extend("  " + s for s in f.to_strs(system.vars))
    for name, p in system.polys.items():
        lines.append(f"poly {name}: {p.to_str(system.vars)}")
    for name, a in system.actions.items():
        lines.append(f"weights {name}: {a}")
    for name, M in system.matrices.items():
        lines.append(f"matrix {name}:")
        lines.extend("  " + " ".join(fmt_scalar(v) for v in row) for row in M)
    return "\n".join(lines) + "\n"


def systems_equal(a: SystemFile, b: SystemFile) -> bool:
    return (
        a.vars == b.vars
        and a.fields == b.fields
        and a.polys == b.polys
        and a.actions == b.actions
        and a.matrices == b.matrices
    )
