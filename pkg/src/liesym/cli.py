"""Command-line front end.

Every command builds one report dictionary with the keys ``command``,
``inputs``, ``result``, ``certificates``, ``bounds`` and ``valid``. Text and
JSON output are rendered from that same dictionary, so polynomial strings are
identical in both.

Exit codes: 0 on success (and a passing check), 1 for a well-formed negative
result, 2 for usage, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import invsets, lie, normalform, symmetry, toral
from .parser import ParseError, SystemFile, parse_system, render_system
from .poly import Poly, VectorField, default_names, fmt_scalar


class UsageError(Exception):
    pass


# -- helpers -----------------------------------------------------------------


class Context:
    def __init__(self, system: SystemFile | None):
        self.system = system

    @property
    def names(self) -> list[str]:
        if self.system is None:
            raise UsageError("this command needs a system file (-f FILE)")
        return self.system.vars

    def field(self, name: str) -> VectorField:
        if self.system is None:
            raise UsageError("this command needs a system file (-f FILE)")
        if name not in self.system.fields:
            raise UsageError(f"no field named {name!r}")
        return self.system.fields[name]

    def poly(self, name: str) -> Poly:
        if self.system is None:
            raise UsageError("this command needs a system file (-f FILE)")
        if name not in self.system.polys:
            raise UsageError(f"no poly named {name!r}")
        return self.system.polys[name]

    def action(self, spec: str) -> toral.DiagonalAction:
        if self.system is not None and spec in self.system.actions:
            return self.system.actions[spec]
        try:
            return toral.DiagonalAction.parse(spec)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{spec!r} is neither a weights name nor a comma-separated rational list") from None

    def action_names(self, B: toral.DiagonalAction) -> list[str]:
        if self.system is not None and self.system.nvars == B.n:
            return self.system.vars
        return default_names(B.n)

    def matrix(self, spec: str) -> list[list[Fraction]]:
        if self.system is not None and spec in self.system.matrices:
            return self.system.matrices[spec]
        try:
            rows = [[Fraction(v) for v in r.split(",")] for r in spec.split(";")]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{spec!r} is neither a matrix name nor a literal like '0,-1;1,0'") from None
        return rows


def pstr(p: Poly, names: Sequence[str]) -> str:
    return p.to_str(names)


def fstrs(f: VectorField, names: Sequence[str]) -> list[str]:
    return f.to_strs(names)


def mono_str(m, names: Sequence[str]) -> str:
    return Poly.monomial(m).to_str(names)


def field_mono_str(m, j: int, names: Sequence[str]) -> str:
    return f"{mono_str(m, names)}*e{j + 1}"


def report(command, inputs, result, certificates=None, bounds=None, valid=True) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "certificates": certificates or {},
        "bounds": bounds or {},
        "valid": bool(valid),
    }


# -- commands ----------------------------------------------------------------


def cmd_show(ctx: Context, a) -> dict:
    if ctx.system is None:
        raise UsageError("show needs a system file (-f FILE)")
    return report("show", {}, {"system": render_system(ctx.system)})


def cmd_bracket(ctx, a):
    f, g = ctx.field(a.F), ctx.field(a.G)
    n = ctx.names
    b = lie.lie_bracket(f, g)
    return report("bracket", {a.F: fstrs(f, n), a.G: fstrs(g, n)}, {"bracket": fstrs(b, n)})


def cmd_lieder(ctx, a):
    f, p = ctx.field(a.F), ctx.poly(a.P)
    n = ctx.names
    return report(
        "lieder", {a.F: fstrs(f, n), a.P: pstr(p, n)}, {"lie_derivative": pstr(lie.lie_derivative(f, p), n)}
    )


def cmd_symcheck(ctx, a):
    h, f = ctx.field(a.H), ctx.field(a.F)
    n = ctx.names
    ok, res = symmetry.check_symmetry(h, f)
    return report(
        "symcheck", {a.H: fstrs(h, n), a.F: fstrs(f, n)}, {"symmetric": ok},
        {"bracket": fstrs(res, n)}, valid=ok,
    )


def cmd_orbsym(ctx, a):
    h, f = ctx.field(a.H), ctx.field(a.F)
    n = ctx.names
    cert = symmetry.check_orbital_symmetry(h, f, a.cofactor_deg)
    return report(
        "orbsym",
        {a.H: fstrs(h, n), a.F: fstrs(f, n)},
        {"cofactor": pstr(cert.cofactor, n) if cert.cofactor is not None else None},
        {"residual": fstrs(cert.residual, n)},
        {"cofactor_degree": cert.bound},
        valid=cert.valid,
    )


def cmd_centralizer(ctx, a):
    f = ctx.field(a.F)
    n = ctx.names
    basis = symmetry.centralizer_basis(f, a.max_deg)
    return report(
        "centralizer", {a.F: fstrs(f, n)},
        {"dimension": len(basis), "basis": [fstrs(b, n) for b in basis]},
        bounds={"max_degree": a.max_deg},
    )


def cmd_normalizer(ctx, a):
    f = ctx.field(a.F)
    n = ctx.names
    pairs = symmetry.normalizer_basis(f, a.max_deg, a.cofactor_deg)
    return report(
        "normalizer", {a.F: fstrs(f, n)},
        {"dimension": len(pairs), "basis": [{"h": fstrs(h, n), "cofactor": pstr(l, n)} for h, l in pairs]},
        bounds={"max_degree": a.max_deg, "cofactor_degree": a.cofactor_deg},
    )


def cmd_linsym(ctx, a):
    T, f = ctx.matrix(a.T), ctx.field(a.F)
    n = ctx.names
    ok = symmetry.check_linear_symmetry(T, f)
    return report(
        "linsym",
        {a.T: [[fmt_scalar(v) for v in r] for r in T], a.F: fstrs(f, n)},
        {"symmetric": ok}, valid=ok,
    )


def cmd_secord(ctx, a):
    names = ctx.names
    if len(names) % 2:
        raise UsageError("secord needs an even number of variables: x-variables then y-variables")
    k = len(names) // 2
    g2, h = ctx.field(a.G), ctx.field(a.H)
    if g2.dim != k or h.dim != k:
        raise UsageError(f"G and H must have {k} components")
    if any(c.depends_on(k + i) for c in g2 for i in range(k)):
        raise UsageError("G may only depend on the first half of the variables")
    g = VectorField([Poly(k, {m[:k]: c for m, c in p.terms.items()}) for p in g2], k)
    ok, res = symmetry.check_second_order_symmetry(g, h)
    return report(
        "secord", {a.G: fstrs(g, names[:k]), a.H: fstrs(h, names)},
        {"symmetric": ok}, {"residual": fstrs(res, names)}, valid=ok,
    )


def cmd_toral_gens(ctx, a):
    B = ctx.action(a.W)
    names = ctx.action_names(B)
    gens = toral.invariant_monomial_generators(B, a.max_deg)
    return report(
        "toral-gens", {"weights": str(B)}, {"generators": [mono_str(m, names) for m in gens]},
        bounds={"max_degree": a.max_deg, "complete_beyond_bound": False},
    )


def cmd_toral_trivial(ctx, a):
    B = ctx.action(a.W)
    return report("toral-trivial", {"weights": str(B)}, {"trivial": toral.invariant_algebra_is_trivial(B)})


def cmd_relations(ctx, a):
    bounds = {}
    if a.weights is not None:
        if a.M:
            raise UsageError("give either monomial names or --weights, not both")
        if a.max_deg is None:
            raise UsageError("--weights needs --max-deg")
        B = ctx.action(a.weights)
        names = ctx.action_names(B)
        gens = toral.invariant_monomial_generators(B, a.max_deg)
        bounds = {"max_degree": a.max_deg}
        inputs = {"weights": str(B)}
    else:
        if not a.M:
            raise UsageError("relations needs monomial poly names or --weights W --max-deg d")
        names = ctx.names
        gens = []
        for nm in a.M:
            p = ctx.poly(nm)
            if len(p.terms) != 1 or p.coeff(next(iter(p.terms))) != 1:
                raise UsageError(f"{nm!r} is not a monic monomial")
            gens.append(next(iter(p.terms)))
        inputs = {}
    if not gens:
        raise UsageError("no generators to relate")
    rels = toral.monomial_relations(gens)
    ynames = default_names(len(gens), "y")
    return report(
        "relations",
        {**inputs, "generators": [mono_str(m, names) for m in gens]},
        {"kernel": rels, "binomials": [pstr(toral.relation_binomial(gens, r), ynames) for r in rels]},
        bounds=bounds,
    )


def cmd_weight_split(ctx, a):
    B = ctx.action(a.W)
    p = ctx.poly(a.P)
    n = ctx.names
    parts = toral.weight_decompose(B, p)
    return report(
        "weight-split", {"weights": str(B), a.P: pstr(p, n)},
        {"components": {fmt_scalar(w): pstr(q, n) for w, q in parts.items()}},
    )


def cmd_toral_centralizer(ctx, a):
    B = ctx.action(a.W)
    names = ctx.action_names(B)
    ms = toral.centralizer_monomials(B, a.max_deg)
    return report(
        "toral-centralizer", {"weights": str(B)},
        {"monomial_fields": [field_mono_str(m, j, names) for m, j in ms]},
        bounds={"max_degree": a.max_deg},
    )


def cmd_resonances(ctx, a):
    B = ctx.action(a.W)
    names = ctx.action_names(B)
    ms = normalform.resonant_monomials(B, a.deg)
    return report(
        "resonances", {"weights": str(B)},
        {"resonant": [field_mono_str(m, j, names) for m, j in ms]}, bounds={"degree": a.deg},
    )


def cmd_normalform(ctx, a):
    f = ctx.field(a.F)
    n = ctx.names
    res = normalform.normal_form(f, a.deg)
    result = {
        "linear_part": str(res.linear_part),
        "normal_form": fstrs(res.normal_form, n),
        "generators": {f"h{r + 2}": fstrs(h, n) for r, h in enumerate(res.generators)},
        "transformation": fstrs(res.transformation, n),
        "resonant": [field_mono_str(m, j, n) for m, j in res.resonant_monomials],
    }
    certs = {}
    valid = True
    if a.verify:
        rep = normalform.verify_normal_form(res, f)
        certs = {
            "verified": rep.valid,
            "commutes_with_linear_part": rep.commutes,
            "transformation_consistent": rep.transformation_consistent,
            "residual_low_degree": rep.residual_low_degree,
            "residual": fstrs(rep.residual, n),
        }
        valid = rep.valid
    return report("normalform", {a.F: fstrs(f, n)}, result, certs, {"truncation_degree": a.deg}, valid)


def cmd_firstint(ctx, a):
    f, p = ctx.field(a.F), ctx.poly(a.P)
    n = ctx.names
    ok = invsets.first_integral_check(f, p)
    return report(
        "firstint", {a.F: fstrs(f, n), a.P: pstr(p, n)}, {"first_integral": ok},
        {"lie_derivative": pstr(lie.lie_derivative(f, p), n), "constant": p.is_constant()}, valid=ok,
    )


def _semi_report(command, inputs, cert, n, extra_bounds=None):
    return report(
        command, inputs,
        {"psi": pstr(cert.psi, n), "cofactor": pstr(cert.cofactor, n) if cert.cofactor is not None else None},
        {"valid": cert.valid, "constant": cert.psi.is_constant()},
        {"cofactor_degree": cert.bound, **(extra_bounds or {})},
        valid=cert.valid,
    )


def cmd_semiinv(ctx, a):
    f, p = ctx.field(a.F), ctx.poly(a.P)
    n = ctx.names
    cert = invsets.semi_invariant_cofactor(f, p, a.mu_deg)
    return _semi_report("semiinv", {a.F: fstrs(f, n), a.P: pstr(p, n)}, cert, n)


def cmd_invcheck(ctx, a):
    f = ctx.field(a.F)
    ps = [ctx.poly(nm) for nm in a.P]
    n = ctx.names
    ok, mu = invsets.invariant_variety_check(f, ps, a.mu_deg)
    return report(
        "invcheck",
        {a.F: fstrs(f, n), **{nm: pstr(p, n) for nm, p in zip(a.P, ps)}},
        {"invariant": ok},
        {"cofactor_matrix": [[pstr(m, n) for m in row] for row in mu] if mu else None},
        {"mu_degree": a.mu_deg}, valid=ok,
    )


def _minor_report(command, inputs, fam, n):
    return report(
        command, inputs,
        {
            "size": fam.size,
            "minors": [
                {"rows": [i + 1 for i in r], "cols": [j + 1 for j in c], "value": pstr(m, n)}
                for (r, c), m in zip(fam.index, fam.minors)
            ],
        },
    )


def cmd_minors(ctx, a):
    fields = [ctx.field(a.F)] + [ctx.field(h) for h in a.H]
    n = ctx.names
    fam = invsets.minors(fields, a.size)
    inputs = {nm: fstrs(f, n) for nm, f in zip([a.F, *a.H], fields)}
    return _minor_report("minors", inputs, fam, n)


def cmd_intfactor(ctx, a):
    f, h = ctx.field(a.F), ctx.field(a.H)
    n = ctx.names
    cert = invsets.integrating_factor(f, h)
    return _semi_report("intfactor", {a.F: fstrs(f, n), a.H: fstrs(h, n)}, cert, n)


def cmd_jacobimult(ctx, a):
    f = ctx.field(a.F)
    hs = [ctx.field(h) for h in a.H]
    n = ctx.names
    cert = invsets.jacobi_multiplier(f, hs)
    inputs = {nm: fstrs(g, n) for nm, g in zip([a.F, *a.H], [f, *hs])}
    return _semi_report("jacobimult", inputs, cert, n)


def cmd_rankstrata(ctx, a):
    Phi = ctx.field(a.PHI)
    n = ctx.names
    fam = invsets.jacobian_rank_minors(Phi, a.s)
    rep = _minor_report("rankstrata", {a.PHI: fstrs(Phi, n)}, fam, n)
    rep["result"]["all_vanish"] = fam.all_vanish()
    rep["result"]["generic_rank"] = invsets.generic_rank(Phi)
    if a.at:
        ranks = {}
        for spec in a.at:
            try:
                pt = [Fraction(v) for v in spec.split(",")]
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad point {spec!r}") from None
            ranks[",".join(fmt_scalar(v) for v in pt)] = invsets.rank_at(Phi, pt)
        rep["result"]["rank_at"] = ranks
    rep["bounds"] = {"s": a.s}
    return rep


def cmd_reduce(ctx, a):
    f = ctx.field(a.F)
    n = ctx.names
    phis, labels = [], []
    for nm in a.PHI:
        if ctx.system is not None and nm in ctx.system.fields and nm not in ctx.system.polys:
            phis.extend(ctx.system.fields[nm].components)
            labels.extend(f"{nm}[{i + 1}]" for i in range(ctx.system.fields[nm].dim))
        else:
            phis.append(ctx.poly(nm))
            labels.append(nm)
    g = invsets.reduce_by_invariants(f, phis, a.target_deg)
    wn = default_names(len(phis), "w")
    certs = {}
    if g is not None:
        ok, res = lie.check_solution_preserving(VectorField(phis, f.nvars), f, g)
        certs = {"solution_preserving": ok, "residual": fstrs(res, n)}
    return report(
        "reduce",
        {a.F: fstrs(f, n), **{lb: pstr(p, n) for lb, p in zip(labels, phis)}},
        {"g": fstrs(g, wn) if g is not None else None, "variables": wn},
        certs, {"target_degree": a.target_deg},
        valid=g is not None and certs.get("solution_preserving", False),
    )


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--file", default=argparse.SUPPRESS, help="system file, or '-' for stdin")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")

    p = argparse.ArgumentParser(
        prog="liesym", description="Lie-symmetry analysis of polynomial ODEs over Q", parents=[common]
    )
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func: Callable, help_: str):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("show", cmd_show, "print the parsed system in canonical form")
    s = add("bracket", cmd_bracket, "Lie bracket [F, G] = DG F - DF G")
    s.add_argument("F"); s.add_argument("G")
    s = add("lieder", cmd_lieder, "Lie derivative X_F(P)")
    s.add_argument("F"); s.add_argument("P")
    s = add("symcheck", cmd_symcheck, "check [H, F] = 0")
    s.add_argument("H"); s.add_argument("F")
    s = add("orbsym", cmd_orbsym, "solve [H, F] = lambda F")
    s.add_argument("H"); s.add_argument("F")
    s.add_argument("--cofactor-deg", type=int, default=None)
    s = add("centralizer", cmd_centralizer, "fields commuting with F up to a degree")
    s.add_argument("F"); s.add_argument("--max-deg", type=int, required=True)
    s = add("normalizer", cmd_normalizer, "pairs (h, lambda) with [h, F] = lambda F")
    s.add_argument("F"); s.add_argument("--max-deg", type=int, required=True)
    s.add_argument("--cofactor-deg", type=int, required=True)
    s = add("linsym", cmd_linsym, "check F(Tx) = T F(x)")
    s.add_argument("T"); s.add_argument("F")
    s = add("secord", cmd_secord, "second-order point symmetry G of x'' = H(x, x')")
    s.add_argument("G"); s.add_argument("H")
    s = add("toral-gens", cmd_toral_gens, "invariant monomial generators of a diagonal action")
    s.add_argument("W"); s.add_argument("--max-deg", type=int, required=True)
    s = add("toral-trivial", cmd_toral_trivial, "decide whether the invariant algebra is trivial")
    s.add_argument("W")
    s = add("relations", cmd_relations, "binomial relations among monomials")
    s.add_argument("M", nargs="*")
    s.add_argument("--weights", default=None)
    s.add_argument("--max-deg", type=int, default=None)
    s = add("weight-split", cmd_weight_split, "split P into weight components")
    s.add_argument("W"); s.add_argument("P")
    s = add("toral-centralizer", cmd_toral_centralizer, "monomial fields commuting with diag(W)")
    s.add_argument("W"); s.add_argument("--max-deg", type=int, required=True)
    s = add("normalform", cmd_normalform, "Poincare-Dulac normal form through degree N")
    s.add_argument("F"); s.add_argument("--deg", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s = add("resonances", cmd_resonances, "resonant monomial fields of a given degree")
    s.add_argument("W"); s.add_argument("--deg", type=int, required=True)
    s = add("firstint", cmd_firstint, "check X_F(P) = 0")
    s.add_argument("F"); s.add_argument("P")
    s = add("semiinv", cmd_semiinv, "solve X_F(P) = mu P")
    s.add_argument("F"); s.add_argument("P")
    s.add_argument("--mu-deg", type=int, default=None)
    s = add("invcheck", cmd_invcheck, "invariance criterion for a list of polynomials")
    s.add_argument("F"); s.add_argument("P", nargs="+")
    s.add_argument("--mu-deg", type=int, required=True)
    s = add("minors", cmd_minors, "minors of the matrix (F, H1, ...)")
    s.add_argument("F"); s.add_argument("H", nargs="*")
    s.add_argument("--size", type=int, required=True)
    s = add("intfactor", cmd_intfactor, "planar integrating factor det(F, H)")
    s.add_argument("F"); s.add_argument("H")
    s = add("jacobimult", cmd_jacobimult, "Jacobi multiplier det(F, H1, ..., H_{n-1})")
    s.add_argument("F"); s.add_argument("H", nargs="+")
    s = add("rankstrata", cmd_rankstrata, "(s+1)-minors of DPHI")
    s.add_argument("PHI"); s.add_argument("--s", type=int, required=True)
    s.add_argument("--at", action="append", default=[], help="point a,b,... for an exact rank")
    s = add("reduce", cmd_reduce, "reduce F by invariants PHI1 ...")
    s.add_argument("F"); s.add_argument("PHI", nargs="+")
    s.add_argument("--target-deg", type=int, required=True)
    return p


# -- rendering ---------------------------------------------------------------


def _render_value(v, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(v, dict):
        out = []
        for k, x in v.items():
            if isinstance(x, (dict, list)) and x and not _is_flat_list(x):
                out.append(f"{pad}{k}:")
                out.extend(_render_value(x, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(x)}")
        return out
    if isinstance(v, list):
        out = []
        for x in v:
            if isinstance(x, (dict, list)) and x and not _is_flat_list(x):
                out.append(f"{pad}-")
                out.extend(_render_value(x, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(x)}")
        return out
    return [f"{pad}{_scalar(v)}"]


def _is_flat_list(x) -> bool:
    return isinstance(x, list) and all(not isinstance(e, (dict, list)) for e in x)


def _scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "none"
    if isinstance(x, list):
        return "[" + ", ".join(_scalar(e) for e in x) + "]"
    if isinstance(x, dict):
        return "{}"
    return str(x)


def render_text(rep: dict) -> str:
    if rep["command"] == "show":
        return rep["result"]["system"]
    lines = [f"command: {rep['command']}"]
    for key in ("inputs", "result", "certificates", "bounds"):
        if rep[key]:
            lines.append(f"{key}:")
            lines.extend(_render_value(rep[key], 1))
    lines.append(f"valid: {_scalar(rep['valid'])}")
    return "\n".join(lines) + "\n"


def _load(path: str | None) -> SystemFile | None:
    if path is None:
        return None
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_system(text)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    path = getattr(args, "file", None)
    as_json = getattr(args, "json", False)
    try:
        ctx = Context(_load(path))
        rep = args.func(ctx, args)
    except ParseError as e:
        print(f"{path}:{e.line}:{e.col}: error: {e.message}"
              + (f" (expected one of: {', '.join(e.expected)})" if e.expected else ""), file=stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return 2
    except (UsageError, ValueError, IndexError, ZeroDivisionError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    if as_json:
        stdout.write(json.dumps(rep, indent=2) + "\n")
    else:
        stdout.write(render_text(rep))
    return 0 if rep["valid"] else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
