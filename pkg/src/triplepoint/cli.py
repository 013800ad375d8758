"""Command-line front end.

Every command builds one :class:`Record` and prints it either as text or as a
single JSON line with keys ``command, inputs, results, checks, verdict``.
Exit status: 0 on success, 2 if any check failed, 1 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import lattice
from .deform import MapGerm, merle_equivalence, paper_germ, t1_compute, t1_grading, t1_presentation
from .jets import DEFAULT_BOUND, stabilized_dimension
from .localstd import LocalOrder
from .parser import GRAMMAR, ParseError, parse_polynomial, parse_vars
from .poly import DegreesWeights, Polynomial
from .versal import (
    SignMode,
    classify_plane_singularity,
    eliminate_to_plane,
    tangent_cone,
    triple_point_stratum,
    versal_family,
)

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Record:
    command: str
    inputs: Dict[str, object]
    results: Dict[str, object] = field(default_factory=dict)
    checks: List[dict] = field(default_factory=list)
    verdict: str = "ok"
    lines: List[str] = field(default_factory=list)  # text rendering only

    def check(self, name: str, lhs, rhs) -> bool:
        ok = lhs == rhs
        self.checks.append({"name": name, "lhs": lhs, "rhs": rhs, "ok": ok})
        return ok

    @property
    def failed(self) -> bool:
        return any(not c["ok"] for c in self.checks)

    def to_json(self) -> str:
        return json.dumps({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "verdict": self.verdict,
        }, default=_jsonable, sort_keys=False)

    def to_text(self) -> str:
        out = list(self.lines)
        for c in self.checks:
            mark = "ok" if c["ok"] else "FAILED"
            out.append(f"check {c['name']}: {_fmt(c['lhs'])} == {_fmt(c['rhs'])} [{mark}]")
        out.append(f"verdict: {self.verdict}")
        return "\n".join(out)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (Polynomial,)):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def _fmt(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return str(x)


# -- argument helpers ----------------------------------------------------

def _fractions(spec: Optional[str], what: str) -> Optional[List[Fraction]]:
    if spec is None:
        return None
    try:
        return [Fraction(s.strip()) for s in spec.split(",") if s.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read {what} {spec!r}: {exc}") from None


def _germ(args) -> MapGerm:
    return MapGerm.parse(args.exprs, parse_vars(args.vars))


def _dw(args, germ: MapGerm) -> Optional[DegreesWeights]:
    a = _fractions(args.weights, "weights")
    d = _fractions(args.degrees, "degrees")
    if a is None and d is None:
        return None
    if a is None or d is None:
        raise UsageError("--weights and --degrees go together")
    if len(a) != germ.n or len(d) != germ.p:
        raise UsageError(f"expected {germ.n} weights and {germ.p} degrees")
    return DegreesWeights(tuple(d), tuple(a))


def _jet_check(rec: Record, germ: MapGerm, tau, bound: int):
    gens = [tuple(g) for g in t1_presentation(germ) if not g.is_zero()]
    dim, B = stabilized_dimension(gens, germ.p, bound)
    if dim == math.inf and tau != math.inf:
        rec.lines.append(f"jet oracle did not stabilize by degree {bound}; raise --bound")
        rec.results["jet_oracle"] = None
        return
    rec.results["jet_oracle"] = dim
    rec.check("tau agrees with jet oracle", tau, dim)


# -- commands ------------------------------------------------------------

def cmd_t1(args) -> Record:
    germ = _germ(args)
    dw = _dw(args, germ)
    order = LocalOrder.from_degrees_weights(dw) if dw else None
    r = t1_compute(germ, order)
    rec = Record("t1", {"exprs": args.exprs, "vars": germ.vars})
    rec.results.update(tau=r.tau, basis=r.labels() if r.finite else None)
    rec.lines.append(f"tau = {_fmt(r.tau)}")
    if r.finite:
        rec.lines.append("basis: " + ", ".join(r.labels()))
    _jet_check(rec, germ, r.tau, args.bound)
    return rec


def cmd_grade(args) -> Record:
    germ = _germ(args)
    g = t1_grading(germ, _dw(args, germ))
    dw = g.degrees_weights
    rec = Record("grade", {"exprs": args.exprs, "vars": germ.vars})
    table = {str(nu): [lab for lab in _labels(g, germ, terms)] for nu, terms in g.grading.items()}
    rec.results.update(degrees=list(dw.d), weights=list(dw.a.a), grading=table,
                       alpha=g.alpha, threshold=g.threshold, tau=g.tau)
    rec.lines.append(f"degrees d = ({', '.join(map(str, dw.d))}), weights a = ({', '.join(map(str, dw.a.a))})")
    for nu, labs in table.items():
        rec.lines.append(f"  nu = {nu}: {', '.join(labs)}")
    rec.lines.append(f"alpha = {g.alpha}, threshold max(0, alpha) = {g.threshold}")
    rec.check("sum of graded dimensions = tau", sum(len(v) for v in table.values()), g.tau)
    return rec


def _labels(g, germ, terms):
    from .localstd import term_label

    return [term_label(t, germ.vars) for t in terms]


def cmd_merle(args) -> Record:
    germ = _germ(args)
    if len(args.perturbation) != germ.p:
        raise UsageError(f"--perturbation needs {germ.p} expressions")
    pert = [parse_polynomial(e, germ.vars) for e in args.perturbation]
    graded = t1_grading(germ, _dw(args, germ))
    res = merle_equivalence(germ, pert, graded=graded)
    rec = Record("merle", {"exprs": args.exprs, "perturbation": args.perturbation, "vars": germ.vars})
    rec.results.update(valuation=res.valuation, alpha=res.alpha, threshold=res.threshold)
    rec.verdict = str(res.verdict)
    rec.lines.append(f"nu(g) = {_fmt(res.valuation)}, threshold = {res.threshold}")
    return rec


def cmd_versal(args) -> Record:
    germ = paper_germ() if args.paper or not args.exprs else _germ(args)
    fam = versal_family(germ)
    rec = Record("versal", {"exprs": [str(f) for f in germ.f], "vars": germ.vars})
    eqs = [str(e) for e in fam.equations]
    rec.results.update(parameters=list(fam.parameters), equations=eqs)
    rec.lines.append("parameters: " + ", ".join(fam.parameters))
    for i, e in enumerate(eqs, 1):
        rec.lines.append(f"F{i} = {e}")
    return rec


def cmd_stratum(args) -> Record:
    sign = SignMode(args.sign)
    fam = versal_family(paper_germ())
    st = triple_point_stratum(fam, sign)
    a4 = Fraction(args.a4)
    b1 = a4 * a4 / 4 * (1 if sign is SignMode.PAPER else -1)
    rec = Record("stratum", {"germ": list(PAPER_EXPRS), "sign": sign.value, "a4": a4})
    desc = st.describe()
    rec.results["stratum"] = desc
    rec.results["nonvanishing"] = [str(p) for p in st.nonvanishing]
    rec.lines.append(desc)
    rec.lines.append("with " + ", ".join(f"{p} != 0" for p in st.nonvanishing))
    if b1 == 0:
        rec.lines.append("sample skipped: a4 = 0 gives b1 = 0")
        return rec
    point = {p: 0 for p in fam.parameters}
    point.update(a4=a4, b1=b1)
    rec.check("sample lies on the stratum", st.contains(point), True)
    plane = eliminate_to_plane(fam, sign)
    plane = plane.substitute({k: v for k, v in point.items() if k in plane.vars}).embed(("y", "z"))
    wit = st.witness_at(point)
    cls = classify_plane_singularity(plane, wit)
    cone = tangent_cone(plane, wit)
    rec.results["sample"] = {
        "a4": a4, "b1": b1, "plane_curve": str(plane),
        "point": {k: v for k, v in wit.items()},
        "class": str(cls), "tangent_cone": str(cone.form), "distinct_tangents": cone.distinct_lines,
    }
    rec.lines.append(f"sample a4 = {a4}, b1 = {b1}: {plane} = 0")
    rec.lines.append(f"  at (y, z) = ({wit['y']}, {wit['z']}): {cls}, tangent cone {cone.form}")
    rec.check("sample class", str(cls), "OrdinaryTriple")
    return rec


PAPER_EXPRS = tuple(str(f) for f in paper_germ().f)


def cmd_classify(args) -> Record:
    vars = parse_vars(args.vars)
    if len(vars) != 2:
        raise UsageError("classify needs exactly two variables")
    F = parse_polynomial(args.expr, vars)
    pt = _fractions(args.point, "point")
    if pt is None or len(pt) != 2:
        raise UsageError("--point needs two coordinates")
    point = dict(zip(vars, pt))
    cls = classify_plane_singularity(F, point)
    cone = tangent_cone(F, point)
    rec = Record("classify", {"expr": args.expr, "vars": vars, "point": pt})
    rec.results.update(**{"class": str(cls), "multiplicity": cls.multiplicity,
                          "distinct_tangents": cls.distinct_tangents, "milnor": cls.milnor,
                          "tangent_cone": str(cone.form)})
    rec.lines.append(f"class: {cls}")
    rec.lines.append(f"multiplicity {cls.multiplicity}, {cls.distinct_tangents} distinct tangents, "
                     f"Milnor number {_fmt(cls.milnor)}")
    rec.lines.append(f"tangent cone: {cone.form}")
    return rec


def cmd_k3_audit(args) -> Record:
    p, n, m = args.p, args.n, args.m
    if m < 2:
        raise UsageError("m must be at least 2")
    rec = Record("k3-audit", {"p": p, "n": n, "m": m})
    pa = lattice.pa_dim_nH(p, n)
    target = lattice.tuple_targets(p, n)
    budgets = lattice.enumerate_budgets(p, n, m)
    rec.results.update(pa=pa["pa"], dim=pa["dim"], target=target)
    rec.lines.append(f"p_a(nH) = dim|nH| = {pa['dim']}; target sum (k-1) d_k = {target}")
    rows = []
    for b in budgets:
        e = lattice.es_expected_dim(pa["dim"], b)
        rows.append({"d": list(b.d), "budget": str(b), "expected_dim": e})
        rec.lines.append(f"  d = {b.d}: {b}; expected ES dim {e}")
        rec.check(f"expected ES dim for d = {b.d}", e, 0)
    rec.results["budgets"] = rows
    led = lattice.proof_ledger(p, n)
    rec.results["ledger"] = {
        "parity": led.parity, "inventory": led.inventory, "local_dims": led.local_dims,
        "total": led.total, "total_with_tacnode": led.total_with_tacnode,
        "dim_nH_plus_1": led.dim_nH + 1, "discrepancies": led.discrepancies,
    }
    rec.lines.append(f"ledger ({led.parity} genus):")
    for k, v in led.inventory.items():
        rec.lines.append(f"  {k}: {v}")
    rec.lines.append(f"  local target dims total {led.total} (dim|nH| + 1 = {led.dim_nH + 1}); "
                     f"with tacnode block {led.total_with_tacnode}")
    for d in led.discrepancies:
        rec.lines.append(f"  discrepancy: {d}")
    for c in led.checks:
        rec.check(c.name, c.lhs, c.rhs)
    rec.verdict = "failed" if rec.failed else "verified"
    return rec


def cmd_scroll_check(args) -> Record:
    rec = Record("scroll-check", {"p": args.p, "n": args.n})
    for rep in (lattice.decomposition_check(args.p, args.n), lattice.degree_on_E_check(args.p, args.n)):
        for c in rep.checks:
            rec.check(c.name, c.lhs, c.rhs)
        rec.results.update({f"{rep.name}.{k}": v for k, v in rep.data.items()})
    pol = lattice.K3Polarization(args.p, args.n)
    rec.results["surface"] = pol.kind
    rec.lines.append(f"scrolls are {pol.kind}; H = sigma + {pol.l}F")
    rec.verdict = "failed" if rec.failed else "verified"
    return rec


def cmd_blowup(args) -> Record:
    r = lattice.blowup_restriction(args.m_F)
    rec = Record("blowup", {"m_F": args.m_F})
    rec.results.update(cls={"s": r.cls.s, "f": r.cls.f}, effective=r.effective, minimal=r.minimal)
    rec.lines.append(f"class {r.cls}: {'effective' if r.effective else 'not effective'}"
                     + (", minimal" if r.minimal else ""))
    if r.decomposition:
        a, b = r.decomposition
        rec.results["decomposition"] = [{"s": a.s, "f": a.f}, {"s": b.s, "f": b.f}]
        rec.lines.append(f"fixed part {a.s}σ + {a.f}F, moving part {b.s}σ + {b.f}F")
    return rec


COMMANDS = {
    "t1": cmd_t1, "grade": cmd_grade, "merle": cmd_merle, "versal": cmd_versal,
    "stratum": cmd_stratum, "classify": cmd_classify, "k3-audit": cmd_k3_audit,
    "scroll-check": cmd_scroll_check, "blowup": cmd_blowup,
}


# -- parser --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="jet truncation guard for the oracle (default %(default)s)")

    def germ_args(sp, need=True):
        sp.add_argument("exprs", nargs="+" if need else "*", help="components of the germ")
        sp.add_argument("--vars", default="x,y,z")
        sp.add_argument("--weights", help="comma-separated a_1,...,a_n")
        sp.add_argument("--degrees", help="comma-separated d_1,...,d_p")

    top = _Parser(prog="triplepoint", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", parser_class=_Parser)
    sp = sub.add_parser("t1", parents=[common], help="dimension and basis of T^1")
    germ_args(sp)
    sp = sub.add_parser("grade", parents=[common], help="weight grading of T^1")
    germ_args(sp)
    sp = sub.add_parser("merle", parents=[common], help="Merle criterion for f + g")
    germ_args(sp)
    sp.add_argument("--perturbation", nargs="+", required=True)
    sp = sub.add_parser("versal", parents=[common], help="versal family equations")
    germ_args(sp, need=False)
    sp.add_argument("--paper", action="store_true", help="use (xz+yz+z^3, xy)")
    sp = sub.add_parser("stratum", parents=[common], help="triple-point stratum of the quadruple point")
    sp.add_argument("--paper", action="store_true", help="accepted for clarity; the quadruple point is the only germ")
    sp.add_argument("--sign", choices=[s.value for s in SignMode], default=SignMode.PAPER.value)
    sp.add_argument("--a4", default="2", help="a4 of the sample point (default 2)")
    sp = sub.add_parser("classify", parents=[common], help="classify a plane curve point")
    sp.add_argument("expr")
    sp.add_argument("--vars", default="x,y")
    sp.add_argument("--point", required=True, help="comma-separated coordinates")
    sp = sub.add_parser("k3-audit", parents=[common], help="budgets, targets, expected dims, ledger")
    for name in ("p", "n", "m"):
        sp.add_argument(name, type=int)
    sp = sub.add_parser("scroll-check", parents=[common], help="decomposition and degree-on-E checks")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int)
    sp = sub.add_parser("blowup", parents=[common], help="strict transform on the exceptional F1")
    sp.add_argument("m_F", type=int)
    return top


def _protect_negatives(argv: Sequence[str], parser: argparse.ArgumentParser) -> List[str]:
    # "-x^2" or "-1,0" would otherwise be taken for options; a leading space keeps them positional
    known = {"-h", "--help"}
    for action in parser._subparsers._group_actions[0].choices.values():
        for a in action._actions:
            known.update(a.option_strings)
    out = []
    for tok in argv:
        head = tok.split("=", 1)[0]
        if tok.startswith("-") and head not in known and tok != "--":
            tok = " " + tok
        out.append(tok)
    return out


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negatives(argv, parser))
        if args.command is None:
            raise UsageError("a command is required")
        rec = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        print(parser.format_usage().rstrip(), file=stderr)
        print("expression grammar:" + GRAMMAR, file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        print("expression grammar:" + GRAMMAR, file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    print(rec.to_json() if args.format == "json" else rec.to_text(), file=stdout)
    return EXIT_FAILED if rec.failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
