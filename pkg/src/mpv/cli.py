"""Command line entry point ``mpv``.

Exit status: 0 success, 2 parse/schema error, 3 logarithmic pole,
4 failed precondition, 5 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional

from . import scenarios
from .document import Document, dump_config, emit, parse_document
from .errors import (ExpressionSyntaxError, InternalAssertion, LogarithmicPole,
                     MpvError, PreconditionError)
from .parsing import parse_fraction
from .stratconfig import StratifiedConfig, closed_strata_input
from .surfblow import BlowupCenter, blowup, invariance_report
from .zetapv import (CheckItem, alt_zeta_pv, converging_integral,
                     delete_unit_components, functional_equation_check,
                     hodge_def1, hodge_zeta_T, log_poles, pv,
                     pv_from_resolution, specialize_hodge, zeta)

EXIT_OK, EXIT_PARSE, EXIT_POLE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ExpressionSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _all_resolution(c: StratifiedConfig) -> bool:
    return bool(c.components) and all(comp.has_resolution for comp in c.components)


def _next_id(c: StratifiedConfig) -> str:
    best = None
    for cid in c.ids:
        mt = re.fullmatch(r"(.*?)(\d+)", cid)
        if mt:
            prefix, k = mt.group(1), int(mt.group(2))
            if best is None or k > best[1]:
                best = (prefix, k)
    prefix, k = best if best else ("E", 0)
    while f"{prefix}{k + 1}" in c.ids:
        k += 1
    return f"{prefix}{k + 1}"


def _root(q: Fraction, m: int):
    """q^(1/m), exact when q is a perfect m-th power, else a float."""
    if q < 0 and m % 2 == 0:
        raise PreconditionError(f"no real {m}-th root of {q}")
    sign = -1 if q < 0 else 1

    def iroot(x):
        r = round(abs(x) ** (1.0 / m))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** m == abs(x):
                return cand
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is not None and b is not None:
        return sign * Fraction(a, b)
    return sign * float(abs(q)) ** (1.0 / m)


# -- commands ----------------------------------------------------------------

def cmd_pv(args, out) -> int:
    doc = _load(args.config)
    c = doc.config
    if _all_resolution(c) and args.normalized:
        value = pv_from_resolution(c, args.realization)
    else:
        value = pv(c, args.realization, normalized=args.normalized)
    print(emit(value.expr, c.m, args.format), file=out)
    return EXIT_OK


def cmd_zeta(args, out) -> int:
    doc = _load(args.config)
    z = zeta(doc.config, args.realization)
    expr = z.expr if args.s is None else z.at_integer(args.s)
    print(emit(expr, doc.config.m, args.format), file=out)
    return EXIT_OK


def cmd_hodge_pv(args, out) -> int:
    c = _load(args.config).config
    if args.s is not None:
        value = converging_integral(c, args.s)
    elif args.a is not None:
        value = alt_zeta_pv(c, args.a).expr
    else:
        value = hodge_def1(c).expr
    print(emit(value, c.m, args.format), file=out)
    return EXIT_OK


def _resolve_center(doc: Document, text: str) -> BlowupCenter:
    if text in doc.points:
        return doc.points[text]
    return BlowupCenter.parse(text)


def cmd_blowup(args, out) -> int:
    doc = _load(args.config)
    center = _resolve_center(doc, args.center)
    new_id = args.new_id or _next_id(doc.config)
    result = blowup(doc.config, center, new_id)
    text = dump_config(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    report = invariance_report(doc.config, result)
    print(f"blow-up at {center} created {new_id} with alpha = {result.component(new_id).effective_alpha}; "
          f"{report.message}", file=sys.stderr)
    return EXIT_OK


def run_checks(doc: Document) -> List[CheckItem]:
    """Identity checks that apply to the given document."""
    c = doc.config
    items: List[CheckItem] = []
    poles = log_poles(c)
    if poles:
        items.append(CheckItem("no logarithmic poles", False, "poles along " + ", ".join(poles)))
        return items
    realizations = [r for r in ("motivic", "hodge")
                    if all(r in cl.realizations for cl in c.open_strata.values())]
    if _all_resolution(c):
        for r in realizations:
            try:
                pv_from_resolution(c, r)
                items.append(CheckItem(f"zeta at s=1 equals PV with alpha = nu + N ({r})", True))
            except InternalAssertion as exc:
                items.append(CheckItem(f"zeta at s=1 equals PV with alpha = nu + N ({r})", False, str(exc)))
    if "hodge" in realizations:
        ref = pv(c, "hodge").expr
        items.append(CheckItem("Hodge definition 1 (Z(T) at T=1) equals definition 2",
                               hodge_def1(c).expr == ref))
        alphas = [comp.effective_alpha for comp in c.components]
        a0 = max([1 - a for a in alphas] + [Fraction(0)])
        a0 = Fraction(int(a0) + 1)
        shifts = [a0, a0 + 1, a0 + 3 + Fraction(1, c.m)]
        same = all(alt_zeta_pv(c, a).expr == ref for a in shifts)
        items.append(CheckItem("alternative zeta at s=-1 is independent of the shift",
                               same, "shifts " + ", ".join(str(a) for a in shifts)))
        if all(a > 0 for a in alphas):
            zt = hodge_zeta_T(c)
            ok = all(converging_integral(c, s) == zt.substitute("tau", (0, 0, -s, -s))
                     for s in range(1, 6))
            items.append(CheckItem("converging integral I(s) matches Z(T) for s = 1..5", ok))
        if "motivic" in realizations and all(cl.hodge_is_diagonal() for cl in c.open_strata.values()):
            items.append(CheckItem("Hodge PV specializes to the motivic PV",
                                   specialize_hodge(ref) == pv(c, "motivic").expr))
    units = [comp.id for comp in c.components if comp.effective_alpha == 1]
    if units:
        for r in realizations:
            ok = pv(delete_unit_components(c, units), r).expr == pv(c, r).expr
            items.append(CheckItem(f"deleting alpha = 1 components {', '.join(units)} keeps PV ({r})", ok))
    if doc.closed is not None:
        for r in realizations:
            rep = functional_equation_check(doc.closed, c.alphas(), c.m, r)
            detail = "; ".join(i.line() for i in rep.strata_dual if not i.passed)
            items.append(CheckItem(f"duality D(PVu) = L^(-n) PVu ({r})", rep.holds, detail))
    return items


def cmd_check(args, out) -> int:
    doc = _load(args.config)
    items = run_checks(doc)
    if args.format == "json":
        print(json.dumps([{"name": i.name, "passed": i.passed, "detail": i.detail} for i in items]), file=out)
    else:
        for item in items:
            print(item.line(), file=out)
    if any(i.name == "no logarithmic poles" for i in items):
        raise LogarithmicPole(log_poles(doc.config))
    return EXIT_OK if all(i.passed for i in items) else EXIT_INTERNAL


def cmd_scenario(args, out) -> int:
    alphas = [parse_fraction(a) for a in args.alphas.split(",")] if args.alphas else None
    built = scenarios.build(args.name, alphas=alphas, seed=args.seed)
    if isinstance(built, scenarios.Figure1):
        print(f"alpha_E = {built.alpha_exceptional}; coefficient in div = {built.coefficient}", file=out)
        return EXIT_OK
    if isinstance(built, list):
        rows = []
        for i, stage in enumerate(built):
            coeffs = ", ".join(f"{comp.id}: {comp.effective_alpha - 1}" for comp in stage.config.components)
            poles = log_poles(stage.config)
            value = ("PV not defined: " + ", ".join(poles)) if poles else \
                emit(pv(stage.config).expr, stage.config.m, args.format)
            rows.append(f"{stage.name}: [{coeffs}] -> {value}")
            if i:
                rows.append(f"  {built[i - 1].name} vs {stage.name}: "
                            f"{invariance_report(built[i - 1].config, stage.config).message}")
        print("\n".join(rows), file=out)
        return EXIT_OK
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_config(built, closed_strata_input(built)))
    print(emit(pv(built).expr, built.m, args.format), file=out)
    return EXIT_OK


def cmd_specialize(args, out) -> int:
    doc = _load(args.config)
    c = doc.config
    if (args.L is None) == (args.uv is None):
        raise PreconditionError("give exactly one of --L or --uv")
    if args.L is not None:
        value = pv(c, "motivic").expr
        point = {"t": _root(args.L, c.m)}
    else:
        value = pv(c, "hodge").expr
        # a value depending on uv alone is the L-value read at L = uv
        value = specialize_hodge(value)
        point = {"t": _root(args.uv, c.m)}
    result = value.evaluate(point)
    if args.format == "json":
        print(json.dumps({"value": str(result)}), file=out)
    else:
        print(result, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mpv", description="Exact motivic zeta functions and principal value integrals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, config=True):
        if config:
            sp.add_argument("config", help="configuration document (JSON)")
        sp.add_argument("--format", choices=("pretty", "json"), default="pretty")

    sp = sub.add_parser("pv", help="principal value integral")
    common(sp)
    sp.add_argument("--realization", choices=("motivic", "hodge"), default="motivic")
    sp.add_argument("--unnormalized", dest="normalized", action="store_false",
                    help="omit the L^(-n) prefactor")
    sp.set_defaults(func=cmd_pv)

    sp = sub.add_parser("zeta", help="zeta function in L and T = L^(-s)")
    common(sp)
    sp.add_argument("--realization", choices=("motivic", "hodge"), default="motivic")
    sp.add_argument("--s", type=int, help="evaluate at this integer s")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("hodge-pv", help="Hodge-level principal value")
    common(sp)
    sp.add_argument("--s", type=int, help="converging integral I(s) instead")
    sp.add_argument("--a", type=_fraction_arg, help="use the shifted zeta function with this a")
    sp.set_defaults(func=cmd_hodge_pv)

    sp = sub.add_parser("blowup", help="blow up a point of a surface configuration")
    common(sp)
    sp.add_argument("--center", required=True, help="free | curve:<id> | point:<id>,<id> | point name")
    sp.add_argument("--out", help="write the new document here (default: stdout)")
    sp.add_argument("--new-id", help="id of the exceptional curve")
    sp.set_defaults(func=cmd_blowup)

    sp = sub.add_parser("check", help="run the identity checks relevant to the document")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("scenario", help="materialize a built-in scenario")
    sp.add_argument("name", choices=scenarios.SCENARIOS)
    common(sp, config=False)
    sp.add_argument("--alphas", help="comma separated alphas for p1points / p2lines")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="also write the scenario's configuration document")
    sp.set_defaults(func=cmd_scenario)

    sp = sub.add_parser("specialize", help="evaluate the principal value at a number")
    common(sp)
    sp.add_argument("--L", type=_fraction_arg)
    sp.add_argument("--uv", type=_fraction_arg)
    sp.set_defaults(func=cmd_specialize)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    try:
        return args.func(args, out)
    except LogarithmicPole as exc:
        print(f"mpv: PV not defined, logarithmic poles along: {', '.join(exc.ids)}", file=sys.stderr)
        return exc.exit_code
    except MpvError as exc:
        print(f"mpv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
