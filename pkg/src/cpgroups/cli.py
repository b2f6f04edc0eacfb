"""Command-line entry point: ``cpgroups classify | check | table-d8c4``."""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace

from .config import Limits
from .core import Group, Subgroup
from .dsl import diagonal_subgroup, evaluate_spec, parse_spec, subgroup_from_words
from .embedding import (
    ABNORMAL,
    NORMAL,
    SUBNORMAL,
    as_central_product,
    classify_subgroups,
    is_abnormal_central,
    is_abnormal_definition,
    is_abnormal_preimage,
    is_normal_characterization,
    is_normal_definition,
    is_normal_preimage,
    is_subnormal_characterization,
    is_subnormal_preimage,
    subnormal_defect_oracle,
    defect_search_bound,
)
from .errors import BudgetError, GroupError, MethodDisagreement, SpecSyntaxError, ValidationError
from .report import ReportDocument, render_text

EXIT_OK = 0
EXIT_FAILS = 1  # check: the property does not hold
EXIT_USAGE = 2  # argparse
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_BUDGET = 5
EXIT_DISAGREEMENT = 6
EXIT_HYPOTHESIS = 7

D8C4_SPEC = "central(D(8), C(4); r^2 = y^2)"

METHODS = {"def": "definition", "char": "characterization", "preimage": "preimage"}


def _limits(args) -> Limits:
    lim = Limits.from_env()
    if getattr(args, "max_order", None):
        lim = replace(lim, max_order=args.max_order)
    if getattr(args, "max_enum", None):
        lim = replace(lim, max_enum=args.max_enum)
    return lim


def cmd_classify(spec_text: str, *, fmt: str = "text", limits: Limits | None = None, out=None) -> tuple[int, ReportDocument | None]:
    out = out or sys.stdout
    limits = limits or Limits.from_env()
    t0 = time.perf_counter()
    ast = parse_spec(spec_text)
    built = evaluate_spec(ast, limits=limits)
    report = classify_subgroups(built, limits=limits)
    from .dsl import print_spec

    doc = ReportDocument.from_report(print_spec(ast), report, time.perf_counter() - t0)
    if fmt in ("json", "both"):
        out.write(doc.to_json() + "\n")
    if fmt in ("text", "both"):
        out.write(render_text(doc))
    return EXIT_OK, doc


def _describe(G: Group, v, *, d_group: Group | None = None) -> str:
    prop = v.property
    if v.holds is None:
        return f"{v.method}: {v.note or 'hypothesis not met'}"
    if v.holds:
        if prop == SUBNORMAL:
            return f"{v.method}: subnormal, defect {v.defect}"
        return f"{v.method}: {prop}"
    where = d_group or G
    wit = ""
    if prop == ABNORMAL and v.method == "characterization":
        # the witness lives in D or in a factor, the note says which
        wit = f" ({v.note})" if v.note else ""
    elif v.witness:
        wit = " (witness: " + ", ".join(where.word(x) for x in v.witness) + ")"
    return f"{v.method}: not {prop}{wit}"


def _verdicts(built, H: Subgroup, prop: str, method: str):
    cp = as_central_product(built)
    G = cp.G
    wanted = list(METHODS.values()) if method == "all" else [METHODS[method]]
    out = []
    for m in wanted:
        if prop == NORMAL:
            fn = {"definition": lambda: is_normal_definition(G, H),
                  "characterization": lambda: is_normal_characterization(cp, H),
                  "preimage": lambda: is_normal_preimage(cp, H)}[m]
        elif prop == SUBNORMAL:
            fn = {"definition": lambda: subnormal_defect_oracle(G, H),
                  "characterization": lambda: is_subnormal_characterization(cp, H, defect_search_bound(G)),
                  "preimage": lambda: is_subnormal_preimage(cp, H)}[m]
        else:
            fn = {"definition": lambda: is_abnormal_definition(G, H),
                  "characterization": lambda: is_abnormal_central(cp, H),
                  "preimage": lambda: is_abnormal_preimage(cp, H)}[m]
        out.append(fn())
    return cp, out


def cmd_check(spec_text: str, subgroup: str, prop: str, *, method: str = "def", limits: Limits | None = None, out=None) -> int:
    out = out or sys.stdout
    limits = limits or Limits.from_env()
    ast = parse_spec(spec_text)
    built = evaluate_spec(ast, limits=limits)
    cp = as_central_product(built)
    G = cp.G
    if subgroup.strip() == "diag":
        H = diagonal_subgroup(ast, cp)
    else:
        # the wrapped group shares indices and generator names with the original
        H = subgroup_from_words(G, subgroup)
    cp, verdicts = _verdicts(cp, H, prop, method)
    for v in verdicts:
        d_group = cp.D.group if v.method == "preimage" else None
        out.write(_describe(G, v, d_group=d_group) + "\n")
    decided = [v for v in verdicts if v.holds is not None]
    if not decided:
        out.write("hypothesis not met\n")
        return EXIT_HYPOTHESIS
    values = {v.holds for v in decided}
    defects = {v.defect for v in decided} if prop == SUBNORMAL else {None}
    if len(values) > 1 or len(defects) > 1:
        raise MethodDisagreement(f"methods disagree on {prop}", tuple(verdicts))
    v = decided[0]
    if v.holds:
        out.write(f"subnormal, defect {v.defect}\n" if prop == SUBNORMAL else f"{prop}\n")
        return EXIT_OK
    out.write(f"not {prop}\n")
    return EXIT_FAILS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpgroups", description="Central products and the embedding of their subgroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def caps(sp):
        sp.add_argument("--max-order", type=int, help="largest group order accepted (default 4096)")
        sp.add_argument("--max-enum", type=int, help="largest order for subgroup enumeration (default 128)")

    def fmt(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="fmt", action="store_const", const="json", help="machine-readable report")
        g.add_argument("--text", dest="fmt", action="store_const", const="text", help="aligned text table (default)")
        g.add_argument("--both", dest="fmt", action="store_const", const="both", help="JSON followed by the text table")
        sp.set_defaults(fmt="text")

    c = sub.add_parser("classify", help="classify every subgroup of a group")
    c.add_argument("spec")
    fmt(c)
    caps(c)

    k = sub.add_parser("check", help="decide one property of one subgroup")
    k.add_argument("spec")
    k.add_argument("--subgroup", required=True, help='comma-separated generator words, or "diag"')
    k.add_argument("--property", required=True, choices=[NORMAL, SUBNORMAL, ABNORMAL])
    k.add_argument("--method", default="def", choices=[*METHODS, "all"])
    caps(k)

    t = sub.add_parser("table-d8c4", help=f"classify {D8C4_SPEC}")
    fmt(t)
    caps(t)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        limits = _limits(args)
        if args.command == "classify":
            return cmd_classify(args.spec, fmt=args.fmt, limits=limits)[0]
        if args.command == "table-d8c4":
            return cmd_classify(D8C4_SPEC, fmt=args.fmt, limits=limits)[0]
        return cmd_check(args.spec, args.subgroup, args.property, method=args.method, limits=limits)
    except SpecSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as e:
        print(f"budget error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except MethodDisagreement as e:
        print(f"method disagreement: {e}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except (ValidationError, GroupError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
