"""fresco command line: analyze | bernstein | abmod | reproduce.

Exit codes: 0 ok, 1 other error, 2 parse error, 3 C1 violation,
4 C2 violation (quasi-homogeneous), 5 not a simple pole;
``reproduce`` exits 1 when some reference row is not matched.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .abmodule import DEFAULT_TRUNCATION, bernstein_simple_pole, is_simple_pole, parse_presentation, residue_matrix
from .cases import FAMILIES, select
from .core import PATH_STRATEGIES, analyze, annihilator, divisor_str
from .errors import FrescoError, ParseError
from .polyparse import infer_variables, parse_form, parse_poly
from .qexact import fmt_q
from .report import divisor_report, setup_lines, setup_to_dict

GRAMMAR_HELP = """\
polynomial grammar (explicit '*', '^' for powers, rationals as p/q):
  poly   := ['-'] term (('+'|'-') term)*
  term   := [coef '*'] var['^'k] ('*' var['^'k])*
  coef   := rational | L['^'k] | rational '*' L['^'k]      (L or lambda)
exactly one more monomial than variables; at most one term carries L.
forms: '1' or a monomial such as 'x*y^2'.
abmod file: one line per basis vector e_j listing a.e_j as comma-separated
b-polynomials, e.g. 'b, 0' then '-b, b'.
"""

EXIT_UNMATCHED = 1


@dataclass
class RunConfig:
    command: str
    poly: str | None = None
    variables: tuple | None = None
    form: str = "1"
    path: str = "lex"
    output_format: str = "text"
    truncation: int = DEFAULT_TRUNCATION


def _color_enabled() -> bool:
    flag = os.environ.get("FRESCO_COLOR")
    if flag is not None:
        return flag == "1"
    return sys.stdout.isatty()


def _paint(text: str, ok: bool) -> str:
    if not _color_enabled():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _emit(cfg: RunConfig, payload: dict, lines: list[str]):
    if cfg.output_format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _load_poly(cfg: RunConfig):
    if not cfg.poly:
        raise ParseError("--poly is required")
    names = cfg.variables or infer_variables(cfg.poly)
    return names, parse_poly(cfg.poly, names)


def cmd_analyze(cfg: RunConfig) -> int:
    names, f = _load_poly(cfg)
    setup = analyze(f)
    payload = {"poly": cfg.poly, "variables": list(names), "setup": setup_to_dict(setup)}
    _emit(cfg, payload, [f"f = {cfg.poly}   (variables {', '.join(names)})"] + setup_lines(setup))
    return 0


def cmd_bernstein(cfg: RunConfig) -> int:
    names, f = _load_poly(cfg)
    beta = parse_form(cfg.form, names)
    setup = analyze(f)
    res = annihilator(setup, beta, cfg.path)
    rep = divisor_report(cfg.poly, names, cfg.form, beta, cfg.path, setup, res)
    _emit(cfg, rep.to_dict(), rep.lines(setup))
    return 0


def cmd_abmod(cfg: RunConfig, file: str) -> int:
    try:
        with open(file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read presentation file: {exc}") from exc
    pres = parse_presentation(text, cfg.truncation)
    B = bernstein_simple_pole(pres)   # NotSimplePole -> exit 5
    mat = [[fmt_q(x) for x in row] for row in residue_matrix(pres).to_rows()]
    payload = {
        "rank": pres.rank,
        "truncation": pres.truncation_order,
        "simple_pole": is_simple_pole(pres),
        "residue_matrix": mat,
        "bernstein": B.to_str("x"),
        "bernstein_coefficients": [fmt_q(c) for c in B.coeffs],
    }
    lines = [
        f"rank = {pres.rank}   truncation order = {pres.truncation_order}",
        "simple pole: yes",
        f"matrix of -b^-1 a on E/bE: {mat}",
        f"Bernstein polynomial: {B.to_str('x')}",
    ]
    _emit(cfg, payload, lines)
    return 0


def reproduce_rows(case: str | None = None) -> list[dict]:
    rows = []
    parsed = {}
    for c in select(case):
        fam = c.family
        if fam.id not in parsed:
            parsed[fam.id] = analyze(parse_poly(fam.poly, fam.variables))
        setup = parsed[fam.id]
        beta = parse_form(c.form, fam.variables)
        expected = tuple(sorted(c.shifts))
        per = {}
        for strategy in PATH_STRATEGIES:
            res = annihilator(setup, beta, strategy)
            per[strategy] = res
        matching = [s for s, r in per.items() if r.divisor_shifts == expected]
        rows.append({
            "id": c.id,
            "poly": fam.poly,
            "form": c.form,
            "reference": divisor_str(expected),
            "computed": {s: divisor_str(r.divisor_shifts) for s, r in per.items()},
            "factors": {s: [fmt_q(x) for x in r.Pd.factors] for s, r in per.items()},
            "matching_strategies": matching,
            "status": "MATCH" if matching else "DIFFER",
        })
    return rows


def cmd_reproduce(cfg: RunConfig, case: str | None = None) -> int:
    rows = reproduce_rows(case)
    if not rows:
        known = ", ".join(f.id for f in FAMILIES)
        raise FrescoError(f"no case matches {case!r}; families: {known}")
    matched = sum(r["status"] == "MATCH" for r in rows)
    payload = {"rows": rows, "matched": matched, "total": len(rows)}
    lines = []
    for r in rows:
        ok = r["status"] == "MATCH"
        lines.append(f"{r['id']:<16} {_paint(r['status'], ok):<6}  reference B | {r['reference']}")
        for s in PATH_STRATEGIES:
            lines.append(f"    {s:<9} {r['computed'][s]}")
        if len(rows) == 1:
            lines.append(f"    P_d factors (lex, left to right): {', '.join(r['factors']['lex'])}")
    lines.append(f"{matched}/{len(rows)} rows matched")
    _emit(cfg, payload, lines)
    return 0 if matched == len(rows) else EXIT_UNMATCHED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fresco",
        description="Bernstein divisors of frescos for polynomials with n+2 monomials.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--version", action="version", version=f"fresco {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    polyargs = argparse.ArgumentParser(add_help=False)
    polyargs.add_argument("--poly", required=True, help="polynomial, e.g. 'x^5 + y^5 + z^5 + L*x*y*z^2'")
    polyargs.add_argument("--vars", help="comma-separated variable names (default: order of appearance)")

    sub.add_parser("analyze", parents=[common, polyargs], help="monomial relation combinatorics",
                   epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    b = sub.add_parser("bernstein", parents=[common, polyargs], help="Bernstein divisor for x^beta dx",
                       epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    b.add_argument("--form", default="1", help="monomial x^beta of the form x^beta dx (default 1)")
    b.add_argument("--path", choices=PATH_STRATEGIES, default="lex", help="order of the step recursion")

    m = sub.add_parser("abmod", parents=[common], help="simple-pole (a,b)-module Bernstein polynomial",
                       epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    m.add_argument("file", help="presentation file")
    m.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION, help="truncation order N (>= 2)")

    r = sub.add_parser("reproduce", parents=[common], help="rerun the built-in example tables")
    r.add_argument("--case", help="family or row id prefix, e.g. 'twocubics' or 'quintic/z'")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        poly=getattr(args, "poly", None),
        variables=tuple(v.strip() for v in args.vars.split(",")) if getattr(args, "vars", None) else None,
        form=getattr(args, "form", "1"),
        path=getattr(args, "path", "lex"),
        output_format="json" if args.json else "text",
        truncation=getattr(args, "trunc", DEFAULT_TRUNCATION),
    )
    try:
        if cfg.command == "analyze":
            return cmd_analyze(cfg)
        if cfg.command == "bernstein":
            return cmd_bernstein(cfg)
        if cfg.command == "abmod":
            if cfg.truncation < 2:
                raise ParseError("--trunc must be >= 2")
            return cmd_abmod(cfg, args.file)
        return cmd_reproduce(cfg, args.case)
    except FrescoError as exc:
        print(f"fresco: {type(exc).__name__}: {exc}", file=sys.stderr)
        if isinstance(exc, ParseError) and exc.caret():
            print(exc.caret(), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
