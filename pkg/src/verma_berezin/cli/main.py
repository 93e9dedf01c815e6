"""Command-line front end.

Exit codes: 0 pass, 1 check failure, 2 usage or configuration error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from ..conformal import defect_sweep, sweep_csv, witt_defect
from ..defects import hs_report
from ..operators import OperatorError, Weight
from ..quantize import Symbol, VField, derivation_defect, hbar_scaling, product_defect
from .evaluate import eval_expr
from .expr import ParseError, parse_expr, pretty
from .report import dumps, frac_str, report_json, check_json, truncation_csv, weight_json
from .suites import SUITES, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    h: Fraction
    N: int = 1000
    scan: int = 64
    format: str = "json"
    out: str | None = None
    suite: str = "all"

    @property
    def weight(self) -> Weight:
        return Weight(self.h)


def parse_h(text: str) -> Fraction:
    try:
        h = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot read h={text!r}; expected p/q") from None
    if h < Fraction(1, 2):
        raise ConfigError(f"h={h} is below 1/2")
    return h


def parse_h_list(text: str) -> list[Fraction]:
    return [parse_h(part) for part in text.split(",") if part.strip()]


_PAIR = re.compile(r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")


def parse_pairs(text: str) -> list[tuple[int, int]]:
    text = text.replace("−", "-")
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _PAIR.fullmatch(chunk)
        if not m:
            raise ConfigError(f"malformed pair {chunk!r}; expected (m,n)")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return pairs


def parse_symbol(text: str, cls=Symbol):
    try:
        return cls.from_json(json.loads(text))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"malformed symbol JSON {text!r}: {exc}") from None


def _config(args) -> RunConfig:
    if getattr(args, "N", 1000) < 2:
        raise ConfigError("--N must be at least 2")
    return RunConfig(
        h=parse_h(args.h) if getattr(args, "h", None) else Fraction(1),
        N=getattr(args, "N", 1000),
        scan=getattr(args, "scan", 64),
        format=getattr(args, "format", "json"),
        out=getattr(args, "out", None),
        suite=getattr(args, "suite", "all"),
    )


def emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config(args)
    w = cfg.weight
    checks = run_suite(cfg.suite, w)
    passed = all(c.passed for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}", file=sys.stderr)
    print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed", file=sys.stderr)
    payload = {**weight_json(w), "suite": cfg.suite, "passed": passed,
               "checks": [check_json(c) for c in checks]}
    emit(dumps(payload), cfg)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_defect(args) -> int:
    cfg = _config(args)
    pairs = parse_pairs(args.pairs)
    if not pairs:
        raise ConfigError("--pairs is empty")
    out = []
    for m, n in pairs:
        wd = witt_defect(m, n, cfg.weight, cfg.N)
        out.append({"m": m, "n": n, **report_json(wd.report)})
    emit(dumps(out[0] if len(out) == 1 else out), cfg)
    return EXIT_PASS


def cmd_sweep(args) -> int:
    cfg = _config(args)
    pairs = parse_pairs(args.pairs or "")
    weights = parse_h_list(args.h_list or "")
    rows = defect_sweep(pairs, weights, cfg.N) if pairs and weights else []
    if cfg.format == "json":
        emit(dumps(rows), cfg)
    else:
        emit(sweep_csv(rows), cfg)
    return EXIT_PASS


def cmd_quantize_defect(args) -> int:
    cfg = _config(args)
    f = parse_symbol(args.f)
    if args.v:
        v = parse_symbol(args.v, VField)
        rep = derivation_defect(v, f, cfg.weight, cfg.N)
        kind = "derivation"
    else:
        if not args.g:
            raise ConfigError("product defect needs --g (or --v for a derivation defect)")
        rep = product_defect(f, parse_symbol(args.g), cfg.weight, cfg.N)
        kind = "product"
    emit(dumps({"kind": kind, **report_json(rep)}), cfg)
    return EXIT_PASS


def cmd_scaling(args) -> int:
    cfg = _config(args)
    weights = parse_h_list(args.h_list)
    f = parse_symbol(args.f)
    if args.probe == "product":
        if not args.g:
            raise ConfigError("product probe needs --g")
        probe_args = (f, parse_symbol(args.g))
    else:
        if not args.v:
            raise ConfigError("derivation probe needs --v")
        probe_args = (parse_symbol(args.v, VField), f)
    res = hbar_scaling(args.probe, probe_args, weights, cfg.N)
    rows = [{"hbar": frac_str(hb), "norm": norm} for hb, norm in res.rows]
    if cfg.format == "csv":
        text = "hbar,norm\n" + "".join(f"{r['hbar']},{format(r['norm'], '.17g')}\n"
                                       for r in rows)
    else:
        text = dumps({"probe": args.probe, "rows": rows, "slope": res.slope,
                      "exact_zero": res.exact_zero, "note": res.note})
    emit(text, cfg)
    return EXIT_PASS


def cmd_eval(args) -> int:
    cfg = _config(args)
    node = parse_expr(args.expr)
    op = eval_expr(node, cfg.weight)
    if cfg.format == "csv":
        emit(truncation_csv(op, cfg.N), cfg)
    else:
        emit(dumps({"expr": pretty(node), **report_json(hs_report(op, cfg.N))}), cfg)
    return EXIT_PASS


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verma-berezin",
        description="Exact band-operator calculus on the Verma module V_h.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, h=True, fmt=("json",)):
        if h:
            p.add_argument("--h", default="1/1", help="lowest weight h as p/q (h >= 1/2)")
        p.add_argument("--N", type=int, default=1000, help="HS partial-sum / truncation size")
        p.add_argument("--scan", type=int, default=64, help="norm-bound scan horizon")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=fmt, default=fmt[0])

    p = sub.add_parser("verify", help="run exact verification suites")
    common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("defect", help="Witt defect reports for (m,n) pairs")
    common(p)
    p.add_argument("--pairs", required=True, help='e.g. "(2,-2);(1,-1)"')
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("sweep", help="CSV table of Witt defects over pairs and weights")
    common(p, h=False, fmt=("csv", "json"))
    p.add_argument("--pairs", default="")
    p.add_argument("--h-list", dest="h_list", default="")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("quantize-defect", help="product or derivation defect of symbols")
    common(p)
    p.add_argument("--f", required=True, help="symbol JSON [[k, re_n, re_d, im_n, im_d], ...]")
    p.add_argument("--g", help="second symbol for a product defect")
    p.add_argument("--v", help="vector field JSON for a derivation defect")
    p.set_defaults(func=cmd_quantize_defect)

    p = sub.add_parser("scaling", help="log-log hbar scaling of a defect")
    common(p, h=False, fmt=("json", "csv"))
    p.add_argument("--probe", choices=("product", "derivation"), default="product")
    p.add_argument("--f", required=True)
    p.add_argument("--g")
    p.add_argument("--v")
    p.add_argument("--h-list", dest="h_list", required=True)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("eval", help="evaluate an operator expression")
    common(p, fmt=("json", "csv"))
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, OperatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
