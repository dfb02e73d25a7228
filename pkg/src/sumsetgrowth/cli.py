"""Command-line front end.

Exit codes: 0 ok, 1 oracle divergence, 2 invalid input, 3 budget exceeded,
4 not stabilized, 5 gcd not one, 6 box too small.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import growth, series, structure
from .errors import (
    BoxTooSmall,
    BudgetExceeded,
    EnumerationCapExceeded,
    GcdNotOne,
    NotStabilized,
    ProblemError,
)
from .problem_file import load_problem
from .sumset import DEFAULT_BUDGET, DEFAULT_CAP, growth_table, oracle_check

EXIT_OK = 0
EXIT_DIVERGED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_NOT_STABILIZED = 4
EXIT_GCD = 5
EXIT_BOX = 6


@dataclass
class RunConfig:
    command: str
    box: list | None = None
    max_threshold: int | None = None
    window: int = growth.DEFAULT_WINDOW
    mode: str = "memoized"
    cap: int = DEFAULT_CAP
    budget: int = DEFAULT_BUDGET
    format: str = "json"
    output: str | None = None

    def resolve(self, r: int, default_box=None) -> "RunConfig":
        """Fill command defaults for an r-dimensional problem."""
        if self.box is None and default_box is not None:
            self.box = [default_box(r)] * r
        elif self.box is not None and len(self.box) == 1 and r > 1:
            self.box = self.box * r
        if self.max_threshold is None:
            self.max_threshold = growth.default_max_threshold(r)
        return self


def _box_arg(text: str) -> list:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"box must be comma-separated integers: {text!r}")
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"box bounds must be nonnegative: {text!r}")
    return vals


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sumsetgrowth",
        description="Growth functions of sumsets B + h1 A1 + ... + hr Ar.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--box", type=_box_arg, help="inclusive bounds H_1,...,H_r")
        p.add_argument("--max-threshold", type=_nonneg, dest="max_threshold")
        p.add_argument("--window", type=_positive, default=growth.DEFAULT_WINDOW)
        p.add_argument("--mode", choices=("memoized", "brute"), default="memoized")
        p.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                       help="enumeration cap in formal symbols")
        p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                       help="maximum number of live set elements")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    common(sub.add_parser("validate", help="check a problem file"))
    common(sub.add_parser("grow", help="growth table"), fmt_default="csv")
    common(sub.add_parser("fit", help="detect and fit the eventual polynomial"))
    common(sub.add_parser("structure", help="integer-case structure (N0 problems)"))
    common(sub.add_parser("series", help="numerator of the growth series"))
    common(sub.add_parser("oracle-check", help="memoized vs brute-force comparison"))
    fp = sub.add_parser("frobenius", help="Frobenius number of coprime generators")
    fp.add_argument("generators", nargs="+", type=int)
    fp.add_argument("--format", choices=("csv", "json"), default=None)
    fp.add_argument("--output", "-o")
    return ap


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(exit_code, exc, cfg_output=None, **extra) -> int:
    cause = exc.__cause__ or exc
    diag = {"ok": False, "error": type(cause).__name__, "message": str(exc)}
    for attr in ("witness", "location", "point", "g"):
        v = getattr(cause, attr, None) if attr != "location" else getattr(exc, attr, None)
        if v is not None:
            diag[attr] = list(v) if isinstance(v, tuple) else v
    diag.update(extra)
    print(f"error: {exc}", file=sys.stderr)
    sys.stdout.write(_dump(diag))
    return exit_code


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        box=args.box,
        max_threshold=args.max_threshold,
        window=args.window,
        mode=args.mode,
        cap=args.cap,
        budget=args.budget,
        format=args.format,
        output=args.output,
    )


def cmd_validate(args) -> int:
    lp = load_problem(args.file)
    p = lp.problem
    _emit(_dump({
        "ok": True,
        "name": p.name,
        "semigroup": p.spec.describe(),
        "nonnegative": lp.nonnegative,
        "r": p.r,
        "k": list(p.k),
        "B_size": len(p.base),
    }), args.output)
    return EXIT_OK


def cmd_grow(args) -> int:
    lp = load_problem(args.file)
    cfg = _config(args).resolve(lp.problem.r, default_box=lambda r: 10)
    table = growth_table(lp.problem, cfg.box, cfg.mode, budget=cfg.budget)
    if cfg.format == "csv":
        _emit(table.to_csv(), cfg.output)
    else:
        rows = [{"h": list(h), "gamma": table.gamma[h]} for h in table.points()]
        _emit(_dump({"config": asdict(cfg), "table": rows}), cfg.output)
    return EXIT_OK


def cmd_fit(args) -> int:
    lp = load_problem(args.file)
    cfg = _config(args).resolve(lp.problem.r)
    rep = growth.detect_stabilization(
        lp.problem, cfg.max_threshold, cfg.window, budget=cfg.budget
    )
    _emit(_dump({"config": asdict(cfg), "report": rep.to_dict()}), cfg.output)
    if not rep.stabilized:
        print(f"not stabilized up to threshold {cfg.max_threshold}", file=sys.stderr)
        return EXIT_NOT_STABILIZED
    return EXIT_OK


def cmd_structure(args) -> int:
    lp = load_problem(args.file)
    if not lp.is_integer:
        raise ProblemError("structure needs an N0 (or Z) problem", "semigroup")
    cfg = _config(args).resolve(lp.problem.r)
    norm = structure.from_problem(lp.problem)
    T = cfg.max_threshold
    rep = structure.structure_sets(norm, T, cfg.window)
    stab = growth.detect_stabilization(lp.problem, T, cfg.window, budget=cfg.budget)
    out = {
        "config": asdict(cfg),
        "normalization": {
            "base_shift": norm.base_shift,
            "summand_shifts": list(norm.summand_shifts),
            "B": list(norm.base),
            "A": [list(a) for a in norm.summands],
            "gcd": norm.g,
        },
        "structure": rep.to_dict(),
        "fit": stab.to_dict(),
    }
    if stab.stabilized:
        ok, problems = structure.verify_multilinear(norm, rep, stab.fitted)
        out["multilinear"] = {"ok": ok, "discrepancies": problems}
    else:
        out["multilinear"] = {"ok": False, "discrepancies": [{"kind": "fit_not_stabilized"}]}
    _emit(_dump(out), cfg.output)
    if not stab.stabilized:
        return EXIT_NOT_STABILIZED
    return EXIT_OK


def cmd_series(args) -> int:
    lp = load_problem(args.file)
    cfg = _config(args).resolve(lp.problem.r, default_box=lambda r: 20 if r == 1 else 10)
    summary = series.rational_form_check(
        lp.problem, cfg.box, max_threshold=cfg.max_threshold, window=cfg.window,
        budget=cfg.budget,
    )
    _emit(_dump({"config": asdict(cfg), "summary": summary}), cfg.output)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    lp = load_problem(args.file)
    cfg = _config(args).resolve(lp.problem.r, default_box=lambda r: 6 if r == 1 else 3)
    ok, info = oracle_check(lp.problem, cfg.box, cfg.cap, budget=cfg.budget)
    _emit(_dump({"config": asdict(cfg), "pass": ok, "detail": info}), cfg.output)
    if not ok:
        print(f"divergence at h={info['h']}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def cmd_frobenius(args) -> int:
    f, gaps = structure.frobenius_table(args.generators)
    if args.format == "json":
        text = _dump({"generators": sorted(set(args.generators)), "frobenius": f, "gaps": gaps})
    else:
        text = f"{f}\n"
    _emit(text, args.output)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "grow": cmd_grow,
    "fit": cmd_fit,
    "structure": cmd_structure,
    "series": cmd_series,
    "oracle-check": cmd_oracle_check,
    "frobenius": cmd_frobenius,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ProblemError as exc:
        return _error(EXIT_INVALID, exc)
    except (BudgetExceeded, EnumerationCapExceeded) as exc:
        return _error(EXIT_BUDGET, exc)
    except NotStabilized as exc:
        return _error(EXIT_NOT_STABILIZED, exc)
    except GcdNotOne as exc:
        return _error(EXIT_GCD, exc)
    except BoxTooSmall as exc:
        return _error(EXIT_BOX, exc)
    except (OSError, ValueError) as exc:
        return _error(EXIT_INVALID, exc)


if __name__ == "__main__":
    sys.exit(main())
