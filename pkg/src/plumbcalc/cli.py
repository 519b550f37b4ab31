"""Command line entry point.

Exit status: 0 success, 2 input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigParseError, parse_config
from .plumbing import ConfigError, InvariantError
from .report import (
    RunReport,
    cohomology_section,
    emit,
    growth_section,
    metadata,
    solution_section,
    validation_section,
)
from .solver import primitive_positive_solution

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3

COMMANDS = ("validate", "solve", "cohomology", "sweep", "report")


class InputError(Exception):
    pass


def _n_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo < 1 or lo > hi:
        raise argparse.ArgumentTypeError(f"need 1 <= LO <= HI, got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plumbcalc", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("config", type=Path)
    p.add_argument("--n", type=int, default=None, help="twist multiple for cohomology/report")
    p.add_argument("--n-range", type=_n_range, default=None, metavar="LO:HI", help="overrides the sweep block")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", type=Path, default=None, help="output file (json) or directory (csv)")
    p.add_argument("--peel-order", choices=("canonical", "reverse"), default="canonical")
    return p


def build_report(args: argparse.Namespace, source: bytes) -> RunReport:
    cf = parse_config(source.decode("utf-8"))
    config = cf.config
    cmd = args.command
    n_range = args.n_range or cf.sweep
    n = args.n
    if cmd == "cohomology" and n is None:
        raise InputError("cohomology needs --n N")
    if cmd == "sweep" and n_range is None:
        raise InputError("sweep needs a sweep block or --n-range LO:HI")
    if cmd == "report" and n is None:
        n = n_range[1] if n_range else 1
    if n is not None and n < 1:
        raise InputError("--n must be >= 1")
    if n_range is not None and n_range[1] - n_range[0] < 2 and cmd in ("sweep", "report"):
        raise InputError("n range must contain at least three values")

    meta = metadata(source, cmd, n=n if cmd in ("cohomology", "report") else None,
                    n_range=None if n_range is None or cmd not in ("sweep", "report") else f"{n_range[0]}:{n_range[1]}",
                    peel_order=args.peel_order)
    validation = validation_section(config)
    if not (validation["negative_definite"] and validation["rational"]):
        raise InputError("configuration does not contract to a rational singularity")
    sections = {"validation": validation}
    if cmd != "validate":
        sol = primitive_positive_solution(config)
        if cmd in ("solve", "report"):
            sections["solution"] = solution_section(config, sol)
        if cmd in ("cohomology", "report"):
            sections["cohomology"] = cohomology_section(config, sol, n, args.peel_order)
        if cmd == "sweep" or (cmd == "report" and n_range is not None):
            sections["growth"] = growth_section(config, sol, n_range, args.peel_order)
        if cmd in ("solve", "cohomology", "sweep"):
            sections.setdefault("solution", solution_section(config, sol))
    return RunReport(metadata=meta, **sections)


def _fmt_interval(pair) -> str:
    return f"[{pair[0]},{pair[1]}]"


def render_text(r: RunReport) -> str:
    lines = []
    v = r.validation
    if v is not None:
        lines.append(f"negative definite: {str(v['negative_definite']).lower()}  "
                     f"(leading minors {' '.join(v['leading_minors'])})")
        for c in v["chains"]:
            fc = " ".join(c["fundamental_cycle"] or [])
            lines.append(f"chain {c['chain']}: b=[{','.join(c['b'])}] a=[{','.join(c['a'])}]  "
                         f"HJ (n,q)=({c['hj_n']},{c['hj_q']})  Z=[{fc}]  p_a(Z)={c['genus']}")
        lines.append(f"rational: {str(v['rational']).lower()}")
    s = r.solution
    if s is not None and r.metadata["command"] in ("solve", "report"):
        lines.append(f"x0={s['x0']}")
        for c in s["coefficients"]:
            lines.append(f"x{c['chain']}{c['curve']}={c['x']}  L.C{c['chain']}{c['curve']}={c['l_dot_c']}")
    co = r.cohomology
    if co is not None:
        lines.append(f"n={co['n']}  peel order: {co['peel_order']}")
        for name, key in (("nE", "ledger_nE"), ("E", "ledger_E")):
            led = co[key]
            lines.append(f"ledger target {name}, twist nE: h0 {_fmt_interval(led['h0'])}  "
                         f"h1 {_fmt_interval(led['h1'])}  euler {led['euler']}")
            for t, st in enumerate(led["steps"]):
                lines.append(f"  step {t}: C{st['chain']}{st['curve']}  d_T={st['d_T']} d_N={st['d_N']}  "
                             f"h0={st['h0_step']} h1={st['h1_step']}{'' if st['exact'] else '  (widened)'}")
        for c in co["component_vanishing"]:
            lines.append(f"H0 on {c['x']}C{c['chain']}{c['curve']} vanishes: {str(c['h0_vanishes']).lower()}")
        lines.append(f"E-vanishing: {str(co['e_vanishing']).lower()}")
    g = r.growth
    if g is not None:
        rep = g["report"]
        lines.append("n  h1_lo  h1_hi  second_diff")
        sd = [""] + rep["second_differences"] + [""]
        for t, n in enumerate(rep["n_values"]):
            lines.append(f"{n}  {rep['h1_lo'][t]}  {rep['h1_hi'][t]}  {sd[t]}")
        lines.append(f"leading coefficient: {rep['leading_coefficient']} "
                     f"(~{rep['leading_coefficient_float']:.6g})  threshold n: {rep['threshold_n']}")
        for d in g["discrepancy"]:
            lines.append(f"n={d['n']} chain {d['chain']}: engine h1 [{d['engine_h1_lo']},{d['engine_h1_hi']}]  "
                         f"closed form {d['closed_form']}  difference {d['diff_lo']}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        source = args.config.read_bytes()
        report = build_report(args, source)
    except OSError as exc:
        print(f"plumbcalc: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigParseError as exc:
        print(f"plumbcalc: {args.config}: {exc} [{exc.category}]", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, InputError, UnicodeDecodeError) as exc:
        print(f"plumbcalc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantError, AssertionError) as exc:
        print(f"plumbcalc: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    try:
        if args.format == "text":
            text = render_text(report)
            if args.out:
                args.out.write_text(text)
            else:
                sys.stdout.write(text)
        elif args.format == "json":
            text = emit(report, "json", args.out)
            if text is not None:
                sys.stdout.write(text)
        else:
            if args.out is None:
                print("plumbcalc: --format csv needs --out DIR", file=sys.stderr)
                return EXIT_INPUT
            emit(report, "csv", args.out)
    except BrokenPipeError:
        return EXIT_OK
    except OSError as exc:
        print(f"plumbcalc: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
