"""Machine-readable run reports.

Every exact number is stored as a decimal string (rationals as ``p/q``), so the
JSON document survives consumers that only have 64-bit floats.  The only float
is the presentation copy of the fitted growth coefficient.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from . import __version__
from .cohomology import (
    CohomologyLedger,
    GrowthReport,
    check_component_h0_vanishing,
    check_h0_reduced_E_vanishing,
    discrepancy_report,
    growth_analysis,
    peel_ledger,
)
from .plumbing import PlumbingConfig, validate_config
from .solver import DivisorSolution, verify_orthogonality

SCHEMA_ID = "plumbcalc.report/1"


def _s(v: int | Fraction) -> str:
    return str(v)


def _label(lab) -> dict[str, str]:
    return {"chain": _s(lab[0]), "curve": _s(lab[1])}


@dataclass(frozen=True)
class RunReport:
    metadata: dict[str, Any]
    validation: dict[str, Any] | None = None
    solution: dict[str, Any] | None = None
    cohomology: dict[str, Any] | None = None
    growth: dict[str, Any] | None = None
    schema: str = field(default=SCHEMA_ID)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def load_schema() -> dict:
    return json.loads(resources.files("plumbcalc").joinpath("report.schema.json").read_text())


def metadata(source: bytes, command: str, **flags) -> dict[str, Any]:
    return {
        "tool": "plumbcalc",
        "tool_version": __version__,
        "input_sha256": hashlib.sha256(source).hexdigest(),
        "command": command,
        "flags": {k: (None if v is None else str(v)) for k, v in sorted(flags.items())},
    }


def validation_section(config: PlumbingConfig) -> dict[str, Any]:
    rep = validate_config(config)
    chains = []
    for i, ch in enumerate(config.chains, 1):
        entry = {
            "chain": _s(i),
            "b": [_s(v) for v in ch.b],
            "a": [_s(v) for v in ch.a],
            "hj_n": _s(rep.hj_invariants[i - 1][0]),
            "hj_q": _s(rep.hj_invariants[i - 1][1]),
            "fundamental_cycle": None,
            "genus": None,
        }
        if rep.fundamental_cycles:
            Z = rep.fundamental_cycles[i - 1]
            entry["fundamental_cycle"] = [_s(v) for v in Z.mult[config.chain_slice(i)]]
            entry["genus"] = _s(rep.genera[i - 1])
        chains.append(entry)
    return {
        "negative_definite": rep.negative_definite,
        "leading_minors": [_s(v) for v in rep.leading_minors],
        "rational": rep.rational if rep.negative_definite else False,
        "chains": chains,
    }


def solution_section(config: PlumbingConfig, sol: DivisorSolution) -> dict[str, Any]:
    orth = verify_orthogonality(config, sol)
    return {
        "x0": _s(sol.x0),
        "coefficients": [{**_label(lab), "x": _s(x), "l_dot_c": _s(orth[lab])} for lab, x in zip(config.labels, sol.x)],
    }


def ledger_dict(config: PlumbingConfig, ledger: CohomologyLedger) -> dict[str, Any]:
    return {
        "h0": [_s(ledger.h0_total.lo), _s(ledger.h0_total.hi)],
        "h1": [_s(ledger.h1_total.lo), _s(ledger.h1_total.hi)],
        "euler": _s(ledger.euler_total),
        "steps": [
            {
                **_label(st.component),
                "remaining": [_s(v) for v in st.remaining.mult],
                "twist": [_s(v) for v in st.twist],
                "d_T": _s(st.d_T),
                "d_N": _s(st.d_N),
                "h0_step": _s(st.h0_step),
                "h1_step": _s(st.h1_step),
                "exact": st.exact,
            }
            for st in ledger.steps
        ],
    }


def cohomology_section(config: PlumbingConfig, sol: DivisorSolution, n: int, order: str = "canonical") -> dict[str, Any]:
    E = sol.E()
    comp = check_component_h0_vanishing(config, sol, n)
    return {
        "n": _s(n),
        "peel_order": order,
        "ledger_nE": ledger_dict(config, peel_ledger(config, n * E, n * E, order)),
        "ledger_E": ledger_dict(config, peel_ledger(config, E, n * E, order)),
        "component_vanishing": [{**_label(lab), "x": _s(x), "h0_vanishes": comp[lab]} for lab, x in zip(config.labels, sol.x)],
        "e_vanishing": check_h0_reduced_E_vanishing(config, sol, n),
    }


def growth_dict(g: GrowthReport) -> dict[str, Any]:
    return {
        "n_values": [_s(v) for v in g.n_values],
        "h1_lo": [_s(v) for v in g.h1_lo],
        "h1_hi": [_s(v) for v in g.h1_hi],
        "second_differences": [_s(v) for v in g.second_differences],
        "leading_coefficient": _s(g.quadratic_leading_coefficient),
        "leading_coefficient_float": g.leading_coefficient_float,
        "threshold_n": None if g.threshold_n is None else _s(g.threshold_n),
    }


def growth_section(
    config: PlumbingConfig, sol: DivisorSolution, n_range: tuple[int, int], order: str = "canonical"
) -> dict[str, Any]:
    g = growth_analysis(config, sol, n_range, order)
    rows = discrepancy_report(config, sol, range(n_range[0], n_range[1] + 1))
    return {
        "n_range": [_s(n_range[0]), _s(n_range[1])],
        "peel_order": order,
        "report": growth_dict(g),
        "discrepancy": [
            {
                "n": _s(r.n),
                "chain": _s(r.chain),
                "b": _s(r.b),
                "x": _s(r.x),
                "engine_h1_lo": _s(r.engine_h1.lo),
                "engine_h1_hi": _s(r.engine_h1.hi),
                "closed_form": _s(r.closed_form),
                "diff_lo": _s(r.diff_lo),
                "diff_hi": _s(r.diff_hi),
                "mismatched_steps": [_s(l) for l in r.mismatched_steps],
            }
            for r in rows
        ],
    }


# csv ------------------------------------------------------------------

def _table(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def _ledger_rows(led: dict) -> list[list[Any]]:
    return [
        [s, st["chain"], st["curve"], " ".join(st["remaining"]), " ".join(st["twist"]), st["d_T"], st["d_N"],
         st["h0_step"], st["h1_step"], str(st["exact"]).lower()]
        for s, st in enumerate(led["steps"])
    ]


LEDGER_HEADER = ["step", "chain", "curve", "remaining", "twist", "d_T", "d_N", "h0_step", "h1_step", "exact"]
GROWTH_HEADER = ["n", "h1_lo", "h1_hi", "second_diff"]
DISCREPANCY_HEADER = [
    "n", "chain", "b", "x", "engine_h1_lo", "engine_h1_hi", "closed_form", "diff_lo", "diff_hi", "mismatched_steps",
]


def csv_tables(report: RunReport) -> dict[str, str]:
    """File name -> csv text, one per tabular section present in the report."""
    out = {"metadata.csv": _table(["key", "value"], [
        ["schema", report.schema],
        ["tool_version", report.metadata["tool_version"]],
        ["input_sha256", report.metadata["input_sha256"]],
        ["command", report.metadata["command"]],
    ])}
    if report.validation is not None:
        v = report.validation
        out["validation.csv"] = _table(
            ["chain", "b", "a", "hj_n", "hj_q", "fundamental_cycle", "genus", "negative_definite", "rational"],
            [[c["chain"], " ".join(c["b"]), " ".join(c["a"]), c["hj_n"], c["hj_q"],
              None if c["fundamental_cycle"] is None else " ".join(c["fundamental_cycle"]), c["genus"],
              str(v["negative_definite"]).lower(), str(v["rational"]).lower()] for c in v["chains"]],
        )
    if report.solution is not None:
        sol = report.solution
        out["solution.csv"] = _table(
            ["name", "chain", "curve", "value", "l_dot_c"],
            [["x0", None, None, sol["x0"], None]]
            + [["x", c["chain"], c["curve"], c["x"], c["l_dot_c"]] for c in sol["coefficients"]],
        )
    if report.cohomology is not None:
        co = report.cohomology
        out["ledger_nE.csv"] = _table(LEDGER_HEADER, _ledger_rows(co["ledger_nE"]))
        out["ledger_E.csv"] = _table(LEDGER_HEADER, _ledger_rows(co["ledger_E"]))
        out["vanishing.csv"] = _table(
            ["chain", "curve", "x", "h0_vanishes"],
            [[c["chain"], c["curve"], c["x"], str(c["h0_vanishes"]).lower()] for c in co["component_vanishing"]],
        )
        out["cohomology_summary.csv"] = _table(["key", "value"], [
            ["n", co["n"]],
            ["h0_nE", "{}:{}".format(*co["ledger_nE"]["h0"])],
            ["h1_nE", "{}:{}".format(*co["ledger_nE"]["h1"])],
            ["euler_nE", co["ledger_nE"]["euler"]],
            ["h0_E", "{}:{}".format(*co["ledger_E"]["h0"])],
            ["e_vanishing", str(co["e_vanishing"]).lower()],
        ])
    if report.growth is not None:
        g = report.growth["report"]
        n = len(g["n_values"])
        sd = [None] + g["second_differences"] + [None] if n >= 2 else [None] * n
        out["growth.csv"] = _table(
            GROWTH_HEADER, [[g["n_values"][t], g["h1_lo"][t], g["h1_hi"][t], sd[t]] for t in range(n)]
        )
        out["growth_fit.csv"] = _table(["key", "value"], [
            ["leading_coefficient", g["leading_coefficient"]],
            ["leading_coefficient_float", repr(g["leading_coefficient_float"])],
            ["threshold_n", g["threshold_n"]],
        ])
        out["discrepancy.csv"] = _table(
            DISCREPANCY_HEADER,
            [[r[h] if h != "mismatched_steps" else " ".join(r[h]) for h in DISCREPANCY_HEADER] for r in report.growth["discrepancy"]],
        )
    return out


def emit(report: RunReport, fmt: str, path: str | Path | None = None) -> str | None:
    """Write ``report``; json goes to ``path`` or is returned, csv needs a directory."""
    if fmt == "json":
        text = report.to_json()
        if path is None:
            return text
        Path(path).write_text(text)
        return None
    if fmt == "csv":
        if path is None:
            raise ValueError("csv output needs a directory path")
        out = Path(path)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in csv_tables(report).items():
            (out / name).write_text(text)
        return None
    raise ValueError(f"unknown format {fmt!r}")
