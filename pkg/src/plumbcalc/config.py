"""Plain-line configuration files.

::

    # comment
    chain b=[3,2,2] a=[1,1,2]
    chain b=[4] a=[3]
    sweep n=[2,10]
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .plumbing import ChainSpec, ConfigError, PlumbingConfig

# error categories
SYNTAX = "syntax"
NON_INTEGER = "non-integer"
BOUND = "bound"
LENGTH = "length-mismatch"
DUPLICATE_SWEEP = "duplicate-sweep"
SWEEP_ORDER = "sweep-order"
EMPTY = "empty"


class ConfigParseError(ConfigError):
    def __init__(self, category: str, message: str, line: int, column: int, field: str | None = None):
        super().__init__(f"line {line}, column {column}: {message}", field=field)
        self.category = category
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ConfigFile:
    config: PlumbingConfig
    sweep: tuple[int, int] | None = None


_LIST = r"\[([^\]]*)\]"
_CHAIN = re.compile(rf"^chain\s+b\s*=\s*{_LIST}\s+a\s*=\s*{_LIST}\s*$")
_SWEEP = re.compile(rf"^sweep\s+n\s*=\s*{_LIST}\s*$")
_INT = re.compile(r"^[+-]?\d+$")


def _ints(body: str, offset: int, lineno: int, name: str) -> list[int]:
    values = []
    pos = 0
    for tok in body.split(","):
        col = offset + pos + (len(tok) - len(tok.lstrip())) + 1
        pos += len(tok) + 1
        tok = tok.strip()
        if not _INT.match(tok):
            raise ConfigParseError(NON_INTEGER, f"{name}: {tok!r} is not an integer", lineno, col, field=name)
        values.append(int(tok))
    return values


def parse_config(text: str) -> ConfigFile:
    chains: list[ChainSpec] = []
    sweep = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if m := _CHAIN.match(body):
            b = _ints(m.group(1), indent + m.start(1), lineno, "b")
            a = _ints(m.group(2), indent + m.start(2), lineno, "a")
            if len(b) != len(a):
                raise ConfigParseError(
                    LENGTH, f"b has {len(b)} entries but a has {len(a)}", lineno, indent + m.start(2) + 1, field="a"
                )
            for name, vals, lower, grp in (("b", b, 2, 1), ("a", a, 1, 2)):
                for j, v in enumerate(vals, 1):
                    if v < lower:
                        raise ConfigParseError(
                            BOUND, f"{name}[{j}] = {v}: {name} must be >= {lower}", lineno, indent + m.start(grp) + 1, field=name
                        )
            chains.append(ChainSpec(tuple(b), tuple(a)))
        elif m := _SWEEP.match(body):
            if sweep is not None:
                raise ConfigParseError(DUPLICATE_SWEEP, "sweep block given twice", lineno, indent + 1, field="sweep")
            vals = _ints(m.group(1), indent + m.start(1), lineno, "n")
            if len(vals) != 2:
                raise ConfigParseError(SYNTAX, "sweep needs n=[lo,hi]", lineno, indent + m.start(1) + 1, field="sweep")
            lo, hi = vals
            if lo < 1 or lo > hi:
                raise ConfigParseError(SWEEP_ORDER, f"sweep needs 1 <= lo <= hi, got [{lo},{hi}]", lineno, indent + m.start(1) + 1, field="sweep")
            sweep = (lo, hi)
        else:
            raise ConfigParseError(SYNTAX, f"cannot parse {body!r}", lineno, indent + 1)
    if not chains:
        raise ConfigParseError(EMPTY, "no chain declared", 1, 1, field="chains")
    return ConfigFile(PlumbingConfig(tuple(chains)), sweep)


def format_config(cf: ConfigFile) -> str:
    lines = [
        f"chain b=[{','.join(map(str, ch.b))}] a=[{','.join(map(str, ch.a))}]" for ch in cf.config.chains
    ]
    if cf.sweep is not None:
        lines.append(f"sweep n=[{cf.sweep[0]},{cf.sweep[1]}]")
    return "\n".join(lines) + "\n"
