"""Linear chains of smooth rational curves and their intersection data.

A configuration is a list of pairwise disjoint chains.  Curves are addressed
either by a 1-based label ``(i, j)`` (chain ``i``, position ``j``) or by a flat
0-based index in canonical order (chain by chain, left to right).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import leading_minors


class ConfigError(ValueError):
    """Malformed plumbing data.  ``field`` names the offending input."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class InvariantError(RuntimeError):
    """An internal consistency check failed (should not happen on valid input)."""


Label = tuple[int, int]


@dataclass(frozen=True)
class ChainSpec:
    b: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if len(self.b) == 0:
            raise ConfigError("chain must contain at least one curve", field="b")
        if len(self.b) != len(self.a):
            raise ConfigError(
                f"b and a must have the same length (got {len(self.b)} and {len(self.a)})", field="a"
            )
        for j, v in enumerate(self.b, 1):
            if v < 2:
                raise ConfigError(f"b[{j}] = {v}: b must be >= 2", field="b")
        for j, v in enumerate(self.a, 1):
            if v < 1:
                raise ConfigError(f"a[{j}] = {v}: a must be >= 1", field="a")

    @property
    def m(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class PlumbingConfig:
    chains: tuple[ChainSpec, ...]
    labels: tuple[Label, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(self.chains))
        if not self.chains:
            raise ConfigError("configuration needs at least one chain", field="chains")
        labels = tuple((i, j) for i, ch in enumerate(self.chains, 1) for j in range(1, ch.m + 1))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_lists(cls, *chains: tuple[Sequence[int], Sequence[int]]) -> "PlumbingConfig":
        """``PlumbingConfig.from_lists(([3, 2], [1, 1]), ([2], [4]))``"""
        return cls(tuple(ChainSpec(tuple(b), tuple(a)) for b, a in chains))

    @property
    def k(self) -> int:
        return len(self.chains)

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        try:
            return self.labels.index(tuple(label))
        except ValueError:
            raise ConfigError(f"no curve C{label} in configuration", field="cycle") from None

    def chain_slice(self, i: int) -> slice:
        """Flat index range of chain ``i`` (1-based)."""
        start = sum(ch.m for ch in self.chains[: i - 1])
        return slice(start, start + self.chains[i - 1].m)

    @property
    def b_flat(self) -> tuple[int, ...]:
        return tuple(v for ch in self.chains for v in ch.b)

    @property
    def a_flat(self) -> tuple[int, ...]:
        return tuple(v for ch in self.chains for v in ch.a)


@dataclass(frozen=True)
class Cycle:
    """Effective divisor supported on the chains: one multiplicity per curve (flat order)."""

    mult: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(v) for v in self.mult))
        if any(v < 0 for v in self.mult):
            raise ConfigError("cycle multiplicities must be nonnegative", field="cycle")

    @classmethod
    def zero(cls, config: PlumbingConfig) -> "Cycle":
        return cls((0,) * config.size)

    @classmethod
    def reduced(cls, config: PlumbingConfig, chain: int | None = None) -> "Cycle":
        if chain is None:
            return cls((1,) * config.size)
        mult = [0] * config.size
        for t in range(config.size)[config.chain_slice(chain)]:
            mult[t] = 1
        return cls(tuple(mult))

    @classmethod
    def from_mapping(cls, config: PlumbingConfig, mult: Mapping[Label, int]) -> "Cycle":
        out = [0] * config.size
        for label, v in mult.items():
            out[config.index(label)] = int(v)
        return cls(tuple(out))

    def as_dict(self, config: PlumbingConfig) -> dict[Label, int]:
        return {lab: v for lab, v in zip(config.labels, self.mult) if v}

    @property
    def total(self) -> int:
        return sum(self.mult)

    def __add__(self, other: "Cycle") -> "Cycle":
        return Cycle(tuple(x + y for x, y in zip(self.mult, other.mult)))

    def __rmul__(self, n: int) -> "Cycle":
        return Cycle(tuple(n * x for x in self.mult))

    def check_support(self, config: PlumbingConfig) -> None:
        if len(self.mult) != config.size:
            raise ConfigError(
                f"cycle has {len(self.mult)} entries, configuration has {config.size} curves",
                field="cycle",
            )


def intersection_matrix(config: PlumbingConfig) -> list[list[int]]:
    n = config.size
    M = [[0] * n for _ in range(n)]
    pos = 0
    for ch in config.chains:
        for j, b in enumerate(ch.b):
            M[pos + j][pos + j] = -b
            if j + 1 < ch.m:
                M[pos + j][pos + j + 1] = 1
                M[pos + j + 1][pos + j] = 1
        pos += ch.m
    return M


def is_negative_definite(M: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    return all((-1) ** k * d > 0 for k, d in enumerate(leading_minors(M), 1))


def intersect(M: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(xi * Mij * yj for xi, row in zip(x, M) if xi for Mij, yj in zip(row, y))


def canonical_degrees(config: PlumbingConfig) -> tuple[int, ...]:
    """K.C for each curve; adjunction on a smooth rational curve gives b - 2."""
    return tuple(b - 2 for b in config.b_flat)


def cycle_genus(config: PlumbingConfig, Z: Cycle) -> int:
    Z.check_support(config)
    M = intersection_matrix(config)
    z2 = intersect(M, Z.mult, Z.mult)
    kz = sum(k * z for k, z in zip(canonical_degrees(config), Z.mult))
    twice = 2 + z2 + kz
    if twice % 2:
        raise InvariantError(f"Z^2 + K.Z = {z2 + kz} is odd; adjunction violated")
    return twice // 2


def laufer_cycle(M: Sequence[Sequence[int]], cap: int | None = None) -> list[int]:
    """Laufer's increment loop on a raw intersection matrix.

    Starts from the reduced cycle and adds ``C_j`` while some ``Z.C_j > 0``.
    Raises once ``cap`` increments have been spent without terminating.
    """
    n = len(M)
    if cap is None:
        cap = sum(-M[t][t] for t in range(n)) * n
    z = [1] * n
    for _ in range(cap + 1):
        bad = next((t for t in range(n) if sum(M[t][s] * z[s] for s in range(n)) > 0), None)
        if bad is None:
            return z
        z[bad] += 1
    raise InvariantError(f"Laufer iteration exceeded cap {cap}; form is not negative definite")


def fundamental_cycle(config: PlumbingConfig, chain: int) -> Cycle:
    """Minimal cycle Z >= reduced chain with Z.C_j <= 0 on chain ``chain`` (1-based)."""
    M = intersection_matrix(config)
    sl = config.chain_slice(chain)
    block = [row[sl] for row in M[sl]]
    ch = config.chains[chain - 1]
    z = laufer_cycle(block, cap=sum(ch.b) * ch.m)
    mult = [0] * config.size
    mult[sl] = z
    return Cycle(tuple(mult))


def hj_invariant(b: Sequence[int]) -> tuple[int, int]:
    """(n, q) with n/q = b1 - 1/(b2 - 1/(... - 1/bm)) in lowest terms."""
    val = Fraction(b[-1])
    for v in reversed(b[:-1]):
        val = v - 1 / val
    return val.numerator, val.denominator


@dataclass(frozen=True)
class ValidationReport:
    negative_definite: bool
    leading_minors: tuple[int, ...]
    hj_invariants: tuple[tuple[int, int], ...]
    fundamental_cycles: tuple[Cycle, ...]
    genera: tuple[int, ...]

    @property
    def rational(self) -> bool:
        return all(g == 0 for g in self.genera)

    @property
    def ok(self) -> bool:
        return self.negative_definite and self.rational


def validate_config(config: PlumbingConfig) -> ValidationReport:
    # field-level checks (b >= 2, a >= 1, nonempty) already ran in the constructors
    M = intersection_matrix(config)
    minors = tuple(leading_minors(M))
    neg_def = all((-1) ** k * d > 0 for k, d in enumerate(minors, 1))
    cycles, genera = [], []
    if neg_def:
        for i in range(1, config.k + 1):
            Z = fundamental_cycle(config, i)
            cycles.append(Z)
            genera.append(cycle_genus(config, Z))
    return ValidationReport(
        negative_definite=neg_def,
        leading_minors=minors,
        hj_invariants=tuple(hj_invariant(ch.b) for ch in config.chains),
        fundamental_cycles=tuple(cycles),
        genera=tuple(genera),
    )

