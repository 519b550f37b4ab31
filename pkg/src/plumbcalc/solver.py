"""Divisor L = x0*H + E orthogonal to every chain curve.

The unknowns are ordered (x_11, ..., x_{k m_k}, x0).  Row (i, j) of the block
system encodes L.C_ij = x_{i,j-1} - b_ij x_ij + x_{i,j+1} + a_ij x0 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .exact import mat_vec, nullspace, primitive_vector
from .plumbing import ConfigError, Cycle, InvariantError, Label, PlumbingConfig, intersection_matrix


@dataclass(frozen=True)
class BlockSystem:
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0


@dataclass(frozen=True)
class DivisorSolution:
    x0: int
    x: tuple[int, ...]  # flat, canonical curve order

    def as_vector(self) -> list[int]:
        return [*self.x, self.x0]

    def E(self) -> Cycle:
        return Cycle(self.x)

    def as_dict(self, config: PlumbingConfig) -> dict[Label, int]:
        return dict(zip(config.labels, self.x))


def build_block_system(config: PlumbingConfig) -> BlockSystem:
    M = intersection_matrix(config)
    return BlockSystem(tuple(tuple(row) + (a,) for row, a in zip(M, config.a_flat)))


def kernel_basis(S: BlockSystem) -> list[list[Fraction]]:
    n_rows, n_cols = S.shape
    return nullspace([list(r) for r in S.rows], n_cols)


def primitive_positive_solution(config: PlumbingConfig) -> DivisorSolution:
    basis = kernel_basis(build_block_system(config))
    if len(basis) != 1:
        raise InvariantError(f"kernel has dimension {len(basis)}, expected 1")
    v = primitive_vector(basis[0])
    if v[-1] < 0:
        v = [-t for t in v]
    if any(t <= 0 for t in v):
        raise InvariantError(f"kernel vector {v} has no strictly positive orientation")
    return DivisorSolution(x0=v[-1], x=tuple(v[:-1]))


def verify_orthogonality(config: PlumbingConfig, sol: DivisorSolution) -> dict[Label, int]:
    """L.C_ij for every curve; all zero exactly when ``sol`` solves the system."""
    if len(sol.x) != config.size:
        raise ConfigError(f"solution has {len(sol.x)} curve entries, configuration has {config.size}", field="x")
    values = mat_vec(build_block_system(config).rows, sol.as_vector())
    return dict(zip(config.labels, values))


def closed_form_small_m(b: Sequence[int], a: Sequence[int]) -> tuple[int, ...]:
    """Unnormalized coefficients (x0, x1[, x2]) for chains of one or two curves."""
    if len(b) != len(a):
        raise ConfigError("b and a must have the same length", field="a")
    if len(b) == 1:
        return (b[0], a[0])
    if len(b) == 2:
        b1, b2 = b
        a1, a2 = a
        return (b1 * b2 - 1, a1 * b2 + a2, a1 + a2 * b1)
    raise ConfigError(f"closed form only covers m in {{1, 2}}, got m={len(b)}", field="b")


def is_positive_multiple(u: Sequence[int], v: Sequence[int]) -> bool:
    """True when u = c*v for some rational c > 0."""
    if len(u) != len(v) or not any(v):
        return False
    ratio = None
    for p, q in zip(u, v):
        if q == 0:
            if p != 0:
                return False
            continue
        r = Fraction(p, q)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return ratio is not None and ratio > 0


def content(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(t) for t in v), 0)
