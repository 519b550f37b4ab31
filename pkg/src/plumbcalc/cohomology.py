"""Dimension bookkeeping for the twisted tangent sheaf on cycles supported on the chains.

For an effective cycle R, a twist M and a component C of R, the sequence

    0 -> T_Z(M - C)|_{R - C} -> T_Z(M)|_R -> T_Z(M)|_C -> 0

peels one reduced copy of C.  On the reduced curve, T_Z(M)|_C is an extension
of N_{C,Z}(M) (degree -b + M.C) by T_C(M) (degree 2 + M.C).  Since the normal
degree is always b + 2 below the tangent degree, H0 of the normal summand is
nonzero only when H1 of the tangent summand vanishes, so the extension has the
same h0/h1 as the split bundle.

Cohomology of the long exact sequence is ambiguous only through the rank r of
H0(quotient) -> H1(sub), with 0 <= r <= min(h0(quotient), h1(sub)).  The
ledger tracks the exact set of attainable h1 values (always an integer
interval); h0 follows from h0 = h1 + chi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from typing import Iterable, Sequence

from . import kernels
from .exact import solve_square
from .plumbing import ConfigError, Cycle, Label, PlumbingConfig, intersect, intersection_matrix
from .solver import DivisorSolution


def p1_cohomology(d: int) -> tuple[int, int]:
    """(h0, h1) of O(d) on the projective line."""
    return max(0, d + 1), max(0, -d - 1)


@dataclass(frozen=True)
class LineBundleDegreePair:
    d_T: int
    d_N: int


@dataclass(frozen=True)
class DimInterval:
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid dimension interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class PeelStep:
    component: Label
    remaining: Cycle  # cycle before this copy is removed
    twist: tuple[int, ...]  # may go negative once peeling passes the twist
    d_T: int
    d_N: int
    h0_step: int
    h1_step: int
    exact: bool


@dataclass(frozen=True)
class CohomologyLedger:
    steps: tuple[PeelStep, ...]
    h0_total: DimInterval
    h1_total: DimInterval
    euler_total: int


def twist_degrees(config: PlumbingConfig, twist: Cycle, component: Label) -> LineBundleDegreePair:
    twist.check_support(config)
    c = config.index(component)
    M = intersection_matrix(config)
    d = sum(M[c][s] * t for s, t in enumerate(twist.mult))
    return LineBundleDegreePair(d_T=2 + d, d_N=-config.b_flat[c] + d)


def peel_order(config: PlumbingConfig, target: Cycle, order: str | Sequence[int] = "canonical") -> list[int]:
    """Flat component indices, one per peeled copy, outermost step first.

    ``canonical`` exhausts C_11 first, then C_12, ...; ``reverse`` starts from
    the last curve.  An explicit sequence must be a rearrangement of the
    target's multiset of components.
    """
    canonical = list(chain.from_iterable([c] * m for c, m in enumerate(target.mult)))
    if isinstance(order, str):
        if order == "canonical":
            return canonical
        if order == "reverse":
            return list(chain.from_iterable([c] * target.mult[c] for c in reversed(range(config.size))))
        raise ConfigError(f"unknown peel order {order!r}", field="peel_order")
    order = [int(c) for c in order]
    if sorted(order) != canonical:
        raise ConfigError("peel order is not a rearrangement of the target cycle", field="peel_order")
    return order


def _prepare(config: PlumbingConfig, target: Cycle, twist_base: Cycle, order):
    target.check_support(config)
    twist_base.check_support(config)
    if target.total <= 0:
        raise ConfigError("peeling target must have positive total multiplicity", field="cycle")
    return intersection_matrix(config), peel_order(config, target, order)


def _interval_pair(lo: int, hi: int, euler: int) -> tuple[DimInterval, DimInterval]:
    return DimInterval(lo + euler, hi + euler), DimInterval(lo, hi)


def peel_ledger(
    config: PlumbingConfig,
    target: Cycle,
    twist_base: Cycle,
    order: str | Sequence[int] = "canonical",
    backend: str | None = None,
) -> CohomologyLedger:
    """Peel ``target`` one reduced curve at a time with twist ``twist_base``.

    The step removing a copy of C from the remaining cycle uses twist
    ``twist_base - (already peeled part)``.
    """
    M, seq = _prepare(config, target, twist_base, order)
    out = kernels.peel(M, twist_base.mult, seq, config.b_flat, backend=backend)
    remaining = list(target.mult)
    twist = list(twist_base.mult)
    steps = []
    for s, c in enumerate(seq):
        steps.append(
            PeelStep(
                component=config.labels[c],
                remaining=Cycle(tuple(remaining)),
                twist=tuple(twist),
                d_T=int(out.d_t[s]),
                d_N=int(out.d_n[s]),
                h0_step=int(out.h0q[s]),
                h1_step=int(out.h1q[s]),
                exact=bool(out.exact[s]),
            )
        )
        remaining[c] -= 1
        twist[c] -= 1
    h0, h1 = _interval_pair(int(out.h1_lo[0]), int(out.h1_hi[0]), out.euler)
    return CohomologyLedger(tuple(steps), h0, h1, out.euler)


def peel_totals(
    config: PlumbingConfig,
    target: Cycle,
    twist_base: Cycle,
    order: str | Sequence[int] = "canonical",
    backend: str | None = None,
) -> tuple[DimInterval, DimInterval, int]:
    """(h0, h1, euler) of a ledger without materializing the step records."""
    M, seq = _prepare(config, target, twist_base, order)
    out = kernels.peel(M, twist_base.mult, seq, config.b_flat, backend=backend)
    h0, h1 = _interval_pair(int(out.h1_lo[0]), int(out.h1_hi[0]), out.euler)
    return h0, h1, out.euler


def check_component_h0_vanishing(config: PlumbingConfig, sol: DivisorSolution, n: int) -> dict[Label, bool]:
    """Whether H0(x_ij C_ij, T_Z(nE)) vanishes for each curve."""
    if n < 1:
        raise ConfigError("n must be >= 1", field="n")
    twist = n * sol.E()
    result = {}
    for c, label in enumerate(config.labels):
        mult = [0] * config.size
        mult[c] = sol.x[c]
        h0, _, _ = peel_totals(config, Cycle(tuple(mult)), twist)
        result[label] = h0.hi == 0
    return result


def check_h0_reduced_E_vanishing(config: PlumbingConfig, sol: DivisorSolution, n: int) -> bool:
    """Whether H0(E, T_Z(nE)|_E) vanishes, E = sum x_ij C_ij."""
    if n < 1:
        raise ConfigError("n must be >= 1", field="n")
    h0, _, _ = peel_totals(config, sol.E(), n * sol.E())
    return h0.hi == 0


def closed_form_h1_m1(n: int, x: int, b: int) -> int:
    """Sum over l = 0 .. nx-1 of (2nx - 2lb + b), summed term by term."""
    return sum(2 * n * x - 2 * l * b + b for l in range(n * x))


def closed_form_step_m1(n: int, x: int, b: int, l: int) -> int:
    return 2 * n * x - 2 * l * b + b


def alpha_bound(n: int, a1: int, x0: int, b1: int) -> int:
    return (n * a1 * x0 + 2) // b1


def fit_quadratic(ns: Sequence[int], ys: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
    """Exact least squares fit y ~ c2 n^2 + c1 n + c0 over the rationals."""
    if len(set(ns)) < 3:
        raise ValueError("quadratic fit needs at least three distinct n values")
    basis = [[n * n, n, 1] for n in ns]
    normal = [[sum(r[i] * r[j] for r in basis) for j in range(3)] for i in range(3)]
    rhs = [sum(r[i] * y for r, y in zip(basis, ys)) for i in range(3)]
    c2, c1, c0 = solve_square(normal, rhs)
    return c2, c1, c0


@dataclass(frozen=True)
class GrowthReport:
    n_values: tuple[int, ...]
    h1_lo: tuple[int, ...]
    h1_hi: tuple[int, ...]
    second_differences: tuple[int, ...]
    quadratic_leading_coefficient: Fraction
    threshold_n: int | None

    @property
    def leading_coefficient_float(self) -> float:
        return float(self.quadratic_leading_coefficient)

    @classmethod
    def from_values(cls, ns: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> "GrowthReport":
        """Assemble differences, fit and threshold from per-n h1 bounds.

        ``threshold_n`` is the central n of the first second difference after
        which all second differences in range are positive.
        """
        ns, lo, hi = tuple(ns), tuple(lo), tuple(hi)
        if not len(ns) == len(lo) == len(hi):
            raise ValueError("n_values and h1 bounds must have equal length")
        if len(ns) < 3:
            raise ValueError("growth analysis needs at least three n values")
        diffs = tuple(lo[i + 2] - 2 * lo[i + 1] + lo[i] for i in range(len(lo) - 2))
        c2, _, _ = fit_quadratic(ns, lo)
        threshold = None
        for i in range(len(diffs) - 1, -1, -1):
            if diffs[i] <= 0:
                break
            threshold = ns[i + 1]
        return cls(ns, lo, hi, diffs, c2, threshold)


def growth_analysis(
    config: PlumbingConfig,
    sol: DivisorSolution,
    n_range: tuple[int, int],
    order: str | Sequence[int] = "canonical",
) -> GrowthReport:
    """h1 of T_Z(nE)|_{nE} for each n in the inclusive range, plus a quadratic fit."""
    lo_n, hi_n = n_range
    ns = list(range(lo_n, hi_n + 1))
    if len(ns) < 3:
        raise ConfigError("n range must contain at least three values", field="n_range")
    if lo_n < 1:
        raise ConfigError("n must be >= 1", field="n_range")
    lo, hi = [], []
    for n in ns:
        nE = n * sol.E()
        _, h1, _ = peel_totals(config, nE, nE, order)
        lo.append(h1.lo)
        hi.append(h1.hi)
    return GrowthReport.from_values(ns, lo, hi)


@dataclass(frozen=True)
class DiscrepancyRow:
    n: int
    chain: int
    b: int
    x: int
    engine_h1: DimInterval
    closed_form: int
    mismatched_steps: tuple[int, ...]  # values of l where the per-step h1 disagrees

    @property
    def diff_lo(self) -> int:
        return self.engine_h1.lo - self.closed_form

    @property
    def diff_hi(self) -> int:
        return self.engine_h1.hi - self.closed_form


def discrepancy_report(config: PlumbingConfig, sol: DivisorSolution, n_values: Iterable[int]) -> list[DiscrepancyRow]:
    """Engine h1 of T_Z(nE_i)|_{nE_i} next to the single-curve summation formula.

    Only chains with one curve have a closed-form column; other chains are
    skipped.
    """
    rows = []
    single = [(i, config.chain_slice(i).start) for i, ch in enumerate(config.chains, 1) if ch.m == 1]
    for n in n_values:
        for i, c in single:
            x, b = sol.x[c], config.b_flat[c]
            mult = [0] * config.size
            mult[c] = n * x
            target = Cycle(tuple(mult))
            ledger = peel_ledger(config, target, target)
            bad = tuple(
                l for l, st in enumerate(ledger.steps) if st.h1_step != closed_form_step_m1(n, x, b, l)
            )
            rows.append(DiscrepancyRow(n, i, b, x, ledger.h1_total, closed_form_h1_m1(n, x, b), bad))
    return rows


def intersection_with(config: PlumbingConfig, cycle: Cycle, component: Label) -> int:
    M = intersection_matrix(config)
    e = [0] * config.size
    e[config.index(component)] = 1
    return intersect(M, cycle.mult, e)
