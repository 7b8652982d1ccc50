"""FPT approximation: scattered sets with a (1+epsilon) distance slack.

States are rounded down to exact powers of (1+delta), which shrinks each
bag coordinate's alphabet from d values to O(log(d)/delta).  Running the
max-mode DP over the rounded domain on a balanced decomposition returns a
set at least as large as the true d-optimum whose members are pairwise at
distance >= d/(1+epsilon).

All arithmetic is exact rational: rounding floors are found by comparisons
against precomputed powers, never by floating-point logarithms.  delta
starts at epsilon/depth and is halved until (1+delta)^depth <= 1+epsilon
holds exactly, so the per-level rounding losses provably compound to at
most (1+epsilon).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .decomp import TreeDecomposition, balance, make_nice, max_introduce_depth
from .graph_core import INF, VertexSet, WeightedGraph, all_pairs_distances
from .tw_exact import dp_over_decomposition


@dataclass(frozen=True)
class RoundedDomain:
    """Exact value ladder {0} followed by powers (1+delta)^l up to d."""

    delta: Fraction
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if not self.values or self.values[0] != 0:
            raise ValueError("domain must start at 0")
        for a, b in zip(self.values, self.values[1:]):
            if a >= b:
                raise ValueError("domain values must increase strictly")


def build_rounded_domain(d: int, delta: Fraction) -> RoundedDomain:
    """All powers (1+delta)^l <= d, with 0 in front, as exact rationals."""
    if d < 2:
        raise ValueError("d must be >= 2")
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    base = 1 + delta
    values = [Fraction(0)]
    power = Fraction(1)
    while power <= d:
        values.append(power)
        power *= base
    return RoundedDomain(delta=delta, values=tuple(values))


def round_add(x1: Fraction, x2: Fraction, dom: RoundedDomain) -> Fraction:
    """x1 (+) x2: exact sum floored to the domain; 0 stays 0."""
    total = Fraction(x1) + Fraction(x2)
    if total == 0:
        return Fraction(0)
    idx = bisect_right(dom.values, total) - 1
    return dom.values[idx]


def choose_delta(epsilon: Fraction, depth: int) -> Fraction:
    """Starting granularity epsilon/depth for a decomposition of that depth."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return epsilon / depth


class RoundedClearance:
    """Clearance domain over power-of-(1+delta) indices for the DP engine.

    Index l stands for the exact value (1+delta)^l; the cap is the largest
    power not exceeding d.  Every admission check compares against the
    slackened target d/(1+epsilon), exactly.
    """

    def __init__(self, d: int, delta: Fraction, epsilon: Fraction) -> None:
        self.d = d
        self.delta = Fraction(delta)
        self.epsilon = Fraction(epsilon)
        self.target = Fraction(d) / (1 + self.epsilon)
        base = 1 + self.delta
        powers = [Fraction(1)]
        while powers[-1] * base <= d:
            powers.append(powers[-1] * base)
        self.powers = powers

    @property
    def cap(self) -> int:
        return len(self.powers) - 1

    def from_distance(self, dist: int) -> int:
        if dist >= self.d:
            return self.cap
        return bisect_right(self.powers, dist) - 1

    def add(self, idx: int, w: int) -> int:
        total = self.powers[idx] + w
        if total > self.powers[-1]:
            return self.cap
        return bisect_right(self.powers, total) - 1

    def admit_distance(self, dist: int) -> bool:
        return dist >= self.target

    def admit_clearance(self, idx: int) -> bool:
        return self.powers[idx] >= self.target

    def join_ok(self, i: int, j: int) -> bool:
        return self.powers[i] + self.powers[j] >= self.target


def approx_max_scattered(
    g: WeightedGraph, td: TreeDecomposition, d: int, epsilon: Fraction
) -> tuple[int, VertexSet]:
    """Set of size >= the d-optimum, pairwise at distance >= d/(1+epsilon).

    Balances the decomposition, measures how many rounding steps can stack
    along a root-leaf path, picks delta so the stacked loss stays within
    (1+epsilon) (verified by exact powering), and runs the rounded DP.  The
    returned witness is re-checked against the slackened distance bound with
    exact rational arithmetic.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if d < 2:
        raise ValueError("d must be >= 2")
    nd = make_nice(balance(td, g))
    depth = max(1, max_introduce_depth(nd))
    delta = choose_delta(epsilon, depth)
    while (1 + delta) ** depth > 1 + epsilon:
        delta /= 2
    clearance = RoundedClearance(d, delta, epsilon)
    size, witness = dp_over_decomposition(g, nd, d, mode="max", clearance=clearance)
    dist = all_pairs_distances(g).dist
    for i, u in enumerate(witness):
        for v in witness[i + 1 :]:
            if dist[u][v] < INF and (1 + epsilon) * dist[u][v] < d:
                raise AssertionError(
                    f"internal error: witness pair ({u},{v}) at distance "
                    f"{dist[u][v]} violates the (1+epsilon) slack"
                )
    return size, witness
