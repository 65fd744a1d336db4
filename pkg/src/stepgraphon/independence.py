"""Delta-independence ratio lower bounds and low-degree peeling.

The ratio search is a grid search with deterministic local improvement; it
yields verified lower bounds only (the exact supremum is a nonconvex
quadratic program and out of scope).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import PartWeighting, StepKernel
from .errors import AlignmentError, CapacityError, DomainError, evaluation_budget

__all__ = ["alpha_lower", "verify_certificate", "low_degree_peel"]

DEFAULT_RESOLUTION = 8
MAX_SWEEPS = 100


def _constraint_value(w: StepKernel, weights) -> Fraction:
    s = w.part_sizes
    m = w.num_parts
    return sum(
        weights[i] * s[i] * w.values[i][j] * s[j] * weights[j]
        for i in range(m)
        for j in range(m)
    )


def _mass(w: StepKernel, weights) -> Fraction:
    return sum(h * s for h, s in zip(weights, w.part_sizes))


def _feasible(w: StepKernel, delta: Fraction, weights) -> bool:
    mass = _mass(w, weights)
    return _constraint_value(w, weights) <= delta * mass * mass


def verify_certificate(w: StepKernel, delta, h: PartWeighting) -> bool:
    """Exact check that h satisfies the quadratic sparsity constraint for delta."""
    delta = Fraction(delta)
    if len(h.weights) != w.num_parts:
        raise AlignmentError("weighting does not match the kernel partition")
    return _feasible(w, delta, h.weights)


def alpha_lower(w: StepKernel, delta, resolution: int = DEFAULT_RESOLUTION,
                budget: int | None = None) -> tuple[Fraction, PartWeighting]:
    """A verified lower bound on the delta-independence ratio with its certificate.

    Per-part weights are searched on the grid {0, 1/resolution, ..., 1} and
    then improved coordinate-wise (first-improvement order by part index,
    bounded sweeps).  Ties in the grid search resolve to the
    lexicographically least weighting.
    """
    delta = Fraction(delta)
    if delta < 0:
        raise DomainError("delta must be nonnegative")
    if resolution < 1:
        raise DomainError("resolution must be positive")
    if not w.graphon_flag:
        raise DomainError("independence ratio is defined for graphons")
    if budget is None:
        budget = evaluation_budget()
    m = w.num_parts
    if (resolution + 1) ** m > budget:
        raise CapacityError(
            f"grid of ({resolution + 1})^{m} points exceeds budget {budget}"
        )
    steps = [Fraction(i, resolution) for i in range(resolution + 1)]
    best_weights = (Fraction(0),) * m
    best_mass = Fraction(0)
    for candidate in itertools.product(steps, repeat=m):
        if not _feasible(w, delta, candidate):
            continue
        mass = _mass(w, candidate)
        if mass > best_mass or (mass == best_mass and candidate < best_weights):
            best_mass, best_weights = mass, candidate

    step = Fraction(1, resolution)
    weights = list(best_weights)
    for _ in range(MAX_SWEEPS):
        improved = False
        for j in range(m):
            if weights[j] + step > 1:
                continue
            trial = weights.copy()
            trial[j] += step
            if _feasible(w, delta, trial):
                weights = trial
                improved = True
        if not improved:
            break
    return _mass(w, weights), PartWeighting(weights)


def low_degree_peel(w: StepKernel, d0) -> tuple[frozenset[int], list[frozenset[int]]]:
    """Iteratively peel parts whose degree outside the peeled set is at most d0.

    Returns the fixpoint A together with the nested layers A_1, A_2, ...
    Postconditions checked on every call: parts outside A keep remaining
    degree above d0, and the internal mass of A is at most 2*|A|*d0.
    """
    d0 = Fraction(d0)
    if d0 < 0:
        raise DomainError("degree threshold must be nonnegative")
    if not w.graphon_flag:
        raise DomainError("peeling is defined for graphons")
    m = w.num_parts
    s = w.part_sizes

    def degree_outside(j: int, removed: frozenset[int]) -> Fraction:
        return sum(s[jj] * w.values[j][jj] for jj in range(m) if jj not in removed)

    layers: list[frozenset[int]] = []
    current: frozenset[int] = frozenset()
    for _ in range(m + 1):
        nxt = frozenset(
            j for j in range(m) if degree_outside(j, current) <= d0
        )
        if nxt == current:
            break
        layers.append(nxt)
        current = nxt

    # postconditions, exact
    for j in range(m):
        if j not in current:
            assert degree_outside(j, current) > d0
    measure = sum(s[j] for j in current)
    internal = sum(
        s[i] * s[j] * w.values[i][j] for i in current for j in current
    )
    assert internal <= 2 * measure * d0
    return current, layers
