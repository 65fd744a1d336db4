"""Exact cut norms of step kernels and the checks built on them.

The cut-norm objective is bilinear in the per-part inclusion fractions, so
its maximum over measurable S, T is attained at part-indicator vertices.
Enumerating subsets S with the greedy optimal T is therefore exact; the full
2^m x 2^m enumeration is kept as an independent oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import (
    ColoringTemplate,
    SimpleGraph,
    StepKernel,
    affine_combine,
    common_refinement,
    constant_kernel_like,
)
from .errors import CapacityError, DomainError
from .homdensity import density

__all__ = [
    "cut_norm",
    "cut_norm_full",
    "cut_distance_upper",
    "density_lipschitz_check",
    "local_window_check",
]

DEFAULT_PART_LIMIT = 24


def _box_sums(u: StepKernel, s_mask: tuple[int, ...]) -> list[Fraction]:
    sizes = u.part_sizes
    m = u.num_parts
    return [
        sum(sizes[i] * sizes[j] * u.values[i][j] for i in s_mask)
        for j in range(m)
    ]


def _subsets(m: int):
    """All subsets of range(m) in lexicographic tuple order."""
    for size in range(m + 1):
        yield from itertools.combinations(range(m), size)


def cut_norm(u: StepKernel, part_limit: int = DEFAULT_PART_LIMIT):
    """Exact cut norm with a maximizing pair of part sets.

    Returns (value, S, T) where S and T are tuples of part indices; among
    all maximizing pairs the lexicographically least (S, T) is returned.
    """
    m = u.num_parts
    if m > part_limit:
        raise CapacityError(f"cut norm enumeration over {m} > {part_limit} parts")
    best = (Fraction(0), (), ())
    for s in _subsets(m):
        rows = _box_sums(u, s)
        pos = sum((r for r in rows if r > 0), Fraction(0))
        neg = -sum((r for r in rows if r < 0), Fraction(0))
        for value, t in (
            (pos, tuple(j for j, r in enumerate(rows) if r > 0)),
            (neg, tuple(j for j, r in enumerate(rows) if r < 0)),
        ):
            if value > best[0] or (value == best[0] and (s, t) < best[1:]):
                best = (value, s, t)
    return best


def cut_norm_full(u: StepKernel, part_limit: int = 12):
    """Independent oracle: enumerate all pairs of part subsets."""
    m = u.num_parts
    if m > part_limit:
        raise CapacityError(f"full enumeration over {m} > {part_limit} parts")
    best = (Fraction(0), (), ())
    for s in _subsets(m):
        rows = _box_sums(u, s)
        for t in _subsets(m):
            value = abs(sum((rows[j] for j in t), Fraction(0)))
            if value > best[0] or (value == best[0] and (s, t) < best[1:]):
                best = (value, s, t)
    return best


def cut_distance_upper(w1: StepKernel, w2: StepKernel,
                       part_limit: int = DEFAULT_PART_LIMIT) -> Fraction:
    """Cut norm of W - W' under the identity coupling; upper bound on the cut distance."""
    a, b = common_refinement(w1, w2)
    diff = affine_combine([(Fraction(1), a), (Fraction(-1), b)])
    return cut_norm(diff, part_limit)[0]


def density_lipschitz_check(h: SimpleGraph, w1: StepKernel, w2: StepKernel):
    """Both sides of |t(H,W) - t(H,W')| <= ||H|| * cut distance; lhs <= rhs always."""
    lhs = abs(density(h, w1) - density(h, w2))
    rhs = h.edge_count * cut_distance_upper(w1, w2)
    return lhs, rhs


def local_window_check(template: ColoringTemplate, eps0):
    """Per color: is ||W_i - 1/k|| small in both the cut norm and the sup norm?

    Returns a list of (cut_ok, sup_ok) pairs, one per color, checking
    cut_norm(W_i - 1/k) <= eps0/k and max |W_i - 1/k| <= 1/k.
    """
    eps0 = Fraction(eps0)
    if eps0 <= 0:
        raise DomainError("eps0 must be positive")
    k = template.k
    flags = []
    for color in template.colors:
        uniform = constant_kernel_like(color, Fraction(1, k))
        dev = affine_combine([(Fraction(1), color), (Fraction(-1), uniform)])
        cut_ok = cut_norm(dev)[0] <= eps0 / k
        sup_ok = dev.max_abs_value() <= Fraction(1, k)
        flags.append((cut_ok, sup_ok))
    return flags
