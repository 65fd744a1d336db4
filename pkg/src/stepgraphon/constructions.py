"""Executable constructions: bit colorings, the permutation family,
the odd-girth kernel, deficit polynomials, and the certified constants.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    ColoringTemplate,
    SimpleGraph,
    StepKernel,
    graph_stats,
)
from .errors import CapacityError, DomainError
from .homdensity import DeficitPolynomial, epsilon_expansion

__all__ = [
    "binary_coloring",
    "chromatic_coloring",
    "kappa_upper",
    "KappaBounds",
    "permutation_family",
    "odd_girth_kernel",
    "local_deficit",
    "certified_constants",
    "CertifiedConstants",
    "LevelConstants",
]

DEFAULT_PART_LIMIT = 64
DEFAULT_TEMPLATE_LIMIT = 5040
DEFAULT_SCAN_LIMIT = 10**7


def _digit_coloring(k: int, base: int, part_limit: int) -> ColoringTemplate:
    m = base ** (k - 1)
    if m > part_limit:
        raise CapacityError(f"{m} parts exceed the limit {part_limit}")
    one, zero = Fraction(1), Fraction(0)
    size = Fraction(1, m)

    def lowest_digit(i: int, j: int) -> int:
        # 0-based index of the lowest base-`base` digit where i and j differ
        d = 0
        while i % base == j % base:
            i //= base
            j //= base
            d += 1
        return d

    matrices = [[[zero] * m for _ in range(m)] for _ in range(k)]
    for i in range(m):
        for j in range(m):
            color = k - 1 if i == j else lowest_digit(i, j)
            matrices[color][i][j] = one
    return ColoringTemplate(
        StepKernel([size] * m, rows) for rows in matrices
    )


def binary_coloring(k: int, part_limit: int = DEFAULT_PART_LIMIT) -> ColoringTemplate:
    """The lowest-differing-bit coloring on 2^(k-1) equal parts.

    Colors 1..k-1 live on tiles whose indices first differ in bit c (least
    significant bit first); color k covers the diagonal tiles.
    """
    if k < 2:
        raise DomainError("binary coloring needs k >= 2")
    return _digit_coloring(k, 2, part_limit)


def chromatic_coloring(k: int, q: int,
                       part_limit: int = DEFAULT_PART_LIMIT) -> ColoringTemplate:
    """Base-q analogue of the binary coloring, on q^(k-1) equal parts."""
    if k < 2:
        raise DomainError("chromatic coloring needs k >= 2")
    if q < 2:
        raise DomainError("base must be at least 2")
    return _digit_coloring(k, q, part_limit)


@dataclass(frozen=True)
class KappaBounds:
    k_search: int | None
    k_formula: int | None
    diagnostic: str | None = None


def kappa_upper(h: SimpleGraph, scan_max: int = 64) -> KappaBounds:
    """Upper bounds on the least k for which H fails to be k-common.

    k_search is the least k >= 2 with 2^(-(k-1)(|H|-1)) strictly below
    k^(-||H||+1) (the digit-coloring count beats the random bound);
    k_formula is ceil(2 d log2 d) for the average degree d.  Both apply
    only to connected non-bipartite graphs.
    """
    stats = graph_stats(h)
    if stats.bipartite:
        return KappaBounds(None, None, "bipartite graph: bounds do not apply")
    if stats.components > 1:
        return KappaBounds(None, None, "disconnected graph: bounds do not apply")
    k_search = None
    for k in range(2, scan_max + 1):
        # 2^(-(k-1)(|H|-1)) < k^(-||H||+1), exactly on integers
        if k ** (h.edge_count - 1) < 2 ** ((k - 1) * (h.vertex_count - 1)):
            k_search = k
            break
    d = float(stats.average_degree)
    k_formula = math.ceil(2.0 * d * math.log2(d))
    return KappaBounds(k_search, k_formula)


def odd_girth_kernel(length: int) -> StepKernel:
    """The +-1 kernel on 2*l equal parts whose only nonvanishing small density
    is on cycles of length l (l odd).

    Parts 1..l and l+1..2l are the two halves; parts at cyclically adjacent
    residues get +1 within a half and -1 across halves.
    """
    if length < 3 or length % 2 == 0:
        raise DomainError("odd girth kernel needs an odd length >= 3")
    m = 2 * length
    size = Fraction(1, m)
    plus, minus, zero = Fraction(1), Fraction(-1), Fraction(0)

    def entry(i: int, j: int) -> Fraction:
        # i, j are 1-based part indices
        ri, rj = (i - 1) % length, (j - 1) % length
        if (ri - rj) % length not in (1, length - 1):
            return zero
        same_half = ((i - 1) // length) == ((j - 1) // length)
        return plus if same_half else minus

    values = [[entry(i + 1, j + 1) for j in range(m)] for i in range(m)]
    return StepKernel([size] * m, values)


def permutation_family(wpp: StepKernel, copies: int,
                       template_limit: int = DEFAULT_TEMPLATE_LIMIT) -> ColoringTemplate:
    """The family of l*m! graphons indexed by (permutation, s) built from a
    step graphon with m equal parts and constant diagonal delta.

    Each member has value 1/k on diagonal tiles and d_{sigma(i)sigma(j)}/(k*delta)
    off the diagonal; the members sum exactly to the constant 1 graphon.
    """
    m = wpp.num_parts
    if m < 2:
        raise DomainError("need at least 2 parts (no off-diagonal tiles otherwise)")
    if copies < 1:
        raise DomainError("copies must be positive")
    if len(set(wpp.part_sizes)) != 1:
        raise DomainError("all parts must have equal size")
    diagonal = {wpp.values[i][i] for i in range(m)}
    if len(diagonal) != 1:
        raise DomainError("diagonal tiles must all carry one value")
    delta = diagonal.pop()
    k = copies * math.factorial(m)
    if k > template_limit:
        raise CapacityError(f"{k} colors exceed the limit {template_limit}")
    if delta * k < 1:
        raise DomainError(f"need delta * l * m! >= 1, got {delta * k}")
    for i in range(m):
        for j in range(m):
            if i != j and not 0 <= wpp.values[i][j] / (k * delta) <= 1:
                raise DomainError(
                    f"tile ({i},{j}) value {wpp.values[i][j]} leaves [0,1] after scaling"
                )
    uniform = Fraction(1, k)
    colors = []
    for sigma in itertools.permutations(range(m)):
        values = [
            [
                uniform if i == j else wpp.values[sigma[i]][sigma[j]] / (k * delta)
                for j in range(m)
            ]
            for i in range(m)
        ]
        kernel = StepKernel(wpp.part_sizes, values)
        colors.extend([kernel] * copies)
    return ColoringTemplate(colors)


def local_deficit(h: SimpleGraph, k: int,
                  budget: int | None = None) -> DeficitPolynomial:
    """Exact polynomial in eps of the monochromatic density sum for the
    coloring 1/k + eps*U, 1/k + eps*U, 1/k - 2*eps*U, 1/k, ..., 1/k with U
    the odd-girth kernel of H's girth.

    The constant term is k^(-||H||+1); the first nonzero correction sits at
    eps^girth with coefficient -(2^(girth+1)-4) * m_girth / girth^(girth-1)
    * k^(-||H||+girth).
    """
    if k < 3:
        raise DomainError("the local construction needs k >= 3")
    stats = graph_stats(h)
    if stats.girth is None or stats.girth % 2 == 0:
        raise DomainError("H must have odd girth")
    u = odd_girth_kernel(stats.girth)
    base = epsilon_expansion(h, Fraction(1, k), u, budget)
    e = h.edge_count
    coeffs = [
        (2 + Fraction(-2) ** j) * c for j, c in enumerate(base.coefficients)
    ]
    coeffs[0] += (k - 3) * Fraction(1, k**e)
    return DeficitPolynomial(coeffs)


# ---------------------------------------------------------------------------
# certified constants


@dataclass(frozen=True)
class LevelConstants:
    """The exact constants produced at one level of the recursion."""

    level: int
    p0: Fraction
    eps0: Fraction  # p0^7 / 16
    pi0: Fraction  # p0^2 / 2
    d0: Fraction  # = delta0
    delta0: Fraction  # p0 * eps0 / 16
    n0: int | None  # least n with (1+eps0/2)^n d0^4 p0^3 >= 1; None if capped
    delta_k: Fraction
    n_k: int | None  # None if the scan capped out
    n_k_inequality_floor: int | None  # least n satisfying the inequality alone


@dataclass(frozen=True)
class CertifiedConstants:
    k: int
    levels: tuple[LevelConstants, ...]
    scan_limit: int

    @property
    def n_k(self) -> int | None:
        return self.levels[-1].n_k

    @property
    def delta_k(self) -> Fraction:
        return self.levels[-1].delta_k

    @property
    def capped(self) -> bool:
        return any(lv.n0 is None or lv.n_k is None for lv in self.levels)


def _least_n(base: Fraction, const: Fraction, limit: int) -> int | None:
    """Least n >= 1 with base^n * const >= 1, or None if it exceeds ``limit``.

    Requires base > 1.  Comparisons are exact; a Bernoulli-style bound
    1/(1 - n*x) on (1+x)^n avoids materializing astronomically large powers
    when the answer is provably beyond the limit.
    """
    if base <= 1:
        raise DomainError("scan base must exceed 1")
    if const >= 1:
        return 1  # base > 1, so n = 1 already satisfies
    x = base - 1
    if limit * x < 1 and const < 1 - limit * x:
        # base^limit <= 1/(1 - limit*x), so base^limit * const < 1
        return None
    # doubling search for an upper bracket
    n = 1
    value = base
    while value * const < 1:
        if n >= limit:
            return None
        n = min(2 * n, limit)
        value = base**n
    lo, hi = n // 2, n  # satisfied at hi, not at lo (lo=0 means const<1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if base**mid * const >= 1:
            hi = mid
        else:
            lo = mid
    return hi


def certified_constants(k: int, scan_limit: int = DEFAULT_SCAN_LIMIT) -> CertifiedConstants:
    """Exact constants of the k-level recursion behind the main construction.

    Level 1 starts from p0 = 3/4 with n_1 = 1 and delta_1 = eps0/4; level j
    uses p0 = delta_{j-1}/(4j), eps0 = p0^7/16, pi0 = p0^2/2,
    d0 = delta0 = p0*eps0/16 and delta_j = delta_{j-1}*delta0^2/(4j).
    Integer thresholds n0 and n_j are found by exact scanning; scans beyond
    ``scan_limit`` report None (capped).
    """
    if k < 1:
        raise DomainError("k must be positive")
    levels: list[LevelConstants] = []
    prev_delta = None
    prev_n = None
    for j in range(1, k + 1):
        p0 = Fraction(3, 4) if j == 1 else prev_delta / (4 * j)
        eps0 = p0**7 / 16
        pi0 = p0**2 / 2
        delta0 = p0 * eps0 / 16
        d0 = delta0
        n0 = _least_n(1 + eps0 / 2, d0**4 * p0**3, scan_limit)
        if j == 1:
            delta_j = eps0 / 4
            n_j = 1
            floor = None
        else:
            delta_j = prev_delta * delta0**2 / (4 * j)
            # (1/j + 1/(2j(j-1)))^(4n+5) * delta0^8 >= (j/(j-1)) * (1/j)^(4n+5)
            ratio = Fraction(1, j) * j + Fraction(1, 2 * (j - 1))  # 1 + 1/(2(j-1))
            floor = _least_n(
                ratio**4, ratio**5 * delta0**8 * Fraction(j - 1, j), scan_limit
            )
            if floor is None or n0 is None or prev_n is None:
                n_j = None
            else:
                n_j = max(floor, n0, prev_n)
                if n_j > scan_limit:
                    n_j = None
        levels.append(
            LevelConstants(
                level=j, p0=p0, eps0=eps0, pi0=pi0, d0=d0, delta0=delta0,
                n0=n0, delta_k=delta_j, n_k=n_j, n_k_inequality_floor=floor,
            )
        )
        prev_delta = delta_j
        prev_n = n_j
    return CertifiedConstants(k=k, levels=tuple(levels), scan_limit=scan_limit)
