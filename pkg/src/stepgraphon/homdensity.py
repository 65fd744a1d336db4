"""Exact homomorphism densities, rooted densities, perturbation expansions.

Two evaluation strategies are provided: direct enumeration over all part
assignments (``density_brute``) and a variable-elimination dynamic program
along a greedy min-fill order (``density_dp``).  Both return the identical
exact rational; the brute-force path serves as the independent oracle in
the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import SimpleGraph, StepKernel, ColoringTemplate, complete_bipartite
from .errors import CapacityError, DomainError, evaluation_budget

__all__ = [
    "DeficitPolynomial",
    "density",
    "density_brute",
    "density_dp",
    "rooted_density",
    "epsilon_expansion",
    "reflect",
    "build_K2a2bC5",
    "mono_sum",
    "commonness_margin",
    "elimination_order",
]


@dataclass(frozen=True)
class DeficitPolynomial:
    """Exact coefficients c_0..c_D of a density expression in a parameter eps."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients):
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in coefficients)
        )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, eps) -> Fraction:
        eps = Fraction(eps)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * eps + c
        return acc


# ---------------------------------------------------------------------------
# elimination order and dynamic program


def elimination_order(h: SimpleGraph) -> tuple[list[int], int]:
    """Greedy min-fill elimination order; returns (order, max bag size)."""
    adj = {v: set(ns) for v, ns in enumerate(h.adjacency())}
    order = []
    width = 1
    remaining = set(range(h.vertex_count))
    while remaining:
        best, best_fill, best_deg = None, None, None
        for v in sorted(remaining):
            ns = adj[v]
            fill = sum(
                1
                for a, b in itertools.combinations(sorted(ns), 2)
                if b not in adj[a]
            )
            key = (fill, len(ns), v)
            if best is None or key < (best_fill, best_deg, best):
                best, best_fill, best_deg = v, fill, len(ns)
        ns = adj[best]
        width = max(width, len(ns) + 1)
        for a, b in itertools.combinations(ns, 2):
            adj[a].add(b)
            adj[b].add(a)
        for a in ns:
            adj[a].discard(best)
        del adj[best]
        remaining.discard(best)
        order.append(best)
    return order, width


def _dp_eliminate(h: SimpleGraph, kernel: StepKernel, fixed: dict[int, int],
                  budget: int | None) -> Fraction:
    """Variable elimination over part assignments.

    ``fixed`` maps rooted vertices to part indices; rooted vertices carry no
    size weight (they represent conditioning points).
    """
    m = kernel.num_parts
    sizes = kernel.part_sizes
    values = kernel.values

    # factors: (scope tuple, table dict assignment->Fraction)
    factors = []
    for v in range(h.vertex_count):
        if v in fixed:
            continue
        factors.append(((v,), {(p,): sizes[p] for p in range(m)}))
    for u, v in h.edge_list():
        if u in fixed and v in fixed:
            factors.append(((), {(): values[fixed[u]][fixed[v]]}))
        elif u in fixed:
            factors.append(((v,), {(p,): values[fixed[u]][p] for p in range(m)}))
        elif v in fixed:
            factors.append(((u,), {(p,): values[p][fixed[v]] for p in range(m)}))
        else:
            factors.append(
                ((u, v), {(p, q): values[p][q] for p in range(m) for q in range(m)})
            )

    free = SimpleGraph(
        h.vertex_count,
        {(u, v) for u, v in h.edges if u not in fixed and v not in fixed},
    )
    order, width = elimination_order(free)
    order = [v for v in order if v not in fixed]
    if budget is not None and m**width > budget:
        raise CapacityError(
            f"elimination width {width} needs {m}^{width} evaluations, over budget {budget}"
        )

    for v in order:
        touching = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        scope = sorted(set(itertools.chain.from_iterable(f[0] for f in touching)))
        rest = [u for u in scope if u != v]
        table: dict[tuple[int, ...], Fraction] = {}
        positions = {u: i for i, u in enumerate(scope)}
        lookups = [
            (tbl, tuple(positions[u] for u in sc)) for sc, tbl in touching
        ]
        zero = Fraction(0)
        for assign in itertools.product(range(m), repeat=len(scope)):
            prod = Fraction(1)
            for tbl, idxs in lookups:
                prod *= tbl.get(tuple(assign[i] for i in idxs), zero)
                if not prod:
                    break
            if not prod:
                continue
            key = tuple(assign[positions[u]] for u in rest)
            table[key] = table.get(key, Fraction(0)) + prod
        factors.append((tuple(rest), table))

    result = Fraction(1)
    for scope, tbl in factors:
        assert scope == ()
        result *= tbl.get((), Fraction(0))
    return result


def density_dp(h: SimpleGraph, w: StepKernel, budget: int | None = None) -> Fraction:
    """Homomorphism density by exact variable elimination."""
    if budget is None:
        budget = evaluation_budget()
    return _dp_eliminate(h, w, {}, budget)


def density_brute(h: SimpleGraph, w: StepKernel, budget: int | None = None) -> Fraction:
    """Homomorphism density by direct enumeration of all part assignments."""
    if budget is None:
        budget = evaluation_budget()
    m = w.num_parts
    if m**h.vertex_count > budget:
        raise CapacityError(
            f"{m}^{h.vertex_count} assignments exceed budget {budget}"
        )
    sizes = w.part_sizes
    values = w.values
    edges = h.edge_list()
    total = Fraction(0)
    for assign in itertools.product(range(m), repeat=h.vertex_count):
        term = Fraction(1)
        for p in assign:
            term *= sizes[p]
        for u, v in edges:
            term *= values[assign[u]][assign[v]]
            if not term:
                break
        total += term
    return total


def density(h: SimpleGraph, w: StepKernel, budget: int | None = None) -> Fraction:
    """Exact homomorphism density t(H, W); uses the dynamic program."""
    return density_dp(h, w, budget)


def rooted_density(h: SimpleGraph, rooted, w: StepKernel, parts) -> Fraction:
    """t_W^H(x_U) for any point x_U whose coordinates lie in the given parts.

    ``rooted`` is an independent vertex set of H and ``parts`` assigns a part
    index of W to each rooted vertex, in the same iteration order.
    """
    rooted = list(rooted)
    parts = list(parts)
    if len(rooted) != len(parts):
        raise DomainError("one part index per rooted vertex required")
    if not h.is_independent(rooted):
        raise DomainError("rooted vertex set must be independent")
    for p in parts:
        if not 0 <= p < w.num_parts:
            raise DomainError(f"part index {p} out of range")
    return _dp_eliminate(h, w, dict(zip(rooted, parts)), evaluation_budget())


def epsilon_expansion(h: SimpleGraph, p, u: StepKernel,
                      budget: int | None = None) -> DeficitPolynomial:
    """Exact expansion of t(H, p + eps*U) as a polynomial in eps.

    The coefficient of eps^j is the sum over edge subsets F of size j of
    t(H[F], U) * p^(||H|| - j), where H[F] keeps all vertices of H.
    """
    p = Fraction(p)
    if budget is None:
        budget = evaluation_budget()
    e = h.edge_count
    if 2**e > budget:
        raise CapacityError(f"2^{e} edge subsets exceed budget {budget}")
    edges = h.edge_list()
    coeffs = [Fraction(0)] * (e + 1)
    for size in range(e + 1):
        for subset in itertools.combinations(edges, size):
            sub = SimpleGraph(h.vertex_count, set(subset))
            coeffs[size] += density_dp(sub, u, budget) * p ** (e - size)
    return DeficitPolynomial(coeffs)


def reflect(h: SimpleGraph, rooted, n: int) -> SimpleGraph:
    """Take n copies of H and identify the vertices of the independent set U."""
    rooted = sorted(set(rooted))
    if not h.is_independent(rooted):
        raise DomainError("reflection set must be independent")
    if n < 1:
        raise DomainError("need at least one copy")
    shared = {v: i for i, v in enumerate(rooted)}
    others = [v for v in range(h.vertex_count) if v not in shared]
    total = len(rooted) + n * len(others)

    def vmap(copy: int, v: int) -> int:
        if v in shared:
            return shared[v]
        return len(rooted) + copy * len(others) + others.index(v)

    edges = {
        (vmap(c, u), vmap(c, v)) for c in range(n) for u, v in h.edges
    }
    return SimpleGraph(total, edges)


def build_K2a2bC5(a: int, b: int) -> SimpleGraph:
    """K_{2a,2b} with b pendant 5-cycles pasted onto distinct vertices of the 2b-side."""
    if a < 1 or b < 1:
        raise DomainError("a and b must be positive")
    base = complete_bipartite(2 * a, 2 * b)
    edges = set(base.edges)
    n = 2 * a + 2 * b
    for t in range(b):
        anchor = 2 * a + t
        ring = [anchor, n, n + 1, n + 2, n + 3]
        n += 4
        edges.update((ring[i], ring[(i + 1) % 5]) for i in range(5))
    return SimpleGraph(n, edges)


def mono_sum(template: ColoringTemplate, h: SimpleGraph,
             budget: int | None = None) -> Fraction:
    """Sum of the homomorphism densities of H over all colors of the template."""
    return sum(density(h, c, budget) for c in template.colors)


def commonness_margin(template: ColoringTemplate, h: SimpleGraph,
                      budget: int | None = None) -> Fraction:
    """mono_sum minus k^(-||H||+1); negative values witness non-k-commonness."""
    k = template.k
    return mono_sum(template, h, budget) - Fraction(1, k ** (h.edge_count - 1))
