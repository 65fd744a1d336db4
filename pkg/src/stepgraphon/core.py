"""Domain types and the algebra of step kernels and graphons.

Everything in this module is exact: part sizes and tile values are
``fractions.Fraction`` and no floating point arithmetic is performed.
Partitions are interpreted as consecutive intervals of [0,1] in list order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlignmentError, DomainError

__all__ = [
    "SimpleGraph",
    "StepKernel",
    "PartWeighting",
    "ColoringTemplate",
    "GraphStats",
    "constant_graphon",
    "affine_combine",
    "common_refinement",
    "split_parts",
    "diagonal_average",
    "subgraphon",
    "corner_scale",
    "graph_stats",
    "cycle_graph",
    "path_graph",
    "complete_graph",
    "complete_bipartite",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise DomainError(f"exact rational required, got float {x!r}")
    return Fraction(x)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class SimpleGraph:
    """A small finite simple graph with 0-based vertex indices."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, vertex_count, edges):
        if vertex_count < 1:
            raise DomainError("vertex_count must be positive")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise DomainError(f"edge ({u},{v}) out of range")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_independent(self, vertices) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise DomainError("cycle needs at least 3 vertices")
    return SimpleGraph(n, {(i, (i + 1) % n) for i in range(n)})


def path_graph(n: int) -> SimpleGraph:
    """Path with n vertices (n-1 edges)."""
    if n < 1:
        raise DomainError("path needs at least 1 vertex")
    return SimpleGraph(n, {(i, i + 1) for i in range(n - 1)})


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, set(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return SimpleGraph(a + b, {(i, a + j) for i in range(a) for j in range(b)})


# ---------------------------------------------------------------------------
# step kernels


@dataclass(frozen=True)
class StepKernel:
    """A partition of [0,1] into m parts with a symmetric m x m value matrix.

    The kernel is a graphon when all values lie in [0,1]; ``graphon_flag``
    is derived from the values.
    """

    part_sizes: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __init__(self, part_sizes, values):
        sizes = tuple(_as_fraction(s) for s in part_sizes)
        if len(sizes) < 1:
            raise DomainError("at least one part required")
        if any(s <= 0 for s in sizes):
            raise DomainError("part sizes must be positive")
        if sum(sizes) != 1:
            raise DomainError(f"part sizes must sum to 1, got {sum(sizes)}")
        vals = tuple(tuple(_as_fraction(v) for v in row) for row in values)
        m = len(sizes)
        if len(vals) != m or any(len(row) != m for row in vals):
            raise DomainError("value matrix shape must match the partition")
        for i in range(m):
            for j in range(i + 1, m):
                if vals[i][j] != vals[j][i]:
                    raise DomainError(f"values not symmetric at ({i},{j})")
        object.__setattr__(self, "part_sizes", sizes)
        object.__setattr__(self, "values", vals)

    @property
    def num_parts(self) -> int:
        return len(self.part_sizes)

    @property
    def graphon_flag(self) -> bool:
        return all(0 <= v <= 1 for row in self.values for v in row)

    def max_abs_value(self) -> Fraction:
        return max(abs(v) for row in self.values for v in row)

    def density(self) -> Fraction:
        """t(K2, W) = sum_ij s_i s_j v_ij, exact."""
        s = self.part_sizes
        return sum(
            s[i] * s[j] * self.values[i][j]
            for i in range(self.num_parts)
            for j in range(self.num_parts)
        )

    def boundaries(self) -> list[Fraction]:
        """Cumulative part boundaries 0 = b_0 < b_1 < ... < b_m = 1."""
        acc = Fraction(0)
        out = [acc]
        for s in self.part_sizes:
            acc += s
            out.append(acc)
        return out


@dataclass(frozen=True)
class PartWeighting:
    """Per-part weights in [0,1] aligned with a StepKernel's partition."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights):
        ws = tuple(_as_fraction(w) for w in weights)
        if any(w < 0 or w > 1 for w in ws):
            raise DomainError("weights must lie in [0,1]")
        object.__setattr__(self, "weights", ws)

    def mass(self, kernel: StepKernel) -> Fraction:
        """||h||_1 = sum_j weights[j] * part_sizes[j]."""
        if len(self.weights) != kernel.num_parts:
            raise AlignmentError("weighting does not match the kernel partition")
        return sum(w * s for w, s in zip(self.weights, kernel.part_sizes))


@dataclass(frozen=True)
class ColoringTemplate:
    """k step graphons on one partition summing pointwise to the constant 1."""

    k: int
    colors: tuple[StepKernel, ...] = field(default=())

    def __init__(self, colors):
        colors = tuple(colors)
        if len(colors) < 1:
            raise DomainError("at least one color required")
        base = colors[0].part_sizes
        for c in colors:
            if c.part_sizes != base:
                raise AlignmentError("all colors must share one partition")
            if not c.graphon_flag:
                raise DomainError("every color must be a graphon")
        m = len(base)
        for i in range(m):
            for j in range(m):
                total = sum(c.values[i][j] for c in colors)
                if total != 1:
                    raise DomainError(
                        f"colors sum to {total} != 1 on tile ({i},{j})"
                    )
        object.__setattr__(self, "k", len(colors))
        object.__setattr__(self, "colors", colors)

    @property
    def part_sizes(self) -> tuple[Fraction, ...]:
        return self.colors[0].part_sizes


# ---------------------------------------------------------------------------
# kernel operations


def constant_graphon(p) -> StepKernel:
    """The p-constant graphon: one part of size 1, single value p."""
    p = _as_fraction(p)
    if not 0 <= p <= 1:
        raise DomainError(f"constant graphon needs p in [0,1], got {p}")
    return StepKernel([Fraction(1)], [[p]])


def constant_kernel_like(kernel: StepKernel, value) -> StepKernel:
    """A constant kernel on the same partition as ``kernel``."""
    value = _as_fraction(value)
    m = kernel.num_parts
    return StepKernel(kernel.part_sizes, [[value] * m for _ in range(m)])


def affine_combine(terms) -> StepKernel:
    """Entrywise linear combination of kernels on one shared partition."""
    terms = [(_as_fraction(c), k) for c, k in terms]
    if not terms:
        raise DomainError("affine_combine needs at least one term")
    base = terms[0][1].part_sizes
    for _, k in terms:
        if k.part_sizes != base:
            raise AlignmentError(
                "kernels must share a partition; use common_refinement first"
            )
    m = len(base)
    values = [
        [sum(c * k.values[i][j] for c, k in terms) for j in range(m)]
        for i in range(m)
    ]
    return StepKernel(base, values)


def common_refinement(w1: StepKernel, w2: StepKernel) -> tuple[StepKernel, StepKernel]:
    """Re-express both kernels on the ordered intersection of their partitions."""
    cuts = sorted(set(w1.boundaries()) | set(w2.boundaries()))
    sizes = [b - a for a, b in zip(cuts, cuts[1:])]

    def source_parts(w: StepKernel) -> list[int]:
        bounds = w.boundaries()
        out = []
        idx = 0
        for a in cuts[:-1]:
            while bounds[idx + 1] <= a:
                idx += 1
            out.append(idx)
        return out

    def rebuild(w: StepKernel, src: list[int]) -> StepKernel:
        values = [[w.values[a][b] for b in src] for a in src]
        return StepKernel(sizes, values)

    return rebuild(w1, source_parts(w1)), rebuild(w2, source_parts(w2))


def split_parts(w: StepKernel, r: int) -> StepKernel:
    """Split each part into r equal subparts, replicating rows and columns."""
    if r < 1:
        raise DomainError("split factor must be >= 1")
    if r == 1:
        return w
    sizes = [s / r for s in w.part_sizes for _ in range(r)]
    src = [i for i in range(w.num_parts) for _ in range(r)]
    values = [[w.values[a][b] for b in src] for a in src]
    return StepKernel(sizes, values)


def diagonal_average(w: StepKernel) -> tuple[StepKernel, Fraction]:
    """Replace every diagonal tile by the unweighted average of the off-diagonal tiles."""
    m = w.num_parts
    if m < 2:
        raise DomainError("diagonal_average needs at least 2 parts")
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    delta = sum(w.values[i][j] for i, j in pairs) / len(pairs)
    values = [
        [delta if i == j else w.values[i][j] for j in range(m)] for i in range(m)
    ]
    return StepKernel(w.part_sizes, values), delta


def subgraphon(w: StepKernel, h: PartWeighting) -> StepKernel:
    """The subgraphon W[h]: reweight parts by h and renormalize; zero-mass parts dropped."""
    mass = h.mass(w)
    if mass == 0:
        raise DomainError("subgraphon needs a weighting of positive mass")
    keep = [j for j, wt in enumerate(h.weights) if wt > 0]
    sizes = [h.weights[j] * w.part_sizes[j] / mass for j in keep]
    values = [[w.values[a][b] for b in keep] for a in keep]
    return StepKernel(sizes, values)


def corner_scale(u: StepKernel, z) -> StepKernel:
    """Scale U into the corner [0,z]^2 and pad the rest of [0,1] with zeros."""
    z = _as_fraction(z)
    if not 0 < z <= 1:
        raise DomainError(f"corner scale factor must be in (0,1], got {z}")
    if z == 1:
        return u
    sizes = [s * z for s in u.part_sizes] + [1 - z]
    m = u.num_parts
    zero = Fraction(0)
    values = [list(row) + [zero] for row in u.values]
    values.append([zero] * (m + 1))
    return StepKernel(sizes, values)


# ---------------------------------------------------------------------------
# graph statistics


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    components: int
    average_degree: Fraction
    girth: int | None  # None means acyclic (girth infinity)
    girth_parity: str | None  # "odd" / "even"
    shortest_cycle_count: int
    chromatic_number: int
    bipartite: bool


def _components(g: SimpleGraph) -> int:
    adj = g.adjacency()
    seen = [False] * g.vertex_count
    count = 0
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        count += 1
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return count


def _is_bipartite(g: SimpleGraph) -> bool:
    adj = g.adjacency()
    color = [None] * g.vertex_count
    for start in range(g.vertex_count):
        if color[start] is not None:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if color[w] is None:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def count_cycles_of_length(g: SimpleGraph, length: int) -> int:
    """Number of distinct cycles of the given length, counted as subgraphs."""
    adj = g.adjacency()
    count = 0

    def extend(path: list[int], used: set[int]):
        nonlocal count
        v = path[-1]
        if len(path) == length:
            if path[0] in adj[v] and path[1] < v:
                # start fixed at the minimum vertex; orientation fixed by
                # requiring the second vertex to be smaller than the last
                count += 1
            return
        for w in adj[v]:
            if w > path[0] and w not in used:
                path.append(w)
                used.add(w)
                extend(path, used)
                path.pop()
                used.remove(w)

    for start in range(g.vertex_count):
        extend([start], {start})
    return count


def _girth(g: SimpleGraph) -> int | None:
    for length in range(3, g.vertex_count + 1):
        if count_cycles_of_length(g, length) > 0:
            return length
    return None


def _chromatic_number(g: SimpleGraph) -> int:
    if not g.edges:
        return 1
    if _is_bipartite(g):
        return 2
    adj = g.adjacency()
    order = sorted(range(g.vertex_count), key=lambda v: -len(adj[v]))

    def colorable(k: int) -> bool:
        assignment = {}

        def backtrack(idx: int) -> bool:
            if idx == len(order):
                return True
            v = order[idx]
            used = {assignment[w] for w in adj[v] if w in assignment}
            # symmetry break: only allow one brand-new color
            limit = min(k, max(assignment.values(), default=-1) + 2)
            for c in range(limit):
                if c in used:
                    continue
                assignment[v] = c
                if backtrack(idx + 1):
                    return True
                del assignment[v]
            return False

        return backtrack(0)

    k = 3
    while not colorable(k):
        k += 1
    return k


def graph_stats(g: SimpleGraph) -> GraphStats:
    """Component count, average degree, girth, shortest-cycle count, chromatic number."""
    girth = _girth(g)
    return GraphStats(
        vertices=g.vertex_count,
        edges=g.edge_count,
        components=_components(g),
        average_degree=Fraction(2 * g.edge_count, g.vertex_count),
        girth=girth,
        girth_parity=None if girth is None else ("odd" if girth % 2 else "even"),
        shortest_cycle_count=0 if girth is None else count_cycles_of_length(g, girth),
        chromatic_number=_chromatic_number(g),
        bipartite=_is_bipartite(g),
    )
