import math
from fractions import Fraction

import numpy as np
import pytest

from stepgraphon import (
    DomainError,
    StepKernel,
    complete_graph,
    constant_graphon,
    convergence_report,
    cycle_graph,
    mono_count,
    sample_coloring,
    sample_w_random,
)
from stepgraphon.constructions import binary_coloring
from stepgraphon.sampler import _injective_count, hom_count, injective_hom_count

F = Fraction


def test_sampling_is_deterministic():
    w = constant_graphon(F(1, 2))
    g1 = sample_w_random(w, 50, seed=123)
    g2 = sample_w_random(w, 50, seed=123)
    g3 = sample_w_random(w, 50, seed=124)
    assert g1.edges == g2.edges
    assert g1.edges != g3.edges


def test_sampling_rejects_kernels():
    u = StepKernel([F(1)], [[F(-1)]])
    with pytest.raises(DomainError):
        sample_w_random(u, 10, seed=0)


def test_edge_density_statistics():
    w = constant_graphon(F(1, 3))
    n = 400
    g = sample_w_random(w, n, seed=31)
    pairs = n * (n - 1) / 2
    p = 1 / 3
    sigma = math.sqrt(pairs * p * (1 - p))
    assert abs(g.edge_count - pairs * p) < 4 * sigma


def test_part_placement_statistics():
    w = StepKernel([F(1, 4), F(3, 4)], [[F(1), F(0)], [F(0), F(1)]])
    # two diagonal blocks: edges only inside parts, so components reflect parts
    g = sample_w_random(w, 200, seed=77)
    # edge count concentrates near the within-part pair count
    expected = (0.25 * 200) ** 2 / 2 + (0.75 * 200) ** 2 / 2
    assert 0.5 * expected < g.edge_count < 1.5 * expected


def test_coloring_partitions_every_edge():
    template = binary_coloring(3)
    colored = sample_coloring(template, 60, seed=5)
    off_diag = colored.color[~np.eye(60, dtype=bool)]
    assert off_diag.min() >= 0
    assert off_diag.max() < template.k
    assert (np.diag(colored.color) == -1).all()
    assert (colored.color == colored.color.T).all()


def test_hom_count_matches_bruteforce_on_small_graphs():
    rng = np.random.default_rng(9)
    n = 5
    adj = (rng.random((n, n)) < 0.5).astype(float)
    adj = np.triu(adj, 1)
    adj = adj + adj.T
    for h in (complete_graph(3), cycle_graph(4)):
        brute = 0
        import itertools

        for phi in itertools.product(range(n), repeat=h.vertex_count):
            if all(adj[phi[u], phi[v]] for u, v in h.edge_list()):
                brute += 1
        assert hom_count(h, adj) == brute


def test_injective_count_matches_backtracking_oracle():
    rng = np.random.default_rng(21)
    for n in (4, 6, 8):
        adj = (rng.random((n, n)) < 0.5).astype(float)
        adj = np.triu(adj, 1)
        adj = adj + adj.T
        for h in (complete_graph(3), cycle_graph(4), cycle_graph(5)):
            assert injective_hom_count(h, adj) == _injective_count(h, adj)


def test_mono_count_modes_agree_on_complete_colorings():
    template = binary_coloring(2)
    colored = sample_coloring(template, 12, seed=3)
    k2 = complete_graph(2)
    hom = mono_count(colored, k2, "homomorphism")
    inj = mono_count(colored, k2, "injective")
    # for a single edge every homomorphism is injective
    assert hom == inj
    # every off-diagonal ordered pair gets exactly one color
    assert sum(hom) == 12 * 11
    with pytest.raises(DomainError):
        mono_count(colored, k2, "surjective")


def test_convergence_report_flags_and_exact():
    w = constant_graphon(F(1, 2))
    rows = convergence_report(w, complete_graph(2), [40, 80], 50, seed=11)
    assert [r["n"] for r in rows] == [40, 80]
    for r in rows:
        assert r["exact"] == 0.5
        assert not r["flag"]
    template = binary_coloring(2)
    rows = convergence_report(template, complete_graph(3), [60], 50, seed=13)
    assert abs(rows[0]["exact"] - 0.25) < 1e-15
    assert not rows[0]["flag"]
