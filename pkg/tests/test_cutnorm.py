import random
from fractions import Fraction

import pytest

from stepgraphon import (
    CapacityError,
    StepKernel,
    complete_graph,
    cut_distance_upper,
    cut_norm,
    cycle_graph,
    density_lipschitz_check,
    local_window_check,
)
from stepgraphon.constructions import binary_coloring
from stepgraphon.cutnorm import cut_norm_full

F = Fraction


def random_kernel(rng, m):
    entries = [F(n, 4) for n in range(-4, 5)]
    values = [[F(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            values[i][j] = values[j][i] = rng.choice(entries)
    sizes = [rng.randint(1, 3) for _ in range(m)]
    total = sum(sizes)
    return StepKernel([F(s, total) for s in sizes], values)


def test_cut_norm_simple():
    u = StepKernel([F(1)], [[F(1, 2)]])
    value, s, t = cut_norm(u)
    assert value == F(1, 2)
    assert s == (0,) and t == (0,)


def test_cut_norm_zero_kernel():
    u = StepKernel([F(1, 2), F(1, 2)], [[F(0), F(0)], [F(0), F(0)]])
    value, s, t = cut_norm(u)
    assert value == 0
    assert s == () and t == ()


def test_cut_norm_sign_and_scale_invariances():
    rng = random.Random(41)
    for _ in range(20):
        u = random_kernel(rng, rng.randint(1, 5))
        value = cut_norm(u)[0]
        neg = StepKernel(u.part_sizes, [[-v for v in row] for row in u.values])
        assert cut_norm(neg)[0] == value
        half = StepKernel(
            u.part_sizes, [[v / 2 for v in row] for row in u.values]
        )
        assert cut_norm(half)[0] == value / 2
        # bounded by the sup norm
        assert value <= u.max_abs_value()


def test_cut_norm_agrees_with_full_enumeration():
    rng = random.Random(43)
    for _ in range(30):
        u = random_kernel(rng, rng.randint(1, 6))
        assert cut_norm(u)[0] == cut_norm_full(u)[0]


def test_cut_norm_part_limit():
    u = StepKernel([F(1, 2), F(1, 2)], [[F(0), F(1)], [F(1), F(0)]])
    with pytest.raises(CapacityError):
        cut_norm(u, part_limit=1)
    with pytest.raises(CapacityError):
        cut_norm_full(u, part_limit=1)


def test_cut_distance_triangle_like_behavior():
    rng = random.Random(47)
    for _ in range(10):
        w1 = random_kernel(rng, 3)
        w2 = random_kernel(rng, 2)
        d = cut_distance_upper(w1, w2)
        assert d >= 0
        assert cut_distance_upper(w1, w1) == 0


def test_density_lipschitz_property():
    rng = random.Random(53)
    for _ in range(15):
        m = rng.randint(1, 4)

        def symmetric():
            vals = [[F(0)] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    vals[i][j] = vals[j][i] = F(rng.randint(0, 4), 4)
            return vals

        w1 = StepKernel([F(1, m)] * m, symmetric())
        w2 = StepKernel([F(1, m)] * m, symmetric())
        for h in (complete_graph(3), cycle_graph(4)):
            lhs, rhs = density_lipschitz_check(h, w1, w2)
            assert lhs <= rhs


def test_local_window_check_binary_template():
    template = binary_coloring(3)
    flags = local_window_check(template, F(1, 2))
    assert len(flags) == template.k
    for cut_ok, sup_ok in flags:
        assert isinstance(cut_ok, bool) and isinstance(sup_ok, bool)
    # binary color entries are 0 or 1, so sup deviation 1 - 1/k exceeds 1/k
    assert all(not sup_ok for _, sup_ok in flags)
