import random
from fractions import Fraction

import pytest

from stepgraphon import (
    AlignmentError,
    CapacityError,
    DomainError,
    PartWeighting,
    StepKernel,
    alpha_lower,
    constant_graphon,
    low_degree_peel,
    verify_certificate,
)

F = Fraction


def random_graphon(rng, m):
    values = [[F(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            values[i][j] = values[j][i] = F(rng.randint(0, 4), 4)
    return StepKernel([F(1, m)] * m, values)


def test_verify_certificate_exact():
    w = StepKernel([F(1, 2), F(1, 2)], [[F(0), F(1)], [F(1), F(0)]])
    assert verify_certificate(w, F(0), PartWeighting([F(1), F(0)]))
    assert not verify_certificate(w, F(0), PartWeighting([F(1), F(1)]))
    with pytest.raises(AlignmentError):
        verify_certificate(w, F(0), PartWeighting([F(1)]))


def test_alpha_lower_zero_delta_bipartite_block():
    w = StepKernel([F(1, 2), F(1, 2)], [[F(0), F(1)], [F(1), F(0)]])
    bound, cert = alpha_lower(w, F(0))
    assert bound == F(1, 2)
    assert verify_certificate(w, F(0), cert)


def test_alpha_lower_constant_graphon():
    w = constant_graphon(F(1))
    bound, cert = alpha_lower(w, F(1, 4), resolution=8)
    # constraint is (weight * 1)^2 <= delta * weight^2 ... only weight 0 works
    # for delta < 1; here delta = 1/4 so the bound is 0
    assert bound == 0
    assert verify_certificate(w, F(1, 4), cert)


def test_alpha_lower_monotone_in_delta():
    rng = random.Random(61)
    for _ in range(10):
        w = random_graphon(rng, 3)
        b1, _ = alpha_lower(w, F(1, 8), resolution=4)
        b2, _ = alpha_lower(w, F(1, 2), resolution=4)
        assert b1 <= b2


def test_alpha_lower_certificate_always_verifies():
    rng = random.Random(67)
    for _ in range(10):
        w = random_graphon(rng, rng.randint(1, 3))
        delta = F(rng.randint(0, 8), 8)
        bound, cert = alpha_lower(w, delta, resolution=4)
        assert verify_certificate(w, delta, cert)
        assert 0 <= bound <= 1


def test_alpha_lower_guards():
    w = constant_graphon(F(1, 2))
    with pytest.raises(DomainError):
        alpha_lower(w, F(-1))
    with pytest.raises(CapacityError):
        alpha_lower(random_graphon(random.Random(0), 4), F(1, 4),
                    resolution=100, budget=1000)
    u = StepKernel([F(1)], [[F(-1)]])
    with pytest.raises(DomainError):
        alpha_lower(u, F(1, 4))


def test_low_degree_peel_fixpoint():
    # part 0 is sparse, parts 1 and 2 are densely tied together
    w = StepKernel(
        [F(1, 3)] * 3,
        [
            [F(0), F(1, 8), F(0)],
            [F(1, 8), F(1), F(1)],
            [F(0), F(1), F(1)],
        ],
    )
    peeled, layers = low_degree_peel(w, F(1, 8))
    assert peeled == frozenset({0})
    assert layers == [frozenset({0})]


def test_low_degree_peel_cascade():
    # peeling part 0 drops part 1 below the threshold on the next round
    w = StepKernel(
        [F(1, 4)] * 4,
        [
            [F(0), F(1, 2), F(0), F(0)],
            [F(1, 2), F(0), F(1, 8), F(0)],
            [F(0), F(1, 8), F(1), F(1)],
            [F(0), F(0), F(1), F(1)],
        ],
    )
    peeled, layers = low_degree_peel(w, F(1, 8))
    assert peeled == frozenset({0, 1})
    assert len(layers) == 2
    assert layers[0] < layers[1]


def test_low_degree_peel_random_postconditions():
    # postconditions are asserted inside; this exercises them broadly
    rng = random.Random(71)
    for _ in range(20):
        w = random_graphon(rng, rng.randint(1, 5))
        d0 = F(rng.randint(0, 8), 8)
        peeled, layers = low_degree_peel(w, d0)
        assert all(a <= b for a, b in zip(layers, layers[1:]))
        if layers:
            assert layers[-1] == peeled
