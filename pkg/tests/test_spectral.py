import random
from fractions import Fraction

from stepgraphon import StepKernel, constant_graphon, cycle_trace_check, decompose
from stepgraphon.spectral import cycle_density_exact, jacobi_eigh, rooted_cycle_identity

F = Fraction


def random_kernel(rng, m):
    entries = [F(n, 4) for n in range(-4, 5)]
    values = [[F(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            values[i][j] = values[j][i] = rng.choice(entries)
    return StepKernel([F(1, m)] * m, values)


def test_jacobi_diagonalizes():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 6)
        a = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = rng.uniform(-2, 2)
        eigvals, vecs = jacobi_eigh(a)
        for lam, v in zip(eigvals, vecs):
            av = [sum(a[i][j] * v[j] for j in range(n)) for i in range(n)]
            for i in range(n):
                assert abs(av[i] - lam * v[i]) < 1e-9
        # eigenvalue sum equals the trace
        assert abs(sum(eigvals) - sum(a[i][i] for i in range(n))) < 1e-9


def test_constant_graphon_spectrum():
    dec = decompose(constant_graphon(F(1, 2)))
    assert len(dec.eigenvalues) == 1
    assert abs(dec.eigenvalues[0] - 0.5) < 1e-12


def test_cycle_density_exact_constant():
    w = constant_graphon(F(1, 3))
    for n in range(3, 7):
        assert cycle_density_exact(w, n) == F(1, 3) ** n


def test_trace_identity_random():
    rng = random.Random(17)
    for _ in range(10):
        w = random_kernel(rng, rng.randint(1, 5))
        for n in (3, 4, 5, 6):
            exact, spectral = cycle_trace_check(w, n)
            scale = max(1.0, abs(float(exact)))
            assert abs(float(exact) - spectral) / scale < 1e-8


def test_eigenfunction_normalization():
    rng = random.Random(23)
    w = random_kernel(rng, 4)
    dec = decompose(w)
    sizes = [float(s) for s in w.part_sizes]
    for g in dec.eigenfunctions:
        norm = sum(s * gi * gi for s, gi in zip(sizes, g))
        assert abs(norm - 1.0) < 1e-9


def test_rooted_cycle_identity_holds():
    rng = random.Random(29)
    for _ in range(5):
        w = random_kernel(rng, 3)
        for part in range(3):
            exact, spectral = rooted_cycle_identity(w, 4, part)
            assert abs(float(exact) - spectral) < 1e-8 * max(1.0, abs(float(exact)))
