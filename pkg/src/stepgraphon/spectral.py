"""Spectral decomposition of step-graphon operators.

A step kernel with m parts acts on L2[0,1] with at most m nonzero
eigenvalues: they are the eigenvalues of the m x m symmetric matrix
B[a][b] = sqrt(s_a) * v[a][b] * sqrt(s_b).  The eigensolver is a cyclic
Jacobi iteration implemented here; the matrices are tiny.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import StepKernel, cycle_graph
from .errors import DomainError
from .homdensity import rooted_density

__all__ = [
    "SpectralDecomposition",
    "decompose",
    "cycle_trace_check",
    "rooted_cycle_identity",
    "cycle_density_exact",
    "jacobi_eigh",
]

DEFAULT_TOLERANCE = 1e-9


def jacobi_eigh(matrix: list[list[float]]):
    """Eigenvalues and eigenvectors of a small symmetric matrix by cyclic Jacobi.

    Returns (eigenvalues, vectors) with vectors[i] the unit eigenvector for
    eigenvalues[i], in no particular order.
    """
    n = len(matrix)
    a = [row[:] for row in matrix]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    scale = max(abs(a[i][j]) for i in range(n) for j in range(n)) or 1.0
    for _ in range(100):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= 1e-15 * scale * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p][q]) <= 1e-18 * scale:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta**2 + 1.0))
                c = 1.0 / math.sqrt(t**2 + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
    eigenvalues = [a[i][i] for i in range(n)]
    vectors = [[v[k][i] for k in range(n)] for i in range(n)]
    return eigenvalues, vectors


@dataclass(frozen=True)
class SpectralDecomposition:
    """Nonzero spectrum of a step kernel with per-part eigenfunction values.

    ``eigenfunctions[i][j]`` is g_i on part j (normalized so that the
    part-size-weighted L2 norm is one) and ``betas[i][j] = lambda_i * g_i(j)``.
    """

    eigenvalues: tuple[float, ...]
    eigenfunctions: tuple[tuple[float, ...], ...]
    betas: tuple[tuple[float, ...], ...]
    tolerance: float
    part_sizes: tuple[float, ...]

    def trace_power(self, n: int) -> float:
        return sum(lam**n for lam in self.eigenvalues)


def decompose(w: StepKernel, tol: float = DEFAULT_TOLERANCE) -> SpectralDecomposition:
    """Spectral decomposition of the kernel operator; drops |lambda| <= tol."""
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    m = w.num_parts
    sqrt_s = [math.sqrt(float(s)) for s in w.part_sizes]
    b = [
        [sqrt_s[i] * float(w.values[i][j]) * sqrt_s[j] for j in range(m)]
        for i in range(m)
    ]
    eigenvalues, vectors = jacobi_eigh(b)
    kept = [(lam, vec) for lam, vec in zip(eigenvalues, vectors) if abs(lam) > tol]

    def normalized(vec):
        # deterministic sign: first coordinate of visible magnitude positive
        for x in vec:
            if abs(x) > 1e-12:
                return vec if x > 0 else [-y for y in vec]
        return vec

    kept = [(lam, normalized(vec)) for lam, vec in kept]
    kept.sort(key=lambda item: (-abs(item[0]), -item[0], item[1]))
    lams = tuple(lam for lam, _ in kept)
    funcs = tuple(
        tuple(vec[j] / sqrt_s[j] for j in range(m)) for _, vec in kept
    )
    betas = tuple(
        tuple(lam * g for g in gs) for lam, gs in zip(lams, funcs)
    )
    return SpectralDecomposition(
        eigenvalues=lams,
        eigenfunctions=funcs,
        betas=betas,
        tolerance=tol,
        part_sizes=tuple(float(s) for s in w.part_sizes),
    )


def cycle_density_exact(w: StepKernel, n: int) -> Fraction:
    """t(C_n, W) as the trace of the n-th power of diag(sizes) * values, exact."""
    if n < 3:
        raise DomainError("cycles have length at least 3")
    m = w.num_parts
    mat = [[w.part_sizes[i] * w.values[i][j] for j in range(m)] for i in range(m)]
    power = mat
    for _ in range(n - 1):
        power = [
            [
                sum(power[i][k] * mat[k][j] for k in range(m))
                for j in range(m)
            ]
            for i in range(m)
        ]
    return sum(power[i][i] for i in range(m))


def cycle_trace_check(w: StepKernel, n: int,
                      tol: float = DEFAULT_TOLERANCE) -> tuple[Fraction, float]:
    """Exact t(C_n, W) alongside the spectral sum of n-th eigenvalue powers."""
    if n < 3:
        raise DomainError("cycle length must be at least 3")
    exact = cycle_density_exact(w, n)
    spectral = decompose(w, tol).trace_power(n)
    return exact, spectral


def rooted_cycle_identity(w: StepKernel, k: int, part: int,
                          tol: float = DEFAULT_TOLERANCE) -> tuple[Fraction, float]:
    """Rooted cycle density vs its spectral form sum_i lambda_i^(k-2) beta_i(part)^2."""
    if k < 3:
        raise DomainError("cycle length must be at least 3")
    if not 0 <= part < w.num_parts:
        raise DomainError(f"part index {part} out of range")
    direct = rooted_density(cycle_graph(k), [0], w, [part])
    dec = decompose(w, tol)
    spectral = sum(
        lam ** (k - 2) * dec.betas[i][part] ** 2
        for i, lam in enumerate(dec.eigenvalues)
    )
    return direct, spectral
