"""The desk-scale verification battery.

Each criterion is a function returning (passed, detail).  ``run_all`` prints
one pass/fail line per criterion; the CLI ``reproduce`` subcommand and the
test suite both dispatch here so there is exactly one source of truth for
what the package promises.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import (
    PartWeighting,
    StepKernel,
    ColoringTemplate,
    affine_combine,
    complete_bipartite,
    constant_graphon,
    constant_kernel_like,
    cycle_graph,
    complete_graph,
    diagonal_average,
    path_graph,
    subgraphon,
)
from .constructions import (
    binary_coloring,
    certified_constants,
    kappa_upper,
    local_deficit,
    odd_girth_kernel,
    permutation_family,
)
from .cutnorm import cut_norm, cut_norm_full, cut_distance_upper
from .homdensity import density, mono_sum, reflect
from .independence import low_degree_peel
from .sampler import convergence_report
from .spectral import cycle_density_exact, decompose

__all__ = ["CRITERIA", "run_all", "run_criterion"]

K3 = complete_graph(3)
C4 = cycle_graph(4)
C5 = cycle_graph(5)
K22 = complete_bipartite(2, 2)


def random_step_graphon(rng: random.Random, max_parts: int,
                        entries=None) -> StepKernel:
    """Seeded random step graphon with equal parts and entries from a small set."""
    if entries is None:
        entries = [Fraction(n, 4) for n in range(5)]
    m = rng.randint(1, max_parts)
    values = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            values[i][j] = values[j][i] = rng.choice(entries)
    return StepKernel([Fraction(1, m)] * m, values)


def random_step_kernel(rng: random.Random, max_parts: int) -> StepKernel:
    entries = [Fraction(n, 4) for n in range(-4, 5)]
    return random_step_graphon(rng, max_parts, entries)


def criterion_1():
    """Odd-girth deficit polynomials are exactly the closed forms."""
    poly_c5 = local_deficit(C5, 3)
    expect_c5 = (
        Fraction(1, 81), 0, 0, 0, 0, Fraction(-12, 125),
    )
    poly_k3 = local_deficit(K3, 3)
    expect_k3 = (Fraction(1, 9), 0, 0, Fraction(-4, 3))
    poly_c5_k4 = local_deficit(C5, 4)
    ok = (
        poly_c5.coefficients == tuple(Fraction(c) for c in expect_c5)
        and poly_k3.coefficients == tuple(Fraction(c) for c in expect_k3)
        and poly_c5_k4.coefficients[5] == Fraction(-12, 125)
        and poly_c5_k4.coefficients[0] == Fraction(1, 256)
    )
    return ok, (
        f"deficit(C5,k=3)={[str(c) for c in poly_c5.coefficients]}, "
        f"deficit(K3,k=3)={[str(c) for c in poly_k3.coefficients]}, "
        f"deficit(C5,k=4)[5]={poly_c5_k4.coefficients[5]}"
    )


def criterion_2():
    """Closed forms of the odd-girth kernel densities."""
    u3, u5 = odd_girth_kernel(3), odd_girth_kernel(5)
    p3 = path_graph(3)
    k2 = path_graph(2)
    checks = {
        "t(C3,U3)": (density(cycle_graph(3), u3), Fraction(2, 9)),
        "t(C5,U5)": (density(C5, u5), Fraction(2, 625)),
        "t(P3,U3)": (density(p3, u3), Fraction(0)),
        "t(P3,U5)": (density(p3, u5), Fraction(0)),
        "t(K2,U3)": (density(k2, u3), Fraction(0)),
        "t(K2,U5)": (density(k2, u5), Fraction(0)),
    }
    ok = all(got == want for got, want in checks.values())
    detail = ", ".join(f"{k}={got}" for k, (got, _) in checks.items())
    return ok, detail


def criterion_3():
    """Binary-coloring counts and the kappa upper bounds."""
    failures = []
    for h, name in ((K3, "K3"), (C5, "C5")):
        for k in (2, 3, 4):
            got = mono_sum(binary_coloring(k), h)
            want = Fraction(1, 2 ** ((k - 1) * (h.vertex_count - 1)))
            if got != want:
                failures.append(f"mono_sum(binary({k}),{name})={got}!={want}")
    kc5 = kappa_upper(C5)
    kk3 = kappa_upper(K3)
    if kc5.k_search != 3:
        failures.append(f"kappa_upper(C5).k_search={kc5.k_search}!=3")
    if kk3.k_search != 3:
        failures.append(f"kappa_upper(K3).k_search={kk3.k_search}!=3")
    if kc5.k_formula != 4:
        failures.append(f"kappa_upper(C5).k_formula={kc5.k_formula}!=4")
    if kk3.k_formula != 5:
        failures.append(f"kappa_upper(K3).k_formula={kk3.k_formula}!=5")
    return not failures, "; ".join(failures) or "all counts and bounds match"


def criterion_4():
    """Cycle-trace identity on seeded random step graphons."""
    rng = random.Random(20240)
    worst = 0.0
    for _ in range(20):
        w = random_step_graphon(rng, 6)
        dec = decompose(w)
        for n in range(3, 9):
            exact = float(cycle_density_exact(w, n))
            spectral = dec.trace_power(n)
            scale = max(1.0, sum(abs(l) ** n for l in dec.eigenvalues))
            gap = abs(exact - spectral) / scale
            worst = max(worst, gap)
            if gap > 1e-8:
                return False, f"trace gap {gap:.3e} at n={n}"
    return True, f"worst normalized trace gap {worst:.3e}"


def criterion_5():
    """Reflection inequalities on seeded random graphons."""
    rng = random.Random(20241)
    k44 = complete_bipartite(4, 4)
    for i in range(20):
        w = random_step_graphon(rng, 4)
        base = density(K22, w)
        for n in (2, 3):
            refl = reflect(K22, [0, 1], n)  # K_{2,2n}
            if density(refl, w) < base**n:
                return False, f"t(K_(2,{2*n})) < t(K22)^{n} on instance {i}"
        if density(k44, w) < base**4:
            return False, f"t(K44) < t(K22)^4 on instance {i}"
    return True, "all reflection inequalities hold exactly on 20 instances"


def theorem2_witness() -> StepKernel:
    """4 equal parts, value 1 on the {0,1}x{2,3} cross tiles, 0 elsewhere."""
    one, zero = Fraction(1), Fraction(0)
    values = [
        [zero, zero, one, one],
        [zero, zero, one, one],
        [one, one, zero, zero],
        [one, one, zero, zero],
    ]
    return StepKernel([Fraction(1, 4)] * 4, values)


def criterion_6():
    """End-to-end pipeline behind the permutation-family construction."""
    w = theorem2_witness()
    if density(K3, w) != 0:
        return False, "witness has nonzero triangle density"
    wpp, delta = diagonal_average(w)
    if delta != Fraction(2, 3):
        return False, f"diagonal average {delta} != 2/3"
    family = permutation_family(wpp, 1)
    if family.k != 24:
        return False, f"family size {family.k} != 24"
    for c in family.colors:
        if c.density() != Fraction(1, 24):
            return False, "a color has density != 1/24"
    total = mono_sum(family, K3)
    bound = Fraction(1, 24**2)
    ok = total < bound
    return ok, f"mono_sum={total} vs 24^-2={bound} ({'<' if ok else '>='})"


def criterion_7():
    """Density-Lipschitz property against the exact cut norm."""
    rng = random.Random(20242)
    for i in range(20):
        m = rng.randint(1, 4)
        entries = [Fraction(n, 4) for n in range(5)]

        def rand_values():
            vals = [[Fraction(0)] * m for _ in range(m)]
            for a in range(m):
                for b in range(a, m):
                    vals[a][b] = vals[b][a] = rng.choice(entries)
            return vals

        sizes = [Fraction(1, m)] * m
        w1 = StepKernel(sizes, rand_values())
        w2 = StepKernel(sizes, rand_values())
        for h in (K3, C4):
            lhs = abs(density(h, w1) - density(h, w2))
            rhs = h.edge_count * cut_distance_upper(w1, w2)
            if lhs > rhs:
                return False, f"Lipschitz violated on instance {i}: {lhs} > {rhs}"
    return True, "lhs <= ||H|| * cut norm on all 40 (pair, H) checks"


def criterion_8():
    """Full cut-norm enumeration agrees with the greedy-T strategy."""
    rng = random.Random(20243)
    for i in range(50):
        u = random_step_kernel(rng, 8)
        fast = cut_norm(u)
        full = cut_norm_full(u)
        if fast[0] != full[0]:
            return False, f"cut norm mismatch {fast[0]} != {full[0]} on instance {i}"
    return True, "greedy-T equals full enumeration on 50 instances"


def criterion_9():
    """Certified constants of the recursion, with capped scans reported."""
    consts = [certified_constants(k) for k in (1, 2, 3)]
    lvl1 = consts[0].levels[0]
    failures = []
    if lvl1.n_k != 1:
        failures.append(f"n_1={lvl1.n_k}!=1")
    if lvl1.delta_k != Fraction(2187, 1048576):
        failures.append(f"delta_1={lvl1.delta_k}!=2187/1048576")
    deltas = [c.delta_k for c in consts]
    if not (deltas[0] > deltas[1] > deltas[2]):
        failures.append("delta_k not strictly decreasing")
    for c in consts:
        for lv in c.levels:
            if lv.eps0 != lv.p0**7 / 16:
                failures.append(f"eps0 formula broken at level {lv.level}")
            if lv.delta0 != lv.p0 * lv.eps0 / 16:
                failures.append(f"delta0 formula broken at level {lv.level}")
    # n_k nondecreasing: capped levels sit above the scan limit by construction
    ns = [lv.n_k for lv in consts[2].levels]
    numeric = [n for n in ns if n is not None]
    if numeric != sorted(numeric):
        failures.append(f"n_k sequence {ns} not nondecreasing")
    capped = [c.capped for c in consts]
    detail = (
        f"delta=({', '.join(str(d) for d in deltas)}), n_k per level={ns}, "
        f"capped={capped}"
    )
    return not failures, "; ".join(failures) or detail


def criterion_10():
    """Subgraphon inequality and the peeling density bound."""
    rng = random.Random(20244)
    for i in range(20):
        w = random_step_graphon(rng, 4)
        m = w.num_parts
        weights = [Fraction(rng.randint(0, 4), 4) for _ in range(m)]
        if all(x == 0 for x in weights):
            weights[0] = Fraction(1, 2)
        h = PartWeighting(weights)
        mass = h.mass(w)
        sub = subgraphon(w, h)
        for graph in (K3, C4):
            lhs = density(graph, w)
            rhs = mass**graph.vertex_count * density(graph, sub)
            if lhs < rhs:
                return False, f"subgraphon inequality violated on instance {i}"
        # peel (postconditions asserted inside)
        low_degree_peel(w, Fraction(rng.randint(0, 4), 8))
    return True, "subgraphon inequality and peeling bound hold on 20 instances"


def criterion_11():
    """Sampling convergence at n=200 over 200 trials."""
    rows_const = convergence_report(constant_graphon(Fraction(1, 2)), C5,
                                    [200], 200, seed=7)
    eps = Fraction(1, 20)
    u = odd_girth_kernel(5)
    third = constant_kernel_like(u, Fraction(1, 3))
    w_plus = affine_combine([(1, third), (eps, u)])
    w_minus = affine_combine([(1, third), (-2 * eps, u)])
    template = ColoringTemplate([w_plus, w_plus, w_minus])
    exact = float(local_deficit(C5, 3).evaluate(eps))
    rows_template = convergence_report(template, C5, [200], 200, seed=7)
    ok = not rows_const[0]["flag"] and not rows_template[0]["flag"]
    template_exact_ok = abs(rows_template[0]["exact"] - exact) < 1e-15
    detail = (
        f"const: mean={rows_const[0]['mean']:.6f} exact={rows_const[0]['exact']:.6f} "
        f"stderr={rows_const[0]['stderr']:.2e}; template: mean={rows_template[0]['mean']:.6f} "
        f"exact={rows_template[0]['exact']:.6f} stderr={rows_template[0]['stderr']:.2e}"
    )
    return ok and template_exact_ok, detail


CRITERIA = {
    1: ("odd-girth deficit exactness", criterion_1),
    2: ("odd-girth kernel closed forms", criterion_2),
    3: ("binary-coloring counts and kappa bounds", criterion_3),
    4: ("cycle-trace identity", criterion_4),
    5: ("reflection inequalities", criterion_5),
    6: ("permutation-family pipeline", criterion_6),
    7: ("density Lipschitz property", criterion_7),
    8: ("cut-norm oracle agreement", criterion_8),
    9: ("certified constants", criterion_9),
    10: ("subgraphon and peeling", criterion_10),
    11: ("sampling convergence", criterion_11),
}


def run_criterion(number: int):
    name, fn = CRITERIA[number]
    return fn()


def run_all(out=None) -> bool:
    import sys

    out = out or sys.stdout
    all_ok = True
    for number, (name, fn) in sorted(CRITERIA.items()):
        ok, detail = fn()
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {name} -- {detail}",
              file=out)
    return all_ok
