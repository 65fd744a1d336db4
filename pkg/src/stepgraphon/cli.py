"""Command-line entry point.

Exit codes: 0 success, 2 domain error, 3 capacity error, 64 usage error.
All rational outputs carry an exact "p/q" string plus a decimal rendering.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import acceptance
from .constructions import (
    binary_coloring,
    certified_constants,
    chromatic_coloring,
    kappa_upper,
    local_deficit,
    odd_girth_kernel,
    permutation_family,
)
from .core import graph_stats
from .cutnorm import cut_norm, local_window_check
from .errors import CapacityError, DomainError
from .homdensity import (
    build_K2a2bC5,
    commonness_margin,
    density,
    epsilon_expansion,
    mono_sum,
)
from .independence import alpha_lower, low_degree_peel
from .sampler import convergence_report, sample_w_random
from .serialize import (
    format_rational,
    kernel_to_dict,
    load_graph,
    load_kernel,
    load_template,
    parse_rational,
    save_graph,
    template_to_dict,
)
from .spectral import cycle_trace_check, decompose

USAGE_EXIT = 64


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE_EXIT)


def rational_out(x: Fraction) -> dict:
    return {"exact": format_rational(x), "decimal": float(x)}


def emit(payload, args) -> None:
    if getattr(args, "csv", None):
        rows = payload if isinstance(payload, list) else [payload]
        writer = csv.DictWriter(sys.stdout, fieldnames=sorted(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    else:
        json.dump(payload, sys.stdout, indent=2, default=str)
        print()


def build_parser() -> Parser:
    parser = Parser(prog="graphon", description=__doc__)
    parser.add_argument("--threads", type=int, default=1,
                        help="worker count; results are independent of it")
    parser.add_argument("--budget", type=int, default=None,
                        help="evaluation budget override (also env GRAPHON_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="homomorphism density t(H, W)")
    p.add_argument("--graph", required=True)
    p.add_argument("--kernel", required=True)

    p = sub.add_parser("expand", help="expansion of t(H, p + eps*U) in eps")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--kernel", required=True)

    p = sub.add_parser("margin", help="monochromatic density sum minus the random bound")
    p.add_argument("--template", required=True)
    p.add_argument("--graph", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues and cycle trace checks")
    p.add_argument("--kernel", required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("cutnorm", help="exact cut norm with maximizing part sets")
    p.add_argument("--kernel", required=True)

    p = sub.add_parser("localcheck", help="cut/sup window checks per template color")
    p.add_argument("--template", required=True)
    p.add_argument("--eps0", required=True)

    p = sub.add_parser("construct", help="named constructions")
    csub = p.add_subparsers(dest="construction", required=True)
    c = csub.add_parser("binary")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out")
    c = csub.add_parser("chromatic")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--out")
    c = csub.add_parser("oddgirth")
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--out")
    c = csub.add_parser("permfamily")
    c.add_argument("--kernel", required=True)
    c.add_argument("--l", type=int, default=1)
    c.add_argument("--out")
    c = csub.add_parser("kc5")
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--out")

    p = sub.add_parser("deficit", help="local deficit polynomial in eps")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", default=None)

    p = sub.add_parser("kappa", help="upper bounds on the non-commonness threshold")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("constants", help="certified constants of the recursion")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("alpha", help="delta-independence ratio lower bound")
    p.add_argument("--kernel", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--resolution", type=int, default=8)

    p = sub.add_parser("peel", help="low-degree peeling")
    p.add_argument("--kernel", required=True)
    p.add_argument("--d0", required=True)

    p = sub.add_parser("sample", help="sample a W-random graph")
    p.add_argument("--kernel", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("converge", help="empirical density convergence report")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kernel")
    group.add_argument("--template")
    p.add_argument("--graph", required=True)
    p.add_argument("--schedule", required=True, help="comma-separated n values")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--csv", help="write rows to a CSV file")

    p = sub.add_parser("reproduce", help="run the full verification battery")
    p.add_argument("--suite", default="paper", choices=["paper"])

    p = sub.add_parser("stats", help="graph statistics")
    p.add_argument("--graph", required=True)

    return parser


def _write_or_emit(payload, args):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        emit(payload, args)


def run(args) -> int:
    if args.budget is not None:
        os.environ["GRAPHON_BUDGET"] = str(args.budget)

    if args.command == "density":
        value = density(load_graph(args.graph), load_kernel(args.kernel))
        emit({"density": rational_out(value)}, args)
    elif args.command == "expand":
        poly = epsilon_expansion(
            load_graph(args.graph), parse_rational(args.p), load_kernel(args.kernel)
        )
        emit({"coeffs": [format_rational(c) for c in poly.coefficients],
              "decimal": [float(c) for c in poly.coefficients]}, args)
    elif args.command == "margin":
        template = load_template(args.template)
        graph = load_graph(args.graph)
        total = mono_sum(template, graph)
        margin = commonness_margin(template, graph)
        emit({"mono_sum": rational_out(total),
              "margin": rational_out(margin),
              "k": template.k}, args)
    elif args.command == "spectrum":
        kernel = load_kernel(args.kernel)
        dec = decompose(kernel, args.tol)
        checks = {}
        for n in range(3, 9):
            exact, spectral = cycle_trace_check(kernel, n, args.tol)
            checks[str(n)] = {"exact": format_rational(exact),
                              "spectral": spectral,
                              "gap": abs(float(exact) - spectral)}
        emit({"eigenvalues": list(dec.eigenvalues), "trace_checks": checks}, args)
    elif args.command == "cutnorm":
        value, s, t = cut_norm(load_kernel(args.kernel))
        emit({"value": rational_out(value), "S": list(s), "T": list(t)}, args)
    elif args.command == "localcheck":
        flags = local_window_check(load_template(args.template),
                                   parse_rational(args.eps0))
        emit([{"color": i, "cut_ok": c, "sup_ok": s}
              for i, (c, s) in enumerate(flags)], args)
    elif args.command == "construct":
        if args.construction == "binary":
            _write_or_emit(template_to_dict(binary_coloring(args.k)), args)
        elif args.construction == "chromatic":
            _write_or_emit(template_to_dict(chromatic_coloring(args.k, args.q)), args)
        elif args.construction == "oddgirth":
            _write_or_emit(kernel_to_dict(odd_girth_kernel(args.l)), args)
        elif args.construction == "permfamily":
            family = permutation_family(load_kernel(args.kernel), args.l)
            _write_or_emit(template_to_dict(family), args)
        elif args.construction == "kc5":
            graph = build_K2a2bC5(args.a, args.b)
            if args.out:
                save_graph(graph, args.out)
            else:
                sys.stdout.write(f"{graph.vertex_count} {graph.edge_count}\n")
                for u, v in graph.edge_list():
                    sys.stdout.write(f"{u} {v}\n")
    elif args.command == "deficit":
        poly = local_deficit(load_graph(args.graph), args.k)
        payload = {"coeffs": [format_rational(c) for c in poly.coefficients],
                   "decimal": [float(c) for c in poly.coefficients]}
        if args.eps is not None:
            eps = parse_rational(args.eps)
            payload["value_at_eps"] = rational_out(poly.evaluate(eps))
        emit(payload, args)
    elif args.command == "kappa":
        bounds = kappa_upper(load_graph(args.graph))
        emit({"k_search": bounds.k_search, "k_formula": bounds.k_formula,
              "diagnostic": bounds.diagnostic}, args)
    elif args.command == "constants":
        consts = certified_constants(args.k)
        levels = []
        for lv in consts.levels:
            levels.append({
                "level": lv.level,
                "p0": format_rational(lv.p0),
                "eps0": format_rational(lv.eps0),
                "pi0": format_rational(lv.pi0),
                "d0": format_rational(lv.d0),
                "delta0": format_rational(lv.delta0),
                "n0": lv.n0 if lv.n0 is not None else f"capped(>{consts.scan_limit})",
                "delta_k": format_rational(lv.delta_k),
                "n_k": lv.n_k if lv.n_k is not None else f"capped(>{consts.scan_limit})",
                "n_k_inequality_floor": lv.n_k_inequality_floor,
            })
        emit({"k": consts.k, "levels": levels, "capped": consts.capped}, args)
        if consts.capped:
            return 3
    elif args.command == "alpha":
        kernel = load_kernel(args.kernel)
        bound, cert = alpha_lower(kernel, parse_rational(args.delta), args.resolution)
        emit({"bound": rational_out(bound),
              "certificate": [format_rational(x) for x in cert.weights]}, args)
    elif args.command == "peel":
        kernel = load_kernel(args.kernel)
        peeled, layers = low_degree_peel(kernel, parse_rational(args.d0))
        emit({"peeled_parts": sorted(peeled),
              "layers": [sorted(layer) for layer in layers]}, args)
    elif args.command == "sample":
        graph = sample_w_random(load_kernel(args.kernel), args.n, args.seed)
        save_graph(graph, args.out)
        emit({"vertices": graph.vertex_count, "edges": graph.edge_count,
              "out": args.out}, args)
    elif args.command == "converge":
        source = (load_kernel(args.kernel) if args.kernel
                  else load_template(args.template))
        schedule = [int(x) for x in args.schedule.split(",")]
        rows = convergence_report(source, load_graph(args.graph), schedule,
                                  args.trials, args.seed)
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
                writer.writeheader()
                writer.writerows(rows)
        emit(rows, args)
    elif args.command == "stats":
        s = graph_stats(load_graph(args.graph))
        emit({"vertices": s.vertices, "edges": s.edges,
              "components": s.components,
              "average_degree": format_rational(s.average_degree),
              "girth": s.girth if s.girth is not None else "inf",
              "girth_parity": s.girth_parity,
              "shortest_cycle_count": s.shortest_cycle_count,
              "chromatic_number": s.chromatic_number,
              "bipartite": s.bipartite}, args)
    elif args.command == "reproduce":
        return 0 if acceptance.run_all() else 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
