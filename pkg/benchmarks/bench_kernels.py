"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--nodes 20000] [--repeat 3]

Times adjacency construction and a node-limited clique search on the qutrit
ring clique graph (2187 vertices), plus exact search on random graphs.
Both backends must return identical results; the script checks that too.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from nbcws import kernels
from nbcws.clique import BitGraph, Budget, build_clique_graph, max_clique
from nbcws.cws import detection_set
from nbcws.stabilizer import syndrome_lattice_array
from nbcws.structure import qutrit_ring_spec


def timed(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the Python kernel is available")

    spec = qutrit_ring_spec()
    L = syndrome_lattice_array(spec)
    D = detection_set(spec, 3)
    G = build_clique_graph(spec, 3)
    rng = np.random.default_rng(1)
    upper = np.triu(rng.random((150, 150)) < 0.5, 1)
    randoms = [BitGraph.from_dense(upper | upper.T)]

    rows = []
    results = {}
    for name, mod in backends.items():
        t_adj, adj = timed(lambda: mod.adjacency_rows(L, 3, D.codes), args.repeat)
        t_bb, res = timed(lambda: max_clique(G.graph, Budget(max_nodes=args.nodes), anchor=0, backend=name), args.repeat)
        t_rand, rres = timed(lambda: [max_clique(g, backend=name) for g in randoms], args.repeat)
        results[name] = (adj, res, [r.size for r in rres])
        rows.append((name, t_adj, t_bb, t_rand, res.size, res.nodes_explored))

    print(f"{'backend':<8} {'adjacency':>10} {'B&B ' + str(args.nodes):>12} {'random150':>10} {'K':>4} {'nodes':>7}")
    for name, t_adj, t_bb, t_rand, k, nodes in rows:
        print(f"{name:<8} {t_adj:>9.3f}s {t_bb:>11.3f}s {t_rand:>9.3f}s {k:>4} {nodes:>7}")
    if len(rows) == 2:
        (_, a1, b1, r1, *_), (_, a2, b2, r2, *_) = sorted(rows, key=lambda r: r[0] != "python")
        print(f"speedup  {a1 / a2:>9.1f}x {b1 / b2:>11.1f}x {r1 / r2:>9.1f}x")
        py, cy = results["python"], results["cython"]
        same = np.array_equal(py[0], cy[0]) and py[1] == cy[1] and py[2] == cy[2]
        print("results identical:", same)
        if not same:
            raise SystemExit(1)


if __name__ == "__main__":
    main()
