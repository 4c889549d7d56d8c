"""CWS clique graphs and an exact, budgeted maximum-clique solver.

Vertices are the admissible codewords: syndrome-lattice vectors that vanish
on the first ``canonical_rank`` canonical coordinates. Two codewords are
joined when their difference is not a detectable-error syndrome. Because the
edge relation depends only on differences and D = -D, the graph is a Cayley
graph on the admissible module, so any clique can be translated to contain
the zero codeword; :func:`search` fixes 0 in the clique by default.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, TYPE_CHECKING

import numpy as np

from . import kernels
from .config import Limits, get_limits
from .cws import CWSCode, DetectionSet, Verdict, check_code, detection_set
from .errors import OracleDisagreement, ResourceLimitError
from .stabilizer import CanonicalForm, StabilizerSpec, canonicalize, syndrome_lattice_array

if TYPE_CHECKING:
    from .oracle import KLReport

Syndrome = tuple[int, ...]


# ---------------------------------------------------------------------------
# bitset graphs


def _words(n: int) -> int:
    return (n + 63) // 64


def _unpack(row: np.ndarray, n: int) -> np.ndarray:
    return np.unpackbits(np.ascontiguousarray(row, dtype="<u8").view(np.uint8), bitorder="little")[:n].astype(bool)


def _pack(bits: np.ndarray, words: int) -> np.ndarray:
    buf = np.zeros(words * 8, dtype=np.uint8)
    packed = np.packbits(np.asarray(bits, dtype=bool), bitorder="little")
    buf[: len(packed)] = packed
    return buf.view("<u8").astype(np.uint64)


@dataclass(frozen=True, eq=False)
class BitGraph:
    """Simple undirected graph stored as uint64 adjacency bitsets."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.ascontiguousarray(self.rows, dtype=np.uint64)
        if rows.ndim != 2 or rows.shape[1] != _words(rows.shape[0]):
            raise ValueError(f"rows must be (N, ceil(N/64)), got {rows.shape}")
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> BitGraph:
        rows = np.zeros((n, _words(n)), dtype=np.uint64)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            rows[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
            rows[j, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
        return cls(rows)

    @classmethod
    def from_dense(cls, adjacency: np.ndarray) -> BitGraph:
        A = np.asarray(adjacency, dtype=bool)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"adjacency must be square, got {A.shape}")
        if np.any(np.diag(A)) or np.any(A != A.T):
            raise ValueError("adjacency must be symmetric without self-loops")
        n = A.shape[0]
        return cls(np.stack([_pack(A[i], _words(n)) for i in range(n)]) if n else np.zeros((0, 0), np.uint64))

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    def has_edge(self, i: int, j: int) -> bool:
        return bool((int(self.rows[i, j >> 6]) >> (j & 63)) & 1)

    def neighbors(self, i: int) -> list[int]:
        return np.flatnonzero(_unpack(self.rows[i], self.n)).tolist()

    def dense(self) -> np.ndarray:
        return np.stack([_unpack(r, self.n) for r in self.rows]) if self.n else np.zeros((0, 0), bool)

    @cached_property
    def degrees(self) -> np.ndarray:
        if not self.n:
            return np.zeros(0, dtype=np.int64)
        bits = np.unpackbits(self.rows.astype("<u8").view(np.uint8), axis=1, bitorder="little")
        return bits.sum(axis=1).astype(np.int64)

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self) -> Iterable[tuple[int, int]]:
        for i in range(self.n):
            for j in self.neighbors(i):
                if j > i:
                    yield i, j

    def is_clique(self, vertices: Sequence[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        return all(self.has_edge(a, b) for k, a in enumerate(vs) for b in vs[k + 1 :])

    def check(self) -> None:
        """Raise ValueError unless the graph is symmetric and loop-free."""
        A = self.dense()
        if A.size and (np.any(np.diag(A)) or np.any(A != A.T)):
            raise ValueError("adjacency must be symmetric without self-loops")


def degeneracy_order(graph: BitGraph) -> list[int]:
    """Vertices ordered densest core first (reverse min-degree peeling, ties by index)."""
    n = graph.n
    deg = graph.degrees.copy()
    removed = np.zeros(n, dtype=bool)
    peel: list[int] = []
    big = np.iinfo(np.int64).max
    for _ in range(n):
        v = int(np.argmin(np.where(removed, big, deg)))
        removed[v] = True
        peel.append(v)
        nb = _unpack(graph.rows[v], n) & ~removed
        deg[nb] -= 1
    return peel[::-1]


def _permute(graph: BitGraph, order: Sequence[int]) -> np.ndarray:
    n = graph.n
    idx = np.asarray(order, dtype=np.int64)
    out = np.zeros_like(graph.rows)
    for p, old in enumerate(order):
        out[p] = _pack(_unpack(graph.rows[old], n)[idx], graph.rows.shape[1])
    return out


# ---------------------------------------------------------------------------
# solver


@dataclass(frozen=True)
class Budget:
    """Search limits; None means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class CliqueResult:
    clique: tuple[int, ...]
    size: int
    optimal: bool
    nodes_explored: int
    wall_time: float = field(compare=False)
    backend: str = field(default=kernels.BACKEND, compare=False)


def _greedy(rows: np.ndarray, start: list[int], cand: np.ndarray) -> list[int]:
    C = list(start)
    P = cand.copy()
    while P.any():
        w = int(np.flatnonzero(P)[0])
        word = int(P[w])
        v = w * 64 + ((word & -word).bit_length() - 1)
        C.append(v)
        P &= rows[v]
    return C


_worker_state: dict = {}


def _worker_init(rows, shared, backend_name) -> None:
    _worker_state.update(rows=rows, shared=shared, kernel=kernels.get_backend(backend_name))


def _worker_task(start, cand, bound, lower, max_nodes, wall_deadline):
    shared = _worker_state["shared"]
    if bound <= shared.value:
        return None, 0, True
    deadline = time.perf_counter() + (wall_deadline - time.time())
    best, nodes, complete = _worker_state["kernel"].max_clique_search(
        _worker_state["rows"], start, cand, max(lower, shared.value), max_nodes, deadline
    )
    if best is not None:
        with shared.get_lock():
            if len(best) > shared.value:
                shared.value = len(best)
    return best, nodes, complete


def _parallel(rows, start, cand, lower, max_nodes, seconds, workers, backend_name):
    import multiprocessing as mp

    from ._purepy import _color_sort, int_to_row, rows_to_ints

    adj = rows_to_ints(rows)
    P = rows_to_ints(cand.reshape(1, -1))[0]
    verts, colors = _color_sort(P, adj)
    W = rows.shape[1]
    tasks = []
    for idx in range(len(verts) - 1, -1, -1):
        v = verts[idx]
        tasks.append((start + [v], int_to_row(P & adj[v], W), len(start) + colors[idx]))
        P &= ~(1 << v)
    shared = mp.Value("q", lower)
    wall_deadline = time.time() + seconds if seconds is not None else float("inf")
    best, nodes, complete = None, 1, True
    with ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(rows, shared, backend_name)) as pool:
        futures = [pool.submit(_worker_task, s, c, b, lower, max_nodes, wall_deadline) for s, c, b in tasks]
        for fut in futures:
            b, k, ok = fut.result()
            nodes += k
            complete &= ok
            if b is not None and (best is None or len(b) > len(best)):
                best = b
    return best, nodes, complete


def max_clique(
    graph: BitGraph,
    budget: Budget | None = None,
    anchor: int | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> CliqueResult:
    """Maximum clique by coloring-bounded branch and bound.

    With ``anchor`` set, only cliques containing that vertex are considered.
    ``optimal`` is True only when the tree was exhausted. Single-worker runs
    are deterministic; with ``workers > 1`` root branches are split across
    processes sharing the incumbent size, and the node limit applies per
    root branch.
    """
    t0 = time.perf_counter()
    budget = budget or Budget()
    kernel = kernels.get_backend(backend)
    n = graph.n
    if n == 0:
        return CliqueResult((), 0, True, 0, time.perf_counter() - t0, kernel.NAME)
    order = degeneracy_order(graph)
    pos = {v: p for p, v in enumerate(order)}
    rows = _permute(graph, order)
    W = rows.shape[1]
    if anchor is not None:
        start = [pos[anchor]]
        cand = rows[start[0]].copy()
    else:
        start = []
        cand = _pack(np.ones(n, dtype=bool), W)

    max_nodes = -1 if budget.max_nodes is None else int(budget.max_nodes)
    if max_nodes == 0:
        clique = start or [0]
        optimal = not cand.any() if start else n == 1
        nodes = 0
    else:
        greedy = _greedy(rows, start, cand)
        deadline = t0 + budget.max_seconds if budget.max_seconds is not None else float("inf")
        if workers > 1:
            found, nodes, optimal = _parallel(
                rows, start, cand, len(greedy), max_nodes, budget.max_seconds, workers, kernel.NAME
            )
        else:
            found, nodes, optimal = kernel.max_clique_search(rows, start, cand, len(greedy), max_nodes, deadline)
        clique = found if found is not None else greedy
    mapped = tuple(sorted(order[v] for v in clique))
    if not graph.is_clique(mapped):
        raise RuntimeError("solver returned a non-clique")
    return CliqueResult(mapped, len(mapped), bool(optimal), int(nodes), time.perf_counter() - t0, kernel.NAME)


def brute_force_max_clique(graph: BitGraph) -> int:
    """Size of a maximum clique by exhaustive subset growth (small graphs only)."""
    A = graph.dense()
    best = 0

    def grow(size: int, cands: list[int]) -> None:
        nonlocal best
        best = max(best, size)
        for k, v in enumerate(cands):
            grow(size + 1, [u for u in cands[k + 1 :] if A[v, u]])

    grow(0, list(range(graph.n)))
    return best


# ---------------------------------------------------------------------------
# CWS clique graph


@dataclass(frozen=True, eq=False)
class CliqueGraph:
    """Admissible codewords (canonical coordinates, lexicographic) and their graph.

    ``originals[i]`` is vertex i in the coordinates of the input spec;
    ``detection`` is the set D in those coordinates.
    """

    spec: StabilizerSpec
    delta: int
    canonical: CanonicalForm
    vertices: tuple[Syndrome, ...]
    originals: tuple[Syndrome, ...]
    graph: BitGraph
    detection: DetectionSet
    anchor: bool

    @property
    def canonical_rank(self) -> int:
        return self.canonical.canonical_rank

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def connection_set(self) -> frozenset[Syndrome]:
        """D expressed in canonical coordinates."""
        return frozenset(self.canonical.to_canonical(s) for s in self.detection.syndromes)


def build_clique_graph(
    spec: StabilizerSpec, delta: int, limits: Limits | None = None, backend: str | None = None
) -> CliqueGraph:
    spec.require_valid()
    limits = limits or get_limits()
    d = spec.d
    canon = canonicalize(spec, delta)
    L = syndrome_lattice_array(spec)
    R = np.asarray(canon.transform, dtype=np.int64).reshape(spec.m, -1)
    Lc = (L @ R) % d
    r = canon.canonical_rank
    keep = ~np.any(Lc[:, :r], axis=1)
    L, Lc = L[keep], Lc[keep]
    order = np.lexsort(Lc.T[::-1])
    L, Lc = L[order], Lc[order]
    if len(L) > limits.vertices:
        raise ResourceLimitError(f"{len(L)} admissible vertices exceed the limit {limits.vertices}")
    D = detection_set(spec, delta)
    rows = kernels.get_backend(backend).adjacency_rows(L, d, D.codes)
    anchor = bool(len(Lc)) and not Lc[0].any()
    return CliqueGraph(
        spec=spec,
        delta=delta,
        canonical=canon,
        vertices=tuple(map(tuple, Lc.tolist())),
        originals=tuple(map(tuple, L.tolist())),
        graph=BitGraph(rows),
        detection=D,
        anchor=anchor,
    )


# ---------------------------------------------------------------------------
# DIMACS


def write_dimacs(graph: BitGraph, out: IO[str], comment: str | None = None) -> None:
    if comment:
        for line in comment.splitlines():
            out.write(f"c {line}\n")
    out.write(f"p edge {graph.n} {graph.edge_count}\n")
    for i, j in graph.edges():
        out.write(f"e {i + 1} {j + 1}\n")


def read_dimacs(text: str) -> BitGraph:
    n = None
    edges = []
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ValueError(f"bad problem line: {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ValueError("edge before problem line")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {raw!r} out of range")
            edges.append((i, j))
        else:
            raise ValueError(f"unknown DIMACS line: {raw!r}")
    if n is None:
        raise ValueError("missing problem line")
    return BitGraph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# search driver


@dataclass(frozen=True)
class SearchResult:
    code: CWSCode
    canonical_code: CWSCode
    clique: CliqueResult
    n_vertices: int
    n_edges: int
    verdict: Verdict
    oracle: KLReport | None


def translate_to_zero(words: Sequence[Sequence[int]], d: int) -> list[Syndrome]:
    """Shift a codeword set by its lexicographically smallest member (Cayley translation)."""
    base = min(tuple(w) for w in words)
    return [tuple((a - b) % d for a, b in zip(w, base)) for w in words]


def search(
    spec: StabilizerSpec,
    delta: int,
    budget: Budget | None = None,
    anchor: bool = True,
    workers: int = 1,
    oracle: bool | None = None,
    backend: str | None = None,
    graph: CliqueGraph | None = None,
) -> SearchResult:
    """Largest code found on ``spec`` detecting all errors of weight < delta.

    The clique is mapped back to the input coordinates and re-verified by
    :func:`check_code`; ``oracle=None`` also runs the dense KL check when the
    dimension fits the oracle limit (``True`` forces it, ``False`` skips it).
    """
    G = graph if graph is not None else build_clique_graph(spec, delta, backend=backend)
    use_anchor = anchor and G.anchor
    res = max_clique(G.graph, budget, anchor=0 if use_anchor else None, workers=workers, backend=backend)
    d = spec.d
    members = [G.originals[i] for i in res.clique] or [(0,) * spec.m]
    if not use_anchor:
        members = translate_to_zero(members, d)
    canon = G.canonical
    keyed = sorted((canon.to_canonical(c), c) for c in members)
    code = CWSCode(spec, [c for _, c in keyed], delta)
    canonical_code = CWSCode(canon.spec, [k for k, _ in keyed], delta, canon.canonical_rank)
    verdict = check_code(spec, code, delta, detection=G.detection)
    if not verdict.ok:
        raise RuntimeError("clique did not yield a valid code; graph construction is inconsistent")
    report = None
    run_oracle = oracle if oracle is not None else d**spec.n <= get_limits().oracle_dim
    if run_oracle:
        from .oracle import kl_check

        report = kl_check(spec, code, delta)
        if report.verdict != verdict.ok:
            raise OracleDisagreement(f"classical verdict {verdict.ok}, oracle verdict {report.verdict}")
    return SearchResult(code, canonical_code, res, G.n_vertices, G.graph.edge_count, verdict, report)
