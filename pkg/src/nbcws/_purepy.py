"""Pure-Python kernels, used when the compiled extension is unavailable.

Bitsets are Python ints here; the public boundary uses the same
``(N, W)`` uint64 row arrays as the compiled module, with bit j of row i
stored at ``rows[i, j // 64] >> (j % 64)``.

Both backends walk the search tree in exactly the same order and count
nodes identically, so results agree bit for bit under a node budget.
"""

from __future__ import annotations

import time

import numpy as np

NAME = "python"


def rows_to_ints(rows: np.ndarray) -> list[int]:
    rows = np.ascontiguousarray(rows, dtype="<u8")
    return [int.from_bytes(r.tobytes(), "little") for r in rows]


def int_to_row(value: int, words: int) -> np.ndarray:
    return np.frombuffer(value.to_bytes(words * 8, "little"), dtype="<u8").astype(np.uint64)


def adjacency_rows(vertices: np.ndarray, d: int, forbidden: np.ndarray) -> np.ndarray:
    """Bitset rows with an edge i~j iff i != j and neither ``v_i - v_j`` nor
    ``v_j - v_i`` (mod d) encodes to a member of ``forbidden`` (sorted codes)."""
    V = np.ascontiguousarray(vertices, dtype=np.int64)
    N, m = V.shape
    words = (N + 63) // 64
    out = np.zeros((N, words), dtype=np.uint64)
    weights = d ** np.arange(m - 1, -1, -1, dtype=np.int64)
    forbidden = np.asarray(forbidden, dtype=np.int64)
    for i in range(N):
        fwd = ((V[i] - V) % d) @ weights
        bwd = ((V - V[i]) % d) @ weights
        ok = ~(np.isin(fwd, forbidden) | np.isin(bwd, forbidden))
        ok[i] = False
        packed = np.packbits(ok, bitorder="little")
        buf = np.zeros(words * 8, dtype=np.uint8)
        buf[: len(packed)] = packed
        out[i] = buf.view("<u8")
    return out


def _color_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    verts: list[int] = []
    colors: list[int] = []
    U = P
    k = 0
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v]
            Q ^= low
            U ^= low
            verts.append(v)
            colors.append(k)
    return verts, colors


def max_clique_search(
    rows: np.ndarray,
    start: list[int],
    candidates: np.ndarray,
    lower_bound: int,
    max_nodes: int,
    deadline: float,
) -> tuple[list[int] | None, int, bool]:
    """Branch and bound with greedy-coloring bounds (MCQ style, bitset based).

    Extends ``start`` by vertices from ``candidates`` (every candidate must
    be adjacent to all of ``start``). Returns ``(clique, nodes, complete)``
    where ``clique`` is the best one strictly larger than ``lower_bound`` or
    None. ``max_nodes < 0`` means unlimited; ``deadline`` is a
    ``time.perf_counter()`` value, polled every 1024 nodes.
    """
    adj = rows_to_ints(rows)
    P0 = rows_to_ints(np.asarray(candidates).reshape(1, -1))[0] if len(adj) else 0
    C = list(start)
    best: list[int] | None = None
    best_size = lower_bound
    if len(C) > best_size:
        best, best_size = C[:], len(C)
    nodes = 0
    complete = True

    if max_nodes == 0:
        return best, 0, P0 == 0

    # frame: [verts, colors, idx, P]
    nodes += 1
    verts, colors = _color_sort(P0, adj)
    frames = [[verts, colors, len(verts) - 1, P0]]
    while frames:
        f = frames[-1]
        idx = f[2]
        if idx < 0 or len(C) + f[1][idx] <= best_size:
            frames.pop()
            if frames:
                parent = frames[-1]
                v = C.pop()
                parent[3] &= ~(1 << v)
                parent[2] -= 1
            continue
        v = f[0][idx]
        newP = f[3] & adj[v]
        C.append(v)
        if not newP:
            if len(C) > best_size:
                best, best_size = C[:], len(C)
            C.pop()
            f[3] &= ~(1 << v)
            f[2] = idx - 1
            continue
        if (max_nodes >= 0 and nodes >= max_nodes) or (not nodes & 1023 and time.perf_counter() > deadline):
            complete = False
            break
        nodes += 1
        verts, colors = _color_sort(newP, adj)
        frames.append([verts, colors, len(verts) - 1, newP])
    return best, nodes, complete
