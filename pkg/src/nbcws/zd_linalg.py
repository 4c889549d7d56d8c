"""Exact integer and modular linear algebra over Z_d.

Z_d is a ring, not a field, whenever d is composite, so nothing here uses
Gaussian elimination mod d. Systems are lifted to the integers (with ``d*I``
appended to absorb the modulus) and solved through a Smith normal form built
with Python integers, which never overflow.

Vectors over Z_d are plain tuples of ints in ``[0, d)``; matrices are lists of
lists or 2-D numpy integer arrays. Both are accepted wherever a sequence is.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .config import get_limits
from .errors import ResourceLimitError

ZdVector = tuple[int, ...]
IntMatrix = list[list[int]]


def reduce_vector(v: Iterable[int], d: int) -> ZdVector:
    return tuple(int(x) % d for x in v)


def gcd_with(v: Iterable[int], p: int) -> int:
    """Greatest common divisor of the entries of ``v`` together with ``p``.

    An all-zero (or empty) vector yields ``p`` itself.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return reduce(math.gcd, (int(x) for x in v), int(p))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal.

    ``V_inv`` is the exact inverse of ``V``; its rows form a basis of Z^cols
    adapted to the row lattice of ``M`` (row i of the lattice basis is
    ``D[i][i] * V_inv[i]``).
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def _identity(k: int) -> IntMatrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with both transforms.

    The diagonal is non-negative and satisfies ``D[i][i] | D[i+1][i+1]``;
    zeros trail. All arithmetic is on Python ints.
    """
    A = [[int(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)
    Vi = _identity(cols)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src; inverse transform: row_src -= q * row_dst
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(rows, cols)):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            leftovers = [(abs(A[i][t]), i, t) for i in range(t + 1, rows) if A[i][t]]
            leftovers += [(abs(A[t][j]), t, j) for j in range(t + 1, cols) if A[t][j]]
            if leftovers:
                _, i, j = min(leftovers)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(U=U, D=A, V=V, V_inv=Vi)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


# ---------------------------------------------------------------------------
# linear systems


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], d: int) -> ZdVector | None:
    """Solve ``A @ x == b (mod d)``; returns None when ``b`` is not in the image.

    ``A`` is m x k. The returned solution is the Smith-form particular
    solution (free coordinates set to zero), so it is deterministic.
    """
    A = [[int(x) for x in row] for row in A]
    m = len(A)
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    if m == 0:
        return ()
    k = len(A[0])
    lifted = [row + [d if i == j else 0 for j in range(m)] for i, row in enumerate(A)]
    snf = smith_normal_form(lifted)
    Ub = [sum(u * int(x) for u, x in zip(urow, b)) for urow in snf.U]
    z = [0] * (k + m)
    for i in range(m):
        s = snf.D[i][i]
        if s == 0:
            if Ub[i] != 0:
                return None
            continue
        if Ub[i] % s:
            return None
        z[i] = Ub[i] // s
    y = [sum(v * zz for v, zz in zip(vrow, z)) for vrow in snf.V]
    return tuple(yy % d for yy in y[:k])


def mat_vec_mod(A: Sequence[Sequence[int]], x: Sequence[int], d: int) -> ZdVector:
    return tuple(sum(int(a) * int(b) for a, b in zip(row, x)) % d for row in A)


# ---------------------------------------------------------------------------
# finite modules


def encode(vectors: np.ndarray, d: int) -> np.ndarray:
    """Map rows of ``vectors`` to integers, first coordinate most significant.

    Numeric order of codes equals lexicographic order of the vectors.
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    length = vectors.shape[-1]
    if d**length >= 2**62:
        raise ResourceLimitError(f"Z_{d}^{length} too large to index with int64")
    weights = d ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


def decode(codes: np.ndarray, d: int, length: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (length,), dtype=np.int64)
    rest = codes.copy()
    for pos in range(length - 1, -1, -1):
        out[..., pos] = rest % d
        rest //= d
    return out


def module_array(
    generators: Sequence[Sequence[int]], d: int, length: int | None = None, limit: int | None = None
) -> np.ndarray:
    """Z_d-module spanned by ``generators`` as a lexicographically sorted array.

    Breadth-first closure under adding generators; adding is enough because
    scalar multiples are repeated sums in Z_d.
    """
    gens = np.asarray(generators, dtype=np.int64)
    if gens.size == 0:
        if length is None:
            raise ValueError("length is required when there are no generators")
        gens = gens.reshape(0, length)
    length = gens.shape[1]
    gens = gens % d
    limit = get_limits().module if limit is None else limit
    seen = np.zeros(1, dtype=np.int64)
    frontier = np.zeros((1, length), dtype=np.int64)
    gens = gens[np.any(gens != 0, axis=1)]
    while len(frontier) and len(gens):
        cand = (frontier[:, None, :] + gens[None, :, :]).reshape(-1, length) % d
        codes = np.unique(encode(cand, d))
        fresh = np.setdiff1d(codes, seen, assume_unique=True)
        if len(fresh) == 0:
            break
        seen = np.union1d(seen, fresh)
        if len(seen) > limit:
            raise ResourceLimitError(f"module exceeds {limit} elements")
        frontier = decode(fresh, d, length)
    return decode(seen, d, length)


def enumerate_module(
    generators: Sequence[Sequence[int]], d: int, length: int | None = None, limit: int | None = None
) -> frozenset[ZdVector]:
    """The finite Z_d-module generated by ``generators`` as a set of tuples."""
    arr = module_array(generators, d, length=length, limit=limit)
    return frozenset(tuple(row) for row in arr.tolist())


@dataclass(frozen=True)
class ModuleBasis:
    """Adapted basis of a submodule M of Z_d^m.

    ``frame`` rows form a unimodular basis f_1..f_m of Z^m; M is spanned by
    ``factors[i] * frame[i]`` and every factor divides d. ``rank`` counts the
    factors different from d, i.e. the nonzero basis elements of M.
    """

    frame: IntMatrix
    factors: list[int]
    d: int

    @property
    def rank(self) -> int:
        return sum(1 for s in self.factors if s % self.d)

    @property
    def size(self) -> int:
        return math.prod(self.d // math.gcd(s, self.d) for s in self.factors)

    def basis(self) -> list[ZdVector]:
        return [
            reduce_vector((s * x for x in f), self.d)
            for s, f in zip(self.factors, self.frame)
            if s % self.d
        ]


def submodule_basis(generators: Sequence[Sequence[int]], d: int, length: int) -> ModuleBasis:
    """Adapted basis for the submodule of Z_d^length spanned by ``generators``."""
    rows = [[int(x) % d for x in g] for g in generators]
    rows += [[d if i == j else 0 for j in range(length)] for i in range(length)]
    snf = smith_normal_form(rows)
    factors = [snf.D[i][i] for i in range(length)]
    return ModuleBasis(frame=snf.V_inv, factors=factors, d=d)
