"""Phase-tracked qudit Pauli operators.

An operator is stored in the fixed normal form ``q^phase * Z^z * X^x`` with
``q = exp(2*pi*i/d)``, ``Z|k> = q^k |k>`` and ``X|k> = |k+1>``. From
``Z X = q X Z`` it follows that ``X^a Z^b = q^(-a*b) Z^b X^a``; every phase
rule below comes from that single identity.

Qudits are 0-indexed. In tensor products qudit 0 is the most significant
factor.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .config import get_limits
from .errors import DimensionMismatch, ResourceLimitError


@dataclass(frozen=True)
class PauliOperator:
    d: int
    phase: int
    z: tuple[int, ...]
    x: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if len(self.z) != len(self.x):
            raise DimensionMismatch("z and x exponent vectors differ in length")
        object.__setattr__(self, "phase", int(self.phase) % self.d)
        object.__setattr__(self, "z", tuple(int(v) % self.d for v in self.z))
        object.__setattr__(self, "x", tuple(int(v) % self.d for v in self.x))

    @classmethod
    def identity(cls, d: int, n: int) -> PauliOperator:
        return cls(d, 0, (0,) * n, (0,) * n)

    @classmethod
    def single(cls, d: int, n: int, qudit: int, z: int = 0, x: int = 0) -> PauliOperator:
        zs = [0] * n
        xs = [0] * n
        zs[qudit] = z
        xs[qudit] = x
        return cls(d, 0, tuple(zs), tuple(xs))

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(zip(self.z, self.x)) if a or b)

    def is_identity(self, up_to_phase: bool = False) -> bool:
        trivial = not any(self.z) and not any(self.x)
        return trivial if up_to_phase else trivial and self.phase == 0

    def without_phase(self) -> PauliOperator:
        return PauliOperator(self.d, 0, self.z, self.x)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __pow__(self, k: int) -> PauliOperator:
        return power(self, k)

    def __str__(self) -> str:
        body = to_literal(self) or "I"
        return body if self.phase == 0 else f"q^{self.phase} {body}"


def _check_compatible(a: PauliOperator, b: PauliOperator) -> None:
    if a.d != b.d or a.n != b.n:
        raise DimensionMismatch(f"operators on (d={a.d}, n={a.n}) and (d={b.d}, n={b.n})")


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(p * q for p, q in zip(u, v))


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Normal-form product ``a @ b``.

    Moving ``X^{x_a}`` past ``Z^{z_b}`` costs ``q^{-(x_a . z_b)}``.
    """
    _check_compatible(a, b)
    d = a.d
    return PauliOperator(
        d,
        a.phase + b.phase - _dot(a.x, b.z),
        tuple(p + q for p, q in zip(a.z, b.z)),
        tuple(p + q for p, q in zip(a.x, b.x)),
    )


def power(a: PauliOperator, k: int) -> PauliOperator:
    """``a**k`` for k >= 0, with exact phase ``k*phase - C(k,2) * (x . z)``."""
    if k < 0:
        raise ValueError("negative powers: use inverse()")
    d = a.d
    return PauliOperator(
        d,
        k * a.phase - comb(k, 2) * _dot(a.x, a.z),
        tuple(k * v for v in a.z),
        tuple(k * v for v in a.x),
    )


def inverse(a: PauliOperator) -> PauliOperator:
    # (q^p Z^v X^u)^-1 = q^-p X^-u Z^-v = q^(-p - u.v) Z^-v X^-u
    return PauliOperator(a.d, -a.phase - _dot(a.x, a.z), tuple(-v for v in a.z), tuple(-v for v in a.x))


def symplectic_phase(a: PauliOperator, b: PauliOperator) -> int:
    """The exponent g with ``a b = q^g b a``, i.e. ``z_a . x_b - x_a . z_b`` mod d."""
    _check_compatible(a, b)
    return (_dot(a.z, b.x) - _dot(a.x, b.z)) % a.d


def weight(a: PauliOperator) -> int:
    return sum(1 for p, q in zip(a.z, a.x) if p or q)


# ---------------------------------------------------------------------------
# error enumeration


def error_count(d: int, n: int, max_weight: int) -> int:
    return sum(comb(n, w) * (d * d - 1) ** w for w in range(1, max_weight + 1))


def _check_error_budget(d: int, n: int, max_weight: int) -> None:
    total = error_count(d, n, max_weight)
    if total > get_limits().errors:
        raise ResourceLimitError(f"{total} errors exceed the sweep limit {get_limits().errors}")


@lru_cache(maxsize=256)
def _local_block(d: int, w: int) -> np.ndarray:
    local = [(a, b) for a in range(d) for b in range(d) if a or b]
    return np.array(list(itertools.product(local, repeat=w)), dtype=np.int64).reshape(-1, w, 2)


def error_blocks(d: int, n: int, max_weight: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(z, x)`` exponent arrays, one block per support.

    Blocks arrive by weight, then support in lexicographic order; rows within
    a block are sorted by ``(z, x)``. Concatenated, they list every phase-0
    error with weight in ``[1, max_weight]``.
    """
    max_weight = max(0, min(max_weight, n))
    _check_error_budget(d, n, max_weight)
    for w in range(1, max_weight + 1):
        block = _local_block(d, w)
        size = len(block)
        for support in itertools.combinations(range(n), w):
            zb = np.zeros((size, n), dtype=np.int64)
            xb = np.zeros((size, n), dtype=np.int64)
            zb[:, support] = block[:, :, 0]
            xb[:, support] = block[:, :, 1]
            order = np.lexsort(np.concatenate([zb, xb], axis=1).T[::-1])
            yield zb[order], xb[order]


@lru_cache(maxsize=64)
def _error_arrays(d: int, n: int, max_weight: int) -> tuple[np.ndarray, np.ndarray]:
    blocks = list(error_blocks(d, n, max_weight))
    if not blocks:
        empty = np.zeros((0, n), dtype=np.int64)
        return empty, empty.copy()
    zs = np.concatenate([b[0] for b in blocks])
    xs = np.concatenate([b[1] for b in blocks])
    zs.flags.writeable = False
    xs.flags.writeable = False
    return zs, xs


def error_arrays(d: int, n: int, max_weight: int) -> tuple[np.ndarray, np.ndarray]:
    """Z and X exponent arrays of every phase-0 error with weight in [1, max_weight].

    Rows follow :func:`enumerate_errors` order.
    """
    return _error_arrays(d, n, max(0, min(max_weight, n)))


def enumerate_errors(d: int, n: int, max_weight: int) -> Iterator[PauliOperator]:
    """Phase-0 representatives of all Paulis with ``1 <= weight <= max_weight``.

    Ordered by weight, then support (lexicographic), then ``(z, x)``
    exponents (lexicographic).
    """
    for zs, xs in error_blocks(d, n, max_weight):
        for z, x in zip(zs.tolist(), xs.tolist()):
            yield PauliOperator(d, 0, tuple(z), tuple(x))


# ---------------------------------------------------------------------------
# dense matrices


def _check_dim(d: int, n: int, limit: int | None) -> int:
    dim = d**n
    limit = get_limits().oracle_dim if limit is None else limit
    if dim > limit:
        raise ResourceLimitError(f"dimension {dim} exceeds oracle limit {limit}")
    return dim


def single_qudit_matrices(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Clock ``Z = diag(q^k)`` and shift ``X|k> = |k+1>``."""
    q = np.exp(2j * np.pi / d)
    Z = np.diag(q ** np.arange(d))
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    return Z, X


def dense_matrix(a: PauliOperator, limit: int | None = None) -> np.ndarray:
    """Explicit ``d**n`` square matrix of the operator."""
    _check_dim(a.d, a.n, limit)
    Z, X = single_qudit_matrices(a.d)
    out = np.ones((1, 1), dtype=complex)
    for zi, xi in zip(a.z, a.x):
        local = np.linalg.matrix_power(Z, zi) @ np.linalg.matrix_power(X, xi)
        out = np.kron(out, local)
    return np.exp(2j * np.pi * a.phase / a.d) * out


# ---------------------------------------------------------------------------
# text literals

_TOKEN = re.compile(r"^([ZX])(\d+)(?:\^(-?\d+))?$")


def parse_literal(text: str, d: int, n: int) -> PauliOperator:
    """Parse ``"Z1 Z5 X1^2 X5^2"`` style literals; tokens multiply left to right."""
    op = PauliOperator.identity(d, n)
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise ValueError(f"bad Pauli token {token!r}")
        kind, idx, exp = match.group(1), int(match.group(2)), match.group(3)
        if idx >= n:
            raise ValueError(f"qudit index {idx} out of range for n={n}")
        e = 1 if exp is None else int(exp)
        factor = PauliOperator.single(d, n, idx, z=e) if kind == "Z" else PauliOperator.single(d, n, idx, x=e)
        op = multiply(op, factor)
    return op


def to_literal(a: PauliOperator) -> str:
    """Normal-form literal (Z tokens, then X tokens); the phase is not encoded."""

    def tok(kind: str, i: int, e: int) -> str:
        return f"{kind}{i}" if e == 1 else f"{kind}{i}^{e}"

    parts = [tok("Z", i, e) for i, e in enumerate(a.z) if e]
    parts += [tok("X", i, e) for i, e in enumerate(a.x) if e]
    return " ".join(parts)
