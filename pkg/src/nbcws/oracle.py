"""Dense state-vector verification of the Knill-Laflamme condition.

Deliberately independent of the classical checker: the stabilized state
comes from the group projector, group elements come from repeated operator
multiplication (not from the exponent-vector phase formula), and Paulis act
on amplitude vectors by index arithmetic,
``q^p Z^z X^x |k> = q^(p + z.(k+x)) |k+x>``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import get_limits
from .cws import CWSCode
from .errors import NonUniqueState, ResourceLimitError
from .pauli import PauliOperator, enumerate_errors, multiply
from .stabilizer import StabilizerSpec, word_operator_for

TOL = 1e-9


@lru_cache(maxsize=32)
def _digits(d: int, n: int) -> np.ndarray:
    idx = np.arange(d**n, dtype=np.int64)
    out = np.empty((d**n, n), dtype=np.int64)
    for pos in range(n - 1, -1, -1):
        out[:, pos] = idx % d
        idx //= d
    out.flags.writeable = False
    return out


def _check_dim(d: int, n: int) -> int:
    dim = d**n
    if dim > get_limits().oracle_dim:
        raise ResourceLimitError(f"Hilbert-space dimension {dim} exceeds oracle limit {get_limits().oracle_dim}")
    return dim


def apply_pauli(op: PauliOperator, psi: np.ndarray) -> np.ndarray:
    """Apply ``op`` to a vector, or to each row of a 2-D array of vectors."""
    d, n = op.d, op.n
    digits = _digits(d, n)
    shifted = (digits + np.asarray(op.x, dtype=np.int64)) % d
    target = shifted @ (d ** np.arange(n - 1, -1, -1, dtype=np.int64))
    phases = np.exp(2j * np.pi * ((op.phase + shifted @ np.asarray(op.z, dtype=np.int64)) % d) / d)
    out = np.zeros_like(psi, dtype=complex)
    out[..., target] = psi * phases
    return out


def group_elements(spec: StabilizerSpec) -> list[PauliOperator]:
    """Every distinct phase-tracked product of generators (closure by multiplication)."""
    cap = get_limits().group
    ident = PauliOperator.identity(spec.d, spec.n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in spec.generators:
                b = multiply(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if len(seen) > cap:
            raise ResourceLimitError(f"group exceeds {cap} elements")
        frontier = nxt
    return sorted(seen, key=lambda p: (p.z, p.x, p.phase))


@dataclass(frozen=True, eq=False)
class DenseState:
    amplitudes: np.ndarray
    tolerance: float = TOL

    def __post_init__(self) -> None:
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1) > self.tolerance:
            raise ValueError(f"state norm {norm} is not 1")

    def overlap(self, other: np.ndarray | DenseState) -> float:
        """``|<self|other>|``; comparisons are global-phase blind."""
        vec = other.amplitudes if isinstance(other, DenseState) else np.asarray(other)
        return float(abs(np.vdot(self.amplitudes, vec)))


def stabilized_state(spec: StabilizerSpec, tolerance: float = TOL) -> DenseState:
    """The unique +1 joint eigenvector, read off a column of the group projector."""
    d, n = spec.d, spec.n
    dim = _check_dim(d, n)
    group = group_elements(spec)
    size = len(group)
    digits = _digits(d, n)
    trace = sum(np.exp(2j * np.pi * g.phase / d) for g in group if g.is_identity(up_to_phase=True)) * dim / size
    if abs(trace - 1) > tolerance:
        raise NonUniqueState(f"projector trace {complex(trace):.6g} != 1 (group of {size} elements)")
    diag = np.zeros(dim, dtype=complex)
    for g in group:
        if not any(g.x):
            diag += np.exp(2j * np.pi * ((g.phase + digits @ np.asarray(g.z)) % d) / d)
    diag /= size
    j = int(np.argmax(np.round(diag.real, 12)))
    basis = np.zeros(dim, dtype=complex)
    basis[j] = 1
    column = sum(apply_pauli(g, basis) for g in group) / size
    psi = column / np.linalg.norm(column)
    for g in spec.generators:
        if np.linalg.norm(apply_pauli(g, psi) - psi) > tolerance * 10:
            raise NonUniqueState(f"generator {g} does not fix the projected state")
    return DenseState(psi, tolerance)


@dataclass(frozen=True)
class KLWitness:
    """A failed entry: ``i != j`` is a nonzero off-diagonal, ``i == j`` a diagonal mismatch with entry 0."""

    error: PauliOperator
    i: int
    j: int
    value: complex


@dataclass(frozen=True, eq=False)
class KLReport:
    verdict: bool
    degenerate: bool
    orthonormal: bool
    errors_checked: int
    witnesses: tuple[KLWitness, ...]
    entries: tuple[tuple[PauliOperator, np.ndarray], ...] = field(repr=False)

    def summary(self) -> str:
        flags = ["pass" if self.verdict else "fail"]
        if self.degenerate:
            flags.append("degenerate")
        if not self.orthonormal:
            flags.append("basis not orthonormal")
        return f"KL {', '.join(flags)} over {self.errors_checked} errors"


def code_states(spec: StabilizerSpec, codewords: Sequence[Sequence[int]], state: DenseState | None = None) -> np.ndarray:
    """Rows ``w_l |S>`` for each codeword."""
    psi = (state or stabilized_state(spec)).amplitudes
    return np.stack([apply_pauli(word_operator_for(spec, c), psi) for c in codewords])


def kl_check(
    spec: StabilizerSpec,
    code: CWSCode | Sequence[Sequence[int]],
    delta: int,
    tolerance: float = TOL,
    keep_entries: bool = True,
    max_witnesses: int = 32,
) -> KLReport:
    """Check ``<w_i|E|w_j> = C_E delta_ij`` for every error of weight < delta."""
    words = code.codewords if isinstance(code, CWSCode) else [tuple(c) for c in code]
    W = code_states(spec, words)
    K = len(words)
    gram = W.conj() @ W.T
    orthonormal = bool(np.all(np.abs(gram - np.eye(K)) < tolerance))
    witnesses: list[KLWitness] = []
    entries = []
    degenerate = False
    count = 0
    off = ~np.eye(K, dtype=bool)
    for E in enumerate_errors(spec.d, spec.n, delta - 1):
        count += 1
        M = W.conj() @ apply_pauli(E, W).T
        if keep_entries:
            entries.append((E, M))
        c = M[0, 0]
        if abs(c) > tolerance:
            degenerate = True
        bad_off = np.argwhere(off & (np.abs(M) > tolerance))
        bad_diag = np.flatnonzero(np.abs(np.diag(M) - c) > tolerance)
        for i, j in bad_off.tolist():
            if len(witnesses) < max_witnesses:
                witnesses.append(KLWitness(E, i, j, complex(M[i, j])))
        for i in bad_diag.tolist():
            if len(witnesses) < max_witnesses:
                witnesses.append(KLWitness(E, i, i, complex(M[i, i])))
    verdict = orthonormal and not witnesses
    return KLReport(verdict, degenerate, orthonormal, count, tuple(witnesses), tuple(entries))
