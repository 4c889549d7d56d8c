"""Classical representation of CWS codes and the error-detection verdict.

Conjugating a generator by an error E multiplies it by a power of q:
``E g_k E^dag = q^{s_k} g_k``. The vector s is the syndrome ``Cl_S(E)``:

    s = sum_l ( v_l * r_l - u_l * t_l )   (mod d)

for ``E ~ Z^v X^u``, where r_l and t_l are the l-th columns of the X and Z
exponent matrices. The minus sign on the X-error term is what ``Z X = q X Z``
forces. Flipping it to ``+`` (see :func:`classical_rep_plus`) relabels
``u -> -u``, a weight-preserving bijection on errors. Syndrome *sets*, and
so every verdict here, do not depend on the choice.

A code {c_0 = 0, c_1, ...} detects every error of weight < delta iff

* no difference ``c_i - c_j`` lies in D, the set of nonzero syndromes of
  such errors (and codewords are distinct), and
* for every such error with zero syndrome (necessarily a stabilizer element
  ``prod g_k^{a_k}`` up to phase), ``sum_k a_k c_k == 0`` for every codeword,
  which is exactly "w_l commutes with E".
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import zd_linalg as zl
from .errors import DimensionMismatch
from .pauli import PauliOperator, error_blocks
from .stabilizer import StabilizerSpec, exponents_of, syndrome_lattice

Syndrome = tuple[int, ...]


def classical_rep(spec: StabilizerSpec, E: PauliOperator) -> Syndrome:
    """Syndrome ``Cl_S(E)``; the phase of E is irrelevant."""
    if E.d != spec.d or E.n != spec.n:
        raise DimensionMismatch(f"error on (d={E.d}, n={E.n}), spec on (d={spec.d}, n={spec.n})")
    d = spec.d
    return tuple(
        (sum(r * v for r, v in zip(xr, E.z)) - sum(t * u for t, u in zip(zr, E.x))) % d
        for xr, zr in zip(spec.x_mat, spec.z_mat)
    )


def classical_rep_plus(spec: StabilizerSpec, E: PauliOperator) -> Syndrome:
    """The ``+u.t`` variant: ``sum_l v_l r_l + u_l t_l``."""
    d = spec.d
    return tuple(
        (sum(r * v for r, v in zip(xr, E.z)) + sum(t * u for t, u in zip(zr, E.x))) % d
        for xr, zr in zip(spec.x_mat, spec.z_mat)
    )


def syndromes(spec: StabilizerSpec, zs: np.ndarray, xs: np.ndarray, sign: int = -1) -> np.ndarray:
    """Vectorised :func:`classical_rep` over rows of Z and X exponent arrays."""
    return (zs @ spec.x_array.T + sign * (xs @ spec.z_array.T)) % spec.d


# ---------------------------------------------------------------------------
# detection set


@dataclass(frozen=True)
class ZeroSyndromeError:
    error: PauliOperator
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class DetectionSet:
    """Nonzero syndromes of errors with ``1 <= wt < delta``, plus zero-syndrome errors.

    ``witness`` maps each syndrome to the first error (in enumeration order)
    producing it.
    """

    delta: int
    d: int
    m: int
    syndromes: frozenset[Syndrome]
    zero_syndrome_errors: tuple[ZeroSyndromeError, ...]
    witness: dict[Syndrome, PauliOperator] = field(compare=False, repr=False)

    def __contains__(self, s: object) -> bool:
        return s in self.syndromes

    def __len__(self) -> int:
        return len(self.syndromes)

    @cached_property
    def codes(self) -> np.ndarray:
        """Sorted integer codes of the syndromes (see :func:`nbcws.zd_linalg.encode`)."""
        if not self.syndromes:
            return np.zeros(0, dtype=np.int64)
        return np.sort(zl.encode(np.array(sorted(self.syndromes), dtype=np.int64), self.d))


def detection_set(spec: StabilizerSpec, delta: int) -> DetectionSet:
    d, m = spec.d, spec.m
    found: dict[int, PauliOperator] = {}
    zero: list[ZeroSyndromeError] = []
    for zs, xs in error_blocks(d, spec.n, delta - 1):
        synd = syndromes(spec, zs, xs)
        is_zero = ~np.any(synd, axis=1)
        for i in np.nonzero(is_zero)[0].tolist():
            op = PauliOperator(d, 0, tuple(zs[i].tolist()), tuple(xs[i].tolist()))
            a = exponents_of(spec, op)
            if a is None:
                raise ValueError(f"zero-syndrome error {op} is not in the stabilizer; spec invalid?")
            zero.append(ZeroSyndromeError(op, a))
        nz = np.nonzero(~is_zero)[0]
        if len(nz) == 0:
            continue
        codes, first = np.unique(zl.encode(synd[nz], d), return_index=True)
        for code, i in zip(codes.tolist(), nz[first].tolist()):
            if code not in found:
                found[code] = PauliOperator(d, 0, tuple(zs[i].tolist()), tuple(xs[i].tolist()))
    if found:
        keys = np.fromiter(found.keys(), dtype=np.int64, count=len(found))
        vecs = [tuple(v) for v in zl.decode(keys, d, m).tolist()]
    else:
        vecs = []
    witness = dict(zip(vecs, found.values()))
    return DetectionSet(delta, d, m, frozenset(vecs), tuple(zero), witness)


# ---------------------------------------------------------------------------
# codes and verdicts


@dataclass(frozen=True)
class CWSCode:
    """Word stabilizer plus classical codewords (codeword 0 is the zero vector)."""

    spec: StabilizerSpec
    codewords: tuple[Syndrome, ...]
    delta: int
    canonical_rank: int = 0

    def __post_init__(self) -> None:
        d, m = self.spec.d, self.spec.m
        words = tuple(zl.reduce_vector(c, d) for c in self.codewords)
        if not words:
            raise ValueError("a code needs at least one codeword")
        if any(len(c) != m for c in words):
            raise ValueError(f"codewords must have length m={m}")
        if any(words[0]):
            raise ValueError("the first codeword must be the zero vector")
        object.__setattr__(self, "codewords", words)

    @property
    def K(self) -> int:
        return len(self.codewords)

    def problems(self) -> list[str]:
        """Invariant violations beyond the shape checks done at construction."""
        out = []
        if len(set(self.codewords)) != self.K:
            out.append("repeated codewords")
        lattice = syndrome_lattice(self.spec)
        outside = [c for c in self.codewords if c not in lattice]
        if outside:
            out.append(f"codewords outside the syndrome lattice: {outside}")
        r = self.canonical_rank
        if r and any(any(c[:r]) for c in self.codewords):
            out.append(f"codewords not zero on the first {r} coordinates")
        return out


@dataclass(frozen=True)
class ClassicalViolation:
    """Codewords i < j whose difference ``c_j - c_i`` is zero or lies in D."""

    i: int
    j: int
    difference: Syndrome
    error: PauliOperator | None  # None for repeated codewords


@dataclass(frozen=True)
class DegeneracyViolation:
    error: PauliOperator
    exponents: tuple[int, ...]
    codeword: int
    value: int


@dataclass(frozen=True)
class Verdict:
    classical_violations: tuple[ClassicalViolation, ...]
    degeneracy_violations: tuple[DegeneracyViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.classical_violations and not self.degeneracy_violations

    def __bool__(self) -> bool:
        return self.ok


def _words(code: CWSCode | Sequence[Sequence[int]], d: int) -> list[Syndrome]:
    if isinstance(code, CWSCode):
        return list(code.codewords)
    return [zl.reduce_vector(c, d) for c in code]


def check_code(
    spec: StabilizerSpec,
    code: CWSCode | Sequence[Sequence[int]],
    delta: int,
    detection: DetectionSet | None = None,
) -> Verdict:
    """Classical and degeneracy parts of error detection for weight < delta."""
    d = spec.d
    words = _words(code, d)
    D = detection if detection is not None else detection_set(spec, delta)
    classical = []
    for i, j in combinations(range(len(words)), 2):
        diff = tuple((b - a) % d for a, b in zip(words[i], words[j]))
        if not any(diff):
            classical.append(ClassicalViolation(i, j, diff, None))
        elif diff in D.syndromes:
            classical.append(ClassicalViolation(i, j, diff, D.witness[diff]))
    degeneracy = []
    for z in D.zero_syndrome_errors:
        for idx, c in enumerate(words):
            value = sum(a * x for a, x in zip(z.exponents, c)) % d
            if value:
                degeneracy.append(DegeneracyViolation(z.error, z.exponents, idx, value))
    return Verdict(tuple(classical), tuple(degeneracy))


def distance(
    spec: StabilizerSpec, code: CWSCode | Sequence[Sequence[int]], max_delta: int | None = None
) -> int:
    """Largest delta at which :func:`check_code` passes, capped at ``max_delta``.

    The cap defaults to n + 1, where every nontrivial Pauli is a tested error;
    single-codeword codes pass at every delta and so return the cap.
    """
    cap = spec.n + 1 if max_delta is None else max_delta
    words = _words(code, spec.d)
    if len(words) == 1:
        return cap
    for delta in range(2, cap + 1):
        if not check_code(spec, words, delta).ok:
            return delta - 1
    return cap


def is_additive(code: CWSCode | Sequence[Sequence[int]], d: int | None = None) -> bool:
    """True iff the codeword set is closed under entrywise addition mod d."""
    if isinstance(code, CWSCode):
        d = code.spec.d
    if d is None:
        raise ValueError("d is required for raw codeword lists")
    words = set(_words(code, d))
    return all(tuple((x + y) % d for x, y in zip(a, b)) in words for a in words for b in words)
