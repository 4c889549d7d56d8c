"""Word-stabilizer groups over Z_d.

A :class:`StabilizerSpec` lists m generators ``g_k = q^{p_k} Z^{t_k} X^{r_k}``
through an X-exponent matrix (rows r_k), a Z-exponent matrix (rows t_k) and
a phase vector. Group elements are addressed by exponent vectors ``a`` in
Z_d^m meaning ``g_1^{a_1} g_2^{a_2} ... g_m^{a_m}`` (in that order).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import zd_linalg as zl
from .config import get_limits
from .errors import InvalidSpec, NotRealizable, ResourceLimitError
from .pauli import PauliOperator, multiply, power, symplectic_phase, weight

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows: Sequence[Sequence[int]], d: int) -> Matrix:
    return tuple(tuple(int(v) % d for v in row) for row in rows)


@dataclass(frozen=True)
class StabilizerSpec:
    d: int
    n: int
    x_mat: Matrix
    z_mat: Matrix
    phases: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        d = self.d
        if d < 2:
            raise ValueError(f"dimension must be >= 2, got {d}")
        object.__setattr__(self, "x_mat", _as_matrix(self.x_mat, d))
        object.__setattr__(self, "z_mat", _as_matrix(self.z_mat, d))
        m = len(self.x_mat)
        if len(self.z_mat) != m:
            raise ValueError("x_mat and z_mat have different row counts")
        if any(len(row) != self.n for row in self.x_mat + self.z_mat):
            raise ValueError(f"every generator row needs {self.n} entries")
        phases = self.phases if self.phases else (0,) * m
        if len(phases) != m:
            raise ValueError(f"expected {m} phases, got {len(phases)}")
        object.__setattr__(self, "phases", tuple(int(p) % d for p in phases))

    @classmethod
    def from_generators(cls, gens: Sequence[PauliOperator]) -> StabilizerSpec:
        if not gens:
            raise ValueError("need at least one generator")
        d, n = gens[0].d, gens[0].n
        return cls(d, n, tuple(g.x for g in gens), tuple(g.z for g in gens), tuple(g.phase for g in gens))

    @property
    def m(self) -> int:
        return len(self.x_mat)

    @cached_property
    def generators(self) -> tuple[PauliOperator, ...]:
        return tuple(
            PauliOperator(self.d, p, z, x) for p, z, x in zip(self.phases, self.z_mat, self.x_mat)
        )

    @cached_property
    def x_array(self) -> np.ndarray:
        return np.array(self.x_mat, dtype=np.int64).reshape(self.m, self.n)

    @cached_property
    def z_array(self) -> np.ndarray:
        return np.array(self.z_mat, dtype=np.int64).reshape(self.m, self.n)

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    def require_valid(self) -> None:
        rep = self.report
        if not rep.valid:
            raise InvalidSpec(f"invalid stabilizer spec: {rep.summary()}")


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class GroupElement:
    exponents: tuple[int, ...]
    resolved: PauliOperator


def element(spec: StabilizerSpec, exponents: Sequence[int]) -> PauliOperator:
    """Phase-tracked product ``prod_k g_k^{a_k}`` built by repeated multiplication."""
    op = PauliOperator.identity(spec.d, spec.n)
    for g, a in zip(spec.generators, exponents):
        op = multiply(op, power(g, int(a) % spec.d))
    return op


def _phase_tables(spec: StabilizerSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    X, Z = spec.x_array, spec.z_array
    cross = X @ Z.T  # cross[k, l] = r_k . t_l
    diag = np.diag(cross).copy()
    upper = np.triu(cross, 1)
    return np.array(spec.phases, dtype=np.int64), diag, upper


def group_chunks(spec: StabilizerSpec, chunk: int = 1 << 16, limit: int | None = None) -> Iterator[
    tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
]:
    """Yield ``(exponents, z, x, phase)`` arrays covering every a in Z_d^m.

    Exponent vectors come in lexicographic order. Phases follow
    ``sum_k (a_k p_k - C(a_k, 2) r_k.t_k) - sum_{k<l} a_k a_l r_k.t_l``.
    """
    d, m = spec.d, spec.m
    total = d**m
    limit = get_limits().group if limit is None else limit
    if total > limit:
        raise ResourceLimitError(f"d^m = {total} exceeds group enumeration limit {limit}")
    p, diag, upper = _phase_tables(spec)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        a = zl.decode(codes, d, m)
        z = (a @ spec.z_array) % d
        x = (a @ spec.x_array) % d
        phase = a @ p - (a * (a - 1) // 2) @ diag - np.einsum("ik,kl,il->i", a, upper, a)
        yield a, z, x, phase % d


def _symplectic_codes(z: np.ndarray, x: np.ndarray, d: int) -> np.ndarray:
    return zl.encode(np.concatenate([z, x], axis=1), d)


def low_weight_elements(spec: StabilizerSpec, delta: int) -> list[GroupElement]:
    """Non-identity group elements of weight below ``delta``.

    Each distinct element is reported once, with its lexicographically first
    exponent vector, ordered like :func:`nbcws.pauli.enumerate_errors`.
    """
    if delta <= 1:
        return []
    found: dict[int, GroupElement] = {}
    for a, z, x, phase in group_chunks(spec):
        w = np.count_nonzero((z != 0) | (x != 0), axis=1)
        keep = np.nonzero((w >= 1) & (w < delta))[0]
        if len(keep) == 0:
            continue
        codes = _symplectic_codes(z[keep], x[keep], spec.d)
        for i, code in zip(keep.tolist(), codes.tolist()):
            if code not in found:
                op = PauliOperator(spec.d, int(phase[i]), tuple(z[i].tolist()), tuple(x[i].tolist()))
                found[code] = GroupElement(tuple(a[i].tolist()), op)

    def key(g: GroupElement) -> tuple:
        op = g.resolved
        return (weight(op), op.support, op.z, op.x)

    return sorted(found.values(), key=key)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    commuting: bool
    group_order: int
    phase_clean: bool
    m_range_ok: bool
    expected_order: int
    noncommuting_pairs: tuple[tuple[int, int], ...] = ()
    phase_witness: tuple[int, ...] | None = None

    @property
    def valid(self) -> bool:
        return self.commuting and self.group_order == self.expected_order and self.phase_clean and self.m_range_ok

    def summary(self) -> str:
        parts = []
        if not self.commuting:
            parts.append(f"non-commuting generators {list(self.noncommuting_pairs)}")
        if self.group_order != self.expected_order:
            parts.append(f"group order {self.group_order} != d^n = {self.expected_order}")
        if not self.phase_clean:
            parts.append(f"contains a nontrivial multiple of identity (exponents {self.phase_witness})")
        if not self.m_range_ok:
            parts.append("generator count outside [n, 2n]")
        return "; ".join(parts) if parts else "valid"


def validate(spec: StabilizerSpec) -> ValidationReport:
    """Brute-force check of commutation, group order, phases and generator count.

    ``phase_clean`` also requires ``g_k^d == I`` exactly, since exponents are
    only enumerated in [0, d).
    """
    gens = spec.generators
    bad_pairs = tuple(
        (i, j) for i, j in itertools.combinations(range(spec.m), 2) if symplectic_phase(gens[i], gens[j])
    )
    witness: tuple[int, ...] | None = None
    for k, g in enumerate(gens):
        if not power(g, spec.d).is_identity():
            witness = tuple(spec.d if i == k else 0 for i in range(spec.m))
            break
    seen = np.zeros(0, dtype=np.int64)
    for a, z, x, phase in group_chunks(spec):
        seen = np.union1d(seen, np.unique(_symplectic_codes(z, x, spec.d)))
        if witness is None:
            trivial = np.nonzero(~np.any(z, axis=1) & ~np.any(x, axis=1) & (phase != 0))[0]
            if len(trivial):
                witness = tuple(a[trivial[0]].tolist())
    return ValidationReport(
        commuting=not bad_pairs,
        group_order=int(len(seen)),
        phase_clean=witness is None,
        m_range_ok=spec.n <= spec.m <= 2 * spec.n,
        expected_order=spec.d**spec.n,
        noncommuting_pairs=bad_pairs,
        phase_witness=witness,
    )


# ---------------------------------------------------------------------------
# generator transforms and canonical form


def _generates_same_group(spec: StabilizerSpec, R: Sequence[Sequence[int]]) -> bool:
    # every old generator must be a combination of the new ones: R y = e_k
    m = spec.m
    for k in range(m):
        e = [int(i == k) for i in range(m)]
        if zl.solve_mod(R, e, spec.d) is None:
            return False
    return True


def transform_generators(spec: StabilizerSpec, R: Sequence[Sequence[int]]) -> tuple[StabilizerSpec, Matrix]:
    """Regenerate the group with ``g'_t = prod_k g_k^{R[k][t]}``.

    Codewords on the old basis map to ``c @ R`` on the new one.
    """
    R = _as_matrix(R, spec.d)
    if len(R) != spec.m:
        raise ValueError(f"transform needs {spec.m} rows, got {len(R)}")
    if not _generates_same_group(spec, R):
        raise InvalidSpec("transform does not generate the original group")
    cols = list(zip(*R))
    new = StabilizerSpec.from_generators([element(spec, col) for col in cols])
    return new, R


def transform_codeword(c: Sequence[int], R: Sequence[Sequence[int]], d: int) -> tuple[int, ...]:
    cols = list(zip(*R))
    return tuple(sum(int(ci) * int(rk) for ci, rk in zip(c, col)) % d for col in cols)


@dataclass(frozen=True)
class CanonicalForm:
    spec: StabilizerSpec
    canonical_rank: int
    transform: Matrix
    low_weight: tuple[GroupElement, ...]
    invariant_factors: tuple[int, ...]

    def to_canonical(self, c: Sequence[int]) -> tuple[int, ...]:
        return transform_codeword(c, self.transform, self.spec.d)

    def admissible(self, c: Sequence[int]) -> bool:
        """True if ``c`` (old basis) vanishes on the first canonical_rank coordinates."""
        return not any(self.to_canonical(c)[: self.canonical_rank])


def canonicalize(spec: StabilizerSpec, delta: int) -> CanonicalForm:
    """Regenerate S so its first generators generate the weight-<delta subgroup.

    The exponent vectors of all weight-<delta elements span a submodule M of
    Z_d^m. A Smith-adapted frame f_1..f_m of Z^m with M = span(s_i f_i)
    gives the new generators: first ``s_i f_i`` for each ``s_i != d`` (these
    generate the subgroup, their count is the canonical rank), then ``f_i``
    for each ``s_i != 1`` to restore the full group. Over prime d this keeps m
    unchanged; over composite d the set can grow.
    """
    low = tuple(low_weight_elements(spec, delta))
    m, d = spec.m, spec.d
    if not low:
        ident = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
        return CanonicalForm(spec, 0, ident, (), ())
    basis = zl.submodule_basis([g.exponents for g in low], d, m)
    cols: list[tuple[int, ...]] = []
    for s, f in zip(basis.factors, basis.frame):
        if s % d:
            cols.append(zl.reduce_vector((s * v for v in f), d))
    for s, f in zip(basis.factors, basis.frame):
        if s != 1:
            col = zl.reduce_vector(f, d)
            if not element(spec, col).is_identity(up_to_phase=True):
                cols.append(col)
    R = tuple(tuple(col[k] for col in cols) for k in range(m))
    new_spec, R = transform_generators(spec, R)
    return CanonicalForm(new_spec, basis.rank, R, low, tuple(basis.factors))


# ---------------------------------------------------------------------------
# syndromes


def _lattice_generators(spec: StabilizerSpec) -> list[tuple[int, ...]]:
    X, Z = spec.x_array, spec.z_array
    return [tuple(X[:, l].tolist()) for l in range(spec.n)] + [tuple(Z[:, l].tolist()) for l in range(spec.n)]


def syndrome_lattice_array(spec: StabilizerSpec) -> np.ndarray:
    """Sorted array of every realizable syndrome (rows of length m)."""
    return zl.module_array(_lattice_generators(spec), spec.d, length=spec.m)


def syndrome_lattice(spec: StabilizerSpec) -> frozenset[tuple[int, ...]]:
    return zl.enumerate_module(_lattice_generators(spec), spec.d, length=spec.m)


def word_operator_for(spec: StabilizerSpec, c: Sequence[int]) -> PauliOperator:
    """A phase-0 Pauli ``w`` with ``w g_k w^dag = q^{c_k} g_k`` for every k.

    Raises :class:`NotRealizable` when ``c`` is outside the syndrome lattice.
    """
    d = spec.d
    c = zl.reduce_vector(c, d)
    if len(c) != spec.m:
        raise ValueError(f"syndrome has length {len(c)}, expected {spec.m}")
    A = [list(xr) + [-t for t in zr] for xr, zr in zip(spec.x_mat, spec.z_mat)]
    sol = zl.solve_mod(A, c, d)
    if sol is None:
        raise NotRealizable(f"{c} is not in the syndrome lattice")
    return PauliOperator(d, 0, sol[: spec.n], sol[spec.n :])


def exponents_of(spec: StabilizerSpec, op: PauliOperator) -> tuple[int, ...] | None:
    """Exponent vector a with ``prod g_k^{a_k}`` equal to ``op`` up to phase, or None."""
    d = spec.d
    # columns of the system: generator k contributes (t_k, r_k)
    A = [list(col) for col in zip(*[tz + tx for tz, tx in zip(spec.z_mat, spec.x_mat)])]
    return zl.solve_mod(A, op.z + op.x, d)
