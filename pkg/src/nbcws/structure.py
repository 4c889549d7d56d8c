"""Structure results as executable checks.

* scalar closure of a two-codeword code ``{0, c} -> {0, c, 2c, ...}``,
  guaranteed to keep the distance for prime d;
* group extension of an additive code by one new codeword into
  ``{q c_new - c_j}``, guaranteed for prime d once the one-word extension is
  valid;
* the GCD pattern scan: low-weight errors whose syndrome shares a factor
  ``m > 1`` with composite d while m does not divide the gcd of the error's
  own exponents;
* exhaustive additive-extension scans used to test the binary results and
  the composite-d contrapositive on tiny instances;
* the two worked examples as fixtures.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from . import zd_linalg as zl
from .cws import (
    CWSCode,
    DetectionSet,
    Verdict,
    check_code,
    detection_set,
    is_additive,
    syndromes,
)
from .corpus import is_prime
from .errors import TheoremViolation
from .pauli import PauliOperator, error_blocks
from .stabilizer import StabilizerSpec, syndrome_lattice_array

Syndrome = tuple[int, ...]


@dataclass(frozen=True)
class GcdWitness:
    error: PauliOperator
    syndrome: Syndrome
    m_value: int
    vu_gcd: int


@dataclass(frozen=True)
class ExtensionWitness:
    """``q * c_new - c_j`` (or ``q * c`` for scalar closure, j = 0) lies in D."""

    q: int
    j: int
    syndrome: Syndrome
    error: PauliOperator


@dataclass(frozen=True)
class ExtensionVerdict:
    ok: bool
    code: tuple[Syndrome, ...]
    base_ok: bool
    seed_ok: bool | None
    witnesses: tuple[ExtensionWitness, ...]
    verdict: Verdict = field(repr=False)


def _words(code: CWSCode | Sequence[Sequence[int]], d: int) -> list[Syndrome]:
    if isinstance(code, CWSCode):
        return list(code.codewords)
    return [zl.reduce_vector(c, d) for c in code]


def _ordered(words: set[Syndrome], m: int) -> tuple[Syndrome, ...]:
    zero = (0,) * m
    return (zero,) + tuple(sorted(w for w in words if w != zero))


def scalar_closure(
    spec: StabilizerSpec, code: CWSCode | Sequence[Sequence[int]], delta: int, detection: DetectionSet | None = None
) -> ExtensionVerdict:
    """Close ``{0, c}`` under scalar multiples and check the result.

    The precondition (``{0, c}`` passes) is reported as ``base_ok`` rather
    than enforced. A failure with ``base_ok`` at prime d raises
    :class:`TheoremViolation`.
    """
    d, m = spec.d, spec.m
    words = _words(code, d)
    if len(words) != 2 or any(words[0]):
        raise ValueError("scalar closure takes a code {0, c}")
    c = words[1]
    D = detection if detection is not None else detection_set(spec, delta)
    base_ok = check_code(spec, words, delta, detection=D).ok
    multiples = {tuple(q * x % d for x in c) for q in range(d)}
    closed = _ordered(multiples, m)
    verdict = check_code(spec, closed, delta, detection=D)
    witnesses = []
    for q in range(1, d):
        s = tuple(q * x % d for x in c)
        if s in D.syndromes:
            witnesses.append(ExtensionWitness(q, 0, s, D.witness[s]))
    if base_ok and not verdict.ok and is_prime(d):
        raise TheoremViolation(f"scalar closure of {c} failed at prime d={d}")
    return ExtensionVerdict(verdict.ok, closed, base_ok, None, tuple(witnesses), verdict)


def group_extension(
    spec: StabilizerSpec,
    linear_code: CWSCode | Sequence[Sequence[int]],
    c_new: Sequence[int],
    delta: int,
    detection: DetectionSet | None = None,
) -> ExtensionVerdict:
    """Extend an additive code by ``c_new`` to ``{q c_new - c_j}`` and check it.

    ``base_ok``: the input is additive and passes; ``seed_ok``: the input plus
    ``c_new`` passes. With both true at prime d a failing extension raises
    :class:`TheoremViolation`.
    """
    d, m = spec.d, spec.m
    base = _words(linear_code, d)
    new = zl.reduce_vector(c_new, d)
    if new in base:
        raise ValueError(f"{new} is already a codeword")
    D = detection if detection is not None else detection_set(spec, delta)
    base_ok = is_additive(base, d) and check_code(spec, base, delta, detection=D).ok
    seed_ok = check_code(spec, base + [new], delta, detection=D).ok
    full = {tuple((q * a - b) % d for a, b in zip(new, cj)) for q in range(d) for cj in base}
    closed = _ordered(full, m)
    verdict = check_code(spec, closed, delta, detection=D)
    witnesses = []
    for q in range(d):
        for j, cj in enumerate(base):
            s = tuple((q * a - b) % d for a, b in zip(new, cj))
            if s in D.syndromes:
                witnesses.append(ExtensionWitness(q, j, s, D.witness[s]))
    if base_ok and seed_ok and not verdict.ok and is_prime(d):
        raise TheoremViolation(f"group extension by {new} failed at prime d={d}")
    return ExtensionVerdict(verdict.ok, closed, base_ok, seed_ok, tuple(witnesses), verdict)


def gcd_pattern_scan(spec: StabilizerSpec, delta: int) -> list[GcdWitness]:
    """Errors of weight < delta with ``gcd(s, d) = m > 1`` and ``m`` not dividing ``gcd(v, u, d)``."""
    d = spec.d
    out = []
    for zs, xs in error_blocks(d, spec.n, delta - 1):
        synd = syndromes(spec, zs, xs)
        for z, x, s in zip(zs.tolist(), xs.tolist(), synd.tolist()):
            if not any(s):
                continue
            mval = zl.gcd_with(s, d)
            if mval == 1:
                continue
            vu = zl.gcd_with(z + x, d)
            if vu % mval:
                out.append(GcdWitness(PauliOperator(d, 0, tuple(z), tuple(x)), tuple(s), mval, vu))
    return out


# ---------------------------------------------------------------------------
# exhaustive additive codes on tiny instances


def _admissible(spec: StabilizerSpec, D: DetectionSet) -> list[Syndrome]:
    """Lattice vectors usable in a code containing 0: outside D, degeneracy-clean."""
    d = spec.d
    out = []
    for c in map(tuple, syndrome_lattice_array(spec).tolist()):
        if c in D.syndromes:
            continue
        if any(sum(a * x for a, x in zip(z.exponents, c)) % d for z in D.zero_syndrome_errors):
            continue
        out.append(c)
    return out


def additive_codes(spec: StabilizerSpec, delta: int, detection: DetectionSet | None = None) -> list[frozenset[Syndrome]]:
    """Every additive code (submodule) whose nonzero elements avoid D, degeneracy-clean."""
    d = spec.d
    D = detection if detection is not None else detection_set(spec, delta)
    pool = [c for c in _admissible(spec, D) if any(c)]
    zero = frozenset({(0,) * spec.m})
    seen = {zero}
    valid = [zero]
    frontier = [zero]
    while frontier:
        nxt = []
        for code in frontier:
            for v in pool:
                if v in code:
                    continue
                span = zl.enumerate_module(list(code) + [v], d, length=spec.m)
                if span in seen:
                    continue
                seen.add(span)
                if _valid_additive(span, D, d):
                    nxt.append(span)
        valid += nxt
        frontier = nxt
    return valid


def _valid_additive(code: frozenset[Syndrome], D: DetectionSet, d: int) -> bool:
    return all(not any(c) or c not in D.syndromes for c in code) and all(
        not any(sum(a * x for a, x in zip(z.exponents, c)) % d for z in D.zero_syndrome_errors) for c in code
    )


@dataclass(frozen=True)
class AdditiveExtension:
    code: tuple[Syndrome, ...]
    extra: Syndrome


@dataclass(frozen=True)
class AdditiveScan:
    """Optimal additive codes on a spec and any codeword that enlarges one of them."""

    optimal_size: int
    optimal_codes: int
    extensions: tuple[AdditiveExtension, ...]


def additive_extension_scan(spec: StabilizerSpec, delta: int) -> AdditiveScan:
    D = detection_set(spec, delta)
    codes = additive_codes(spec, delta, D)
    best = max(len(c) for c in codes)
    optimal = [c for c in codes if len(c) == best]
    pool = _admissible(spec, D)
    ext = []
    for code in optimal:
        words = _ordered(set(code), spec.m)
        for v in pool:
            if v in code:
                continue
            if check_code(spec, list(words) + [v], delta, detection=D).ok:
                ext.append(AdditiveExtension(words, v))
                break
    return AdditiveScan(best, len(optimal), tuple(ext))


@dataclass(frozen=True)
class BinarySuiteReport:
    instances: int
    two_word_closed: int
    three_word_codes: int
    three_word_extended: int
    optimality_instances: int
    optimality_counterexamples: tuple[tuple[StabilizerSpec, AdditiveExtension], ...]

    @property
    def ok(self) -> bool:
        return (
            self.two_word_closed == self.instances
            and self.three_word_extended == self.three_word_codes
            and not self.optimality_counterexamples
        )


def binary_theorem_suite(specs: Sequence[StabilizerSpec], delta: int, max_triples: int = 20) -> BinarySuiteReport:
    """Binary checks: {0,c} is a group; valid {0,c1,c2} extends by c1+c2;
    optimal linear codes admit no extra codeword (for n <= 5)."""
    closed = triples = extended = opt_inst = 0
    counter = []
    for spec in specs:
        if spec.d != 2:
            raise ValueError("binary suite needs d = 2")
        D = detection_set(spec, delta)
        pool = [c for c in _admissible(spec, D) if any(c)]
        closed += all(is_additive([(0,) * spec.m, c], 2) for c in pool)
        found = 0
        for i, a in enumerate(pool):
            for b in pool[i + 1 :]:
                if found >= max_triples:
                    break
                if not check_code(spec, [(0,) * spec.m, a, b], delta, detection=D).ok:
                    continue
                found += 1
                res = group_extension(spec, [(0,) * spec.m, a], b, delta, detection=D)
                triples += 1
                extended += res.ok
        if spec.n <= 5:
            opt_inst += 1
            scan = additive_extension_scan(spec, delta)
            counter += [(spec, e) for e in scan.extensions]
    return BinarySuiteReport(len(specs), closed, triples, extended, opt_inst, tuple(counter))


@dataclass(frozen=True)
class ContrapositiveReport:
    """Specs with an empty GCD scan, and those among them where an optimal
    additive code still extended (counterexamples to the necessary condition)."""

    scanned: int
    empty_scan: int
    counterexamples: tuple[tuple[StabilizerSpec, AdditiveExtension], ...]


def gcd_contrapositive(specs: Sequence[StabilizerSpec], delta: int) -> ContrapositiveReport:
    empty = 0
    counter = []
    for spec in specs:
        if gcd_pattern_scan(spec, delta):
            continue
        empty += 1
        scan = additive_extension_scan(spec, delta)
        counter += [(spec, e) for e in scan.extensions]
    return ContrapositiveReport(len(specs), empty, tuple(counter))


# ---------------------------------------------------------------------------
# fixtures


@dataclass(frozen=True)
class WorkedExamples:
    ring: StabilizerSpec
    ring_code: CWSCode
    c1: Syndrome
    c2: Syndrome
    star: StabilizerSpec
    star_code: CWSCode


def qutrit_ring_spec() -> StabilizerSpec:
    n = 7
    x = [[int(i == j) for j in range(n)] for i in range(n)]
    z = [[int(j in ((i - 1) % n, (i + 1) % n)) for j in range(n)] for i in range(n)]
    return StabilizerSpec(3, n, x, z)


def ququart_star_spec() -> StabilizerSpec:
    # identity block on the Z side so that Z_0 has syndrome (0, 2, 2)
    return StabilizerSpec(4, 3, [[0, 2, 2], [2, 0, 0], [2, 0, 0]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def worked_examples() -> WorkedExamples:
    s1, s2 = qutrit_ring_spec(), ququart_star_spec()
    c1, c2 = (1, 1, 0, 0, 1, 0, 0), (0, 0, 1, 0, 0, 1, 1)
    return WorkedExamples(
        ring=s1,
        ring_code=CWSCode(s1, [(0,) * 7, c1, c2], 3),
        c1=c1,
        c2=c2,
        star=s2,
        star_code=CWSCode(s2, [(0, 0, 0), (0, 1, 1)], 2),
    )

