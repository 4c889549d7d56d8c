"""Random valid stabilizer specs for property tests and theorem harnesses.

Specs start from a product state and are scrambled by Clifford maps applied
as group homomorphisms on operators (so validity is preserved exactly):

* local symplectic maps ``Z -> Z^a X^b``, ``X -> Z^c X^e`` with
  ``ae - bc = 1`` whose images still have order d,
* controlled-phase maps ``X_i -> Z_j^w X_i``, ``X_j -> Z_i^w X_j``,
* generator recombination ``g_k -> g_k g_l^e``.

For composite d some qudits start in ``<Z^a, X^b>`` with ``ab = d``, which
gives specs with more generators than qudits.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterator

from .pauli import PauliOperator, multiply, power
from .stabilizer import StabilizerSpec, validate

Images = list[tuple[PauliOperator, PauliOperator]]  # per qudit: (image of Z_i, image of X_i)


def _identity_images(d: int, n: int) -> Images:
    return [(PauliOperator.single(d, n, i, z=1), PauliOperator.single(d, n, i, x=1)) for i in range(n)]


def apply_map(op: PauliOperator, images: Images) -> PauliOperator:
    """Image of ``q^p Z^z X^x`` under the homomorphism fixed by ``images``."""
    out = PauliOperator(op.d, op.phase, (0,) * op.n, (0,) * op.n)
    for (zi, _), e in zip(images, op.z):
        out = multiply(out, power(zi, e))
    for (_, xi), e in zip(images, op.x):
        out = multiply(out, power(xi, e))
    return out


def _random_sl2(rng: random.Random, d: int) -> tuple[int, int, int, int]:
    while True:
        a, b, c, e = (rng.randrange(d) for _ in range(4))
        if (a * e - b * c) % d == 1:
            return a, b, c, e


def local_clifford(d: int, n: int, qudit: int, rng: random.Random) -> Images:
    images = _identity_images(d, n)
    ident = PauliOperator.identity(d, n)
    while True:
        a, b, c, e = _random_sl2(rng, d)
        P = multiply(PauliOperator.single(d, n, qudit, z=a), PauliOperator.single(d, n, qudit, x=b))
        Q = multiply(PauliOperator.single(d, n, qudit, z=c), PauliOperator.single(d, n, qudit, x=e))
        if power(P, d) == ident and power(Q, d) == ident:
            images[qudit] = (P, Q)
            return images


def controlled_phase(d: int, n: int, i: int, j: int, w: int) -> Images:
    images = _identity_images(d, n)
    images[i] = (images[i][0], multiply(PauliOperator.single(d, n, j, z=w), PauliOperator.single(d, n, i, x=1)))
    images[j] = (images[j][0], multiply(PauliOperator.single(d, n, i, z=w), PauliOperator.single(d, n, j, x=1)))
    return images


def _product_state(d: int, n: int, rng: random.Random, split_prob: float) -> list[PauliOperator]:
    gens = []
    splits = [(a, d // a) for a in range(2, d) if d % a == 0]
    for i in range(n):
        if splits and rng.random() < split_prob:
            a, b = rng.choice(splits)
            gens.append(PauliOperator.single(d, n, i, z=a))
            gens.append(PauliOperator.single(d, n, i, x=b))
        else:
            gens.append(PauliOperator.single(d, n, i, z=1))
    return gens


def random_spec(
    d: int,
    n: int,
    rng: random.Random,
    entanglers: int | None = None,
    split_prob: float = 0.3,
    recombine: int = 2,
) -> StabilizerSpec:
    gens = _product_state(d, n, rng, split_prob)
    steps = entanglers if entanglers is not None else 2 * n
    for i in range(n):
        images = local_clifford(d, n, i, rng)
        gens = [apply_map(g, images) for g in gens]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        images = controlled_phase(d, n, i, j, rng.randrange(1, d))
        gens = [apply_map(g, images) for g in gens]
        k = rng.randrange(n)
        images = local_clifford(d, n, k, rng)
        gens = [apply_map(g, images) for g in gens]
    for _ in range(recombine if len(gens) > 1 else 0):
        k, l = rng.sample(range(len(gens)), 2)
        gens[k] = multiply(gens[k], power(gens[l], rng.randrange(1, d)))
    spec = StabilizerSpec.from_generators(gens)
    report = validate(spec)
    if not report.valid:
        raise AssertionError(f"corpus produced an invalid spec: {report.summary()}")
    return spec


def graph_state_spec(d: int, adjacency: list[list[int]]) -> StabilizerSpec:
    """Generators ``X_i prod_j Z_j^{A_ij}`` for a symmetric, zero-diagonal A."""
    n = len(adjacency)
    x = [[int(i == j) for j in range(n)] for i in range(n)]
    return StabilizerSpec(d, n, x, adjacency)


def ring_spec(d: int, n: int) -> StabilizerSpec:
    """The ring graph state ``Z_{i-1} X_i Z_{i+1}``."""
    return graph_state_spec(d, [[int(j in ((i - 1) % n, (i + 1) % n)) for j in range(n)] for i in range(n)])


def spec_stream(
    dims: tuple[int, ...], ns: tuple[int, ...], seed: int, count: int
) -> Iterator[StabilizerSpec]:
    """``count`` specs cycling through (d, n) pairs with a fixed seed."""
    rng = random.Random(seed)
    pairs = [(d, n) for d in dims for n in ns]
    for k in range(count):
        d, n = pairs[k % len(pairs)]
        yield random_spec(d, n, rng)


def is_prime(d: int) -> bool:
    return d >= 2 and all(d % p for p in range(2, math.isqrt(d) + 1))
