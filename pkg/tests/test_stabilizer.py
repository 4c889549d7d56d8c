import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from independent import dense, group_brute
from nbcws.corpus import random_spec, ring_spec
from nbcws.cws import classical_rep
from nbcws.errors import InvalidSpec, NotRealizable
from nbcws.pauli import PauliOperator, enumerate_errors, inverse, multiply, weight
from nbcws.stabilizer import (
    StabilizerSpec,
    canonicalize,
    element,
    exponents_of,
    low_weight_elements,
    syndrome_lattice,
    transform_codeword,
    transform_generators,
    validate,
    word_operator_for,
)
from nbcws.structure import qutrit_ring_spec, ququart_star_spec


def elements_up_to_phase(spec, gens=None):
    """Group generated by ``gens``, as (z, x) pairs, by breadth-first closure."""
    gens = spec.generators if gens is None else gens
    start = ((0,) * spec.n, (0,) * spec.n)
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for z, x in frontier:
            for g in gens:
                key = tuple((a + b) % spec.d for a, b in zip(z, g.z)), tuple((a + b) % spec.d for a, b in zip(x, g.x))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return seen


# --- validate ---------------------------------------------------------------


def test_validate_x2_z2_d4():
    spec = StabilizerSpec(4, 1, [[2], [0]], [[0], [2]])
    rep = validate(spec)
    assert rep.valid and spec.m == 2 and rep.group_order == 4


def test_validate_noncommuting():
    rep = validate(StabilizerSpec(2, 1, [[0], [1]], [[1], [0]]))
    assert not rep.valid and not rep.commuting and rep.noncommuting_pairs == ((0, 1),)
    with pytest.raises(InvalidSpec):
        StabilizerSpec(2, 1, [[0], [1]], [[1], [0]]).require_valid()


def test_validate_ring():
    spec = qutrit_ring_spec()
    rep = validate(spec)
    assert rep.valid and spec.m == spec.n == 7 and rep.group_order == 3**7


def test_validate_phase_defect_and_order():
    # Z and -Z generate -I
    rep = validate(StabilizerSpec(2, 1, [[0], [0]], [[1], [1]], (0, 1)))
    assert not rep.phase_clean and not rep.valid
    # Y-like generator ZX squares to -I at d = 2
    assert not validate(StabilizerSpec(2, 1, [[1]], [[1]])).phase_clean
    # too small a group
    assert validate(StabilizerSpec(3, 2, [[0, 0]], [[1, 0]])).group_order == 3


def test_validate_agrees_with_dense_group():
    spec = ququart_star_spec()
    mats = [dense(spec.d, g.phase, g.z, g.x) for g in spec.generators]
    group = group_brute(spec.d, mats)
    assert len(group) == validate(spec).group_order == 64


# --- transforms -------------------------------------------------------------


def test_transform_identity():
    spec = ququart_star_spec()
    new, R = transform_generators(spec, np.eye(3, dtype=int).tolist())
    assert new == spec


def test_transform_swap_swaps_codeword_coordinates():
    spec = ququart_star_spec()
    R = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    new, R = transform_generators(spec, R)
    for E in enumerate_errors(spec.d, spec.n, 1):
        old = classical_rep(spec, E)
        assert classical_rep(new, E) == (old[0], old[2], old[1]) == transform_codeword(old, R, spec.d)


def test_transform_rejects_group_change():
    spec = qutrit_ring_spec()
    R = np.eye(7, dtype=int)
    R[0, 0] = 0
    with pytest.raises(ValueError):
        transform_generators(spec, R.tolist())


def test_transform_and_inverse_restore():
    spec = qutrit_ring_spec()
    rng = random.Random(3)
    R = np.eye(7, dtype=int)
    for _ in range(6):
        i, j = rng.sample(range(7), 2)
        R[:, i] = (R[:, i] + rng.randrange(1, 3) * R[:, j]) % 3
    new, R = transform_generators(spec, R.tolist())
    Rinv = np.array(sympy.Matrix(R).inv_mod(3)).astype(int)
    back, _ = transform_generators(new, Rinv.tolist())
    assert back.x_mat == spec.x_mat and back.z_mat == spec.z_mat
    c = (1, 1, 0, 0, 1, 0, 0)
    assert transform_codeword(transform_codeword(c, R, 3), Rinv.tolist(), 3) == c


# --- low-weight elements and canonical form ---------------------------------


def test_low_weight_delta1_empty():
    assert low_weight_elements(ququart_star_spec(), 1) == []


def test_low_weight_ring_delta3_empty():
    assert low_weight_elements(qutrit_ring_spec(), 3) == []


def test_low_weight_star_delta2():
    # every generator squares to a single-qudit Z^2, not only the first one
    low = low_weight_elements(ququart_star_spec(), 2)
    got = {(g.resolved.without_phase().z, g.resolved.without_phase().x): g.exponents for g in low}
    assert got == {
        ((2, 0, 0), (0, 0, 0)): (2, 0, 0),
        ((0, 2, 0), (0, 0, 0)): (0, 2, 0),
        ((0, 0, 2), (0, 0, 0)): (0, 0, 2),
    }
    for g in low:
        assert element(ququart_star_spec(), g.exponents) == g.resolved


def test_low_weight_matches_dense_brute_force():
    spec = ququart_star_spec()
    found = set()
    for a in itertools.product(range(4), repeat=3):
        op = element(spec, a)
        if 0 < weight(op) < 2:
            found.add((op.z, op.x))
    assert found == {(g.resolved.z, g.resolved.x) for g in low_weight_elements(spec, 2)}


def test_canonical_empty_is_identity():
    cf = canonicalize(qutrit_ring_spec(), 3)
    assert cf.canonical_rank == 0
    assert cf.spec == qutrit_ring_spec()
    assert cf.transform == tuple(tuple(int(i == j) for j in range(7)) for i in range(7))


def test_canonical_star():
    spec = ququart_star_spec()
    cf = canonicalize(spec, 2)
    assert cf.canonical_rank == 3
    assert cf.spec.generators[0].without_phase() == PauliOperator(4, 0, (2, 0, 0), (0, 0, 0))
    sub = elements_up_to_phase(cf.spec, cf.spec.generators[: cf.canonical_rank])
    low = elements_up_to_phase(spec, [g.resolved for g in low_weight_elements(spec, 2)])
    assert sub == low
    assert elements_up_to_phase(cf.spec) == elements_up_to_phase(spec)


def test_canonical_group_preserved_on_corpus():
    rng = random.Random(9)
    checked = 0
    for _ in range(30):
        spec = random_spec(rng.choice([2, 3, 4, 6]), rng.randint(1, 3), rng)
        cf = canonicalize(spec, 2)
        if cf.canonical_rank:
            checked += 1
        assert elements_up_to_phase(cf.spec) == elements_up_to_phase(spec)
        sub = elements_up_to_phase(cf.spec, cf.spec.generators[: cf.canonical_rank])
        low = elements_up_to_phase(spec, [g.resolved for g in cf.low_weight]) if cf.low_weight else {
            ((0,) * spec.n, (0,) * spec.n)
        }
        assert sub == low
        # codewords map linearly: the canonical syndrome of E is Cl(E) R
        for E in enumerate_errors(spec.d, spec.n, 1):
            assert classical_rep(cf.spec, E) == cf.to_canonical(classical_rep(spec, E))
    assert checked > 0


# --- syndrome lattice and word operators ------------------------------------


def test_lattice_sizes():
    assert syndrome_lattice(StabilizerSpec(2, 1, [[0]], [[1]])) == {(0,), (1,)}
    assert len(syndrome_lattice(qutrit_ring_spec())) == 3**7
    assert len(syndrome_lattice(ququart_star_spec())) == 4**3


def test_word_operator_zero_is_identity():
    assert word_operator_for(qutrit_ring_spec(), (0,) * 7) == PauliOperator.identity(3, 7)


def test_word_operator_star_022():
    spec = ququart_star_spec()
    w = word_operator_for(spec, (0, 2, 2))
    assert classical_rep(spec, w) == (0, 2, 2)
    # differs from Z_0 by a stabilizer element, up to phase
    z0 = PauliOperator(4, 0, (1, 0, 0), (0, 0, 0))
    assert exponents_of(spec, multiply(w, inverse(z0))) is not None


def test_word_operator_membership_matches_image():
    spec = ququart_star_spec()
    image = set()
    for z in itertools.product(range(4), repeat=3):
        for x in itertools.product(range(4), repeat=3):
            image.add(classical_rep(spec, PauliOperator(4, 0, z, x)))
    assert image == syndrome_lattice(spec)
    for c in itertools.product(range(4), repeat=3):
        if c in image:
            assert classical_rep(spec, word_operator_for(spec, c)) == c
        else:
            with pytest.raises(NotRealizable):
                word_operator_for(spec, c)
    assert ((1, 0, 0) in image) is True


@st.composite
def random_specs(draw, max_n=3):
    seed = draw(st.integers(0, 10**6))
    d = draw(st.sampled_from([2, 3, 4, 6]))
    n = draw(st.integers(1, max_n))
    return random_spec(d, n, random.Random(seed))


@given(random_specs())
def test_lattice_size_and_roundtrip(spec):
    lattice = syndrome_lattice(spec)
    assert len(lattice) == spec.d**spec.n
    for c in lattice:
        assert classical_rep(spec, word_operator_for(spec, c)) == c


@given(random_specs(), st.data())
def test_syndrome_additivity(spec, data):
    lattice = sorted(syndrome_lattice(spec))
    a = data.draw(st.sampled_from(lattice))
    b = data.draw(st.sampled_from(lattice))
    w = multiply(word_operator_for(spec, a), word_operator_for(spec, b))
    assert classical_rep(spec, w) == tuple((x + y) % spec.d for x, y in zip(a, b))


def test_ring_spec_valid():
    for d in (2, 3, 4):
        assert validate(ring_spec(d, 5)).valid
