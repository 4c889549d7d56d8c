import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from independent import solve_brute, span_brute
from nbcws import zd_linalg as zl
from nbcws.errors import ResourceLimitError


def det(M):
    return int(sympy.Matrix(M).det()) if M else 1


def check_snf(M):
    snf = zl.smith_normal_form(M)
    assert zl.matmul(zl.matmul(snf.U, M), snf.V) == snf.D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    assert zl.matmul(snf.V, snf.V_inv) == [[int(i == j) for j in range(len(snf.V))] for i in range(len(snf.V))]
    rows, cols = len(snf.D), len(snf.D[0])
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert snf.D[i][j] == 0
    diag = snf.diagonal
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return snf


# --- examples ---------------------------------------------------------------


@pytest.mark.parametrize(
    "v, p, expected",
    [((0, 2, 2), 4, 2), ((0, 0, 0), 6, 6), ((1, 1, 1, 0, 1, 1, 1), 3, 1), ((), 5, 5)],
)
def test_gcd_with_examples(v, p, expected):
    assert zl.gcd_with(v, p) == expected


def test_gcd_with_rejects_p_zero():
    with pytest.raises(ValueError):
        zl.gcd_with((1,), 0)


def test_snf_identity():
    assert check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == [1, 1, 1]


def test_snf_already_diagonal():
    assert check_snf([[2, 0], [0, 4]]).diagonal == [2, 4]


def test_snf_two_by_two():
    assert check_snf([[1, 2], [3, 4]]).diagonal == [1, 2]


def test_snf_rectangular_and_zero():
    assert check_snf([[0, 0, 0], [0, 0, 0]]).rank == 0
    assert check_snf([[6, 4, 0]]).diagonal == [2]
    assert check_snf([[2], [4], [6]]).diagonal == [2]


def test_solve_mod_identity():
    assert zl.solve_mod([[1, 0], [0, 1]], (3, 1), 5) == (3, 1)


def test_solve_mod_unsolvable():
    assert zl.solve_mod([[2]], (1,), 4) is None


def test_solve_mod_even_target():
    x = zl.solve_mod([[2]], (2,), 4)
    assert x in {(1,), (3,)}
    assert set(solve_brute([[2]], [2], 4)) == {(1,), (3,)}


def test_enumerate_module_examples():
    assert zl.enumerate_module([], 4, length=2) == {(0, 0)}
    assert zl.enumerate_module([(2, 0)], 4) == {(0, 0), (2, 0)}


def test_enumerate_module_ring_columns():
    from nbcws.structure import qutrit_ring_spec

    s = qutrit_ring_spec()
    cols = [tuple(c) for c in np.concatenate([s.x_array, s.z_array], axis=1).T.tolist()]
    assert len(zl.enumerate_module(cols, 3)) == 3**7


def test_module_limit():
    with pytest.raises(ResourceLimitError):
        zl.module_array([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 5, limit=100)


def test_encode_rejects_overflow():
    with pytest.raises(ResourceLimitError):
        zl.encode(np.zeros((1, 40), dtype=np.int64), 7)


# --- properties -------------------------------------------------------------

small_ints = st.integers(-30, 30)


@given(st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=4)))
def test_snf_property_and_sympy_agreement(M):
    snf = check_snf(M)
    ours = [x for x in snf.diagonal if x]
    ref = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert ours == theirs


@st.composite
def systems(draw):
    d = draw(st.sampled_from([2, 3, 4, 6]))
    m = draw(st.integers(1, 3))
    k = draw(st.integers(1, 3))
    A = draw(st.lists(st.lists(st.integers(0, d - 1), min_size=k, max_size=k), min_size=m, max_size=m))
    b = draw(st.lists(st.integers(0, d - 1), min_size=m, max_size=m))
    return d, A, b


@given(systems())
def test_solve_mod_sound_and_complete(system):
    d, A, b = system
    x = zl.solve_mod(A, b, d)
    brute = solve_brute(A, b, d)
    if x is None:
        assert brute == []
    else:
        assert zl.mat_vec_mod(A, x, d) == tuple(v % d for v in b)
        assert x in brute


@st.composite
def generator_sets(draw):
    d = draw(st.sampled_from([2, 3, 4, 6]))
    length = draw(st.integers(1, 3))
    gens = draw(st.lists(st.lists(st.integers(0, d - 1), min_size=length, max_size=length), max_size=3))
    return d, length, gens


@given(generator_sets())
def test_enumerate_module_matches_span_and_is_closed(data):
    d, length, gens = data
    mod = zl.enumerate_module(gens, d, length=length)
    assert mod == span_brute(gens, d, length)
    for a in mod:
        for b in mod:
            assert tuple((x + y) % d for x, y in zip(a, b)) in mod


@given(generator_sets())
def test_submodule_basis_size_and_span(data):
    d, length, gens = data
    basis = zl.submodule_basis(gens, d, length)
    mod = zl.enumerate_module(gens, d, length=length)
    assert basis.size == len(mod)
    assert zl.enumerate_module(basis.basis(), d, length=length) == mod
    assert all(d % math.gcd(s, d) == 0 for s in basis.factors)


@given(st.lists(st.integers(0, 100), max_size=6), st.integers(1, 60))
def test_gcd_with_divides(v, p):
    g = zl.gcd_with(v, p)
    assert p % g == 0 and all(x % g == 0 for x in v)


@given(st.sampled_from([2, 3, 4, 6]), st.integers(1, 6), st.data())
def test_encode_decode_roundtrip_and_order(d, length, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, d - 1), min_size=length, max_size=length), min_size=1, max_size=8))
    arr = np.array(rows, dtype=np.int64)
    codes = zl.encode(arr, d)
    assert np.array_equal(zl.decode(codes, d, length), arr)
    order = np.argsort(codes, kind="stable")
    assert [tuple(r) for r in arr[order].tolist()] == sorted(map(tuple, rows))
