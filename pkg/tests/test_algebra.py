import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdkit import _kernels
from zdkit.algebra import (
    HyperNum,
    Trip,
    calibrated_variant,
    context,
    generate_trips,
    is_cpo,
    mul,
    oracle_mul,
    orient,
    trip_array,
    trip_count,
    unit_product,
)
from zdkit.errors import DimensionMismatchError, InvalidDimensionError, InvalidIndexError


def test_trip_counts():
    assert [len(generate_trips(n)) for n in range(2, 7)] == [trip_count(n) for n in range(2, 7)]
    assert [trip_count(n) for n in range(2, 6)] == [1, 7, 35, 155]


def test_octonion_trips():
    got = {t.as_tuple() for t in generate_trips(3)}
    assert got == {(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)}


def test_trip_normalises_rotation():
    assert Trip(6, 5, 3).as_tuple() == (3, 6, 5)
    assert Trip(3, 6, 5).reversed().as_tuple() == (3, 5, 6)
    with pytest.raises(InvalidIndexError):
        Trip(1, 2, 4)
    with pytest.raises(InvalidIndexError):
        Trip(0, 1, 1)


def test_rule_one_and_inheritance():
    trips = {t.as_tuple() for t in generate_trips(4)}
    assert {(l, 8, l + 8) for l in range(1, 8)} <= trips
    assert {t.as_tuple() for t in generate_trips(3)} <= trips


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_sign_table_matches_oracle(n):
    sign = context(n).sign_table
    size = 1 << n
    for i in range(size):
        for j in range(size):
            prod = oracle_mul(HyperNum.basis(i, n), HyperNum.basis(j, n))
            assert prod.terms() == {i ^ j: int(sign[i, j])}, (n, i, j)


def test_oracle_calibration_is_unique():
    assert calibrated_variant() == "ac-d*b|da+bc*"


def test_unit_products_and_orientation():
    ctx = context(3)
    assert unit_product(1, 2, ctx) == (3, 1)
    assert unit_product(2, 1, ctx) == (3, -1)
    assert unit_product(5, 5, ctx) == (0, -1)
    assert orient(6, 3, ctx).as_tuple() == (3, 6, 5)
    assert is_cpo(3, 6, 5, ctx) and not is_cpo(3, 5, 6, ctx)


def test_zero_divisor_pair_in_sedenions():
    n = 4
    x = HyperNum.from_terms({10: 1, 3: 1}, n)
    assert mul(x, HyperNum.from_terms({12: 1, 5: -1}, n)).is_zero()
    same = mul(x, HyperNum.from_terms({12: 1, 5: 1}, n))
    assert same.terms() == {6: -2, 15: -2}
    assert oracle_mul(x, HyperNum.from_terms({12: 1, 5: 1}, n)) == same


def test_hypernum_arithmetic():
    a = HyperNum.from_terms({0: 2, 3: -1}, 3)
    b = HyperNum.basis(3, 3)
    assert (a + b).terms() == {0: 2}
    assert (a - a).is_zero()
    assert (-b).terms() == {3: -1}
    assert a.conj().terms() == {0: 2, 3: 1}
    assert (3 * b).terms() == {3: 3}
    with pytest.raises(DimensionMismatchError):
        mul(a, HyperNum.basis(1, 4))
    with pytest.raises(InvalidIndexError):
        HyperNum.basis(8, 3)


def test_dimension_limits(monkeypatch):
    with pytest.raises(InvalidDimensionError):
        context(0)
    monkeypatch.setenv("ZDKIT_MAX_N", "5")
    with pytest.raises(InvalidDimensionError):
        trip_array.__wrapped__(6)
    monkeypatch.setenv("ZDKIT_MAX_N", "x")
    with pytest.raises(InvalidDimensionError):
        trip_array.__wrapped__(3)


elements = st.lists(st.integers(-3, 3), min_size=16, max_size=16)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_mul_matches_oracle_random(a, b):
    x, y = HyperNum(4, a), HyperNum(4, b)
    assert mul(x, y) == oracle_mul(x, y)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8), st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_octonions_are_normed(a, b):
    x, y = HyperNum(3, a), HyperNum(3, b)
    norm = lambda v: int((v.coeffs.astype(object) ** 2).sum())
    assert norm(mul(x, y)) == norm(x) * norm(y)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_kernel_twins_agree(n):
    rng = np.random.default_rng(n)
    size = 1 << n
    trips = np.ascontiguousarray(trip_array(n))
    sign = _kernels.sign_table_numpy(trips, size)
    assert np.array_equal(sign, _kernels.sign_table_jit(trips, size))
    x = rng.integers(-4, 5, size).astype(np.int64)
    y = rng.integers(-4, 5, size).astype(np.int64)
    assert np.array_equal(_kernels.dense_mul_numpy(x, y, sign), _kernels.dense_mul_jit(x, y, sign))
    ls = np.array([l for l in range(2, size >> 1)], dtype=np.int64)
    xs = (size >> 1) + 1
    assert np.array_equal(_kernels.zd_masks_numpy(ls, xs, sign), _kernels.zd_masks_jit(ls, xs, sign))


def test_disable_jit_flag_selects_numpy():
    code = (
        "from zdkit import _kernels, checks;"
        "assert _kernels.backend() == 'numpy', _kernels.backend();"
        "assert checks.check_sedenion_structure().ok;"
        "assert checks.check_pathion_census().ok;"
        "print('ok')"
    )
    env = dict(os.environ, ZDKIT_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"
