from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superend.cmcombinatorics import (
    first_failing_index,
    multiplier_preserves_tuple,
    rigidity_check,
    set_A,
)
from superend.curvegeom import CurveShape, ShapeError, multiplicity_table
from superend.exactalg import prime_powers

Q_VALUES = [pp.q for pp in prime_powers(256)]


@st.composite
def shapes(draw, n_min=2, n_max=50):
    q = draw(st.sampled_from(Q_VALUES))
    n = draw(st.integers(min_value=n_min, max_value=n_max))
    shape_p = next(pp.p for pp in prime_powers(q) if pp.q == q)
    if n % shape_p == 0:
        n += 1
    return CurveShape.of(n, q)


def _units(q):
    return [m for m in range(1, q) if gcd(m, q) == 1]


@pytest.mark.parametrize("n, q, expected", [(5, 8, (1,)), (4, 17, (1, 2, 3, 4)), (5, 4, ())])
def test_set_A_examples(n, q, expected):
    assert set_A(CurveShape.of(n, q)) == expected


@given(shapes())
def test_set_A_is_zero_multiplicity_set(shape):
    table = multiplicity_table(shape)
    zeros = tuple(i for i, m in table.items() if m == 0 and i % shape.p)
    assert set_A(shape) == zeros


def test_multiplier_examples():
    s = CurveShape.of(5, 8)
    assert multiplier_preserves_tuple(s, 1)
    assert not multiplier_preserves_tuple(s, 3)
    assert first_failing_index(s, 3) == 1
    assert not multiplier_preserves_tuple(CurveShape.of(4, 5), 4)
    with pytest.raises(ValueError):
        multiplier_preserves_tuple(s, 2)
    with pytest.raises(ValueError):
        multiplier_preserves_tuple(s, 8)


@pytest.mark.parametrize("n, q", [(5, 8), (4, 13), (6, 25), (4, 5), (4, 3)])
def test_rigid_examples(n, q):
    v = rigidity_check(CurveShape.of(n, q))
    assert v.rigid and v.counterexample is None
    assert v.to_dict()["multipliers_checked"] == len(_units(q)) - 1


def test_rigidity_preconditions():
    with pytest.raises(ShapeError):
        rigidity_check(CurveShape.of(3, 8))
    with pytest.raises(ShapeError):
        rigidity_check(CurveShape.of(8, 4))


@given(shapes(n_max=12), st.data())
def test_preserving_multipliers_form_a_subgroup(shape, data):
    # the preserving set is closed under powers, and under products
    preserving = [m for m in _units(shape.q) if multiplier_preserves_tuple(shape, m)]
    assert 1 in preserving
    m = data.draw(st.sampled_from(preserving))
    for k in range(1, 8):
        assert pow(m, k, shape.q) in preserving
    for a in preserving:
        assert a * m % shape.q in preserving


@given(shapes(n_min=4))
def test_rigidity_matches_direct_search(shape):
    v = rigidity_check(shape)
    direct = [m for m in _units(shape.q) if m != 1 and multiplier_preserves_tuple(shape, m)]
    assert v.rigid == (not direct)
    assert v.rigid
    for m, i in v.refutations.items():
        assert first_failing_index(shape, m) == i
