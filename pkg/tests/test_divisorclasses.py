import random
from itertools import permutations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors
from sympy.polys.domains import ZZ

from superend.curvegeom import CurveShape, ShapeError
from superend.divisorclasses import (
    BranchDivisor,
    class_group,
    fixed_submodule,
    heart_action,
    is_principal,
    principal_sublattice,
)
from superend.snf import determinant, invariant_factors, matmul, smith_normal_form

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-30, 30), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


# -- Smith normal form ------------------------------------------------------


@settings(max_examples=150)
@given(matrices)
def test_snf_certificate(a):
    u, s, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == s
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    rows, cols = len(a), len(a[0])
    diag = [s[k][k] for k in range(min(rows, cols))]
    assert all(s[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[: len(nz)] == nz  # zeros last
    assert all(b % a_ == 0 for a_, b in zip(nz, nz[1:]))


@settings(max_examples=80)
@given(matrices)
def test_snf_matches_sympy(a):
    ref = [abs(int(d)) for d in sympy_invariant_factors(sympy.Matrix(a), domain=ZZ) if d]
    assert invariant_factors(a) == ref


def test_determinant():
    assert determinant([[2, 0], [0, 3]]) == 6
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    m = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    assert determinant(m) == int(sympy.Matrix(m).det())


# -- principality and class groups -----------------------------------------


def test_is_principal_examples():
    s = CurveShape.of(4, 3)
    assert is_principal(BranchDivisor((3, -3, 0, 0)), s)
    assert not is_principal(BranchDivisor((1, -1, 0, 0)), s)
    assert is_principal(BranchDivisor((0, 0, 0, 0)), s)
    with pytest.raises(ValueError):
        BranchDivisor((1, 0, 0, 0))
    with pytest.raises(ValueError):
        is_principal(BranchDivisor((1, -1)), s)
    with pytest.raises(ShapeError):
        is_principal(BranchDivisor((0,) * 8), CurveShape.of(8, 4))


@pytest.mark.parametrize("n, q, divisors", [(4, 3, (3, 3, 3)), (5, 2, (2, 2, 2, 2)), (2, 5, (5,))])
def test_class_group_examples(n, q, divisors):
    cg = class_group(CurveShape.of(n, q))
    assert cg.elementary_divisors == divisors
    assert cg.order == q ** (n - 1)


def test_principal_sublattice_via_sympy():
    # independent route: sympy's invariant factors of the same generators
    for n, q in [(3, 4), (4, 3), (5, 8), (7, 9), (6, 25)]:
        gens = [row[: n - 1] for row in principal_sublattice(n, q)]
        ref = [abs(int(d)) for d in sympy_invariant_factors(sympy.Matrix(gens), domain=ZZ) if d]
        assert [d for d in ref if d != 1] == [q] * (n - 1)
        # every generator is a degree-zero divisor with q-divisible entries
        for row in principal_sublattice(n, q):
            assert sum(row) == 0 and all(a % q == 0 for a in row)


def _random_divisor(rng, n, spread):
    a = [rng.randint(-spread, spread) for _ in range(n - 1)]
    return BranchDivisor(tuple(a + [-sum(a)]))


@pytest.mark.parametrize("n, q", [(3, 2), (4, 3), (5, 4), (5, 9), (7, 8), (4, 25)])
def test_principality_matches_coset_membership(n, q):
    shape = CurveShape.of(n, q)
    cg = class_group(shape)
    rng = random.Random(n * 1000 + q)
    for _ in range(300):
        # bias half the samples towards principal divisors
        d = _random_divisor(rng, n, 3 * q)
        if rng.random() < 0.5:
            d = BranchDivisor(tuple(q * a for a in d.coefficients))
        assert is_principal(d, shape) == cg.is_identity(d)


def test_class_map_is_a_homomorphism():
    shape = CurveShape.of(6, 5)
    cg = class_group(shape)
    rng = random.Random(7)
    for _ in range(100):
        a, b = _random_divisor(rng, 6, 40), _random_divisor(rng, 6, 40)
        s = BranchDivisor(tuple(x + y for x, y in zip(a.coefficients, b.coefficients)))
        lhs = cg.class_of(s)
        rhs = tuple((x + y) % q for x, y, q in zip(cg.class_of(a), cg.class_of(b), cg.elementary_divisors))
        assert lhs == rhs


def test_vectorized_classes_agree():
    shape = CurveShape.of(7, 8)
    cg = class_group(shape)
    rng = np.random.default_rng(3)
    body = rng.integers(-50, 50, size=(200, 6))
    coeffs = np.hstack([body, -body.sum(axis=1, keepdims=True)])
    vec = cg.classes_of(coeffs)
    for row, cls in zip(coeffs.tolist(), vec.tolist()):
        assert tuple(cls) == cg.class_of(BranchDivisor(tuple(row)))


def test_class_group_rejects_divisible_case():
    with pytest.raises(ShapeError):
        class_group(CurveShape.of(8, 4))


# -- the heart --------------------------------------------------------------


@pytest.mark.parametrize("n, q, dim", [(5, 4, 4), (4, 3, 3), (6, 25, 5), (3, 8, 2)])
def test_fixed_submodule_examples(n, q, dim):
    hm = fixed_submodule(CurveShape.of(n, q))
    assert hm.basis_dimension == dim == n - 1


def test_heart_action_examples():
    assert heart_action(4, 3, [0, 1, 2, 3]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert heart_action(3, 2, [1, 0, 2]) == [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        heart_action(4, 2, [0, 1, 2, 3])
    with pytest.raises(ValueError):
        heart_action(3, 2, [0, 0, 1])


def _mod_matmul(a, b, p):
    return [[x % p for x in row] for row in matmul(a, b)]


def _compose(s, t):
    # (s o t)(k) = s(t(k))
    return [s[t[k]] for k in range(len(t))]


@settings(max_examples=60)
@given(st.sampled_from([(4, 3), (5, 2), (5, 3), (6, 5), (7, 2), (7, 3)]), st.randoms(use_true_random=False))
def test_heart_action_is_a_faithful_representation(np_pair, rnd):
    n, p = np_pair
    s, t = list(range(n)), list(range(n))
    rnd.shuffle(s)
    rnd.shuffle(t)
    ms, mt = heart_action(n, p, s), heart_action(n, p, t)
    assert _mod_matmul(ms, mt, p) == heart_action(n, p, _compose(s, t))
    assert determinant(ms) % p != 0


def test_heart_action_matches_function_projection():
    # act on an explicit sum-zero function and compare coordinates
    n, p = 5, 3
    for perm in list(permutations(range(n)))[::7]:
        m = heart_action(n, p, perm)
        for k in range(n - 1):
            vec = [0] * n
            vec[k], vec[n - 1] = 1, -1
            moved = [0] * n
            for src, a in enumerate(vec):
                moved[perm[src]] += a
            coords = [moved[j] % p for j in range(n - 1)]
            assert coords == [m[j][k] for j in range(n - 1)]


def test_classes_equivariant_under_root_permutations():
    # principality is a property of the multiset of coefficients, so it is permutation-invariant
    shape = CurveShape.of(5, 9)
    cg = class_group(shape)
    rng = random.Random(11)
    for _ in range(50):
        d = _random_divisor(rng, 5, 30)
        perm = list(range(5))
        rng.shuffle(perm)
        assert cg.is_identity(d) == cg.is_identity(d.permuted(perm))
