import random

import pytest
from hypothesis import given, strategies as st

from nilcplx.algebra import (CoframeAlgebra, validate, change_coframe, quotient_by_ideal,
                             subalgebra_restrict, apply_J, conjugate_vector, vector_space,
                             is_J_invariant, is_conjugation_stable)
from nilcplx.dsl import parse
from nilcplx.errors import (JacobiViolation, NotIntegrable, SingularCoframeChange,
                            NotAnIdeal, NotASubalgebra)
from nilcplx.exact import ONE, ZERO, I, gq, Matrix, axpy
from nilcplx.families import gen_family, fixture_cfgu_example4, abelian, random_coframe_matrix
from nilcplx.forms import TwoForm, OneForm, DualVector, wedge, gen, gen_bar, evaluate
from nilcplx.series import a_series, classify


def test_family_is_valid():
    alg = validate(gen_family("I", 6).to_presentation())
    assert alg.n == 6


def test_jacobi_violation():
    base = gen_family("I", 5)
    table = list(base.d_table)
    table[3] = wedge(gen(2, 5), gen(3, 5))
    with pytest.raises(JacobiViolation) as e:
        CoframeAlgebra(5, table)
    assert e.value.k == 4 and e.value.residual


def test_not_integrable():
    table = [TwoForm(3), TwoForm.from_pairs(3, [(1, 0, 3)]),
             TwoForm.from_pairs(3, [(1, 3, 4)])]
    with pytest.raises(NotIntegrable) as e:
        CoframeAlgebra(3, table)
    assert e.value.k == 3
    assert "NotIntegrable w3" in str(e.value)


def test_cfgu_brackets():
    bt = fixture_cfgu_example4().brackets()
    # X_k is index k-1, conj X_k is index 5+k-1
    assert bt.basis_bracket(0, 5) == {1: -ONE, 6: ONE, 2: ONE, 7: -ONE}
    assert bt.basis_bracket(0, 3) == {4: -ONE}
    assert bt.basis_bracket(0, 1) == {3: -ONE, 4: gq("1/2")}
    assert bt.basis_bracket(3, 0) == {4: ONE}


def test_identity_change():
    alg = gen_family("I", 6)
    assert change_coframe(alg, Matrix.identity(6)) == alg


def test_singular_change():
    with pytest.raises(SingularCoframeChange):
        change_coframe(gen_family("I", 3), Matrix([[1, 0, 0], [0, 1, 0], [0, 1, 0]]))


def test_shift_keeps_classification():
    alg = gen_family("I", 6)
    rows = [[ONE if i == j else ZERO for j in range(6)] for i in range(6)]
    rows[4][2] = gq(7)
    moved = change_coframe(alg, Matrix(rows))
    assert moved.d_table[4] != alg.d_table[4]
    a, b = classify(alg), classify(moved)
    assert a == b and a.dims() == b.dims()


def test_quotient_gives_smaller_family_member():
    alg = gen_family("I", 5)
    q = quotient_by_ideal(alg, a_series(alg)[2])
    assert q.canonical_text() == gen_family("I", 3).with_name(None).canonical_text()


def test_quotient_by_zero_ideal():
    alg = fixture_cfgu_example4()
    assert quotient_by_ideal(alg, vector_space(5)) == alg


def test_quotient_rejects_non_ideals():
    alg = gen_family("I", 4)
    with pytest.raises(NotAnIdeal):
        quotient_by_ideal(alg, vector_space(4, [{0: ONE}]))          # not conjugation stable
    with pytest.raises(NotAnIdeal):
        quotient_by_ideal(alg, vector_space(4, [{0: ONE}, {4: ONE}]))  # does not absorb


def test_subalgebra_restrict():
    alg = gen_family("II", 6)
    sub = subalgebra_restrict(alg, a_series(alg)[4])
    assert sub.n == 4
    # the whole algebra restricts to an isomorphic copy
    full = subalgebra_restrict(alg, a_series(alg)[6])
    assert classify(full).nu_J == 6


def test_subalgebra_rejects_non_closed():
    alg = gen_family("I", 4)
    S = vector_space(4, [{0: ONE}, {4: ONE}])
    with pytest.raises(NotASubalgebra):
        subalgebra_restrict(alg, S)


def test_J_helpers():
    v = {0: ONE, 3: ONE}
    assert apply_J(v, 2) == {0: I, 3: -I}
    assert conjugate_vector({0: I}, 2) == {2: -I}
    S = vector_space(2, [{0: ONE}, {2: ONE}])
    assert is_J_invariant(S) and is_conjugation_stable(S)
    assert not is_conjugation_stable(vector_space(2, [{0: ONE}]))


def _vec(n, coords):
    return DualVector(n, coords)


@pytest.mark.parametrize("alg", [gen_family("I", 5), gen_family("II", 4),
                                 fixture_cfgu_example4()], ids=lambda a: a.name)
def test_brackets_are_dual_to_d(alg):
    # alpha([u, v]) = -d alpha(u, v)
    n = alg.n
    bt = alg.brackets()
    for a in range(2 * n):
        for b in range(2 * n):
            br = bt.basis_bracket(a, b)
            for c in range(2 * n):
                val = evaluate(alg.images[c], _vec(n, {a: ONE}), _vec(n, {b: ONE}))
                assert br.get(c, ZERO) == -val
    assert bt.jacobi_residuals() == []


@pytest.mark.parametrize("alg", [gen_family("I", 5), fixture_cfgu_example4()],
                         ids=lambda a: a.name)
def test_nijenhuis_vanishes(alg):
    n = alg.n
    bt = alg.brackets()
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            x, y = {a: ONE}, {b: ONE}
            jx, jy = apply_J(x, n), apply_J(y, n)
            s = {}
            axpy(s, ONE, bt.bracket_coords(jx, jy))
            axpy(s, -ONE, bt.bracket_coords(x, y))
            axpy(s, -ONE, apply_J(bt.bracket_coords(jx, y), n))
            axpy(s, -ONE, apply_J(bt.bracket_coords(x, jy), n))
            assert s == {}


@given(st.integers(0, 10 ** 6), st.sampled_from([("I", 4), ("II", 5), ("I", 3)]))
def test_changes_compose(seed, tag):
    alg = gen_family(*tag)
    rng = random.Random(seed)
    M = random_coframe_matrix(rng, alg.n)
    N = random_coframe_matrix(rng, alg.n)
    twice = change_coframe(change_coframe(alg, M), N)
    assert twice == change_coframe(alg, N @ M)
    # a changed presentation still passes full validation
    assert validate(twice.to_presentation()) == twice
    assert change_coframe(twice, (N @ M).inverse()) == alg
