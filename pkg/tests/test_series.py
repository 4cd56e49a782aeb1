import random

import pytest
from hypothesis import given, strategies as st

from nilcplx.algebra import change_coframe, vector_space, holomorphic_vectors
from nilcplx.exact import ONE, Subspace, annihilator
from nilcplx.families import gen_family, fixture_cfgu_example4, abelian, random_coframe_matrix
from nilcplx.series import (descending_central, ascending_central, v_series, w_series,
                            a_series, h_series, classify, with_conjugate, dual_of_quotient,
                            kernel_by_contraction)

CFGU = fixture_cfgu_example4()


def forms(n, vecs):
    return Subspace.span("one_forms", n, 2 * n, vecs)


def test_lie_algebra_steps():
    assert descending_central(gen_family("I", 5)).step == 3
    assert descending_central(gen_family("II", 3)).step == 2
    assert descending_central(abelian(2)).step == 1


def test_upper_central():
    assert ascending_central(abelian(3))[1].dim == 6
    a1 = a_series(CFGU)[1]
    assert a1 == vector_space(5, [{4: ONE}, {9: ONE}])
    assert a1.is_subspace_of(ascending_central(CFGU)[1])


def test_v_series_type_ii():
    V = v_series(gen_family("II", 4))
    assert V.dims == (0, 4, 7, 8) and V.step == 3


def test_w_series_cfgu():
    W = w_series(CFGU)
    assert W.dims == (0, 2, 3, 4, 5) and W.step == 4
    assert W[1] == forms(5, [{0: ONE}, {1: ONE, 2: ONE}])
    full4 = forms(5, [{k: ONE} for k in range(4)] + [{5 + k: ONE} for k in range(4)])
    assert with_conjugate(W[3]) == full4


def test_a_series():
    A = a_series(CFGU)
    assert A.complex_dims == (0, 1, 3, 4, 5) and A.step == 4
    assert a_series(CFGU)[2] == vector_space(5, [{k: ONE} for k in (2, 3, 4, 7, 8, 9)])
    A7 = a_series(gen_family("I", 7))
    assert A7.complex_dims == tuple(range(8)) and A7.step == 7


def test_h_series():
    H = h_series(gen_family("II", 6))
    assert H.complex_dims == (6, 5, 4, 3, 2, 1, 0)


def test_classify_small_family_members():
    c = classify(gen_family("I", 3))
    assert (c.nu_g, c.nu_J, c.maxn) == (3, 3, True)
    c = classify(gen_family("II", 3))
    assert (c.nu_g, c.nu_J, c.maxn) == (2, 3, True)
    assert c.step_gap == 1


def test_classify_cfgu():
    c = classify(CFGU)
    assert (c.nu_g, c.mu_J, c.nu_J, c.maxn) == (3, 4, 4, False)
    assert [k for k, how in c.inclusions if how == "strict"] == [1, 2]
    assert [k for k, how in c.inclusions if how == "equal"] == [0, 3, 4]
    assert c.dims() == {"V": [0, 5, 8, 10], "W": [0, 2, 3, 4, 5], "a": [0, 1, 3, 4, 5],
                        "h": [5, 3, 2, 1, 0], "lower_central": [10, 5, 2, 0],
                        "upper_central": [0, 5, 7, 10]}


def test_abelian():
    c = classify(abelian(3))
    assert (c.nu_g, c.nu_J, c.maxn) == (1, 1, False)


def test_annihilator_of_w_is_h():
    alg = gen_family("I", 6)
    W, H = w_series(alg), h_series(alg)
    for k in range(7):
        assert annihilator(with_conjugate(W[k]), "dual") == H[k]


def test_quotient_duals_match_w_for_maxn():
    alg = gen_family("II", 7)
    W, A = w_series(alg), a_series(alg)
    for k in range(8):
        assert dual_of_quotient(A[7 - k]) == with_conjugate(W[k])


def test_contraction_kernel_matches():
    alg = gen_family("I", 5)
    V = v_series(alg)
    for k in range(1, len(V)):
        assert kernel_by_contraction(alg, V[k - 1], list(range(10))) == V[k]


@pytest.mark.parametrize("tag", [("I", 5), ("II", 6), ("II", 3)])
def test_w_series_lands_in_holomorphic_forms(tag):
    alg = gen_family(*tag)
    n = alg.n
    for S in w_series(alg).terms:
        assert all(k < n for r in S.basis() for k in r)


@given(st.integers(0, 10 ** 6),
       st.sampled_from([("I", 5), ("II", 5), ("II", 4), ("I", 6), "cfgu"]),
       st.sampled_from(["full", "triangular"]))
def test_classification_is_coframe_independent(seed, which, kind):
    alg = CFGU if which == "cfgu" else gen_family(*which)
    M = random_coframe_matrix(random.Random(seed), alg.n, kind)
    a, b = classify(alg), classify(change_coframe(alg, M))
    assert a == b and a.dims() == b.dims() and a.inclusions == b.inclusions


@given(st.integers(0, 10 ** 6), st.sampled_from([("I", 5), ("II", 4), ("II", 3), "cfgu"]))
def test_adapted_route_matches_direct(seed, which):
    alg = CFGU if which == "cfgu" else gen_family(*which)
    M = random_coframe_matrix(random.Random(seed), alg.n)
    fast = classify(change_coframe(alg, M))
    slow = classify(change_coframe(alg, M), adapted=False)
    assert fast == slow and fast.inclusions == slow.inclusions
    for key in slow.chains:
        assert fast.chains[key].terms == slow.chains[key].terms
