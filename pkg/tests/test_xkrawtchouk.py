from __future__ import annotations

from fractions import Fraction

import pytest

from exkraw.algebra import ONE, X, pochhammer_poly
from exkraw.darboux import backward, forward, make_seed
from exkraw.krawtchouk import InvalidFamily, InvalidParameters, KrawtchoukParams, eigen_lambda, krawtchouk
from exkraw.xkrawtchouk import (
    DegenerateNu,
    SpecialMemberRequired,
    _xk_poly,
    diophantine_check,
    expected_degree,
    gamma,
    index_set,
    kernel_psi,
    spectrum,
    special_type2,
    special_type2_triple_sum,
    type_relations_check,
    xk,
    xk_special,
)

P_VALUES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 5))
half = Fraction(1, 2)


def sweep(N_max=5, d_max=3):
    for p in P_VALUES:
        for N in range(1, N_max + 1):
            P = KrawtchoukParams(p, N)
            for j in range(1, 5):
                for d in range(d_max + 1):
                    if j in (1, 3) and d > N:
                        continue
                    yield j, d, P


def test_construction_examples(half2):
    assert xk(1, 0, 2, half2).poly == X - half
    assert xk(1, 0, 2, half2).poly == krawtchouk(1, half, 1)
    for p in P_VALUES:
        assert xk(1, 1, 0, KrawtchoukParams(p, 3)).poly == ONE
    k = xk(4, 0, 0, half2)
    assert k.degree == 1 and k.poly.is_monic()


def test_type1_d0_is_lowered_krawtchouk():
    for p in P_VALUES:
        for N in range(2, 6):
            P = KrawtchoukParams(p, N)
            for n in range(1, N + 3):
                assert xk(1, 0, n, P).poly == krawtchouk(n - 1, p, N - 1)


def test_special_members(half2):
    assert xk_special(4, 3, half2).poly == ONE
    assert xk(4, 3, -4, half2).poly == ONE
    assert xk_special(2, 0, half2).poly == krawtchouk(3, half, 3).shift(1)
    with pytest.raises(InvalidFamily):
        xk_special(1, 0, half2)
    for p in P_VALUES:
        for N in range(1, 5):
            P = KrawtchoukParams(p, N)
            s = make_seed(2, 2, P)
            assert backward(s, xk(2, 2, N + 3, P).poly).poly == krawtchouk(N + 3, p, N)


def test_special_double_sum_matches_triple_sum():
    for p in P_VALUES:
        for N in range(1, 5):
            for d in range(4):
                P = KrawtchoukParams(p, N)
                assert special_type2(d, P) == special_type2_triple_sum(d, P)


def test_zero_normalizations_are_rejected(half2):
    with pytest.raises(DegenerateNu):
        _xk_poly(1, 1, 1, half2)
    with pytest.raises(SpecialMemberRequired):
        _xk_poly(2, 1, 4, half2)
    with pytest.raises(InvalidParameters):
        xk(1, 3, 0, half2)
    with pytest.raises(InvalidFamily):
        xk(0, 1, 1, half2)


def test_degree_monicity_and_eigen_equation():
    for j, d, P in sweep():
        s = make_seed(j, d, P)
        lam = eigen_lambda(j, d, P)
        for n in spectrum(j, d, P, P.n_int + d + 2):
            K = xk(j, d, n, P).poly
            assert K.is_monic()
            assert K.degree == expected_degree(j, d, n)
            assert forward(s, backward(s, K)) == K * (-n - lam)


def test_back_mapping():
    for j, d, P in sweep(N_max=4):
        s = make_seed(j, d, P)
        for n in spectrum(j, d, P, P.n_int + d + 1):
            image = backward(s, xk(j, d, n, P).poly)
            if (j, n) in ((3, P.n_int - d), (4, -d - 1)):
                assert image.is_zero()
            else:
                assert image.poly == krawtchouk(n, P.p, P.N) * s.nu_tilde(n)


def test_kernel(half2):
    assert kernel_psi(4, 0, half2).poly == ONE
    k2 = kernel_psi(2, 0, half2)
    assert k2.base == -1 and k2.poly == ONE
    for j, d, P in sweep(N_max=4):
        assert backward(make_seed(j, d, P), kernel_psi(j, d, P)).is_zero()


def test_type3_kernel_member_is_proportional_to_psi():
    for p in P_VALUES:
        for N in range(1, 5):
            P = KrawtchoukParams(p, N)
            psi = kernel_psi(3, 0, P).poly
            for d in range(N + 1):
                K = xk(3, d, N - d, P).poly
                assert K == psi * (1 / psi.leading)


def test_index_sets():
    P = KrawtchoukParams(half, 3)
    assert index_set(1, 1, P) == [0, 2, 3]
    assert index_set(2, 2, P) == [0, 1, 2, 3, 6]
    assert index_set(3, 1, P) == [0, 1, 3]
    assert index_set(4, 1, P) == [-2, 0, 1, 2, 3]


def test_type_relations_examples(half2):
    assert xk(1, 3, 1, half2, allow_large_d=True).poly == pochhammer_poly(X - 1, 2) * xk(2, 0, 1, half2).poly
    rep = type_relations_check(1, KrawtchoukParams(Fraction(1, 3), 3))
    assert rep.ok
    assert any(c.id.startswith("grid:type4") and c.params["n"] == 0 for c in rep.cases)


def test_gamma_vanishes_at_kernel_index():
    P = KrawtchoukParams(Fraction(1, 3), 4)
    for d in range(5):
        assert gamma(P.n_int - d, d, P) == 0
        K = xk(3, d, P.n_int - d, P).poly
        assert all(K(x) == 0 for x in range(P.n_int))


@pytest.mark.parametrize("p", P_VALUES)
@pytest.mark.parametrize("N", range(1, 6))
def test_type_relations(p, N):
    for d in range(3):
        rep = type_relations_check(d, KrawtchoukParams(p, N))
        assert rep.ok, rep.failed[0].to_dict()


@pytest.mark.parametrize("p", P_VALUES)
@pytest.mark.parametrize("N", range(1, 6))
def test_diophantine(p, N):
    rep = diophantine_check(KrawtchoukParams(p, N), d_max=3, n_extra=2)
    assert rep.ok, rep.failed[0].to_dict()


def test_diophantine_examples():
    for p in P_VALUES:
        N = 3
        P = KrawtchoukParams(p, N)
        aux = KrawtchoukParams.general(p, -N - 2)
        lhs = xk(1, 0, N + 1, P).poly
        assert lhs == pochhammer_poly(X - N + 1, N) * xk(2, 0, 0, aux).poly.shift(-N - 1)
        assert xk(3, 1, N - 1, P).poly == pochhammer_poly(X - N + 1, N)
    rep = diophantine_check(KrawtchoukParams(half, 2), d_max=2)
    # n = d never appears for type 1
    assert not [c for c in rep.cases if c.id.startswith("n>N:type1") and c.params["n"] == c.params["d"]]
