from __future__ import annotations

from fractions import Fraction

import pytest

from exkraw.algebra import ONE, X, Polynomial, QuasiPolynomial
from exkraw.darboux import (
    apply_x_operator,
    backward,
    eta,
    forward,
    forward_literal,
    inject_fault,
    make_seed,
    monomial_test_set,
    verify_factorization,
)
from exkraw.krawtchouk import InvalidParameters, KrawtchoukParams, eigen_lambda, krawtchouk
from exkraw.xkrawtchouk import xk

P_VALUES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 5))
half = Fraction(1, 2)


def seeds(N_max=5, d_max=3):
    for p in P_VALUES:
        for N in range(1, N_max + 1):
            P = KrawtchoukParams(p, N)
            for j in range(1, 5):
                for d in range(d_max + 1):
                    if j in (1, 3) and d > N:
                        continue
                    yield make_seed(j, d, P)


def test_forward_examples(half2):
    s = make_seed(1, 0, half2)
    for n in range(4):
        K = krawtchouk(n, half, 2)
        assert forward(s, K).poly == K - K.shift(1)
    assert forward(s, krawtchouk(2, half, 2)).poly == Polynomial([1, -2])


def test_forward_kills_the_seed():
    for s in seeds(N_max=3):
        assert forward(s, s.chi).is_zero()


def test_backward_examples(half2):
    for d in range(4):
        assert backward(make_seed(4, d, half2), ONE).is_zero()
    s = make_seed(1, 0, half2)
    for n in range(1, 5):
        assert backward(s, xk(1, 0, n, half2).poly).poly == krawtchouk(n, half, 2)
    generic = make_seed(1, 2, KrawtchoukParams(Fraction(1, 3), 4))
    assert not backward(generic, X).exact


@pytest.mark.parametrize("p", P_VALUES)
def test_reduced_forward_equals_casorati_over_eta(p):
    for N in range(1, 5):
        P = KrawtchoukParams(p, N)
        for j in range(1, 5):
            for d in range(min(3, N) + 1):
                s = make_seed(j, d, P)
                for n in range(N + 3):
                    K = krawtchouk(n, p, N)
                    assert forward(s, K) == forward_literal(s, K)


def test_eta_table(half2):
    assert eta(1, half2) == QuasiPolynomial(1, Polynomial([-1]))
    assert eta(3, half2).base == -1


def test_factorization_on_monomials():
    for s in seeds():
        rep = verify_factorization(s, monomial_test_set(2 * s.params.n_int))
        assert rep.ok, rep.failed[0].to_dict()


def test_factorization_on_K_and_seed():
    for s in seeds(N_max=3):
        P = s.params
        tests = [krawtchouk(n, P.p, P.N) for n in range(6)] + [s.chi, ONE]
        assert verify_factorization(s, tests).ok


def test_apply_x_operator_examples(half2):
    for d in range(3):
        s = make_seed(4, d, half2)
        assert apply_x_operator(s, ONE) == ONE * eigen_lambda(4, d, half2)
    s = make_seed(1, 2, KrawtchoukParams(Fraction(1, 3), 4))
    assert not apply_x_operator(s, X).exact


def test_seed_domain_is_enforced():
    P = KrawtchoukParams(half, 2)
    with pytest.raises(InvalidParameters):
        make_seed(1, 3, P)
    with pytest.raises(InvalidParameters):
        make_seed(2, -1, P)
    make_seed(1, 3, P, restrict=False)


def test_fault_hook_breaks_factorization(half2):
    s = make_seed(2, 1, half2)
    tests = monomial_test_set(4)
    with inject_fault("flip-eta"):
        assert not verify_factorization(s, tests).ok
    assert verify_factorization(s, tests).ok
