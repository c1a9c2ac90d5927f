from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exkraw.algebra import ONE, X, Polynomial, pochhammer
from exkraw.darboux import make_seed
from exkraw.krawtchouk import KrawtchoukParams, krawtchouk, norm_h
from exkraw.structure.family22 import (
    c0_weight,
    closed_coefficients,
    closed_norm,
    determinant_form,
    q3,
    xkraw22_family,
)
from exkraw.structure.orthogonality import (
    WeightPole,
    orthogonality_data,
    sign_changes,
    verify_orthogonality,
)
from exkraw.structure.recurrence import (
    ExcludedIndex,
    NotInSpan,
    minimal_q_pi,
    pi_polynomial,
    recurrence_coefficients,
    recurrence_coefficients_operator_method,
    special_index,
)
from exkraw.structure.resultants import DEFAULT_A_RANGE, resultant_K_K, resultant_lemma_check
from exkraw.structure.span import polynomiality_equivalence_check, span_membership
from exkraw.xkrawtchouk import spectrum, xk

P_VALUES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 5))
half = Fraction(1, 2)


def grid_points(N_max=5, d_max=3):
    for p in P_VALUES:
        for N in range(1, N_max + 1):
            P = KrawtchoukParams(p, N)
            for j in range(1, 5):
                for d in range(d_max + 1):
                    if j in (1, 3) and d > N:
                        continue
                    yield j, d, P


# orthogonality -------------------------------------------------------------


def test_type1_example(half2):
    data = orthogonality_data(1, 0, half2)
    assert data.weights() == {0: half, 1: half}
    assert data.norm(1) == 1
    rep = verify_orthogonality(data)
    case = next(c for c in rep.cases if c.id == "orthogonality" and c.params["n"] == 1 and c.params["m"] == 2)
    assert case.lhs == 0 and case.passed


def test_family22_norm_example(half2):
    data = orthogonality_data(2, 2, half2)
    assert closed_norm(half2) == Fraction(45, 32)
    assert data.norm(5) == Fraction(45, 32)
    rep = verify_orthogonality(data)
    diag = next(c for c in rep.cases if c.id == "orthogonality" and c.params["n"] == c.params["m"] == 5)
    assert diag.lhs == Fraction(45, 32)


def test_type2_norms_below_the_special_index(half2):
    # for n <= N the norm is (N+1) h_n / (lambda_n - lambda_d), not the special-member constant
    data = orthogonality_data(2, 2, half2)
    for n in range(3):
        assert data.norm(n) == 3 * norm_h(n, half2) / (-n + 2 + 2 + 1)
    assert data.norm(0) == Fraction(3, 5)


def test_type1_norm_closed_form():
    for p in P_VALUES:
        for N in range(2, 6):
            P = KrawtchoukParams(p, N)
            for d in (0, N):
                data = orthogonality_data(1, d, P)
                for n in data.index_set:
                    assert data.norm(n) == norm_h(n, P) / ((n - d) * N * p * (1 - p))


def test_orthogonality_sweep():
    poles = 0
    for j, d, P in grid_points():
        try:
            data = orthogonality_data(j, d, P)
        except WeightPole:
            poles += 1
            continue
        rep = verify_orthogonality(data)
        assert rep.ok, rep.failed[0].to_dict()
    assert poles > 0  # degenerate seeds exist and are reported, not hidden


def test_weight_pole_is_raised():
    with pytest.raises(WeightPole):
        orthogonality_data(1, 1, KrawtchoukParams(half, 2))


def test_type4_norm_by_transport():
    P = KrawtchoukParams(Fraction(1, 3), 3)
    data = orthogonality_data(4, 1, P)
    ws = data.weights()
    for n in data.index_set:
        K = xk(4, 1, n, P).poly
        assert sum(ws[x] * K(x) ** 2 for x in data.grid) == data.norm(n)


# positivity ---------------------------------------------------------------


def test_positivity_claims():
    for j, d, P in grid_points(N_max=6, d_max=4):
        try:
            data = orthogonality_data(j, d, P)
        except WeightPole:
            continue
        changes = sign_changes(data.weights().values())
        if j in (1, 3):
            assert (not changes) == (d in (0, P.n_int))
        elif d % 2 == 0:
            assert all(v > 0 for v in data.weights().values())
        else:
            assert changes


def test_positive_definite_flag():
    assert not orthogonality_data(1, 1, KrawtchoukParams(half, 3)).positive_definite
    assert orthogonality_data(2, 2, KrawtchoukParams(Fraction(1, 3), 3)).positive_definite


# span and polynomiality ----------------------------------------------------


def test_span_examples(half2):
    for j in range(1, 5):
        s = make_seed(j, 1, half2)
        for n in spectrum(j, 1, half2, 5):
            assert span_membership(s, xk(j, 1, n, half2).poly)
    P = KrawtchoukParams(Fraction(1, 3), 4)
    for d in range(1, 5):
        assert not span_membership(make_seed(1, d, P), krawtchouk(d, P.p, P.N))
    assert span_membership(make_seed(4, 2, half2), ONE)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(P_VALUES),
    st.integers(2, 4),
    st.integers(1, 3),
    st.lists(st.fractions(-5, 5, max_denominator=5), min_size=1, max_size=5),
    st.fractions(-5, 5, max_denominator=5).filter(bool),
)
def test_span_both_directions(p, N, d, coeffs, c):
    d = min(d, N)
    P = KrawtchoukParams(p, N)
    s = make_seed(1, d, P)
    idx = [n for n in range(len(coeffs) + 1) if n != d][: len(coeffs)]
    member = sum((xk(1, d, n, P).poly * a for n, a in zip(idx, coeffs)), Polynomial())
    assert span_membership(s, member)
    assert not span_membership(s, member + krawtchouk(d, p, N) * c)


def test_polynomiality_flags_agree():
    for j, d, P in grid_points(N_max=4):
        s = make_seed(j, d, P)
        sample = [Polynomial.monomial(k) for k in range(2 * d + 3)]
        sample += [xk(j, d, n, P).poly for n in spectrum(j, d, P, 3)]
        assert polynomiality_equivalence_check(s, sample).ok


def test_polynomiality_generic_x_fails_both():
    s = make_seed(1, 2, KrawtchoukParams(Fraction(1, 3), 4))
    rep = polynomiality_equivalence_check(s, [X])
    assert rep.ok and rep.cases[0].lhs is False


# recurrences ----------------------------------------------------------------


def test_minimal_multiplier_examples(half2):
    assert minimal_q_pi(1, 0, half2) == X - half
    for p in P_VALUES:
        for N in range(3, 6):
            P = KrawtchoukParams(p, N)
            assert minimal_q_pi(2, 2, P) - q3(P) == krawtchouk(3, p, -N - 1)(-1 - N)
            for j in range(1, 5):
                for d in range(4):
                    if j in (1, 3) and d > N:
                        continue
                    s = make_seed(j, d, P, restrict=False)
                    assert minimal_q_pi(j, d, P).degree == d + 1
                    pi_polynomial(s, minimal_q_pi(j, d, P))


def test_non_multiplier_is_rejected():
    P = KrawtchoukParams(Fraction(1, 3), 4)
    with pytest.raises(NotInSpan):
        pi_polynomial(make_seed(1, 2, P), X)


def test_recurrence_identity_and_band():
    for j, d, P in grid_points(N_max=4):
        for n in spectrum(j, d, P, P.n_int + 2):
            s = recurrence_coefficients(j, d, n, P)
            m = d + 1
            assert s.get(n + m) == 1
            assert all(n - m <= l <= n + m for l in s.band())
            total = sum((xk(j, d, l, P, allow_large_d=True).poly * c for l, c in s.coefficients.items()), Polynomial())
            assert total == s.q_pi * xk(j, d, n, P).poly


def test_operator_method_agrees():
    for j, d, P in grid_points(N_max=5):
        for n in spectrum(j, d, P, P.n_int + 2):
            try:
                op = recurrence_coefficients_operator_method(j, d, n, P)
            except ExcludedIndex:
                assert (j, n) in ((2, P.n_int + d + 1), (4, -d - 1))
                continue
            direct = recurrence_coefficients(j, d, n, P)
            sp = special_index(j, d, P)
            assert op.coefficients == {l: c for l, c in direct.coefficients.items() if l != sp}


def test_operator_method_index_next_to_special_is_fine():
    P = KrawtchoukParams(Fraction(1, 3), 4)
    for d in range(3):
        n = P.n_int + d - 1
        op = recurrence_coefficients_operator_method(2, d, n, P)
        assert op.coefficients == recurrence_coefficients(2, d, n, P).coefficients


def test_type4_kernel_coefficient_vanishes_high():
    P = KrawtchoukParams(Fraction(1, 3), 5)
    for d in range(3):
        m = d + 1
        for n in range(m - d, P.n_int + 1):
            assert recurrence_coefficients(4, d, n, P).get(-d - 1) == 0


def test_type1_d0_has_three_bands():
    P = KrawtchoukParams(Fraction(1, 3), 4)
    for n in range(1, 5):
        band = recurrence_coefficients(1, 0, n, P).band()
        assert band == [l for l in (n - 1, n, n + 1) if l != 0]


# resultants ---------------------------------------------------------------


def test_resultant_examples():
    for p in P_VALUES:
        for a in DEFAULT_A_RANGE:
            assert resultant_K_K(1, p, a) == 1
    p = Fraction(1, 3)
    assert resultant_K_K(2, p, 5) == 4 * 1 * (1 - 5) * p * (1 - p)
    K = krawtchouk(3, half, 2)
    assert K.gcd(K.shift(1)).degree > 0


@pytest.mark.parametrize("p", P_VALUES[:2])
def test_resultant_lemma(p):
    rep = resultant_lemma_check(p, DEFAULT_A_RANGE, 5)
    assert rep.ok, rep.failed[0].to_dict()


# the (2,2) family -------------------------------------------------------------


@pytest.mark.parametrize("p", P_VALUES)
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_family22(p, N):
    rep = xkraw22_family(KrawtchoukParams(p, N))
    assert rep.ok, [c.to_dict() for c in rep.failed]


def test_family22_examples():
    for p in P_VALUES:
        for N in (3, 4, 5):
            P = KrawtchoukParams(p, N)
            for n in range(N + 1):
                c = closed_coefficients(n, P)
                assert c[3] == 1
                assert c[-3] == pochhammer(N - n + 1, 2) * pochhammer(-n, 3) * (p - 1) ** 3 * p ** 3 * (N - n + 6)
                if p == half:
                    assert c[2] == c[-2] == 0
                assert determinant_form(n, P) == xk(2, 2, n, P).poly


def test_c0_weight_handles_removable_singularity():
    P = KrawtchoukParams(Fraction(1, 3), 3)
    # (n-N)_3 / (n-N-2)_3 is 0/0 at n = N; the reduced value is finite
    assert c0_weight(3, 3, P) == Fraction(1, 27) * (-3) * (-1) * (-2) * 3 / 3 * 1
    for n in range(4):
        base = xk(2, 2, n, P).poly(-1)
        for l in range(-3, 4):
            if 0 <= n + l:
                assert c0_weight(l, n, P) * base == xk(2, 2, n + l, P).poly(-1)


def test_printed_c0_weights_are_not_an_identity():
    # the n-independent weights (3-N)_l (-N)_l / (1-N)_l p^l do not reproduce c_{n,0}
    P = KrawtchoukParams(Fraction(1, 3), 5)
    n = 2
    c = recurrence_coefficients(2, 2, n, P, q3(P))
    got = {l - n: v for l, v in c.coefficients.items()}
    N, p = 5, P.p
    printed = -sum(
        pochhammer(3 - N, l) * pochhammer(-N, l) / pochhammer(1 - N, l) * p ** l * v for l, v in got.items() if l
    )
    assert printed != got[0]
    assert closed_coefficients(n, P)[0] == got[0]
