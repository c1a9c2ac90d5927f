"""The explicit family Khat^{(2,2)}: determinant form, orthogonality, positivity, 7-term recurrence."""
from __future__ import annotations

import math
from fractions import Fraction

from ..algebra import ONE, X, Polynomial, RationalFunction, pochhammer, pochhammer_poly
from ..krawtchouk import KrawtchoukParams, krawtchouk
from ..report import Report
from ..xkrawtchouk import index_set, xk
from .orthogonality import grid, orthogonality_data, verify_orthogonality
from .recurrence import recurrence_coefficients

J, D = 2, 2


def q3(params: KrawtchoukParams) -> Polynomial:
    """K_3(x-N; p, -N-1) - K_3(-1-N; p, -N-1); vanishes at x = -1."""
    p, N = params.p, params.N
    k = krawtchouk(3, p, -N - 1)
    return k.shift(-N) - k(-1 - N)


def determinant_form(n: int, params: KrawtchoukParams) -> Polynomial:
    """det [[(N-x) P(x), K_n(x)], [-(1+x) P(x+1), K_n(x+1)]] / (N+3-n) with P(x) = K_2(x-N-1; p, -N-2)."""
    p, N = params.p, params.N
    P = krawtchouk(2, p, -N - 2).shift(-N - 1)
    K = krawtchouk(n, p, N)
    det = Polynomial([N, -1]) * P * K.shift(1) + (X + 1) * P.shift(1) * K
    return det / (N + 3 - n)


def closed_norm(params: KrawtchoukParams) -> Fraction:
    """2! (N+1)! (N+3)! (p(1-p))^{N+3}: the squared norm of the member n = N+3."""
    p, N = params.p, params.n_int
    return 2 * math.factorial(N + 1) * math.factorial(N + 3) * (p * (1 - p)) ** (N + 3)


def _rising_in_n(shift: int, l: int) -> RationalFunction:
    """(n + shift)_l as a rational function of n, for any integer l."""
    if l >= 0:
        return RationalFunction(pochhammer_poly(X + shift, l))
    return RationalFunction(ONE, pochhammer_poly(X + shift + l, -l))


def c0_weight(l: int, n: int, params: KrawtchoukParams) -> Fraction:
    """Khat_{n+l}(-1) / Khat_n(-1) = (n-N-3)_l (n-N)_l / (n-N-2)_l p^l, reduced in n before evaluating."""
    N = params.n_int
    w = _rising_in_n(-N - 3, l) * _rising_in_n(-N, l) / _rising_in_n(-N - 2, l)
    return w(n) * params.p ** l


def closed_coefficients(n: int, params: KrawtchoukParams) -> dict[int, Fraction]:
    """c_{n,l} for l = -3..3 (keys are offsets l, not absolute indices)."""
    p, N = params.p, params.n_int
    c = {
        3: Fraction(1),
        2: 3 * (N - n + 1) * (2 * p - 1),
        1: 3 * (N - n + 2) * (N - n + 1 - (4 * N - 5 * n + 2) * p * (1 - p)),
        -1: 3 * (N - n + 1) * (-n) * (p - 1) * p * (N - n + 4) * (N - n + 2 - (4 * N - 5 * n + 7) * p * (1 - p)),
        -2: 3 * pochhammer(N - n + 1, 2) * pochhammer(-n, 2) * (p - 1) ** 2 * p ** 2 * (N - n + 5) * (2 * p - 1),
        -3: pochhammer(N - n + 1, 2) * pochhammer(-n, 3) * (p - 1) ** 3 * p ** 3 * (N - n + 6),
    }
    if n <= N:
        c[0] = -sum(c0_weight(l, n, params) * v for l, v in c.items())
    return c


def c0_from_values(n: int, c: dict[int, Fraction], params: KrawtchoukParams) -> Fraction:
    """c_{n,0} from the recurrence evaluated at the root x = -1 of q3."""
    val = lambda m: xk(J, D, m, params).poly(-1)
    base = val(n)
    if base == 0:
        raise ZeroDivisionError(f"Khat_{n}(-1) vanishes")
    return -sum(v * val(n + l) for l, v in c.items() if l != 0) / base


def positive_shifted_K2(params: KrawtchoukParams) -> list[tuple[int, Fraction]]:
    """Values of K_2(y; p, -N-2) at y = -N-2..0 (covers every weight denominator); returns violations."""
    p, N = params.p, params.n_int
    k = krawtchouk(2, p, -N - 2)
    return [(y, k(y)) for y in range(-N - 2, 1) if k(y) <= 0]


def xkraw22_family(params: KrawtchoukParams) -> Report:
    params.require_standard()
    N, p = params.n_int, params.p
    rep = Report("family22")
    tag = {"p": p, "N": N}
    idx = index_set(J, D, params)

    for n in range(N + 1):
        rep.add("determinant-form", {**tag, "n": n}, xk(J, D, n, params).poly, determinant_form(n, params))

    data = orthogonality_data(J, D, params)
    rep.extend(verify_orthogonality(data))
    rep.add("special-norm", {**tag, "n": N + 3}, data.norm(N + 3), closed_norm(params))

    bad = positive_shifted_K2(params)
    rep.check("K2(y;p,-N-2)>0 on -N-2..0", tag, not bad, note=None if not bad else f"witness {bad[0]}")
    ws = data.weights()
    rep.check("weight positive", tag, all(v > 0 for v in ws.values()),
              note=None if all(v > 0 for v in ws.values()) else f"witness {min(ws, key=ws.get)}")

    q = q3(params)
    for n in idx:
        s = recurrence_coefficients(J, D, n, params, q)
        got = {l - n: v for l, v in s.coefficients.items()}
        closed = closed_coefficients(n, params)
        t = {**tag, "n": n}
        for l in range(-3, 4):
            if l == 0 and n > N:
                rep.add("c[0] via x=-1", t, got.get(0, Fraction(0)), c0_from_values(n, closed, params))
                continue
            rep.add(f"c[{l}]", t, got.get(l, Fraction(0)), closed[l])
        if p == Fraction(1, 2):
            rep.check("p=1/2: c[2]=c[-2]=0", t, got.get(2, 0) == 0 and got.get(-2, 0) == 0)
        # the sign claim covers n <= N; at n = N+3 the closed form gives c[2] < 0
        if p > Fraction(1, 2) and n <= N:
            nz = {l: v for l, v in got.items() if l != 0}
            rep.check("p>1/2: c[l!=0] > 0", t, all(v > 0 for v in nz.values()),
                      note=None if all(v > 0 for v in nz.values()) else f"{nz}")

    for n in (N + 1, N + 2):
        P = xk(J, D, n, params).poly
        rep.check("vanishes on grid", {**tag, "n": n}, all(P(x) == 0 for x in grid(J, params)))
    return rep
