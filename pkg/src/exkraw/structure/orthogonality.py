"""Finite orthogonality of the exceptional families: weights, norms, sign structure."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..algebra import Polynomial, pochhammer
from ..krawtchouk import KrawtchoukParams, eigen_lambda, eigen_P, geometric_ratio, norm_h
from ..report import Report
from ..xkrawtchouk import gamma, gamma_star, index_set, xk


class WeightPole(ValueError):
    pass


def _binomial_weight(x: int, p: Fraction, M: int) -> Fraction:
    if not 0 <= x <= M:
        return Fraction(0)
    return math.comb(M, x) * p ** x * (1 - p) ** (M - x)


def grid(j: int, params: KrawtchoukParams) -> range:
    N = params.n_int
    return range(0, N) if j in (1, 3) else range(-1, N + 1)


def _complement_constant(d: int, params: KrawtchoukParams) -> Fraction:
    """C with ((p-1)/p)^x K_d(x; 1-p, N) = C K_{N-d}(x; p, N) on {0..N}."""
    p, N = params.p, params.n_int
    return (p * (1 - p)) ** d * pochhammer(-N, d) / (p ** N * pochhammer(-N, N - d))


def weight_function(j: int, d: int, params: KrawtchoukParams) -> Callable[[int], Fraction]:
    """w_hat^{(j,d)} on its grid.

    Types 1/3 use w(x; p, N-1) / (P_d(x) P_d(x+1)); types 2/4 use
    w(x+1; p, N+1) / (P_d(x) P_d(x+1)), with P_d the seed's polynomial part.
    """
    p, N = params.p, params.n_int
    P = eigen_P(j, d, params)
    pts = set(grid(j, params))

    def w(x: int) -> Fraction:
        if x not in pts:
            raise ValueError(f"x = {x} is off the grid")
        den = P(x) * P(x + 1)
        if den == 0:
            raise WeightPole(f"P^({j})_{d} vanishes at x = {x} or x + 1")
        top = _binomial_weight(x, p, N - 1) if j in (1, 3) else _binomial_weight(x + 1, p, N + 1)
        return top / den

    return w


def norm_function(j: int, d: int, params: KrawtchoukParams) -> Callable[[int], Fraction]:
    """Closed-form squared norms; types 3/4 are transported from types 1/2."""
    p, N = params.p, params.n_int
    q = 1 - p
    lam_d = eigen_lambda(j, d, params)

    def h1(n, dd):
        return norm_h(n, params) / ((eigen_lambda(1, dd, params) + n) * N * p * q)

    def h2(n):
        if n == N + d + 1:
            return (-1) ** d * math.factorial(d) * math.factorial(N + 1) * math.factorial(N + d + 1) * (q * p) ** (N + d + 1)
        return (N + 1) * norm_h(n, params) / (-n - eigen_lambda(2, d, params))

    if j == 1:
        return lambda n: h1(n, d)
    if j == 2:
        return h2
    if j == 3:
        r = geometric_ratio(params)
        C = _complement_constant(d, params)
        return lambda n: r * p ** 2 / C ** 2 * gamma(n, d, params) ** 2 * h1(n, N - d)

    def h4(n):
        if n == -d - 1:
            return (p / q) ** (1 - N) * special_gamma_star(d, params) ** 2 * h2(N + d + 1)
        return (p / q) ** (1 - N) * gamma_star(n, d, params) ** 2 * h2(N - n)

    return h4


def special_gamma_star(d: int, params: KrawtchoukParams) -> Fraction:
    """Constant c with 1 = c ((p-1)/p)^x Khat^{(2,d)}_{N+d+1}(N-x-1) on the grid."""
    N = params.n_int
    r = geometric_ratio(params)
    k2 = xk(2, d, N + d + 1, params).poly
    vals = {1 / (r ** x * k2(N - x - 1)) for x in range(-1, N + 1)}
    if len(vals) != 1:
        raise ArithmeticError("type-2 special member is not a reflected geometric on the grid")
    return vals.pop()


@dataclass(frozen=True)
class OrthogonalityData:
    j: int
    d: int
    params: KrawtchoukParams
    grid: range
    weight: Callable[[int], Fraction]
    norm: Callable[[int], Fraction]
    index_set: list[int]
    positive_definite: bool

    def weights(self) -> dict[int, Fraction]:
        return {x: self.weight(x) for x in self.grid}


def sign_changes(values) -> list[int]:
    """Positions i where values[i] and values[i+1] differ in sign."""
    vals = list(values)
    return [i for i in range(len(vals) - 1) if (vals[i] > 0) != (vals[i + 1] > 0)]


def orthogonality_data(j: int, d: int, params: KrawtchoukParams) -> OrthogonalityData:
    params.require_standard()
    N = params.n_int
    if j in (1, 3) and not 0 <= d <= N:
        raise ValueError(f"j = {j} requires 0 <= d <= N")
    w = weight_function(j, d, params)
    g = grid(j, params)
    ws = [w(x) for x in g]  # raises WeightPole early
    return OrthogonalityData(
        j, d, params, g, w, norm_function(j, d, params), index_set(j, d, params),
        positive_definite=not sign_changes(ws),
    )


def inner(data: OrthogonalityData, f: Polynomial, g: Polynomial) -> Fraction:
    return sum((data.weight(x) * f(x) * g(x) for x in data.grid), Fraction(0))


def verify_orthogonality(data: OrthogonalityData, n_max: int | None = None) -> Report:
    """Exact Gram matrix over the index set against diag(norms)."""
    rep = Report("orthogonality")
    idx = [n for n in data.index_set if n_max is None or n <= n_max]
    polys = {n: xk(data.j, data.d, n, data.params).poly for n in idx}
    wx = data.weights()
    vals = {n: {x: P(x) for x in data.grid} for n, P in polys.items()}
    tag = {"j": data.j, "d": data.d, "p": data.params.p, "N": data.params.N}
    for a, n in enumerate(idx):
        for m in idx[a:]:
            s = sum((wx[x] * vals[n][x] * vals[m][x] for x in data.grid), Fraction(0))
            expected = data.norm(n) if n == m else Fraction(0)
            rep.add("orthogonality", {**tag, "n": n, "m": m}, s, expected)
            if n == m:
                rep.check("norm-nonzero", {**tag, "n": n}, s != 0, s)
    return rep
