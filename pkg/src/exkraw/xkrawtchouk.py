"""Exceptional Krawtchouk polynomials Khat^{(j,d)}_n and their algebraic relations."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ONE,
    X,
    Polynomial,
    QuasiPolynomial,
    pochhammer,
    pochhammer_poly,
)
from .darboux import _faults, backward, forward, make_seed
from .krawtchouk import (
    InvalidFamily,
    InvalidParameters,
    KrawtchoukParams,
    geometric_ratio,
    krawtchouk,
)
from .report import Report


class SpecialMemberRequired(ValueError):
    """nu_n vanishes for a type-2 index that has a separately defined member."""


class DegenerateNu(ValueError):
    """nu_n vanishes and no polynomial member exists (type 1, n = d)."""


@dataclass(frozen=True)
class XKrawtchouk:
    j: int
    d: int
    n: int
    params: KrawtchoukParams
    poly: Polynomial

    @property
    def degree(self):
        return self.poly.degree

    def metadata(self) -> dict:
        return {"j": self.j, "d": self.d, "n": self.n, "p": self.params.p,
                "N": self.params.N, "degree": self.poly.degree}


def expected_degree(j: int, d: int, n: int) -> int:
    return n + d + {1: -1, 2: 0, 3: 0, 4: 1}[j]


_cache: dict[tuple, Polynomial] = {}
_cache_lock = threading.Lock()


def _xk_poly(j: int, d: int, n: int, params: KrawtchoukParams) -> Polynomial:
    key = (j, d, n, params.p, params.N)
    hit = None if _faults else _cache.get(key)
    if hit is not None:
        return hit
    seed = make_seed(j, d, params, restrict=False)
    v = seed.nu(n)
    if v == 0:
        if j == 2:
            raise SpecialMemberRequired(f"Khat^(2,{d})_{n}: use xk_special")
        raise DegenerateNu(f"nu vanishes for (j, d, n) = ({j}, {d}, {n})")
    out = forward(seed, krawtchouk(n, params.p, params.N)).poly / v
    if _faults:
        return out
    with _cache_lock:
        _cache.setdefault(key, out)
    return out


def xk(j: int, d: int, n: int, params: KrawtchoukParams, *, allow_large_d: bool = False) -> XKrawtchouk:
    """Khat^{(j,d)}_n = F^{(j,d)}[K_n] / nu_n, monic of degree n + d + (-1, 0, 0, 1)[j-1].

    Special members are routed through :func:`xk_special`: n = -d-1 for
    j = 4 and n = N+d+1 for j = 2.
    """
    if j not in (1, 2, 3, 4):
        raise InvalidFamily(f"j = {j} not in 1..4")
    if j in (1, 3) and params.is_standard and d > params.N and not allow_large_d:
        raise InvalidParameters(f"j = {j} requires 0 <= d <= N")
    if j == 4 and n == -d - 1:
        return xk_special(4, d, params)
    if n < 0:
        raise ValueError(f"index n = {n} out of range")
    if j == 2 and params.N.denominator == 1 and n == params.N + d + 1:
        return xk_special(2, d, params)
    return XKrawtchouk(j, d, n, params, _xk_poly(j, d, n, params))


def xk_special(j: int, d: int, params: KrawtchoukParams) -> XKrawtchouk:
    """Kernel-derived members: Khat^{(4,d)}_{-d-1} = 1 and the double sum Khat^{(2,d)}_{N+d+1}."""
    if j == 4:
        return XKrawtchouk(4, d, -d - 1, params, ONE)
    if j != 2:
        raise InvalidFamily(f"no special member for j = {j}")
    N = params.n_int
    key = ("special", d, params.p, params.N)
    hit = _cache.get(key)
    if hit is None:
        hit = special_type2(d, params)
        if not (hit.is_monic() and hit.degree == N + 2 * d + 1):
            raise ArithmeticError("double-sum member is not monic of degree N+2d+1")
        with _cache_lock:
            _cache.setdefault(key, hit)
    return XKrawtchouk(2, d, N + d + 1, params, hit)


def special_type2(d: int, params: KrawtchoukParams) -> Polynomial:
    """Double sum over (k, j) of shifted K_{N+k+j+1}(x+k+1; p, N+k+j+1)."""
    p, N = params.p, params.n_int
    out = Polynomial()
    for k in range(d + 1):
        for i in range(d + 1):
            c = (
                pochhammer(-d, i) * pochhammer(-d, k)
                * (p - 1) ** (d - k) * p ** (d - i)
                / (math.factorial(i) * math.factorial(k))
                * pochhammer(-N - d - 1, d - i) * pochhammer(-N - d - 1, d - k)
            )
            if c:
                out = out + krawtchouk(N + k + i + 1, p, Fraction(N + k + i + 1)).shift(k + 1) * c
    return out


def special_type2_triple_sum(d: int, params: KrawtchoukParams) -> Polynomial:
    """The same member written as an explicit triple sum over (k, j, l)."""
    p, N = params.p, params.n_int
    out = Polynomial()
    for k in range(d + 1):
        for i in range(d + 1):
            outer = (
                pochhammer(-d, i) * pochhammer(-d, k) * (1 - p) ** (d - k)
                / (math.factorial(i) * math.factorial(k))
                * math.factorial(N + i + k + 1)
                * pochhammer(-N - d - 1, d - i) * pochhammer(-N - d - 1, d - k)
            )
            if not outer:
                continue
            for l in range(N + k + i + 2):
                c = outer * (-1) ** (k + i + l) * (-p) ** (N + d + 1 + k - l) / math.factorial(l)
                out = out + pochhammer_poly(-X - k - 1, l) * c
    return out


def kernel_psi(j: int, d: int, params: KrawtchoukParams) -> QuasiPolynomial:
    """Generator of Ker B^{(j,d)} (independent of d)."""
    N = params.n_int
    p = params.p
    falling = pochhammer_poly(-X, N) * (-1) ** N
    if j == 1:
        return QuasiPolynomial(-(1 - p) / p, falling)
    if j == 2:
        return QuasiPolynomial(-(1 - p) / p, ONE)
    if j == 3:
        return QuasiPolynomial(1, falling)
    if j == 4:
        return QuasiPolynomial(1, ONE)
    raise InvalidFamily(f"j = {j} not in 1..4")


def index_set(j: int, d: int, params: KrawtchoukParams) -> list[int]:
    """Indices of the finite orthogonal family X_{(j,d)}."""
    N = params.n_int
    full = list(range(N + 1))
    if j == 1:
        return [n for n in full if n != d]
    if j == 2:
        return full + [N + d + 1]
    if j == 3:
        return [n for n in full if n != N - d]
    if j == 4:
        return [-d - 1] + full
    raise InvalidFamily(f"j = {j} not in 1..4")


def spectrum(j: int, d: int, params: KrawtchoukParams, n_max: int) -> list[int]:
    """Indices of the infinite family up to n_max (nonnegative, minus d for j=1, plus -d-1 for j=4)."""
    out = list(range(n_max + 1))
    if j == 1:
        out.remove(d) if d <= n_max else None
    if j == 4:
        out.insert(0, -d - 1)
    return out


def gamma(n: int, d: int, params: KrawtchoukParams) -> Fraction:
    p, N = params.p, params.n_int
    return (
        p ** (d - N) * (p - 1) ** d * pochhammer(-N, d)
        / ((-1) ** d * pochhammer(-N, N - d))
        * (n + d - N)
    )


def gamma_star(n: int, d: int, params: KrawtchoukParams) -> Fraction:
    p, N = params.p, params.n_int
    return (
        p ** n * (p - 1) ** (n - N + 1) * pochhammer(-N, n)
        / ((-1) ** (d + 1) * pochhammer(-N, N - n))
        * (n + d + 1)
    )


def type_relations_check(d: int, params: KrawtchoukParams, n_max: int | None = None) -> Report:
    """Type 1 <-> 2 and 3 <-> 4 relations, and the grid relations linking types 3/1 and 4/2."""
    N = params.n_int
    p = params.p
    n_max = N + d + 2 if n_max is None else n_max
    rep = Report("type_relations")
    tag = {"d": d, "p": p, "N": N}
    block = pochhammer_poly(X - N + 1, N)
    for n in range(n_max + 1):
        if n != N + d + 1:
            lhs = xk(1, d + N + 1, n, params, allow_large_d=True).poly
            rep.add("type1(d+N+1)=block*type2(d)", {**tag, "n": n}, lhs, block * xk(2, d, n, params).poly)
        lhs = xk(3, d + N + 1, n, params, allow_large_d=True).poly
        rep.add("type3(d+N+1)=block*type4(d)", {**tag, "n": n}, lhs, block * xk(4, d, n, params).poly)

    r = geometric_ratio(params)
    if d <= N:
        for n in range(N + 1):
            g = gamma(n, d, params)
            k3 = xk(3, d, n, params).poly
            k1 = None if n == N - d else xk(1, N - d, n, params).poly
            for x in range(N):
                rhs = 0 if k1 is None else g * p ** (x + 1) * (p - 1) ** (-x) * k1(x)
                rep.add("grid:type3=gamma*type1", {**tag, "n": n, "x": x}, k3(x), rhs)
    for n in range(N + 1):
        gs = gamma_star(n, d, params)
        k4 = xk(4, d, n, params).poly
        k2 = xk(2, d, N - n, params).poly
        for x in range(-1, N + 1):
            rhs = gs * r ** x * k2(N - x - 1)
            rep.add("grid:type4=gamma_star*type2", {**tag, "n": n, "x": x}, k4(x), rhs)
    return rep


def diophantine_check(params: KrawtchoukParams, d_max: int = 2, n_extra: int = 2) -> Report:
    """Factorizations of Khat into integer-rooted blocks times members at parameter (p, -N-2).

    Covers n > N for all four types, the type-3 member at n = N-d, the d > N
    reductions of types 1/3 to types 2/4, the n, d > N double reduction, and
    the auxiliary identities at parameter (p, -N-2).
    """
    N, p = params.n_int, params.p
    aux = KrawtchoukParams.general(p, -N - 2)
    rep = Report("diophantine")
    tag = {"p": p, "N": N}
    block_a = pochhammer_poly(X - N + 1, N)
    block_b = pochhammer_poly(X - N, N + 2)
    block_c = pochhammer_poly(-X, N) * pochhammer_poly(-1 - X, N + 2)
    ns = range(N + 1, N + 2 + n_extra)

    def lhs(j, d, n):
        return xk(j, d, n, params, allow_large_d=True).poly

    def aux_member(j, d, m):
        return xk(j, d, m, aux, allow_large_d=True).poly.shift(-N - 1)

    for d in range(d_max + 1):
        t = {**tag, "d": d}
        for n in ns:
            if n != d:
                rep.add("n>N:type1=block*type2", {**t, "n": n}, lhs(1, d, n),
                        block_a * aux_member(2, d, n - N - 1))
            if n != N + d + 1:
                rep.add("n>N:type2=block*type1", {**t, "n": n}, lhs(2, d, n), block_b * aux_member(1, d, n - N - 1))
            rep.add("n>N:type3=block*type4", {**t, "n": n}, lhs(3, d, n), block_a * aux_member(4, d, n - N - 1))
            rep.add("n>N:type4=block*type3", {**t, "n": n}, lhs(4, d, n), block_b * aux_member(3, d, n - N - 1))
        if d <= N:
            rep.add("type3 at n=N-d", t, lhs(3, d, N - d), block_a)

    for d in range(N + 1, N + 2 + d_max):
        t = {**tag, "d": d}
        for n in range(N + 2 + n_extra):
            # n = d is both the missing type-1 index and the type-2 special member
            if n != d:
                rep.add("d>N:type1=block*type2", {**t, "n": n}, lhs(1, d, n), block_a * xk(2, d - N - 1, n, params).poly)
            rep.add("d>N:type3=block*type4", {**t, "n": n}, lhs(3, d, n), block_a * xk(4, d - N - 1, n, params).poly)
        for n in ns:
            if n != d:
                rep.add("n,d>N:type1", {**t, "n": n}, lhs(1, d, n), block_c * aux_member(1, d - N - 1, n - N - 1))
            rep.add("n,d>N:type3", {**t, "n": n}, lhs(3, d, n), block_c * aux_member(3, d - N - 1, n - N - 1))
        for m in range(n_extra + 2):
            rising = pochhammer_poly(X + 1, N + 2)
            if m != d - N - 1:
                rep.add("aux:type2=block*type1", {**t, "m": m}, xk(2, d, m, aux).poly,
                        rising * xk(1, d - N - 1, m, aux, allow_large_d=True).poly)
            rep.add("aux:type4=block*type3", {**t, "m": m}, xk(4, d, m, aux).poly,
                    rising * xk(3, d - N - 1, m, aux, allow_large_d=True).poly)
    return rep
