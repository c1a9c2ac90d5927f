"""Classical Krawtchouk polynomials, the Krawtchouk difference operator and its eigen-pairs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    ONE,
    X,
    Polynomial,
    QuasiPolynomial,
    Scalar,
    as_rational,
    pochhammer,
    pochhammer_poly,
)
from .report import Report


class OutOfGrid(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class InvalidFamily(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class KrawtchoukParams:
    """Parameter bundle (p, N).

    ``N`` is normally a positive integer with 0 < p < 1.  Construct with
    ``strict=False`` (or :meth:`general`) to continue to an arbitrary rational
    ``N``, as needed for K_n(x; p, -N-2).
    """

    p: Fraction
    N: Fraction
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "N", as_rational(self.N))
        if self.p == 0:
            raise InvalidParameters("p must be nonzero")
        if self.strict:
            if not 0 < self.p < 1:
                raise InvalidParameters(f"p = {self.p} is not in (0, 1)")
            if self.N.denominator != 1 or self.N < 1:
                raise InvalidParameters(f"N = {self.N} is not a positive integer")

    @classmethod
    def general(cls, p: Scalar, a: Scalar) -> "KrawtchoukParams":
        return cls(as_rational(p), as_rational(a), strict=False)

    @property
    def n_int(self) -> int:
        """N as a Python int (only meaningful for integer N)."""
        if self.N.denominator != 1:
            raise InvalidParameters(f"N = {self.N} is not an integer")
        return int(self.N)

    @property
    def is_standard(self) -> bool:
        return self.N.denominator == 1 and self.N >= 1 and 0 < self.p < 1

    def with_(self, p: Scalar | None = None, N: Scalar | None = None) -> "KrawtchoukParams":
        """Same bundle with p and/or N replaced; the result is a general-parameter bundle."""
        return KrawtchoukParams.general(self.p if p is None else p, self.N if N is None else N)

    def require_standard(self) -> None:
        if not self.is_standard:
            raise InvalidParameters(f"need 0 < p < 1 and integer N >= 1, got p={self.p}, N={self.N}")


# ---------------------------------------------------------------------------
# K_n(x; p, a)


@lru_cache(maxsize=4096)
def krawtchouk(n: int, p: Fraction, a: Fraction) -> Polynomial:
    """Monic K_n(x; p, a) from the terminating hypergeometric sum.

    sum_j (-n)_j (-a+j)_{n-j} / j! * p^(n-j) * (-x)_j
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    p, a = Fraction(p), Fraction(a)
    out = Polynomial()
    minus_x = -X
    fact = 1
    for j in range(n + 1):
        if j:
            fact *= j
        c = pochhammer(-n, j) * pochhammer(-a + j, n - j) / fact * p ** (n - j)
        if c:
            out = out + pochhammer_poly(minus_x, j) * c
    return out


def krawtchouk_by_recurrence(n: int, p: Fraction, a: Fraction) -> Polynomial:
    """K_n from the three-term recurrence, started at K_0 = 1, K_1 = x - a p."""
    p, a = Fraction(p), Fraction(a)
    prev, cur = Polynomial(), ONE
    for k in range(n):
        b = p * (a - k) + k * (1 - p)
        u = (a + 1 - k) * k * p * (1 - p)
        prev, cur = cur, X * cur - cur * b - prev * u
    return cur


def K(n: int, params: KrawtchoukParams) -> Polynomial:
    return krawtchouk(n, params.p, params.N)


# ---------------------------------------------------------------------------
# weight and norms


def weight(x: int, params: KrawtchoukParams) -> Fraction:
    """Binomial weight C(N, x) p^x (1-p)^(N-x) on the grid {0..N}."""
    params.require_standard()
    N = params.n_int
    if not (isinstance(x, int) and 0 <= x <= N):
        raise OutOfGrid(f"x = {x} not in {{0..{N}}}")
    p = params.p
    return math.comb(N, x) * p ** x * (1 - p) ** (N - x)


def norm_h(n: int, params: KrawtchoukParams) -> Fraction:
    """h_n = (-1)^n (-N)_n n! p^n (1-p)^n."""
    params.require_standard()
    N = params.n_int
    if not 0 <= n <= N:
        raise OutOfRange(f"n = {n} not in {{0..{N}}}")
    p = params.p
    return (-1) ** n * pochhammer(-N, n) * math.factorial(n) * p ** n * (1 - p) ** n


def eigenvalue(n: int) -> int:
    """lambda_n = -n for the classical family."""
    return -n


# ---------------------------------------------------------------------------
# the difference operator L = p(N-x)(T-I) + x(1-p)(T^{-1}-I)


def apply_L(f: QuasiPolynomial | Polynomial, params: KrawtchoukParams) -> QuasiPolynomial:
    f = QuasiPolynomial.of(f)
    r, P = f.base, f.poly
    p, N = params.p, params.N
    up = P.shift(1) * r - P
    down = P.shift(-1) / r - P
    out = (N - X) * up * p + X * down * (1 - p)
    return QuasiPolynomial(r, out)


# ---------------------------------------------------------------------------
# eigen-pairs


@dataclass(frozen=True)
class EigenPair:
    j: int
    n: int
    lam: Fraction
    xi_base: Fraction
    xi_poly: Polynomial
    P: Polynomial
    phi: QuasiPolynomial


def eigen_lambda(j: int, n: int, params: KrawtchoukParams) -> Fraction:
    N = params.N
    if j == 1:
        return Fraction(-n)
    if j == 2:
        return -N - n - 1
    if j == 3:
        return -N + n
    if j == 4:
        return Fraction(n + 1)
    raise InvalidFamily(f"j = {j} not in 1..4")


def eigen_P(j: int, n: int, params: KrawtchoukParams) -> Polynomial:
    """Polynomial factor P^{(j)}_n of the eigenfunction (valid for general N)."""
    p, N = params.p, params.N
    if j == 1:
        return krawtchouk(n, p, N)
    if j == 2:
        return krawtchouk(n, p, -N - 2).shift(-N - 1)
    if j == 3:
        return krawtchouk(n, 1 - p, N)
    if j == 4:
        return krawtchouk(n, 1 - p, -N - 2).shift(-N - 1)
    raise InvalidFamily(f"j = {j} not in 1..4")


def geometric_ratio(params: KrawtchoukParams) -> Fraction:
    """(p-1)/p, the base of the quasi-polynomial families j = 3, 4."""
    return (params.p - 1) / params.p


def eigen_pair(j: int, n: int, params: KrawtchoukParams) -> EigenPair:
    if j not in (1, 2, 3, 4):
        raise InvalidFamily(f"j = {j} not in 1..4")
    N = params.n_int
    p = params.p
    lam = eigen_lambda(j, n, params)
    P = eigen_P(j, n, params)
    base = Fraction(1) if j in (1, 2) else geometric_ratio(params)
    xi_poly = pochhammer_poly(X - N, N + 1) if j in (2, 4) else ONE
    # the closed forms, not xi * P
    if j == 1:
        phi_poly = krawtchouk(n, p, N)
    elif j == 2:
        phi_poly = krawtchouk(n + N + 1, p, N)
    elif j == 3:
        phi_poly = krawtchouk(n, 1 - p, N)
    else:
        phi_poly = krawtchouk(n + N + 1, 1 - p, N)
    return EigenPair(j, n, lam, base, xi_poly, P, QuasiPolynomial(base, phi_poly))


# ---------------------------------------------------------------------------
# identity checks


def check_symmetries(params: KrawtchoukParams, n_max: int) -> Report:
    """Reflection, duality, complement and geometric symmetries, one case per relation per n."""
    params.require_standard()
    p, N = params.p, params.n_int
    if n_max > N:
        raise OutOfRange("n_max must not exceed N")
    rep = Report("symmetries")
    q = 1 - p
    for n in range(n_max + 1):
        tag = {"n": n, "p": p, "N": N}
        lhs = krawtchouk(n, q, N)
        rhs = krawtchouk(n, p, N).compose_linear(-1, N) * (-1) ** n
        rep.add("symmetry/reflection", tag, lhs, rhs)

        for x in range(N + 1):
            lhs = pochhammer(-N, x) * p ** x * krawtchouk(n, p, N)(x)
            rhs = pochhammer(-N, n) * p ** n * krawtchouk(x, p, N)(n)
            rep.add("symmetry/duality", {**tag, "x": x}, lhs, rhs)

        for x in range(N + 1):
            # ratio form multiplied through by its denominator
            lhs = krawtchouk(N - n, p, N)(x)
            factor = (
                Fraction(math.factorial(N - n), math.factorial(n))
                * (p - 1) ** (x - n)
                * (-1) ** N
                * p ** (N - x - n)
            )
            rhs = factor * krawtchouk(n, p, N)(N - x)
            rep.add("symmetry/complement", {**tag, "x": x}, lhs, rhs)

        for x in range(N + 1):
            lhs = ((p - 1) / p) ** x * krawtchouk(n, q, N)(x)
            rhs = (
                (p * q) ** n
                * pochhammer(-N, n)
                / (p ** N * pochhammer(-N, N - n))
                * krawtchouk(N - n, p, N)(x)
            )
            rep.add("symmetry/geometric", {**tag, "x": x}, lhs, rhs)
    return rep


def check_shift_variants(params: KrawtchoukParams, n_max: int) -> Report:
    """The four contiguous shift identities, as polynomial identities in x."""
    p, N = params.p, params.N
    q = 1 - p
    rep = Report("shift_variants")

    def k(m, a):
        return krawtchouk(m, p, a) if m >= 0 else Polynomial()

    for n in range(n_max + 1):
        tag = {"n": n, "p": p, "N": N}
        lhs = (X - N) * k(n, N).shift(1)
        rhs = k(n + 1, N) + k(n, N) * ((2 * n - N) * q) + k(n - 1, N) * (n * (n - N - 1) * q ** 2)
        rep.add("shift/upward", tag, lhs, rhs)
        rep.add("shift/forward-difference", tag, k(n, N).shift(1), k(n, N) + k(n - 1, N - 1) * n)
        rep.add("shift/raised-N", tag, k(n, N + 1).shift(1), k(n, N) + k(n - 1, N) * (n * q))
        rep.add("shift/lowered-N", tag, k(n, N + 1), k(n, N) + k(n - 1, N) * (-n * p))
    return rep


def factorization_Q(n: int, params: KrawtchoukParams) -> tuple[Polynomial, Polynomial]:
    """(K_{N+1}, Q_{n-N-1}) with K_n = K_{N+1} Q_{n-N-1} and Q_m(x) = K_m(x-N-1; p, -N-2)."""
    N = params.n_int
    if n <= N:
        raise OutOfRange(f"factorization needs n > N, got n = {n}, N = {N}")
    p = params.p
    head = krawtchouk(N + 1, p, N)
    Q = krawtchouk(n - N - 1, p, Fraction(-N - 2)).shift(-N - 1)
    if head * Q != krawtchouk(n, p, N):
        raise ArithmeticError(f"factorization failed at n = {n}")
    return head, Q
