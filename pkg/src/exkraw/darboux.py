"""Single-step Darboux transformation of the Krawtchouk operator.

With seed chi = phi^{(j)}_d and decoupling factor eta^{(j)}, the forward and
backward operators are::

    F f = eta^{-1} (chi(x) f(x+1) - chi(x+1) f(x))
    B f = chi^{-1} (p(N-x) eta(x) f(x) - x(1-p) eta(x-1) f(x-1))

The geometric factors of chi and eta always cancel in the ratios chi/eta and
eta/chi, leaving polynomial multipliers::

    F f = rho(x) P_d(x) f(x+1) + rho*(x) P_d(x+1) f(x)
    B f = (sigma(x) f(x) + sigma*(x) f(x-1)) / P_d(x)

These reduced forms stay valid when N is continued to an arbitrary rational,
which the Diophantine identities need.  The literal chi/eta route is kept in
:func:`casorati` and :func:`forward_literal` for cross-checking.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .algebra import (
    ONE,
    X,
    Polynomial,
    QuasiPolynomial,
    RationalFunction,
    format_rational,
    pochhammer_poly,
)
from .krawtchouk import (
    InvalidFamily,
    InvalidParameters,
    KrawtchoukParams,
    apply_L,
    eigen_lambda,
    eigen_P,
    eigen_pair,
    geometric_ratio,
)
from .report import Report

_faults: set[str] = set()


@contextlib.contextmanager
def inject_fault(name: str):
    """Test hook.  ``"flip-eta"`` flips the sign of eta inside the forward operator."""
    _faults.add(name)
    try:
        yield
    finally:
        _faults.discard(name)


@dataclass(frozen=True)
class DifferenceOpResult:
    """base**x * value(x) with value a reduced rational function."""

    base: Fraction
    value: RationalFunction

    @property
    def exact(self) -> bool:
        """True when the rational part is a polynomial."""
        return self.value.is_polynomial()

    @property
    def poly(self) -> Polynomial:
        return self.value.as_polynomial()

    def quasi(self) -> QuasiPolynomial:
        return QuasiPolynomial(self.base, self.poly)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.base == other.base and self.value == other.value

    def __add__(self, other):
        other = _lift(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.base != other.base:
            raise ValueError("cannot add results with different geometric bases")
        return DifferenceOpResult(self.base, self.value + other.value)

    def __sub__(self, other):
        return self + _lift(other) * -1

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return DifferenceOpResult(self.base, self.value * c)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        if self.base == 1:
            return str(self.value)
        return f"({format_rational(self.base)})^x * ({self.value})"

    def to_json(self):
        return {
            "base": format_rational(self.base),
            "num": self.value.num.to_json(),
            "den": self.value.den.to_json(),
            "exact": self.exact,
        }


Operand = Union[Polynomial, QuasiPolynomial, DifferenceOpResult, RationalFunction]


def _lift(f) -> DifferenceOpResult | None:
    if isinstance(f, DifferenceOpResult):
        return f
    if isinstance(f, QuasiPolynomial):
        return DifferenceOpResult(f.base, RationalFunction(f.poly))
    if isinstance(f, RationalFunction):
        return DifferenceOpResult(Fraction(1), f)
    if isinstance(f, Polynomial):
        return DifferenceOpResult(Fraction(1), RationalFunction(f))
    if isinstance(f, (int, Fraction)):
        return DifferenceOpResult(Fraction(1), RationalFunction(f))
    return None


# ---------------------------------------------------------------------------
# seeds


def nu(j: int, d: int, n: int, params: KrawtchoukParams) -> Fraction:
    """Normalization nu_n^{(j,d)} making F[K_n] / nu_n monic."""
    if j == 1:
        return Fraction(d - n)
    if j == 2:
        return d - n + params.N + 1
    if j in (3, 4):
        return Fraction(1)
    raise InvalidFamily(f"j = {j} not in 1..4")


def nu_tilde(j: int, d: int, n: int, params: KrawtchoukParams) -> Fraction:
    """Back-mapping factor: B[Khat_n] = nu_tilde_n K_n."""
    if j in (1, 2):
        return Fraction(1)
    if j in (3, 4):
        return Fraction(-n) - eigen_lambda(j, d, params)
    raise InvalidFamily(f"j = {j} not in 1..4")


def eta(j: int, params: KrawtchoukParams) -> QuasiPolynomial:
    """Decoupling factor eta^{(j)} (integer N only)."""
    N = params.n_int
    p = params.p
    if j == 1:
        return QuasiPolynomial(1, Polynomial([-1]))
    if j == 2:
        return QuasiPolynomial(1, -pochhammer_poly(X - N + 1, N))
    r = geometric_ratio(params)
    if j == 3:
        return QuasiPolynomial(r, Polynomial([1 / p]))
    if j == 4:
        return QuasiPolynomial(r, pochhammer_poly(X - N + 1, N) / p)
    raise InvalidFamily(f"j = {j} not in 1..4")


def _multipliers(j: int, params: KrawtchoukParams):
    p, a = params.p, params.N
    q = 1 - p
    if j == 1:
        return Polynomial([-1]), ONE, Polynomial([-p * a, p]), Polynomial([0, q])
    if j == 2:
        return Polynomial([a, -1]), X + 1, Polynomial([p]), Polynomial([q])
    if j == 3:
        return Polynomial([p]), Polynomial([q]), Polynomial([a, -1]), X
    if j == 4:
        return Polynomial([-p * a, p]), (X + 1) * q, Polynomial([-1]), ONE
    raise InvalidFamily(f"j = {j} not in 1..4")


@dataclass(frozen=True)
class DarbouxSeed:
    j: int
    d: int
    params: KrawtchoukParams
    mu: Fraction
    P_d: Polynomial
    rho: Polynomial
    rho_star: Polynomial
    sigma: Polynomial
    sigma_star: Polynomial
    chi: QuasiPolynomial | None = None
    eta: QuasiPolynomial | None = None

    def nu(self, n: int) -> Fraction:
        return nu(self.j, self.d, n, self.params)

    def nu_tilde(self, n: int) -> Fraction:
        return nu_tilde(self.j, self.d, n, self.params)


def make_seed(j: int, d: int, params: KrawtchoukParams, *, restrict: bool = True) -> DarbouxSeed:
    """Seed (lambda^{(j)}_d, phi^{(j)}_d).

    For j in {1, 3} with standard parameters, ``restrict`` enforces 0 <= d <= N;
    larger d only reproduces types 2/4 up to a polynomial factor.
    """
    if j not in (1, 2, 3, 4):
        raise InvalidFamily(f"j = {j} not in 1..4")
    if d < 0:
        raise InvalidParameters("d must be nonnegative")
    if restrict and j in (1, 3) and params.is_standard and d > params.N:
        raise InvalidParameters(f"j = {j} requires 0 <= d <= N (d = {d}, N = {params.N})")
    rho, rho_star, sigma, sigma_star = _multipliers(j, params)
    chi = eta_q = None
    if params.N.denominator == 1 and params.N >= 1:
        chi = eigen_pair(j, d, params).phi
        eta_q = eta(j, params)
    return DarbouxSeed(
        j, d, params, eigen_lambda(j, d, params), eigen_P(j, d, params),
        rho, rho_star, sigma, sigma_star, chi, eta_q,
    )


# ---------------------------------------------------------------------------
# operators


def forward(seed: DarbouxSeed, f: Operand) -> DifferenceOpResult:
    g = _lift(f)
    r, G = g.base, g.value
    Pd = seed.P_d
    sign = -1 if "flip-eta" in _faults else 1
    if G.is_polynomial():
        P = G.num
        out = seed.rho * Pd * P.shift(1) * r + seed.rho_star * Pd.shift(1) * P
        return DifferenceOpResult(r, RationalFunction(out * sign))
    out = G.shift(1) * (seed.rho * Pd * r) + G * (seed.rho_star * Pd.shift(1))
    return DifferenceOpResult(r, out * sign)


def backward(seed: DarbouxSeed, f: Operand) -> DifferenceOpResult:
    g = _lift(f)
    r, G = g.base, g.value
    top = G * seed.sigma + G.shift(-1) * (seed.sigma_star / r)
    return DifferenceOpResult(r, top / RationalFunction(seed.P_d))


def apply_x_operator(seed: DarbouxSeed, f: Operand) -> DifferenceOpResult:
    """L^{(j,d)} f = F[B[f]] + lambda^{(j)}_d f."""
    return forward(seed, backward(seed, f)) + _lift(f) * seed.mu


def apply_L_general(f: Operand, params: KrawtchoukParams) -> DifferenceOpResult:
    """The Krawtchouk operator on rational-valued quasi functions."""
    g = _lift(f)
    if g.exact:
        return _lift(apply_L(QuasiPolynomial(g.base, g.poly), params))
    r, G = g.base, g.value
    p, N = params.p, params.N
    up = G.shift(1) * r - G
    down = G.shift(-1) / r - G
    return DifferenceOpResult(r, up * (Polynomial([N, -1]) * p) + down * (X * (1 - p)))


def casorati(chi: QuasiPolynomial, f: QuasiPolynomial | Polynomial) -> QuasiPolynomial:
    """det [[chi(x), f(x)], [chi(x+1), f(x+1)]]."""
    f = QuasiPolynomial.of(f)
    return chi * f.shift(1) - chi.shift(1) * f


def forward_literal(seed: DarbouxSeed, f: QuasiPolynomial | Polynomial) -> DifferenceOpResult:
    """eta^{-1} * Casorati(chi, f), computed from the seed's chi and eta directly."""
    if seed.chi is None or seed.eta is None:
        raise InvalidParameters("literal forward operator needs integer N >= 1")
    c = casorati(seed.chi, f)
    return DifferenceOpResult(c.base / seed.eta.base, RationalFunction(c.poly, seed.eta.poly))


def verify_factorization(seed: DarbouxSeed, test_set: Iterable[Operand]) -> Report:
    """Check B[F[f]] + mu f = L f for every f in ``test_set``."""
    rep = Report("factorization")
    tag = {"j": seed.j, "d": seed.d, "p": seed.params.p, "N": seed.params.N}
    for i, f in enumerate(test_set):
        lhs = backward(seed, forward(seed, f)) + _lift(f) * seed.mu
        rhs = apply_L_general(f, seed.params)
        rep.add("factorization", {**tag, "f": i}, lhs, rhs)
    return rep


def monomial_test_set(k_max: int) -> list[Polynomial]:
    return [Polynomial.monomial(k) for k in range(k_max + 1)]
