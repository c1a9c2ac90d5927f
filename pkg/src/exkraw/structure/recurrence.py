"""(2m+1)-term recurrences  q(x) Khat_n(x) = sum_l c_{n,l} Khat_l(x).

Two independent routes:

* direct: expand B[q Khat_n] in the K basis by leading-term elimination,
  divide by nu_tilde, and recover the coefficient on the kernel member of B
  (types 3/4) from the exact residual;
* operator: write B[q Khat_n] = pi Khat_n + nu_tilde_n q(x-1) K_n, turn each
  product into the tridiagonal action of x on the symbols e_k, and read off
  the coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import NotDivisible, Polynomial, RationalFunction, X, poly_divide_exact
from ..darboux import DarbouxSeed, backward, make_seed
from ..krawtchouk import KrawtchoukParams, krawtchouk
from ..xkrawtchouk import xk


class NotInSpan(ArithmeticError):
    pass


class ExcludedIndex(ValueError):
    pass


def minimal_q_pi(j: int, d: int, params: KrawtchoukParams) -> Polynomial:
    """Lowest-degree (m = d+1) multiplier admitting a recurrence."""
    p, N = params.p, params.N
    if j == 1:
        q = krawtchouk(d + 1, p, N + 1).shift(1)
    elif j == 2:
        q = krawtchouk(d + 1, p, -N - 1).shift(-N)
    elif j == 3:
        q = krawtchouk(d + 1, 1 - p, N + 1).shift(1)
    elif j == 4:
        q = krawtchouk(d + 1, 1 - p, -N - 1).shift(-N)
    else:
        raise ValueError(f"j = {j} not in 1..4")
    pi_polynomial(make_seed(j, d, params, restrict=False), q)
    return q


def pi_polynomial(seed: DarbouxSeed, q: Polynomial) -> Polynomial:
    """pi = p(N-x) eta / (xi P_d) * (q(x) - q(x-1)); NotInSpan unless it is a polynomial."""
    val = RationalFunction(seed.sigma * (q - q.shift(-1)), seed.P_d)
    if not val.is_polynomial():
        raise NotInSpan("pi(x) is not a polynomial for this multiplier")
    return val.num


def special_index(j: int, d: int, params: KrawtchoukParams) -> int | None:
    """Index of the member annihilated by B (types 3, 4)."""
    if j == 3:
        return int(params.N) - d
    if j == 4:
        return -d - 1
    return None


@dataclass
class RecurrenceSlice:
    j: int
    d: int
    n: int
    q_pi: Polynomial
    pi: Polynomial
    coefficients: dict[int, Fraction] = field(default_factory=dict)

    def band(self) -> list[int]:
        return sorted(l for l, c in self.coefficients.items() if c != 0)

    def get(self, l: int) -> Fraction:
        return self.coefficients.get(l, Fraction(0))


def expand_in_K(f: Polynomial, params: KrawtchoukParams) -> dict[int, Fraction]:
    """Coefficients of f in the monic K_l basis (degrees are distinct)."""
    out: dict[int, Fraction] = {}
    rem = f
    while rem:
        l = rem.degree
        c = rem.leading
        out[l] = c
        rem = rem - krawtchouk(l, params.p, params.N) * c
    return out


def _khat(j, d, l, params):
    return xk(j, d, l, params, allow_large_d=True).poly


def recurrence_coefficients(
    j: int, d: int, n: int, params: KrawtchoukParams, q_pi: Polynomial | None = None
) -> RecurrenceSlice:
    seed = make_seed(j, d, params, restrict=False)
    q = minimal_q_pi(j, d, params) if q_pi is None else q_pi
    pi = pi_polynomial(seed, q)
    target = q * _khat(j, d, n, params)
    image = backward(seed, target)
    if not image.exact:
        raise NotInSpan("B[q Khat_n] is not a polynomial")
    coeffs: dict[int, Fraction] = {}
    for l, c in expand_in_K(image.poly, params).items():
        nt = seed.nu_tilde(l)
        missing = (j == 1 and l == d) or nt == 0
        if missing:
            if c != 0:
                raise NotInSpan(f"K_{l} appears in B[q Khat_{n}] but Khat_{l} does not exist")
            continue
        coeffs[l] = c / nt
    residual = target
    for l, c in coeffs.items():
        residual = residual - _khat(j, d, l, params) * c
    s = special_index(j, d, params)
    if residual:
        if s is None:
            raise NotInSpan("nonzero residual with no kernel member to absorb it")
        try:
            ratio = poly_divide_exact(residual, _khat(j, d, s, params))
        except NotDivisible as exc:
            raise NotInSpan("residual is not a multiple of the kernel member") from exc
        if not ratio.is_constant():
            raise NotInSpan("residual is not a constant multiple of the kernel member")
        coeffs[s] = ratio[0]
    total = sum((_khat(j, d, l, params) * c for l, c in coeffs.items()), Polynomial())
    if total != target:
        raise ArithmeticError("recurrence identity failed")
    return RecurrenceSlice(j, d, n, q, pi, {l: c for l, c in sorted(coeffs.items()) if c != 0})


# ---------------------------------------------------------------------------
# operator method


def _apply_x_symbol(v: dict[int, Fraction], params: KrawtchoukParams) -> dict[int, Fraction]:
    """X e_k = e_{k+1} + b_k e_k + u_k e_{k-1}."""
    p, N = params.p, params.N
    out: dict[int, Fraction] = {}
    for k, c in v.items():
        if c == 0:
            continue
        b = p * (N - k) + k * (1 - p)
        u = (N + 1 - k) * k * p * (1 - p)
        out[k + 1] = out.get(k + 1, 0) + c
        out[k] = out.get(k, 0) + c * b
        if u:
            out[k - 1] = out.get(k - 1, 0) + c * u
    return out


def _poly_of_x_symbol(poly: Polynomial, v: dict[int, Fraction], params) -> dict[int, Fraction]:
    acc: dict[int, Fraction] = {}
    for c in reversed(poly.coeffs):
        acc = _apply_x_symbol(acc, params)
        if c:
            for k, a in v.items():
                acc[k] = acc.get(k, 0) + c * a
    return acc


def _add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, 0) + c
    return out


def recurrence_coefficients_operator_method(
    j: int, d: int, n: int, params: KrawtchoukParams, q_pi: Polynomial | None = None
) -> RecurrenceSlice:
    seed = make_seed(j, d, params, restrict=False)
    N, p = params.N, params.p
    if j == 4 and n == -d - 1:
        raise ExcludedIndex("Khat^(4,d)_{-d-1} is not an image of the forward operator")
    if j == 2 and n == N + d + 1:
        raise ExcludedIndex("Khat^(2,d)_{N+d+1} is not an image of the forward operator")
    nu_n = seed.nu(n)
    if nu_n == 0:
        raise ExcludedIndex(f"nu vanishes at n = {n}")
    q = minimal_q_pi(j, d, params) if q_pi is None else q_pi
    pi = pi_polynomial(seed, q)
    # pi Khat_n = (pi rho P_d / nu) K_n(x+1) + (pi rho* P_d(x+1) / nu) K_n(x)
    up = pi * seed.rho * seed.P_d / nu_n
    try:
        g = poly_divide_exact(up, X - N)
    except NotDivisible as exc:
        raise NotInSpan("pi rho P_d lacks the factor (x - N)") from exc
    h = pi * seed.rho_star * seed.P_d.shift(1) / nu_n
    # (x-N) K_n(x+1) = K_{n+1} + (2n-N)(1-p) K_n + n(n-N-1)(1-p)^2 K_{n-1}
    shifted = {n + 1: Fraction(1), n: (2 * n - N) * (1 - p)}
    if n:
        shifted[n - 1] = n * (n - N - 1) * (1 - p) ** 2
    v = _poly_of_x_symbol(g, shifted, params)
    v = _add(v, _poly_of_x_symbol(h, {n: Fraction(1)}, params))
    v = _add(v, _poly_of_x_symbol(q.shift(-1) * seed.nu_tilde(n), {n: Fraction(1)}, params))
    coeffs: dict[int, Fraction] = {}
    for l, c in sorted(v.items()):
        if c == 0:
            continue
        nt = seed.nu_tilde(l)
        if (j == 1 and l == d) or nt == 0:
            raise NotInSpan(f"symbol e_{l} has no exceptional counterpart")
        coeffs[l] = c / nt
    return RecurrenceSlice(j, d, n, q, pi, coeffs)
