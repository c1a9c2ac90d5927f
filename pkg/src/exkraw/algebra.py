"""Exact arithmetic substrate: polynomials, rational functions and quasi-polynomials over Q.

Scalars are :class:`fractions.Fraction`.  Every object here is immutable and
every operation is exact.
"""
from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "NEG_INF",
    "NotDivisible",
    "ZeroPolynomial",
    "Polynomial",
    "RationalFunction",
    "QuasiPolynomial",
    "X",
    "ONE",
    "ZERO",
    "as_rational",
    "format_rational",
    "parse_rational",
    "pochhammer",
    "pochhammer_poly",
    "poly_shift",
    "poly_divide_exact",
    "resultant",
    "sylvester_matrix",
    "bareiss_determinant",
]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""

    def __init__(self, remainder: "Polynomial"):
        super().__init__(f"nonzero remainder {remainder}")
        self.remainder = remainder


class ZeroPolynomial(ValueError):
    pass


@functools.total_ordering
class _NegInfinity:
    """Degree of the zero polynomial; below every integer, absorbing under addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInfinity()


def as_rational(value: Scalar | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"``; decimals and exponents are rejected."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(value: Scalar) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pochhammer(a: Scalar, n: int) -> Fraction:
    """Rising factorial (a)_n; negative n uses (a)_{-k} = 1/(a-k)_k."""
    a = Fraction(a)
    if n >= 0:
        out = Fraction(1)
        for i in range(n):
            out *= a + i
        return out
    den = pochhammer(a + n, -n)
    if den == 0:
        raise ZeroDivisionError(f"({a})_{n} has a pole")
    return 1 / den


class Polynomial:
    """Dense univariate polynomial over Q; ``coeffs[k]`` multiplies x**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Polynomial":
        out = ONE
        for r in roots:
            out = out * Polynomial([-Fraction(r), 1])
        return out

    # -- basic properties ------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.leading == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if abs(c) == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return Polynomial([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Scalar) -> "Polynomial":
        return self * Fraction(c)

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return Polynomial([x / c for x in self.coeffs])
        return NotImplemented

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ZERO, self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quot[k - db] = q
            for i, b in enumerate(other.coeffs):
                rem[k - db + i] -= q * b
        return Polynomial(quot), Polynomial(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self / self.leading

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd (zero only if both inputs are zero)."""
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
            b = b.monic() if b else b
        return a.monic()

    # -- evaluation and substitution --------------------------------------
    def __call__(self, x):
        if isinstance(x, Polynomial):
            return self.compose(x)
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def compose_linear(self, a: Scalar, b: Scalar) -> "Polynomial":
        """P(a*x + b), by binomial expansion."""
        a, b = Fraction(a), Fraction(b)
        n = len(self.coeffs)
        if n == 0:
            return self
        out = [Fraction(0)] * n
        # (a x + b)^k = sum_i C(k,i) a^i b^(k-i) x^i
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            binom = 1
            for i in range(k + 1):
                out[i] += c * binom * a ** i * b ** (k - i)
                binom = binom * (k - i) // (i + 1)
        return Polynomial(out)

    def shift(self, k: Scalar) -> "Polynomial":
        return self.compose_linear(1, k)

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "Polynomial":
        return cls(as_rational(c) if isinstance(c, str) else Fraction(c) for c in data)


ZERO = Polynomial()
ONE = Polynomial([1])
X = Polynomial([0, 1])


def poly_shift(P: Polynomial, k: Scalar) -> Polynomial:
    return P.shift(k)


def poly_divide_exact(A: Polynomial, B: Polynomial) -> Polynomial:
    q, r = A.divmod(B)
    if r:
        raise NotDivisible(r)
    return q


def pochhammer_poly(linear: Polynomial, n: int) -> Polynomial:
    """(L(x))_n = L(x)(L(x)+1)...(L(x)+n-1) for a polynomial L, n >= 0."""
    if n < 0:
        raise ValueError("polynomial Pochhammer needs n >= 0")
    out = ONE
    for i in range(n):
        out = out * (linear + i)
    return out


class RationalFunction:
    """num/den over Q with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Scalar, den: Polynomial | Scalar = 1, *, reduced: bool = False):
        num = num if isinstance(num, Polynomial) else Polynomial([num])
        den = den if isinstance(den, Polynomial) else Polynomial([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = ONE
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num = num // g
                    den = den // g
            lead = den.leading
            if lead != 1:
                num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def of(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        return cls(value)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise NotDivisible(self.num % self.den)
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den, reduced=True) if other else RationalFunction(ZERO)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at x = {x}")
        return self.num(x) / d

    def shift(self, k: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.shift(k), self.den.shift(k), reduced=True)

    def compose_linear(self, a: Scalar, b: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.compose_linear(a, b), self.den.compose_linear(a, b))


class QuasiPolynomial:
    """The function base**x * poly(x), with base a nonzero rational."""

    __slots__ = ("base", "poly")

    def __init__(self, base: Scalar, poly: Polynomial | Scalar):
        base = Fraction(base)
        if base == 0:
            raise ValueError("quasi-polynomial base must be nonzero")
        poly = poly if isinstance(poly, Polynomial) else Polynomial([poly])
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("QuasiPolynomial is immutable")

    @classmethod
    def of(cls, value) -> "QuasiPolynomial":
        if isinstance(value, QuasiPolynomial):
            return value
        return cls(1, value)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            other = QuasiPolynomial(1, other)
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        if self.poly.is_zero() and other.poly.is_zero():
            return True
        return self.base == other.base and self.poly == other.poly

    def __hash__(self):
        return hash((self.base, self.poly)) if self.poly else 0

    def __repr__(self):
        return f"QuasiPolynomial({format_rational(self.base)}, {self.poly!r})"

    def __str__(self):
        if self.base == 1:
            return str(self.poly)
        return f"({format_rational(self.base)})^x * ({self.poly})"

    def _check_base(self, other: "QuasiPolynomial"):
        if self.base != other.base and not (self.is_zero() or other.is_zero()):
            raise ValueError(
                f"cannot add quasi-polynomials with bases {format_rational(self.base)} "
                f"and {format_rational(other.base)}"
            )

    def __add__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        self._check_base(other)
        base = other.base if self.is_zero() else self.base
        return QuasiPolynomial(base, self.poly + other.poly)

    def __neg__(self):
        return QuasiPolynomial(self.base, -self.poly)

    def __sub__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QuasiPolynomial):
            return QuasiPolynomial(self.base * other.base, self.poly * other.poly)
        if isinstance(other, (Polynomial, int, Fraction)):
            return QuasiPolynomial(self.base, self.poly * other)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "QuasiPolynomial":
        """T^k: x -> x + k, i.e. base**k * base**x * poly(x + k)."""
        return QuasiPolynomial(self.base, self.poly.shift(k) * self.base ** k)

    def __call__(self, x: int) -> Fraction:
        return self.base ** int(x) * self.poly(x)


# -- resultants ----------------------------------------------------------------


def sylvester_matrix(f: Polynomial, g: Polynomial) -> list[list[Fraction]]:
    m, n = f.degree, g.degree
    size = m + n
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fr + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gr + [Fraction(0)] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination over the integers."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _integer_content(p: Polynomial) -> tuple[list[int], int]:
    """Scale p to integer coefficients: returns (coeffs, L) with L*p integral."""
    L = math.lcm(*(c.denominator for c in p.coeffs))
    return [int(c * L) for c in p.coeffs], L


def resultant(f: Polynomial, g: Polynomial) -> Fraction:
    """Res(f, g) = det Sylvester(f, g), computed fraction-free."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return Fraction(1)
    fi, lf = _integer_content(f)
    gi, lg = _integer_content(g)
    M = sylvester_matrix(Polynomial(fi), Polynomial(gi))
    det = bareiss_determinant(M)
    return Fraction(det, lf ** n * lg ** m)
