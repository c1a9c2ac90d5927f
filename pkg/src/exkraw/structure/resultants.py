"""Resultants of K_n(x) against its unit shift, and the common-zero criterion."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from ..algebra import as_rational, resultant
from ..krawtchouk import krawtchouk
from ..report import Report


def resultant_K_K(n: int, p: Fraction, a: Fraction) -> Fraction:
    """Closed form of Res(K_n(x; p, a), K_n(x+1; p, a))."""
    out = Fraction(n) ** n
    for k in range(1, n):
        out *= Fraction(k) ** k * (k - a) ** k
    return out * (p * (1 - p)) ** (n * (n - 1) // 2)


def _res_shift(n_lo: int, a_lo: Fraction, n_hi: int, a_hi: Fraction, p: Fraction) -> Fraction:
    """Res(K_{n_lo}(x; p, a_lo), K_{n_hi}(x+1; p, a_hi))."""
    return resultant(krawtchouk(n_lo, p, a_lo), krawtchouk(n_hi, p, a_hi).shift(1))


def resultant_lemma_check(p, a_range: Iterable, n_max: int = 5) -> Report:
    p = as_rational(p)
    if n_max > 6:
        raise ValueError("n_max must not exceed 6")
    rep = Report("resultant")
    for a in map(as_rational, a_range):
        for n in range(1, n_max + 1):
            tag = {"n": n, "p": p, "a": a}
            same = _res_shift(n, a, n, a, p)
            rep.add("closed-form", tag, same, resultant_K_K(n, p, a))
            lower = _res_shift(n - 1, a - 1, n, a, p)
            # n**n, not (-n)**n: the sign must agree with the closed form above
            rep.add("reduce-same-degree", tag, same, Fraction(n) ** n * lower)
            rep.add("reduce-raised-degree", tag, _res_shift(n, a - 1, n + 1, a, p),
                    ((n - a) * n * p * (1 - p)) ** n * lower)
            k = krawtchouk(n, p, a)
            shared = k.gcd(k.shift(1)).degree > 0
            expected = a.denominator == 1 and 1 <= a <= n - 1
            rep.check("common-zero iff a in 1..n-1", tag, shared == expected, shared, expected)
    return rep


DEFAULT_A_RANGE = [*range(-3, 7), Fraction(7, 2)]
