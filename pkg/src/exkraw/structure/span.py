"""Span characterization via the backward operator, and the L^{(j,d)} / B polynomiality equivalence."""
from __future__ import annotations

from typing import Iterable

from ..algebra import Polynomial
from ..darboux import DarbouxSeed, apply_x_operator, backward
from ..report import Report


def span_membership(seed: DarbouxSeed, q: Polynomial) -> bool:
    """True iff B^{(j,d)}[q] is a polynomial, i.e. q lies in the span of the Khat^{(j,d)}_n."""
    return backward(seed, q).exact


def polynomiality_equivalence_check(seed: DarbouxSeed, sample: Iterable[Polynomial]) -> Report:
    rep = Report("polynomiality")
    tag = {"j": seed.j, "d": seed.d, "p": seed.params.p, "N": seed.params.N}
    for i, pi in enumerate(sample):
        b_flag = backward(seed, pi).exact
        l_flag = apply_x_operator(seed, pi).exact
        rep.check("L-poly iff B-poly", {**tag, "sample": i}, b_flag == l_flag, l_flag, b_flag)
    return rep
