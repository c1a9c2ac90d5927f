"""Verification suites over parameter sweeps.  Each suite returns a :class:`Report`."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import Polynomial
from .darboux import apply_x_operator, backward, forward, make_seed, monomial_test_set, verify_factorization
from .krawtchouk import KrawtchoukParams, check_shift_variants, check_symmetries, eigen_lambda, krawtchouk, norm_h, weight
from .report import Report
from .structure.family22 import xkraw22_family
from .structure.orthogonality import WeightPole, orthogonality_data, sign_changes, verify_orthogonality
from .structure.recurrence import (
    ExcludedIndex,
    recurrence_coefficients,
    recurrence_coefficients_operator_method,
    special_index,
)
from .structure.resultants import DEFAULT_A_RANGE, resultant_lemma_check
from .structure.span import polynomiality_equivalence_check, span_membership
from .xkrawtchouk import diophantine_check, expected_degree, kernel_psi, spectrum, type_relations_check, xk

DEFAULT_P = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 5))


@dataclass
class Sweep:
    p_values: tuple[Fraction, ...] = DEFAULT_P
    N_values: tuple[int, ...] = (1, 2, 3, 4, 5)
    d_max: int = 3
    j_values: tuple[int, ...] = (1, 2, 3, 4)
    d_values: tuple[int, ...] | None = None
    extra: dict = field(default_factory=dict)

    def points(self):
        for p in self.p_values:
            for N in self.N_values:
                yield KrawtchoukParams(p, N)

    def ds(self, j: int, params: KrawtchoukParams) -> list[int]:
        ds = range(self.d_max + 1) if self.d_values is None else self.d_values
        return [d for d in ds if j in (2, 4) or d <= params.N]


def _tag(params, **kw):
    return {"p": params.p, "N": params.N, **kw}


def classical_suite(sweep: Sweep) -> Report:
    rep = Report("classical")
    for P in sweep.points():
        ks = [krawtchouk(n, P.p, P.N) for n in range(P.n_int + 1)]
        w = [weight(x, P) for x in range(P.n_int + 1)]
        for n, Kn in enumerate(ks):
            for m in range(n, len(ks)):
                s = sum((w[x] * Kn(x) * ks[m](x) for x in range(P.n_int + 1)), Fraction(0))
                rep.add("orthogonality", _tag(P, n=n, m=m), s, norm_h(n, P) if n == m else Fraction(0))
    return rep


def factorization_suite(sweep: Sweep) -> Report:
    rep = Report("factorization")
    for P in sweep.points():
        tests = monomial_test_set(2 * P.n_int)
        for j in sweep.j_values:
            for d in sweep.ds(j, P):
                rep.extend(verify_factorization(make_seed(j, d, P), tests))
    return rep


def eigen_suite(sweep: Sweep) -> Report:
    """F B Khat_n = (-n - lambda_d) Khat_n, B Khat_n = nu_tilde_n K_n, degree and monicity, and Ker B."""
    rep = Report("eigen")
    for P in sweep.points():
        N = P.n_int
        for j in sweep.j_values:
            for d in sweep.ds(j, P):
                seed = make_seed(j, d, P)
                lam = eigen_lambda(j, d, P)
                for n in spectrum(j, d, P, N + d + 2):
                    X_ = xk(j, d, n, P).poly
                    t = _tag(P, j=j, d=d, n=n)
                    b = backward(seed, X_)
                    rep.add("back-mapping", t, b, krawtchouk(n, P.p, P.N) * seed.nu_tilde(n) if n >= 0 else Polynomial())
                    rep.add("eigen-equation", t, forward(seed, b), X_ * (-n - lam))
                    rep.check("monic", t, X_.is_monic(), X_.leading)
                    rep.add("degree", t, X_.degree, expected_degree(j, d, n))
                rep.check("kernel", _tag(P, j=j, d=d), backward(seed, kernel_psi(j, d, P)).is_zero())
    return rep


def orthogonality_suite(sweep: Sweep) -> Report:
    rep = Report("orthogonality")
    for P in sweep.points():
        for j in sweep.j_values:
            for d in sweep.ds(j, P):
                try:
                    data = orthogonality_data(j, d, P)
                except WeightPole as exc:
                    rep.skip("orthogonality", _tag(P, j=j, d=d), str(exc))
                    continue
                rep.extend(verify_orthogonality(data))
    return rep


def positivity_suite(sweep: Sweep) -> Report:
    """Sign bookkeeping: types 1/3 sign-constant iff d in {0, N}; types 2/4 positive for even d, sign change for odd d."""
    rep = Report("positivity")
    for P in sweep.points():
        N = P.n_int
        for j in sweep.j_values:
            for d in sweep.ds(j, P):
                t = _tag(P, j=j, d=d)
                try:
                    data = orthogonality_data(j, d, P)
                except WeightPole as exc:
                    rep.skip("positivity", t, str(exc))
                    continue
                ws = data.weights()
                changes = sign_changes(ws.values())
                witness = None
                if j in (1, 3):
                    expected = d in (0, N)
                    ok = (not changes) == expected
                    rep.check("sign-constant iff d in {0,N}", t, ok, not changes, expected,
                              note=None if ok else f"witness x = {list(ws)[changes[0]] if changes else None}")
                elif d % 2 == 0:
                    bad = [x for x, v in ws.items() if v <= 0]
                    witness = None if not bad else f"witness x = {bad[0]}"
                    rep.check("even d: weight positive", t, not bad, note=witness)
                else:
                    rep.check("odd d: sign change exists", t, bool(changes))
    return rep


def diophantine_suite(sweep: Sweep) -> Report:
    rep = Report("diophantine")
    for P in sweep.points():
        rep.extend(diophantine_check(P, d_max=min(sweep.d_max, 2), n_extra=2))
    return rep


def symmetries_suite(sweep: Sweep) -> Report:
    rep = Report("symmetries")
    for P in sweep.points():
        rep.extend(check_symmetries(P, P.n_int))
        rep.extend(check_shift_variants(P, P.n_int + 2))
        for d in range(min(sweep.d_max, 2) + 1):
            rep.extend(type_relations_check(d, P))
    return rep


def polynomiality_suite(sweep: Sweep) -> Report:
    """Span membership of every member, contaminated inputs for type 1, and L/B polynomiality agreement."""
    rep = Report("polynomiality")
    for P in sweep.points():
        N = P.n_int
        for j in sweep.j_values:
            for d in sweep.ds(j, P):
                seed = make_seed(j, d, P)
                t = _tag(P, j=j, d=d)
                members = {n: xk(j, d, n, P).poly for n in spectrum(j, d, P, N + 2)}
                for n, M in members.items():
                    rep.check("member in span", {**t, "n": n}, span_membership(seed, M))
                if j == 1 and d >= 1:
                    Kd = krawtchouk(d, P.p, P.N)
                    rep.check("K_d not in span", t, not span_membership(seed, Kd))
                    for n, M in members.items():
                        rep.check("member + K_d not in span", {**t, "n": n}, not span_membership(seed, M + Kd))
                rep.extend(polynomiality_equivalence_check(seed, monomial_test_set(2 * d + 2)))
    return rep


def recurrence_suite(sweep: Sweep) -> Report:
    """Direct extraction (identity asserted inside) against the operator method."""
    rep = Report("recurrence")
    for P in sweep.points():
        N = P.n_int
        for j in sweep.j_values:
            for d in sweep.ds(j, P):
                for n in spectrum(j, d, P, N + 1):
                    t = _tag(P, j=j, d=d, n=n)
                    direct = recurrence_coefficients(j, d, n, P)
                    m = d + 1
                    rep.check("band", t, all(abs(l - n) <= m for l in direct.band()))
                    rep.add("leading", t, direct.get(n + m), Fraction(1))
                    try:
                        op = recurrence_coefficients_operator_method(j, d, n, P)
                    except ExcludedIndex:
                        continue
                    s = special_index(j, d, P)
                    common = {l: c for l, c in direct.coefficients.items() if l != s}
                    rep.add("direct = operator", t, common, op.coefficients)
    return rep


def resultant_suite(sweep: Sweep) -> Report:
    rep = Report("resultant")
    for p in sweep.p_values:
        rep.extend(resultant_lemma_check(p, sweep.extra.get("a_range", DEFAULT_A_RANGE), sweep.extra.get("n_max", 5)))
    return rep


def family22_suite(sweep: Sweep) -> Report:
    rep = Report("family22")
    for P in sweep.points():
        if P.n_int >= 1:
            rep.extend(xkraw22_family(P))
    return rep


SUITES: dict[str, Callable[[Sweep], Report]] = {
    "classical": classical_suite,
    "factorization": factorization_suite,
    "eigen": eigen_suite,
    "orthogonality": orthogonality_suite,
    "positivity": positivity_suite,
    "diophantine": diophantine_suite,
    "symmetries": symmetries_suite,
    "polynomiality": polynomiality_suite,
    "recurrence": recurrence_suite,
    "resultant": resultant_suite,
    "family22": family22_suite,
}


def run_suites(names: list[str], sweep: Sweep, jobs: int = 1) -> Report:
    """Run the named suites and merge them; case ids are prefixed with the suite name."""
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda nm: SUITES[nm](sweep), names))
    else:
        reports = [SUITES[nm](sweep) for nm in names]
    out = Report("verify" if len(names) != 1 else names[0])
    for name, rep in zip(names, reports):
        for c in rep.cases:
            c.id = f"{name}/{c.id}"
        out.extend(rep)
    return out
