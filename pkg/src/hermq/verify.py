"""Verification suites: every exact identity as a list of report rows.

Each task is a (check id, params) pair resolved through ``CHECKS``, so tasks
pickle cleanly for the process pool.  Rows always come back in task order.
"""

from __future__ import annotations

import os
from math import factorial
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import classical as cl
from . import qhermite as qh
from . import qinverse as qi
from . import qp
from .certify import certifying_q_samples, sample_count
from .polyring import Poly2, classical_dx, mul_s, mul_x
from .qcore import as_rational, q_factorial
from .report import VerifyReport, exact_report, numeric_report, stopwatch

SUITES = ("classical", "q", "qinv", "qp")
CHECKS: dict = {}


def check(name: str):
    def register(fn):
        CHECKS[name] = fn
        return fn
    return register


def _first_nonzero(*residuals):
    for r in residuals:
        if r:
            return r
    return residuals[-1] if residuals else Poly2.zero()


# classical ---------------------------------------------------------------


@check("classical.constructions")
def _(n):
    h = cl.hermite(n)
    return _first_nonzero(h - cl.hermite_explicit(n), h - cl.hermite_operator_exp(n), h - cl.rodrigues_poly(n))


@check("classical.ode")
def _(n):
    return cl.ode_residual(n)


@check("classical.lowering")
def _(n):
    d = classical_dx(cl.hermite(n))
    return d if n == 0 else d - cl.hermite(n - 1).scale(n)


@check("classical.even_power_lowering")
def _(n):
    out = []
    for k in range(n // 2 + 1):
        d = cl.hermite(n)
        for _ in range(2 * k):
            d = classical_dx(d)
        out.append(d - cl.hermite(n - 2 * k).scale(factorial(n) // factorial(n - 2 * k)))
    return _first_nonzero(*out)


@check("classical.conjugation")
def _(n):
    # (-s D)(f e^{-x^2/2s}) / e^{-x^2/2s} against (x - s D) f, over monomials of x-degree n
    out = []
    for j in range(3):
        f = Poly2.monomial(n, j) + Poly2.monomial(max(n - 1, 0), j + 1, Fraction(1, 3))
        out.append(cl.gaussian_neg_s_derivative(f) - (mul_x(f) - mul_s(classical_dx(f))))
    return _first_nonzero(*out)


@check("classical.raising")
def _(n):
    return cl.raising_identity(n) - Poly2.monomial(n)


@check("classical.parity")
def _(n):
    even, odd = cl.parity_sums(n)
    return even - odd


@check("classical.t_operator")
def _(n):
    return cl.t_operator(n) - Poly2.monomial(n)


@check("classical.t_hypergeometric")
def _(n):
    alpha, beta = Fraction(3, 7), Fraction(-5, 2)
    return cl.t_poly(2 * n, alpha, beta) - cl.t_poly_hypergeometric(n, alpha, beta)


@check("classical.inversion")
def _(n):
    solved = cl.classical_inversion_solve(n)
    recon = cl.combine_basis(solved, cl.hermite, n) - Poly2.monomial(n)
    diff = [a - b for a, b in zip(solved, cl.classical_inversion_closed_form(n))]
    return _first_nonzero(recon, Poly2(((0, k), d) for k, d in enumerate(diff)))


def _at_x_zero(h: Poly2) -> Poly2:
    return Poly2._raw({k: c for k, c in h._terms.items() if k[0] == 0})


@check("classical.zero_value")
def _(n):
    return _at_x_zero(cl.hermite(n)) - Poly2.monomial(0, n // 2, cl.zero_value(n))


# deformed family ------------------------------------------------------------


@check("q.constructions")
def _(n, q):
    h = qh.q_hermite(n, q)
    return _first_nonzero(h - qh.q_hermite_explicit(n, q), h - qh.q_hermite_product(n, q),
                          h - qh.q_hermite_operator_exp(n, q))


@check("q.lowering")
def _(n, q):
    return qh.lowering_residual(n, q)


@check("q.difference_equation")
def _(n, q):
    return qh.q_difference_residual(n, q)


@check("q.even_power_lowering")
def _(n, q):
    return _first_nonzero(*(qh.even_power_lowering_residual(n, k, q) for k in range(n // 2 + 1)))


@check("q.raising")
def _(n, q):
    target = Poly2.monomial(n)
    return _first_nonzero(qh.raising_identity(n, q) - target, qh.raising_identity_explicit(n, q) - target)


@check("q.zero_value")
def _(n, q):
    return _at_x_zero(qh.q_hermite(n, q)) - qh.zero_value(n, q)


@check("q.inversion_solve")
def _(n, q):
    return qh.q_inversion(n, q).reconstruct() - Poly2.monomial(n)


@check("q.inversion_closed_form")
def _(n, q):
    table = qh.q_inversion(n, q)
    return Poly2(((0, k), a - b) for k, (a, b) in enumerate(zip(table.paper_coeffs, table.coeffs)))


@check("q.inverse_operator")
def _(n, q):
    return qh.inverse_operator_apply(n, q) - Poly2.monomial(n)


@check("q.inverse_operator_printed")
def _(n, q):
    return qh.inverse_operator_apply(n, q, printed=True) - Poly2.monomial(n)


@check("q.unity_corrected")
def _(n, q):
    p = Poly2.monomial(n) + Poly2.monomial(n // 2, 1, 2)
    return qh.unity_composition_apply(p, q, corrected=True) - p


@check("q.unity_printed")
def _(n, q):
    p = Poly2.monomial(n)
    return qh.unity_composition_apply(p, q, corrected=False) - p


@check("q.generating_function")
def _(n, q):
    coeffs = qh.generating_function_coefficients(q, n + 1)
    return coeffs[n] - qh.q_hermite(n, q).scale(1 / q_factorial(n, as_rational(q)))


@check("q.even_odd_generating_functions")
def _(n, q):
    out = []
    for parity in ("even", "odd"):
        lhs, rhs = qh.even_odd_generating_coefficients(q, 2 * n + 1, parity)
        out.append(lhs[2 * n] - rhs[2 * n])
    return _first_nonzero(*out)


@check("q.discrete_q_hermite_1")
def _(n, q):
    q = as_rational(q)
    return qh.q_hermite(n, q).substitute_s(1 - q) - qh.discrete_q_hermite_1(n, q)


@check("q.two_phi_zero")
def _(n, q):
    x, s = Fraction(5, 3), Fraction(2, 7)
    return qh.q_hermite_2phi0(n, q, x, s) - qh.q_hermite(n, q).evaluate(x, s)


@check("q.l_hypergeometric")
def _(n, q):
    alpha, beta = Fraction(2, 5), Fraction(3, 4)
    return qh.l_poly(2 * n, alpha, beta, as_rational(q)) - qh.l_poly_hypergeometric(n, alpha, beta, q)


def _l_limit(alpha, beta, q):
    return numeric_report("q.l_infinity", {"alpha": alpha, "beta": beta, "q": q},
                          qh.l_infinity(alpha, beta, q), qh.l_infinity_closed(alpha, beta, q), 1e-10)


# q^-1 family ---------------------------------------------------------------


@check("qinv.scaling_law")
def _(n, q):
    return Poly2(((0, k), qi.scaling_law_residual(n, k, q)) for k in range(n // 2 + 1))


@check("qinv.coefficient_recursion")
def _(n, q):
    return Poly2(((0, k), qi.coefficient_recursion_residual(n, k, q)) for k in range(n // 2 + 2))


@check("qinv.inverse_coefficient_recursion")
def _(n, q):
    return Poly2(((0, k), qi.inverse_coefficient_recursion_residual(n, k, q)) for k in range(n // 2 + 2))


@check("qinv.polynomial_recursion")
def _(n, q):
    return qi.polynomial_recursion_residual(n, q)


@check("qinv.lowering")
def _(n, q):
    return qi.lowering_residual(n, q)


@check("qinv.factorization")
def _(n, q):
    return qi.factorization_product(n, q) - qi.q_inv_hermite(n, q)


# doubly indexed family ------------------------------------------------------


@check("qp.p2_coincidence")
def _(n, q):
    return qp.qp_hermite_explicit(n, 2, q) - qh.q_hermite(n, q)


@check("qp.constructions")
def _(n, p, q):
    h = qp.qp_hermite_explicit(n, p, q)
    x, s = Fraction(7, 4), Fraction(-2, 9)
    return _first_nonzero(h - qp.qp_hermite_operator(n, p, q),
                          Poly2.const(qp.qp_hermite_phi(n, p, q, x, s) - h.evaluate(x, s)))


@check("qp.lowering")
def _(n, p, q):
    return qp.lowering_residual(n, p, q)


@check("qp.recursion")
def _(n, p, q):
    return qp.recursion_residual(n, p, q)


@check("qp.difference_equation")
def _(n, p, q):
    return qp.difference_residual(n, p, q)


@check("qp.heat")
def _(n, p, q):
    return qp.heat_residual(n, p, q)


@check("qp.heat_printed_base")
def _(n, p, q):
    return qp.heat_residual(n, p, q, s_base=q)


@check("qp.generating_function")
def _(n, p, q):
    x, s = Fraction(1), Fraction(1)
    coeffs = qp._gf_coefficients(p, as_rational(q), x, s, n)
    return coeffs[n] - qp.qp_hermite_explicit(n, p, q).evaluate(x, s) / q_factorial(n, as_rational(q))


@check("qp.gould_hopper_limit")
def _(n, p):
    return qp.gould_hopper_limit_residual(n, p)


@check("qp.habibullah_limit")
def _(n, p):
    return qp.habibullah_limit_residual(n, p)


# identities whose printed form is known to be wrong
DISCREPANT = {
    "q.inversion_closed_form",
    "q.inverse_operator_printed",
    "q.unity_printed",
    "qp.heat_printed_base",
}


def run_task(task) -> VerifyReport:
    name, params = task
    fn = CHECKS[name]
    with stopwatch() as ms:
        result = fn(**params)
    if isinstance(result, VerifyReport):
        result.runtime_ms = ms[0]
        return result
    return exact_report(name, params, result, discrepancy=name in DISCREPANT, runtime_ms=ms[0])


def _numeric_task(task) -> VerifyReport:
    kind, params = task
    with stopwatch() as ms:
        if kind == "q.l_infinity":
            rep = _l_limit(**params)
        else:
            rep = qp.qp_pochhammer_gf(**params)
    rep.runtime_ms = ms[0]
    return rep


NUMERIC = {"q.l_infinity", "qp.pochhammer_gf"}


def _dispatch(task) -> VerifyReport:
    return _numeric_task(task) if task[0] in NUMERIC else run_task(task)


def q_points(n: int, q_samples) -> tuple:
    """``q_samples`` is a count, or None for the certifying count at this n."""
    count = sample_count(n) if q_samples is None else q_samples
    return certifying_q_samples(count)


def plan(suite: str, n_max: int, q_samples=10) -> list:
    """The ordered task list of a suite."""
    if suite == "all":
        return [t for name in SUITES for t in plan(name, n_max, q_samples)]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    tasks = []
    add = lambda name, **params: tasks.append((name, params))  # noqa: E731
    ns = range(n_max + 1)
    if suite == "classical":
        for n in ns:
            for name in ("constructions", "ode", "lowering", "even_power_lowering", "conjugation", "raising",
                         "t_operator", "inversion", "zero_value", "t_hypergeometric"):
                add(f"classical.{name}", n=n)
            if n >= 1:
                add("classical.parity", n=n)
    elif suite == "q":
        for n in ns:
            for q in q_points(n, q_samples):
                for name in ("constructions", "lowering", "difference_equation", "even_power_lowering", "raising",
                             "zero_value", "inversion_solve", "inversion_closed_form", "inverse_operator",
                             "inverse_operator_printed", "unity_corrected", "unity_printed", "generating_function",
                             "even_odd_generating_functions", "discrete_q_hermite_1", "l_hypergeometric"):
                    add(f"q.{name}", n=n, q=q)
                if n >= 1:
                    add("q.two_phi_zero", n=n, q=q)
        for alpha, beta in ((Fraction(1), Fraction(1)), (Fraction(-1, 2), Fraction(1)), (Fraction(1, 3), Fraction(-1))):
            add("q.l_infinity", alpha=alpha, beta=beta, q=Fraction(1, 2))
    elif suite == "qinv":
        for n in ns:
            for q in q_points(n, q_samples):
                for name in ("scaling_law", "coefficient_recursion", "inverse_coefficient_recursion",
                             "polynomial_recursion", "lowering", "factorization"):
                    add(f"qinv.{name}", n=n, q=q)
    else:
        for n in ns:
            for q in q_points(n, q_samples):
                add("qp.p2_coincidence", n=n, q=q)
                for p in (2, 3, 4):
                    for name in ("constructions", "lowering", "recursion", "difference_equation", "heat",
                                 "heat_printed_base", "generating_function"):
                        add(f"qp.{name}", n=n, p=p, q=q)
            for p in (1, 2, 3, 4):
                add("qp.gould_hopper_limit", n=n, p=p)
                add("qp.habibullah_limit", n=n, p=p)
        for c, p, q, x, t, s in ((1, 2, 0.5, 0.5, 0.5, 1), (2, 3, 0.3, 0.8, 0.9, 2), (3, 2, 0.5, 0.5, 0.5, 0),
                                 (1, 4, 0.7, -0.6, 0.4, 0.5)):
            add("qp.pochhammer_gf", c=c, p=p, q=q, x0=x, t0=t, s0=s)
    return tasks


def default_workers() -> int:
    raw = os.environ.get("QHERMITE_WORKERS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"QHERMITE_WORKERS must be an integer, got {raw!r}") from None
    return 1


def run(tasks, workers: int | None = None) -> list:
    """Execute tasks, in a process pool when workers > 1; order is preserved."""
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(tasks) < 2:
        return [_dispatch(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_dispatch, tasks, chunksize=chunk))


def verify(suite: str = "all", n_max: int = 12, q_samples=10, workers: int | None = None) -> list:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return run(plan(suite, n_max, q_samples), workers)


def summarize(reports) -> dict:
    counts = {"pass": 0, "fail": 0, "paper_discrepancy": 0}
    for r in reports:
        counts[r.status] += 1
    return counts
