"""Verification harness: golden tables, identities, positivity and independent oracles.

Every check returns a :class:`Report`; failures are report content, never
exceptions (apart from violated preconditions).
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Sequence

from refkac.hua import _levels, kac_table, p_series, q_series, refined_kac_table
from refkac.partitions import (
    enumerate_tuples,
    lambda_fiber,
    parse_partition_tuple,
    render_multiplicity,
    render_partition_tuple,
    tau_m,
)
from refkac.qfield import IntPolynomial, RationalFunction, gl_order, parse_rational
from refkac.quiver import Quiver, gamma_m, has_enough_loops, quiver_render, rep_space_exponent
from refkac.series import TruncatedSeries, plethystic_exp, plethystic_log

__all__ = [
    "Case",
    "Report",
    "load_golden",
    "check_tables",
    "check_sum_identity",
    "check_theorem_3_4",
    "check_positivity",
    "check_jordan",
    "check_heine",
    "check_lemma_width1",
    "check_mozgovoy_transport",
    "check_oracle_log",
    "check_gamma_oracle",
    "oracle_log",
    "gamma_m_from_quadratic_form",
    "gloop_closed_forms",
    "random_series",
    "random_enough_loop_quiver",
    "acceptance_series",
    "SUITES",
    "run_suites",
]

TWO_LOOP = Quiver.loops(2)
TABLE3_QUIVER = Quiver(((1, 1), (0, 1)))
A2_QUIVER = Quiver(((0, 1), (0, 0)))
DEFAULT_SEED = 20240601


@dataclass
class Case:
    input: str
    expected: str
    actual: str
    passed: bool

    def to_dict(self) -> dict:
        return {"input": self.input, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class Report:
    name: str
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, input: str, expected, actual, passed: bool | None = None) -> Case:
        if passed is None:
            passed = expected == actual
        case = Case(str(input), str(expected), str(actual), bool(passed))
        self.cases.append(case)
        return case

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "cases": [c.to_dict() for c in self.cases]}

    def summary(self) -> str:
        n_fail = len(self.failures())
        line = f"{self.status.upper():4}  {self.name}: {len(self.cases) - n_fail}/{len(self.cases)} cases"
        details = [f"      FAIL {c.input}: expected {c.expected}, got {c.actual}" for c in self.failures()]
        return "\n".join([line] + details)


# -- golden tables -------------------------------------------------------------

def load_golden(name: str) -> list[list[str]]:
    """Rows of a golden table file, split on tabs, comments dropped."""
    text = resources.files("refkac").joinpath("data", f"{name}.txt").read_text()
    rows = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows


def _match(report: Report, label: str, expected_text: str, value: RationalFunction) -> None:
    expected = parse_rational(expected_text)
    ok = value == expected and str(value) == expected_text
    report.add(label, expected_text, value, ok)


def _parse_dim(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.strip("()").split(","))


def check_tables() -> Report:
    report = Report("tables")

    t1 = kac_table(TWO_LOOP, 4)
    for row, alpha, value in load_golden("table1"):
        _match(report, f"Table 1 {row}", value, t1[_parse_dim(alpha)])

    t2 = refined_kac_table(TWO_LOOP, 4)
    for lam, lam_v, value in load_golden("table2"):
        t = parse_partition_tuple(lam)
        report.add(f"Table 2 {lam} multiplicity", lam_v, render_multiplicity(t))
        _match(report, f"Table 2 {lam}", value, t2[t])

    loops3, a2 = kac_table(TABLE3_QUIVER, 4), kac_table(A2_QUIVER, 4)
    for alpha, v_loops, v_a2 in load_golden("table3"):
        a = _parse_dim(alpha)
        _match(report, f"Table 3 {alpha} {quiver_render(TABLE3_QUIVER)}", v_loops, loops3[a])
        _match(report, f"Table 3 {alpha} {quiver_render(A2_QUIVER)}", v_a2, a2[a])

    r_loops, r_a2 = refined_kac_table(TABLE3_QUIVER, 4), refined_kac_table(A2_QUIVER, 4)
    for lam, lam_v, v_loops, v_a2 in load_golden("table4"):
        t = parse_partition_tuple(lam)
        report.add(f"Table 4 {lam} multiplicity", lam_v, render_multiplicity(t))
        _match(report, f"Table 4 {lam} {quiver_render(TABLE3_QUIVER)}", v_loops, r_loops[t])
        _match(report, f"Table 4 {lam} {quiver_render(A2_QUIVER)}", v_a2, r_a2[t])
    return report


# -- identities ------------------------------------------------------------------

def check_sum_identity(Q: Quiver, W: int) -> Report:
    """A(alpha) equals the sum of refined values over the fiber of alpha."""
    report = Report(f"sum_identity {quiver_render(Q)} W={W}")
    kac = kac_table(Q, W)
    refined = refined_kac_table(Q, W)
    for alpha in kac.keys():
        total = RationalFunction(0)
        for lam in lambda_fiber(alpha):
            total = total + refined[lam]
        report.add(f"alpha={alpha}", kac[alpha], total)
    return report


def gloop_closed_forms(g: int) -> dict[tuple, RationalFunction]:
    """Closed forms for A([2]), A([2,1]), A([2,2]), A([2,1,1]) of the g-loop quiver."""
    q = RationalFunction(IntPolynomial((0, 1)))
    qp = RationalFunction.q_power
    return {
        ((2,),): qp(2 * g - 1),
        ((2, 1),): qp(3 * g - 1) * (qp(2 * g - 2) - 1) / (q - 1),
        ((2, 2),): qp(4 * g - 1) * (qp(4 * g - 4) - 1) / (q * q - 1),
        ((2, 1, 1),): qp(4 * g - 1) * (qp(6 * g - 5) - 2 * qp(2 * g - 1) - qp(2 * g - 2) + q + 1)
        / ((q * q - 1) * (q - 1)),
    }


def _gloop_degree(Q: Quiver) -> int | None:
    return Q.companion[0][0] if Q.n == 1 else None


def check_theorem_3_4(Q: Quiver, m: int, W: int) -> Report:
    """A_Q(lambda) = A_{Gamma_m}(tau_m(lambda)) for all lambda with parts <= m."""
    if not has_enough_loops(Q):
        raise ValueError("the transport identity needs a quiver with enough loops")
    report = Report(f"theorem34 {quiver_render(Q)} m={m} W={W}")
    G = gamma_m(Q, m)
    lhs = refined_kac_table(Q, W, m)
    rhs = refined_kac_table(G, W, 1)
    for lam in enumerate_tuples(Q.n, W, m):
        if not any(lam):
            continue
        image = tau_m(lam, m)
        report.add(
            f"{render_partition_tuple(lam)} -> {render_partition_tuple(image)}",
            lhs[lam],
            rhs[image],
        )
    g = _gloop_degree(Q)
    if g is not None and m >= 2 and W >= 4:
        for lam, closed in gloop_closed_forms(g).items():
            report.add(f"closed form g={g} {render_partition_tuple(lam)}", closed, lhs[lam])
            report.add(f"closed form g={g} Gamma_2 {render_partition_tuple(tau_m(lam, 2))}",
                       closed, refined_kac_table(gamma_m(Q, 2), W, 1)[tau_m(lam, 2)])
    return report


def _shape(r: RationalFunction) -> str:
    if r.is_nonneg_int_poly():
        return "nonnegative polynomial"
    if r.as_polynomial() is not None:
        return "polynomial"
    if r.laurent_terms() is not None:
        return "laurent"
    return "rational"


def check_positivity(Q: Quiver, W: int) -> Report:
    """With enough loops every refined value must be a non-negative integer polynomial;
    otherwise the value's shape is only recorded."""
    loops = has_enough_loops(Q)
    report = Report(f"positivity {quiver_render(Q)} W={W}" + ("" if loops else " (shape only)"))
    table = refined_kac_table(Q, W)
    for lam, value in table.rows():
        label = render_partition_tuple(lam)
        if loops:
            report.add(label, "nonnegative polynomial", f"{value} [{_shape(value)}]", value.is_nonneg_int_poly())
        else:
            report.add(label, "recorded", f"{value} [{_shape(value)}]", True)
    return report


def check_jordan(W: int = 6) -> Report:
    """Jordan quiver: A([n]) = q and every other refined value vanishes."""
    report = Report(f"jordan W={W}")
    table = refined_kac_table(Quiver.loops(1), W)
    q = RationalFunction(IntPolynomial((0, 1)))
    for lam, value in table.rows():
        (p,) = lam
        expected = q if len(p) == 1 else RationalFunction(0)
        report.add(render_partition_tuple(lam), expected, value)
    return report


def _heine_series(W: int) -> list[tuple[str, TruncatedSeries]]:
    """The two q-factorial sums of Heine's identity as series in one variable."""
    qfact, prod = {}, RationalFunction(1)
    for m in range(W + 1):
        if m:
            prod = prod * (1 - RationalFunction.q_power(m))
        qfact[(m,)] = 1 / prod
    gl = {(m,): RationalFunction(IntPolynomial.monomial(m * m), gl_order((m,))) for m in range(W + 1)}
    return [
        (f"Heine q-factorial sum W={W}", TruncatedSeries((1,), W, qfact)),
        (f"Heine q^(m^2)/|GL(m)| sum W={W}", TruncatedSeries((1,), W, gl)),
    ]


def check_heine(W: int = 8) -> Report:
    """Both single-variable forms of Heine's identity, coefficientwise."""
    if W < 1:
        raise ValueError("need W >= 1")
    report = Report(f"heine W={W}")
    one_minus_q = RationalFunction(IntPolynomial((1, -1)))
    q_minus_one = -one_minus_q
    q = RationalFunction(IntPolynomial((0, 1)))

    (_, qfact), (_, gl) = _heine_series(W)
    rhs = plethystic_exp(TruncatedSeries.variable(0, (1,), W, 1 / one_minus_q))
    for m in range(W + 1):
        report.add(f"X^{m} of Exp(X/(1-q))", qfact.coefficient((m,)), rhs.coefficient((m,)))

    rhs2 = plethystic_exp(TruncatedSeries.variable(0, (1,), W, q / q_minus_one))
    for m in range(W + 1):
        report.add(f"X^{m} of Exp(qX/(q-1))", gl.coefficient((m,)), rhs2.coefficient((m,)))
    return report


def _dim_vectors(n: int, W: int) -> Iterable[tuple[int, ...]]:
    for lam in enumerate_tuples(n, W, 1):
        yield tuple(len(p) for p in lam)


def check_lemma_width1(Q: Quiver, W: int) -> Report:
    """sum_alpha |R(alpha)|/|GL(alpha)| X^alpha = Exp((q-1)^-1 sum A(lambda) X^lambda^v)
    over tuples of all-ones partitions."""
    report = Report(f"lemma_width1 {quiver_render(Q)} W={W}")
    n = Q.n
    weights = (1,) * n
    lhs = TruncatedSeries(weights, W, [
        (a, RationalFunction(IntPolynomial.monomial(rep_space_exponent(Q, a)), gl_order(a)))
        for a in _dim_vectors(n, W)
    ])
    table = refined_kac_table(Q, W, 1)
    inv = RationalFunction(1) / RationalFunction(IntPolynomial((-1, 1)))
    gen = TruncatedSeries(weights, W, [(tuple(len(p) for p in lam), v * inv) for lam, v in table.rows()])
    rhs = plethystic_exp(gen)
    for a in _dim_vectors(n, W):
        report.add(f"alpha={a}", lhs.coefficient(a), rhs.coefficient(a))
    return report


# -- random generators ----------------------------------------------------------------

_DENOMS = [
    IntPolynomial((1,)),
    IntPolynomial((0, 1)),
    IntPolynomial((-1, 1)),
    IntPolynomial((1, 0, 1)),
    IntPolynomial((2,)),
    IntPolynomial((1, 1)),
]


def random_rf(rng: random.Random, allow_zero: bool = False) -> RationalFunction:
    while True:
        num = IntPolynomial(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
        r = RationalFunction(num, rng.choice(_DENOMS))
        if r or allow_zero:
            return r


def random_series(rng: random.Random, n: int, W: int, nterms: int = 5, constant: int = 0) -> TruncatedSeries:
    """Random series in n weight-1 variables with the given constant term."""
    keys = [a for a in _dim_vectors(n, W) if any(a)]
    chosen = rng.sample(keys, min(nterms, len(keys)))
    terms = [(k, random_rf(rng)) for k in chosen]
    if constant:
        terms.append(((0,) * n, RationalFunction(constant)))
    return TruncatedSeries((1,) * n, W, terms)


def random_enough_loop_quiver(rng: random.Random, n_max: int = 3, entry_max: int = 3) -> Quiver:
    n = rng.randint(1, n_max)
    rows = []
    for i in range(n):
        rows.append(tuple(rng.randint(1 if i == j else 0, entry_max) for j in range(n)))
    return Quiver(tuple(rows))


# -- transport of positivity ---------------------------------------------------------

def check_mozgovoy_transport(trials: int = 20, W: int = 4, seed: int = DEFAULT_SEED, n_max: int = 2) -> Report:
    """Twisting a positive series by q^(alpha C alpha^t) keeps it positive."""
    report = Report(f"transport trials={trials} W={W} seed={seed}")
    rng = random.Random(seed)
    q_minus_one = RationalFunction(IntPolynomial((-1, 1)))

    def build(n, v):
        weights = (1,) * n
        return plethystic_exp(TruncatedSeries(weights, W, [(a, c / q_minus_one) for a, c in v.items()]))

    def recover(U, C):
        twisted = TruncatedSeries(U.weights, W, [
            (a, c * RationalFunction.q_power(sum(a[i] * C[i][j] * a[j] for i in range(len(a)) for j in range(len(a)))))
            for a, c in U.terms.items()
        ])
        return plethystic_log(twisted).scale(q_minus_one)

    for trial in range(trials):
        n = rng.randint(1, n_max)
        v = {}
        for a in _dim_vectors(n, W):
            if any(a) and rng.random() < 0.6:
                c = IntPolynomial(rng.randint(0, 2) for _ in range(rng.randint(1, 3)))
                if c:
                    v[a] = RationalFunction(c)
        if not v:
            v[(1,) + (0,) * (n - 1)] = RationalFunction(1)
        U = build(n, v)
        zero = tuple((0,) * n for _ in range(n))
        if trial == 0:
            # C = 0: the twist is the identity, so the generators come back unchanged
            back = recover(U, zero)
            same = all(back.coefficient(a) == v.get(a, RationalFunction(0)) for a in _dim_vectors(n, W) if any(a))
            report.add(f"C=0 n={n} recovers generators", True, same, same)
        C = tuple(tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(n))
        V = recover(U, C)
        bad = [f"{a}:{c}" for a, c in V.sorted_items() if not c.is_nonneg_int_poly()]
        desc = f"n={n} C={[list(r) for r in C]} v={ {a: str(c) for a, c in sorted(v.items())} }"
        report.add(desc, "all nonnegative polynomials", "ok" if not bad else "; ".join(bad), not bad)
    return report


# -- independent oracles -----------------------------------------------------------------

def oracle_log(f: TruncatedSeries) -> TruncatedSeries:
    """Solve Exp(L) = f one weight at a time; independent of the Moebius formula."""
    if f.constant_term() != RationalFunction(1):
        raise ValueError("oracle_log needs constant term 1")
    L: dict = {}
    for w in range(1, f.bound + 1):
        partial = TruncatedSeries(f.weights, w, L)
        E = plethystic_exp(partial)
        keys = set(f.homogeneous(w)) | set(E.homogeneous(w))
        for k in keys:
            c = f.coefficient(k) - E.coefficient(k)
            if c:
                L[k] = c
    return TruncatedSeries(f.weights, f.bound, L)


def gamma_m_from_quadratic_form(Q: Quiver, m: int) -> tuple[tuple[int, ...], ...]:
    """Companion matrix of Gamma_m read off a direct expansion of
    sum_k alpha^k (alpha^k)^t + beta^k (C - I) (beta^k)^t."""
    n = Q.n
    D = [[Q.companion[i][j] - (i == j) for j in range(n)] for i in range(n)]
    idx = lambda i, k: (k - 1) * n + i  # noqa: E731
    coeff: dict[tuple[int, int], int] = {}

    def bump(u, w, c):
        key = (min(u, w), max(u, w))
        coeff[key] = coeff.get(key, 0) + c

    for k in range(1, m + 1):
        for i in range(n):
            bump(idx(i, k), idx(i, k), 1)
        # beta^k = sum_{j >= k} alpha^j
        for i in range(n):
            for s in range(n):
                if not D[i][s]:
                    continue
                for a in range(k, m + 1):
                    for b in range(k, m + 1):
                        bump(idx(i, a), idx(s, b), D[i][s])
    size = n * m
    M = [[0] * size for _ in range(size)]
    for (u, w), c in coeff.items():
        M[u][w] = c
    return tuple(map(tuple, M))


def check_oracle_log(series: Sequence[tuple[str, TruncatedSeries]]) -> Report:
    report = Report("oracle_log")
    for label, f in series:
        fast = plethystic_log(f)
        slow = oracle_log(f)
        report.add(label, f"{len(slow.terms)} terms", f"{len(fast.terms)} terms", fast == slow)
    return report


def check_gamma_oracle(trials: int = 30, seed: int = DEFAULT_SEED) -> Report:
    report = Report(f"gamma_m closed form trials={trials} seed={seed}")
    rng = random.Random(seed)
    for _ in range(trials):
        Q = random_enough_loop_quiver(rng)
        m = rng.randint(1, 3)
        closed = gamma_m(Q, m).companion
        oracle = gamma_m_from_quadratic_form(Q, m)
        report.add(f"{quiver_render(Q)} m={m}", oracle, closed)
    return report


def acceptance_series(seed: int = DEFAULT_SEED, random_cases: int = 50) -> list[tuple[str, TruncatedSeries]]:
    """Every generating series the acceptance checks take a Log of, plus random ones."""
    out: list[tuple[str, TruncatedSeries]] = []
    for Q, W in [(TWO_LOOP, 4), (TABLE3_QUIVER, 4), (A2_QUIVER, 4), (Quiver.loops(3), 3)]:
        out.append((f"P {quiver_render(Q)} W={W}", p_series(Q, W)))
        out.append((f"Q {quiver_render(Q)} W={W}", q_series(Q, W)))
    for g in (1, 2, 3):
        Q = Quiver.loops(g)
        out.append((f"Q {quiver_render(Q)} W=4 m=2", q_series(Q, 4, 2)))
        G = gamma_m(Q, 2)
        out.append((f"Q {quiver_render(G)} W=4 m=1", q_series(G, 4, 1)))
        out.append((f"Q {quiver_render(Q)} W=4", q_series(Q, 4)))
    out.append(("Q [[1]] W=6", q_series(Quiver.loops(1), 6)))
    out.extend(_heine_series(8))
    for Q in (TWO_LOOP, A2_QUIVER):
        out.append((f"Q {quiver_render(Q)} W=3 m=1", q_series(Q, 3, 1)))
    rng = random.Random(seed)
    for i in range(random_cases):
        n = rng.randint(1, 3)
        W = rng.randint(1, 5)
        out.append((f"random #{i} n={n} W={W}", random_series(rng, n, W, rng.randint(1, 5), constant=1)))
    return out


# -- suites ------------------------------------------------------------------------------

def _suite_tables(seed, weight):
    return [check_tables()]


def _suite_sums(seed, weight):
    cases = [(TWO_LOOP, 4), (TABLE3_QUIVER, 4), (A2_QUIVER, 4), (Quiver.loops(3), 3)]
    return [check_sum_identity(Q, weight or W) for Q, W in cases]


def _suite_theorem34(seed, weight):
    return [check_theorem_3_4(Quiver.loops(g), 2, weight or 4) for g in (1, 2, 3)] + [
        check_theorem_3_4(TABLE3_QUIVER, 2, weight or 4)
    ]


def _suite_positivity(seed, weight):
    quivers = [Quiver.loops(1), TWO_LOOP, Quiver.loops(3), TABLE3_QUIVER, A2_QUIVER]
    return [check_positivity(Q, weight or 4) for Q in quivers]


def _suite_jordan(seed, weight):
    return [check_jordan(weight or 6)]


def _suite_heine(seed, weight):
    return [check_heine(weight or 8)]


def _suite_width1(seed, weight):
    return [check_lemma_width1(Q, weight or 3) for Q in (TWO_LOOP, A2_QUIVER, TABLE3_QUIVER)]


def _suite_transport(seed, weight):
    return [check_mozgovoy_transport(20, weight or 4, seed)]


def _suite_oracle(seed, weight):
    return [check_oracle_log(acceptance_series(seed))]


def _suite_gamma(seed, weight):
    return [check_gamma_oracle(30, seed)]


SUITES: dict[str, Callable[[int, int | None], list[Report]]] = {
    "tables": _suite_tables,
    "sums": _suite_sums,
    "theorem34": _suite_theorem34,
    "positivity": _suite_positivity,
    "jordan": _suite_jordan,
    "heine": _suite_heine,
    "width1": _suite_width1,
    "transport": _suite_transport,
    "oracle": _suite_oracle,
    "gamma": _suite_gamma,
}


def _run_one(args) -> list[Report]:
    name, seed, weight = args
    return SUITES[name](seed, weight)


def run_suites(
    names: Sequence[str] | None = None,
    seed: int = DEFAULT_SEED,
    weight: int | None = None,
    workers: int | None = None,
) -> list[Report]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s) {', '.join(unknown)}; available: {', '.join(SUITES)}")
    if workers is None:
        workers = int(os.environ.get("REFKAC_WORKERS", "1"))
    jobs = [(n, seed, weight) for n in names]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return [r for batch in results for r in batch]
