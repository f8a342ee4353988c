from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refkac.hua import key_to_tuple, q_series, refined_key
from refkac.qfield import IntPolynomial, RationalFunction, gl_order, parse_rational
from refkac.quiver import Quiver
from refkac.series import (
    SeriesContextError,
    TruncatedSeries,
    adams,
    formal_exp,
    formal_log,
    moebius,
    plethystic_exp,
    plethystic_log,
    series_add,
    series_mul,
)

R = parse_rational
q = R("q")


def one_var(bound, coeffs):
    return TruncatedSeries((1,), bound, {(k,): c for k, c in enumerate(coeffs)})


def test_ring_examples():
    a = one_var(2, [1, 1])
    b = one_var(2, [1, -1])
    assert series_mul(a, b) == one_var(2, [1, 0, -1])
    assert series_mul(one_var(1, [1, 1]), one_var(1, [1, 1])) == one_var(1, [1, 2])
    assert series_add(a, TruncatedSeries.zero((1,), 2)) == a


def test_context_mismatch():
    with pytest.raises(SeriesContextError):
        one_var(2, [1]) * one_var(3, [1])
    with pytest.raises(SeriesContextError):
        one_var(2, [1]) + TruncatedSeries.one((1, 1), 2)


def test_terms_above_bound_dropped():
    s = TruncatedSeries((1, 2), 3, {(1, 1): 1, (0, 2): 5, (3, 0): 2})
    assert s.terms == {(1, 1): RationalFunction(1), (3, 0): RationalFunction(2)}


def test_adams_examples():
    c = R("(q+1)/(q-1)")
    s = TruncatedSeries((1,), 4, {(1,): c})
    assert adams(s, 2) == TruncatedSeries((1,), 4, {(2,): c.substitute_power(2)})
    assert adams(s, 1) == s
    t = TruncatedSeries((1, 1), 6, {(1, 1): q})
    assert adams(t, 3) == TruncatedSeries((1, 1), 6, {(3, 3): R("q^3")})
    assert adams(t, 4).is_zero()


def test_formal_log_mercator():
    assert formal_log(one_var(3, [1, 1])) == one_var(3, [0, 1, Fraction(-1, 2), Fraction(1, 3)])


def test_formal_exp_zero_and_errors():
    assert formal_exp(TruncatedSeries.zero((1,), 3)) == TruncatedSeries.one((1,), 3)
    with pytest.raises(ValueError):
        formal_exp(one_var(3, [1, 1]))
    with pytest.raises(ValueError):
        formal_log(one_var(3, [2, 1]))
    with pytest.raises(ValueError):
        plethystic_exp(one_var(3, [1]))
    with pytest.raises(ValueError):
        plethystic_log(one_var(3, [0, 1]))


def test_exp_of_single_variable_is_geometric():
    # Exp(X) = exp(sum X^d/d) = 1/(1-X)
    assert plethystic_exp(one_var(3, [0, 1])) == one_var(3, [1, 1, 1, 1])
    assert plethystic_log(one_var(5, [1] * 6)) == one_var(5, [0, 1])


def q_factorial_sum(W):
    """sum_m X^m / ((1-q)(1-q^2)...(1-q^m)) evaluated term by term."""
    coeffs = []
    den = RationalFunction(1)
    for m in range(W + 1):
        if m:
            den = den * (1 - RationalFunction.q_power(m))
        coeffs.append(1 / den)
    return one_var(W, coeffs)


def test_heine_identity():
    gen = one_var(8, [0, 1 / (1 - q)])
    assert plethystic_exp(gen) == q_factorial_sum(8)
    assert plethystic_log(q_factorial_sum(8)) == gen


def test_exp_of_q_over_q_minus_one():
    W = 4
    lhs = plethystic_exp(TruncatedSeries((1, 1), W, {(1, 0): q / (q - 1), (0, 1): q / (q - 1)}))
    for a in [(i, j) for i in range(W + 1) for j in range(W + 1 - i)]:
        expected = RationalFunction(IntPolynomial.monomial(a[0] ** 2 + a[1] ** 2), gl_order(a))
        assert lhs.coefficient(a) == expected


@pytest.mark.parametrize("d, mu", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0), (7, -1)])
def test_moebius(d, mu):
    assert moebius(d) == mu


def test_moebius_divisor_sum():
    for n in range(1, 60):
        assert sum(moebius(d) for d in range(1, n + 1) if n % d == 0) == (1 if n == 1 else 0)


# -- random series -----------------------------------------------------------------------

coeffs = st.builds(
    RationalFunction,
    st.lists(st.integers(-3, 3), min_size=1, max_size=3).map(IntPolynomial),
    st.sampled_from([IntPolynomial((1,)), IntPolynomial((-1, 1)), IntPolynomial((0, 1)), IntPolynomial((2,))]),
)


@st.composite
def series(draw, constant=0, n=None, bound=None):
    n = n or draw(st.integers(1, 3))
    bound = bound or draw(st.integers(1, 5 if n == 1 else 4))
    keys = [k for k in _keys(n, bound) if any(k)]
    chosen = draw(st.lists(st.sampled_from(keys), max_size=5, unique=True))
    terms = {k: draw(coeffs) for k in chosen}
    if constant:
        terms[(0,) * n] = RationalFunction(constant)
    return TruncatedSeries((1,) * n, bound, terms)


def _keys(n, bound):
    if n == 0:
        return [()]
    return [(a,) + rest for a in range(bound + 1) for rest in _keys(n - 1, bound - a)]


@settings(max_examples=50)
@given(series())
def test_log_exp_roundtrip(s):
    assert plethystic_log(plethystic_exp(s)) == s


@settings(max_examples=50)
@given(series(constant=1))
def test_exp_log_roundtrip(f):
    assert plethystic_exp(plethystic_log(f)) == f


@settings(max_examples=30)
@given(st.data())
def test_exp_is_multiplicative(data):
    n = data.draw(st.integers(1, 2))
    bound = data.draw(st.integers(1, 4))
    a = data.draw(series(n=n, bound=bound))
    b = data.draw(series(n=n, bound=bound))
    assert plethystic_exp(a + b) == plethystic_exp(a) * plethystic_exp(b)


@settings(max_examples=30)
@given(st.data(), st.integers(1, 3))
def test_adams_is_ring_morphism(data, d):
    n = data.draw(st.integers(1, 2))
    bound = data.draw(st.integers(1, 5))
    a = data.draw(series(n=n, bound=bound, constant=1))
    b = data.draw(series(n=n, bound=bound))
    assert adams(a * b, d) == adams(a, d) * adams(b, d)
    assert adams(a + b, d) == adams(a, d) + adams(b, d)


def test_refined_keys_stay_multiplicity_matrices():
    Q = Quiver(((1, 1), (0, 1)))
    f = q_series(Q, 4)
    L = len(f.weights) // Q.n
    for s in (f * f, adams(f, 2), plethystic_log(f)):
        for key in s.terms:
            assert s.weight(key) <= 4
            t = key_to_tuple(key, Q.n)
            assert refined_key(t, L) == key
            assert sum(map(sum, t)) == s.weight(key)


def test_dump_is_graded_lex():
    s = TruncatedSeries((1, 1), 2, {(0, 1): 1, (1, 0): 2, (0, 2): 3, (0, 0): 1})
    assert s.dump().splitlines()[1:] == ["[0, 0]: 1", "[0, 1]: 1", "[1, 0]: 2", "[0, 2]: 3"]
