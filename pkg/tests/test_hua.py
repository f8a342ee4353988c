import pytest

from refkac.hua import (
    hua_term,
    kac_table,
    key_to_tuple,
    level_tuples,
    p_series,
    q_series,
    refined_kac_table,
    refined_key,
)
from refkac.partitions import enumerate_tuples, lambda_fiber
from refkac.qfield import IntPolynomial, RationalFunction, gl_order, parse_rational
from refkac.quiver import Quiver, gamma_m
from refkac.series import TruncatedSeries

R = parse_rational
TWO = Quiver.loops(2)
A2 = Quiver(((0, 1), (0, 0)))
TABLE3 = Quiver(((1, 1), (0, 1)))


def gloop_level2_term(g, m1, m2):
    """The g-loop two-level term as displayed for Q^2 of the g-loop quiver."""
    e = (1 - g) * m1 * m1 - (1 - g) * (m1 + m2) ** 2 + g * m1 * m1 + g * m2 * m2
    return RationalFunction.q_power(e) / RationalFunction(gl_order((m1,)) * gl_order((m2,)))


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("m1, m2", [(0, 1), (1, 1), (2, 1), (0, 2), (3, 0)])
def test_hua_term_gloop(g, m1, m2):
    term = hua_term(Quiver.loops(g), [(m1,), (m2,)])
    assert term == gloop_level2_term(g, m1, m2)
    # the simplified exponent g m1^2 + (2g-1) m2^2 + 2(g-1) m1 m2
    e = g * m1 * m1 + (2 * g - 1) * m2 * m2 + 2 * (g - 1) * m1 * m2
    assert term == RationalFunction(IntPolynomial.monomial(e), gl_order((m1, m2)))


def test_hua_term_small():
    assert hua_term(TABLE3, [(0, 0)]) == 1
    assert hua_term(TWO, [(1,)]) == R("q^2/(q-1)")
    assert hua_term(TWO, [(1,), (0,), (0,)]) == hua_term(TWO, [(1,)])
    with pytest.raises(ValueError):
        hua_term(TWO, [(1, 0)])


def test_level_tuples_unique():
    tuples = list(level_tuples(2, 4, 4))
    assert len(tuples) == len(set(tuples))
    assert all(sum((k + 1) * sum(a) for k, a in enumerate(t)) <= 4 for t in tuples)
    # one level tuple per partition tuple of weight <= 4
    assert len(tuples) == len(list(enumerate_tuples(2, 4)))


def test_p_series_small():
    assert p_series(TWO, 0) == TruncatedSeries.one((1,), 0)
    assert p_series(TWO, 1) == TruncatedSeries((1,), 1, {(0,): 1, (1,): R("q^2/(q-1)")})
    assert q_series(TWO, 0) == TruncatedSeries.one((1,), 0)


@pytest.mark.parametrize("Q", [TWO, A2, TABLE3, Quiver.loops(1)])
def test_width1_series_is_hua_sum(Q):
    W = 3
    s = q_series(Q, W, 1)
    for t in enumerate_tuples(Q.n, W, 1):
        a = tuple(len(p) for p in t)
        expected = RationalFunction(IntPolynomial.monomial(sum(
            a[i] * Q.companion[i][j] * a[j] for i in range(Q.n) for j in range(Q.n))), gl_order(a))
        assert s.coefficient(a) == expected


def test_gloop_level2_series():
    g, W = 3, 4
    s = q_series(Quiver.loops(g), W, 2)
    for m1 in range(W + 1):
        for m2 in range((W - m1) // 2 + 1):
            assert s.coefficient((m1, m2)) == gloop_level2_term(g, m1, m2)


@pytest.mark.parametrize(
    "Q, alpha, expected",
    [
        (TWO, (3,), "q^10+q^8+q^7+q^6+q^5+q^4"),
        (A2, (1, 2), "0"),
        (TABLE3, (2, 2), "q^5+q^4+3q^3+q^2"),
        (A2, (1, 1), "1"),
    ],
)
def test_kac_table_examples(Q, alpha, expected):
    assert kac_table(Q, 4)[alpha] == R(expected)


@pytest.mark.parametrize(
    "Q, lam, expected",
    [
        (TWO, ((2, 1),), "q^6+q^5"),
        (A2, ((1,), (1, 1)), "-q^-1"),
        (TABLE3, ((2,), (2,)), "q^3+q^2"),
    ],
)
def test_refined_examples(Q, lam, expected):
    assert refined_kac_table(Q, 4)[lam] == R(expected)


def test_table_queries():
    t = kac_table(A2, 3)
    assert t[(0, 3)] == 0
    with pytest.raises(KeyError):
        t[(0, 4)]
    with pytest.raises(KeyError):
        t[(0, 0)]
    r = refined_kac_table(TWO, 3, 2)
    with pytest.raises(KeyError):
        r[((3,),)]
    assert kac_table(TWO, 0).rows() == []


@pytest.mark.parametrize("Q, W", [(TWO, 4), (A2, 4), (TABLE3, 4), (Quiver.loops(3), 3), (Quiver(((0, 2), (0, 0))), 4)])
def test_specialization_identity(Q, W):
    kac = kac_table(Q, W)
    refined = refined_kac_table(Q, W)
    for alpha in kac.keys():
        total = sum((refined[lam] for lam in lambda_fiber(alpha)), RationalFunction(0))
        assert total == kac[alpha]


@pytest.mark.parametrize("Q", [TWO, A2, TABLE3])
def test_level_consistency(Q):
    W = 4
    full = refined_kac_table(Q, W)
    for m in (1, 2, 3):
        part = refined_kac_table(Q, W, m)
        for lam, v in part.rows():
            assert full[lam] == v


@pytest.mark.parametrize("Q", [TWO, A2, TABLE3, Quiver(((0, 3), (0, 0))), Quiver(((1, 1, 0), (0, 0, 1), (0, 0, 2)))])
def test_kac_polynomiality(Q):
    for _, v in kac_table(Q, 4 if Q.n < 3 else 3).rows():
        assert v.as_polynomial() is not None


def test_a2_roots():
    roots = {(1, 0), (0, 1), (1, 1)}
    for alpha, v in kac_table(A2, 4).rows():
        assert v == (1 if alpha in roots else 0)


@pytest.mark.parametrize("Q, m, W", [(TWO, 2, 4), (TABLE3, 2, 4), (Quiver.loops(3), 3, 4)])
def test_gamma_series_reindexing(Q, m, W):
    """Q^m of Q equals the width-1 series of Gamma_m after X_ik -> X_(i,k)^k."""
    lhs = q_series(Q, W, m)
    G = gamma_m(Q, m)
    rhs = q_series(G, W, 1)
    n = Q.n
    for key, v in rhs.terms.items():
        # Gamma_m vertices are level-major: index (k-1)*n + i
        refined = tuple(key[(k - 1) * n + i] for i in range(n) for k in range(1, m + 1))
        weight = sum(k * refined[i * m + k - 1] for i in range(n) for k in range(1, m + 1))
        if weight <= W:
            assert lhs.coefficient(refined) == v
    assert len(lhs.terms) <= len(rhs.terms)


def test_key_roundtrip():
    for t in enumerate_tuples(2, 4):
        assert key_to_tuple(refined_key(t, 4), 2) == t
