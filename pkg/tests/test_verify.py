import random

import pytest

from refkac.hua import p_series
from refkac.qfield import parse_rational
from refkac.quiver import Quiver
from refkac.series import TruncatedSeries, plethystic_exp, plethystic_log
from refkac.verify import (
    SUITES,
    check_gamma_oracle,
    check_heine,
    check_jordan,
    check_lemma_width1,
    check_mozgovoy_transport,
    check_positivity,
    check_sum_identity,
    check_tables,
    check_theorem_3_4,
    gloop_closed_forms,
    load_golden,
    oracle_log,
    random_series,
    run_suites,
)

A2 = Quiver(((0, 1), (0, 0)))
TABLE3 = Quiver(((1, 1), (0, 1)))


def test_golden_files_shape():
    assert len(load_golden("table1")) == 4
    assert len(load_golden("table2")) == 11
    assert len(load_golden("table3")) == 8
    assert len(load_golden("table4")) == 15
    for name in ("table1", "table2", "table3", "table4"):
        for row in load_golden(name):
            for value in row[-2:]:
                if "q" in value or value.lstrip("-").isdigit():
                    assert str(parse_rational(value)) == value


def test_check_tables_report():
    r = check_tables()
    assert r.passed, r.summary()
    labels = {c.input: c for c in r.cases}
    assert labels["Table 1 n=4"].actual == "q^17+q^15+q^14+2q^13+q^12+3q^11+2q^10+4q^9+2q^8+3q^7+q^6+q^5"
    assert labels["Table 2 [1,1,1,1]"].actual == "q^17+q^15+q^14+2q^13+q^12+2q^11+q^10+q^9"
    assert labels["Table 4 ([2],[2]) [[0,1],[0,0]]"].actual == "q^-1+q^-2"


def test_report_format():
    r = check_heine(3)
    d = r.to_dict()
    assert d["name"] == "heine W=3" and d["status"] == "pass"
    assert set(d["cases"][0]) == {"input", "expected", "actual", "pass"}
    r.add("forced", "1", "2")
    assert r.status == "fail" and "FAIL forced" in r.summary()


def test_sum_identity_examples():
    r = check_sum_identity(Quiver.loops(2), 2)
    assert r.passed
    assert [c.expected for c in r.cases] == ["q^2", "q^5+q^3"]
    assert check_sum_identity(TABLE3, 4).passed


@pytest.mark.parametrize("g", [1, 2, 3])
def test_theorem34_gloop(g):
    r = check_theorem_3_4(Quiver.loops(g), 2, 4)
    assert r.passed, r.summary()
    assert sum("closed form" in c.input for c in r.cases) == 8


def test_closed_forms_at_g2_match_table2():
    forms = gloop_closed_forms(2)
    assert forms[((2,),)] == parse_rational("q^3")
    assert forms[((2, 1),)] == parse_rational("q^6+q^5")
    assert forms[((2, 2),)] == parse_rational("q^9+q^7")
    assert forms[((2, 1, 1),)] == parse_rational("q^11+q^10+2q^9+2q^8+q^7")


def test_theorem34_trivial_m1_and_precondition():
    assert check_theorem_3_4(TABLE3, 1, 3).passed
    with pytest.raises(ValueError):
        check_theorem_3_4(A2, 2, 3)


def test_positivity_records_shapes():
    r = check_positivity(A2, 2)
    case = {c.input: c for c in r.cases}["([0],[1,1])"]
    assert case.actual == "-q^-1 [laurent]"
    assert r.passed
    assert check_positivity(Quiver.loops(2), 4).passed


def test_jordan():
    assert check_jordan(6).passed


def test_heine_coefficients():
    r = check_heine(8)
    assert r.passed
    case = {c.input: c for c in r.cases}["X^2 of Exp(qX/(q-1))"]
    assert parse_rational(case.actual) == parse_rational("q^4/(q^4-q^3-q^2+q)")
    with pytest.raises(ValueError):
        check_heine(0)


@pytest.mark.parametrize("Q", [Quiver.loops(2), A2])
def test_lemma_width1(Q):
    assert check_lemma_width1(Q, 3).passed
    assert check_lemma_width1(Q, 0).passed


def test_transport():
    r = check_mozgovoy_transport(20, 4, seed=3)
    assert r.passed, r.summary()
    assert r.cases[0].input.startswith("C=0")


def test_oracle_log_examples():
    X = TruncatedSeries.variable(0, (1,), 4)
    assert oracle_log(plethystic_exp(X)) == X
    assert oracle_log(TruncatedSeries.one((1, 1), 3)).is_zero()
    f = p_series(Quiver.loops(2), 3)
    assert oracle_log(f) == plethystic_log(f)
    with pytest.raises(ValueError):
        oracle_log(TruncatedSeries.zero((1,), 2))


def test_oracle_log_random():
    rng = random.Random(11)
    for _ in range(10):
        f = random_series(rng, rng.randint(1, 3), rng.randint(1, 4), 4, constant=1)
        assert oracle_log(f) == plethystic_log(f)


def test_gamma_oracle():
    assert check_gamma_oracle(30, seed=5).passed


def test_run_suites_unknown():
    with pytest.raises(KeyError, match="available"):
        run_suites(["nope"])


def test_run_suites_parallel_matches_serial():
    names = ["heine", "jordan", "tables"]
    serial = [r.to_dict() for r in run_suites(names, workers=1)]
    parallel = [r.to_dict() for r in run_suites(names, workers=2)]
    assert serial == parallel


def test_all_suites_listed():
    assert set(SUITES) >= {"tables", "theorem34", "heine"}
