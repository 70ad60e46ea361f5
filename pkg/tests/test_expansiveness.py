import pytest

from conftest import fib_parts
from nivat.annihilator import difference_product
from nivat.configuration import Sum
from nivat.decomposition import Decomposition
from nivat.expansiveness import (
    CERTIFIED,
    EMPIRICAL,
    WITNESSED,
    WitnessScanner,
    candidate_directions,
    certificate_sets,
    classify,
    expansive_certificate,
    nonexpansive_witness,
    probe_lines,
    szabados_report,
)
from nivat.geometry import OrientedLine, dot

UP, DOWN = OrientedLine((0, 1)), OrientedLine((0, -1))
RIGHT, LEFT = OrientedLine((1, 0)), OrientedLine((-1, 0))


def test_probe_lines():
    lines = probe_lines()
    assert len(lines) == 16 and len(set(lines)) == 16
    assert all(l.reversed() in lines for l in lines)


def test_certificate_sets_single_contact():
    for line in probe_lines()[:4]:
        for _, s in certificate_sets(line, 3):
            n = line.normal
            assert [g for g in s.points if dot(g, n) <= 0] == [(0, 0)]


def test_constant_certificates(const):
    for line in probe_lines():
        cert = expansive_certificate(const, line, 3)
        assert cert is not None and cert.exact
    assert {s.status for s in classify(const, 3).statuses} == {CERTIFIED}


def test_checkerboard(cb):
    assert {s.status for s in classify(cb, 3).statuses} == {CERTIFIED}


def test_tm_witnesses_pair_up(tm):
    scanner = WitnessScanner(tm, 64)
    for r in range(1, 9):
        for line in (UP, DOWN):
            w = scanner.witness(line, r)
            assert w is not None and w.replay(tm)


def test_tm_horizontal_expansive(tm):
    for line in (RIGHT, LEFT):
        assert nonexpansive_witness(tm, line, 4) is None
        cert = expansive_certificate(tm, line, 4)
        assert cert is not None and not cert.exact


def test_witness_and_certificate_exclusive(tm):
    for line in probe_lines():
        w = nonexpansive_witness(tm, line, 3)
        c = expansive_certificate(tm, line, 3)
        assert w is None or c is None


def test_candidates_from_annihilator(fs):
    c = candidate_directions(fs, difference_product([(0, 1), (1, 0)]))
    assert set(c.lines) == {UP, DOWN, RIGHT, LEFT}


def test_candidates_fallback(tm, fs):
    assert {UP, DOWN} <= set(candidate_directions(tm, radius=64).lines)
    c = candidate_directions(fs, radius=64)
    assert {UP, DOWN, RIGHT, LEFT} <= set(c.lines)


def test_classify_tm(tm):
    by = classify(tm, 8).by_line()
    assert by[UP].status == WITNESSED and by[DOWN].status == WITNESSED
    assert by[RIGHT].status == EMPIRICAL and by[LEFT].status == EMPIRICAL


def test_szabados_tm(tm):
    rep = szabados_report(tm, Decomposition([(tm, (0, 1))]))
    assert [v.outcome for v in rep.verdicts] == ["pass", "pass", "pass"]


def test_szabados_checkerboard(cb):
    rep = szabados_report(cb, Decomposition([(cb, (1, 1))]), budget=3)
    assert rep.verdict("A").outcome == "vacuous-pass"
    assert rep.verdict("B").outcome == "fail-expected: doubly periodic"
    assert rep.verdict("C").outcome == "pass"


def test_szabados_fib_sum(fs):
    a, b = fib_parts()
    d = Decomposition([(Sum([(1, a)], periods=[(0, 1)]), (0, 1)),
                       (Sum([(2, b)], periods=[(1, 0)]), (1, 0))], claimed_minimal=True)
    rep = szabados_report(fs, d)
    assert rep.passed
    by = rep.classification.by_line()
    assert by[OrientedLine((1, 1))].status == EMPIRICAL
    assert by[OrientedLine((-1, -1))].status == EMPIRICAL


def test_budget_validation(const):
    with pytest.raises(ValueError):
        classify(const, 0)


def test_tm_period_line_has_no_certificate(tm):
    assert expansive_certificate(tm, UP, 8) is None
    assert nonexpansive_witness(tm, UP, 6).replay(tm)
