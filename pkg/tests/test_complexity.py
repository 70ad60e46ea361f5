import pytest

from conftest import fib_sum
from nivat.complexity import (
    census,
    complexity_rect,
    extension_count,
    extension_counts,
    find_minimal_generating,
    is_generated,
    is_generating_set,
    morse_hedlund,
)
from nivat.configuration import window, window_period_check
from nivat.errors import ComplexityPreconditionError, ExactnessUnavailable, PatternNotInLanguage
from nivat.geometry import OrientedLine, convex_subsets, hull, rectangle
from nivat.sequences import EventuallyPeriodic, PeriodicWord, fibonacci


def brute_census(src, pts, radius):
    pts = sorted(pts, key=lambda g: (g[1], g[0]))
    return {
        tuple(src.eval((g[0] + ux, g[1] + uy)) for g in pts)
        for uy in range(-radius, radius + 1) for ux in range(-radius, radius + 1)
    }


def test_census_examples(const, cb, fl):
    assert census(const, rectangle(3, 2)).count == 1
    assert census(cb, rectangle(3, 3)).count == 2
    assert census(fl, rectangle(4, 1), 100).count == 5


def test_exactness_unavailable(fl):
    with pytest.raises(ExactnessUnavailable, match="exactness unavailable"):
        census(fl, rectangle(2, 1))


def test_census_matches_brute_force(fs, tm):
    shape = hull([(0, 0), (2, 0), (0, 2), (1, 3)]).points
    for src in (fs, tm):
        assert set(census(src, shape, 12).patterns) == brute_census(src, shape, 12)


def test_complexity_rect_examples(cb, fs, const):
    assert complexity_rect(cb, 2, 3) == 2
    assert complexity_rect(fs, 3, 3, 200) >= 10
    assert complexity_rect(const, 4, 5) == 1


def test_sampled_never_exceeds_exact(p32):
    exact = census(p32, rectangle(3, 3)).count
    for r in (0, 1, 2, 5):
        assert census(p32, rectangle(3, 3), r).count <= exact
    assert census(p32, rectangle(3, 3), 5).count == exact


def test_monotonicity(fs):
    big = rectangle(3, 3)
    for s in convex_subsets(rectangle(2, 2)):
        assert census(fs, s, 30).count <= census(fs, big, 30).count


def test_generated_examples(const, cb, fl):
    assert is_generated(const, rectangle(3, 3), (1, 2))
    assert is_generated(cb, rectangle(2, 2), (1, 1))
    assert not is_generated(fl, rectangle(2, 1), (1, 0), 100)
    assert is_generating_set(const, rectangle(2, 2))
    assert not is_generating_set(fl, rectangle(2, 1), 100)


def test_find_minimal_generating(const, cb):
    m = find_minimal_generating(const, rectangle(3, 3))
    assert m.cardinality == 1 and m.generating and m.method == "exhaustive"
    m = find_minimal_generating(cb, rectangle(3, 3))
    assert m.cardinality == 2 and m.count == 2
    with pytest.raises(ComplexityPreconditionError, match="complexity precondition violated"):
        find_minimal_generating(fib_sum(), rectangle(3, 3), 100)


def test_find_minimal_generating_greedy(cb):
    m = find_minimal_generating(cb, rectangle(4, 4))
    assert m.method == "greedy" and m.count <= m.cardinality


def test_extension_counts(const, cb, fl):
    assert list(extension_counts(const, rectangle(2, 2), OrientedLine((1, 0))).values()) == [1]
    counts = extension_counts(cb, rectangle(2, 2), OrientedLine((1, 0)))
    assert sorted(counts.values()) == [1, 1]
    fib = extension_counts(fl, rectangle(2, 1), OrientedLine((0, 1)), 100)
    assert max(fib.values()) == 2
    s = rectangle(3, 2)
    for line in (OrientedLine((1, 0)), OrientedLine((0, -1))):
        assert sum(extension_counts(fl, s, line, 50).values()) == census(fl, s, 50).count
    with pytest.raises(PatternNotInLanguage):
        extension_count(fl, rectangle(2, 1), OrientedLine((0, 1)), (7,), 100)


def test_morse_hedlund():
    v = morse_hedlund(PeriodicWord("01"), 2, 40)
    assert v.kind == "periodic" and v.period == 2
    v = morse_hedlund(fibonacci(), 6, 200)
    assert v.kind == "no-bound" and v.complexity == 7
    e = EventuallyPeriodic("001", "10")
    assert morse_hedlund(e, 2, 40).kind == "no-bound"  # four factors of length 2
    v = morse_hedlund(e, 5, 40)
    assert (v.kind, v.offset, v.period) == ("preperiodic", 3, 2)
    word = e.word(v.offset, 40)
    assert window_period_check(window_from_word(word), (v.period, 0))


def window_from_word(word):
    from nivat.configuration import Pattern
    return Pattern.from_dict({(i, 0): a for i, a in enumerate(word)})


def test_exact_census_of_reduced_big_values():
    from nivat.configuration import DoublyPeriodic, Reduced
    big = DoublyPeriodic((2, 0), (0, 1), [[2**70 + 1, 3]])
    assert census(Reduced(big, 2), rectangle(2, 2)).patterns == {(1, 1, 1, 1)}
    assert census(big, rectangle(2, 1)).count == 2
