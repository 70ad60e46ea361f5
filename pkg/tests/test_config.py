import pytest

from conftest import FIXTURES
from nivat.config import format_config, load_config, parse_config, parse_vec_list
from nivat.errors import ConfigError

ALL = sorted(FIXTURES.glob("*.cfg"))


@pytest.mark.parametrize("path", ALL, ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    spec = load_config(path)
    again = parse_config(format_config(spec))
    assert again == spec
    src, src2 = spec.main(), again.main()
    assert [src.eval((x, y)) for x in range(-5, 6) for y in range(-5, 6)] == \
        [src2.eval((x, y)) for x in range(-5, 6) for y in range(-5, 6)]


def test_fib_sum_config_matches_direct(fs):
    spec = load_config(FIXTURES / "fibonacci_sum.cfg")
    src = spec.main()
    assert all(src.eval((x, y)) == fs.eval((x, y)) for x in range(-20, 21) for y in range(-20, 21))
    d = spec.build_decomposition()
    assert d.periods == [(0, 1), (1, 0)] and d.claimed_minimal


def test_vec_list():
    assert parse_vec_list("(0,1) (1, -2)") == [(0, 1), (1, -2)]


@pytest.mark.parametrize("text, where", [
    ("[source x]\nkind = blob\n", "line 2, column 8"),
    ("[source x]\nkind = constant\n", "line 1"),
    ("[source x]\nkind = constant\nvalue = 1\ncolour = red\n", "line 4"),
    ("[wat]\n", "line 1"),
    ("kind = constant\n", "line 1"),
    ("[source x]\nkind = layer\nh = (0,1)\nsequence = nope\n", None),
])
def test_config_errors(text, where):
    with pytest.raises(ConfigError) as info:
        parse_config(text).main()
    if where:
        assert where in str(info.value)


def test_self_reference():
    text = "[source main]\nkind = sum\nterms = 1*main\n"
    with pytest.raises(ConfigError, match="refers to itself"):
        parse_config(text).main()
