import math

import pytest
from hypothesis import given, strategies as st

from qlimits import CODATA2018, constants_table, parse_duration, format_duration, scenario
from qlimits.errors import ParseError, ScenarioLookupError
from qlimits.scenarios import SCENARIOS

YEAR = 3.15576e7


def test_h_is_two_pi_hbar():
    assert abs(CODATA2018.h - 2.0 * math.pi * CODATA2018.hbar) <= 1e-12 * CODATA2018.h


def test_all_constants_positive():
    for name, value in CODATA2018.as_dict().items():
        assert value > 0.0, name


def test_hbar_matches_codata_print():
    # the tabulated ten-figure value
    assert abs(CODATA2018.hbar - 1.054571817e-34) < 1e-43


def test_constants_table_versioned():
    table = constants_table()
    assert table["constants_version"]
    assert table["k_B_J_per_K"] == 1.380649e-23


def test_constants_json_document():
    import json

    from qlimits import constants_json

    doc = json.loads(constants_json())
    assert doc["constants_version"] == constants_table()["constants_version"]
    assert doc["hbar_J_s"] == CODATA2018.hbar


@pytest.mark.parametrize(
    "text,expected",
    [
        ("5a", 5 * YEAR),          # 1.57788e8
        ("100Ta", 1e14 * YEAR),    # 3.15576e21
        ("1.5s", 1.5),
        ("5Ga", 5e9 * YEAR),
        ("2e3s", 2000.0),
    ],
)
def test_parse_duration(text, expected):
    assert parse_duration(text) == expected


@pytest.mark.parametrize("bad", ["5", "5 parsec", "x2a", "-3a", "", "3h", "5aa"])
def test_parse_duration_rejects(bad):
    with pytest.raises(ParseError):
        parse_duration(bad)


def test_parse_error_names_token():
    with pytest.raises(ParseError) as err:
        parse_duration("12q")
    assert "12q" in str(err.value)


@given(st.floats(min_value=1e-6, max_value=1e30, allow_nan=False, allow_infinity=False))
def test_duration_round_trip(seconds):
    assert parse_duration(format_duration(seconds)) == seconds


def test_format_prefers_natural_units():
    assert format_duration(5 * YEAR).endswith("a")
    assert format_duration(1.5) == "1.5s"


def test_registry_matches_tabulated_cells():
    dc = scenario("datacenter")
    assert (dc.work, dc.duration, dc.temperature, dc.success_probability) == (
        1e16, 5 * YEAR, 300.0, 1e-2)
    assert dc.classical_key_bits == 128
    dy = scenario("dyson")
    assert (dy.work, dy.duration, dy.temperature, dy.success_probability) == (
        8e43, 5e9 * YEAR, 2.7, 3e-11)
    assert dy.classical_key_bits == 256
    co = scenario("cosmic")
    assert (co.work, co.duration, co.temperature, co.success_probability) == (
        4.6e69, 1e14 * YEAR, 2.7, 1e-12)
    assert co.classical_key_bits is None


def test_unknown_scenario_lists_names():
    with pytest.raises(ScenarioLookupError) as err:
        scenario("moonbase")
    message = str(err.value)
    for name in SCENARIOS:
        assert name in message
