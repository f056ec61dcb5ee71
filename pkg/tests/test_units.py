import pytest

from sfwt.units import (
    UnitError,
    format_bytes,
    format_duration,
    parse_data_bytes,
    parse_duration_sec,
)


@pytest.mark.parametrize(
    "text,expected",
    [("1day", 86_400), ("2h", 7200), ("90", 90), (90, 90), ("3 min", 180), ("1week", 604_800)],
)
def test_parse_duration(text, expected):
    assert parse_duration_sec(text) == expected


@pytest.mark.parametrize(
    "text,expected",
    [("10GB", 10**10), ("1gb", 10**9), ("500MB", 5 * 10**8), ("123", 123), (0, 0), ("2TB", 2 * 10**12)],
)
def test_parse_data(text, expected):
    assert parse_data_bytes(text) == expected


@pytest.mark.parametrize("bad", ["", "day", "1.5day", "-3day", -1, None, "10XB", True])
def test_rejects_garbage(bad):
    with pytest.raises((UnitError, TypeError)):
        parse_duration_sec(bad)
    with pytest.raises((UnitError, TypeError)):
        parse_data_bytes(bad)


def test_formatting_round_trips_common_values():
    assert format_duration(86_400) == "1day"
    assert format_duration(5400) == "90min"
    assert format_duration(45) == "45s"
    assert format_bytes(10**10) == "10GB"
    assert format_bytes(1536) == "1536B"
