"""Duration and data-volume canonicalization.

Offerings are advertised with display strings like "1day" or "10GB"; the
contract stores plain seconds and bytes. Decimal units: 1 GB = 10^9 bytes.
"""

from __future__ import annotations

import re

_DURATION_UNITS = {
    "s": 1,
    "sec": 1,
    "m": 60,
    "min": 60,
    "h": 3600,
    "hour": 3600,
    "d": 86_400,
    "day": 86_400,
    "days": 86_400,
    "w": 604_800,
    "week": 604_800,
}

_DATA_UNITS = {
    "b": 1,
    "kb": 10**3,
    "mb": 10**6,
    "gb": 10**9,
    "tb": 10**12,
}

_UNIT_RE = re.compile(r"^\s*(\d+)\s*([a-zA-Z]*)\s*$")


class UnitError(ValueError):
    pass


def _parse(value, units, kind: str) -> int:
    if isinstance(value, bool):
        raise UnitError(f"invalid {kind}: {value!r}")
    if isinstance(value, int):
        if value < 0:
            raise UnitError(f"{kind} must be non-negative, got {value}")
        return value
    if isinstance(value, str):
        m = _UNIT_RE.match(value)
        if m:
            number, unit = m.groups()
            if not unit:
                return int(number)
            factor = units.get(unit.lower())
            if factor is not None:
                return int(number) * factor
    raise UnitError(f"cannot parse {kind} {value!r}")


def parse_duration_sec(value) -> int:
    """Accept plain seconds (int or digit string) or "<n><unit>", e.g. "1day"."""
    return _parse(value, _DURATION_UNITS, "duration")


def parse_data_bytes(value) -> int:
    """Accept plain bytes or "<n><unit>", e.g. "10GB" (decimal units)."""
    return _parse(value, _DATA_UNITS, "data volume")


def format_duration(seconds: int) -> str:
    for label, factor in (("day", 86_400), ("h", 3600), ("min", 60)):
        if seconds >= factor and seconds % factor == 0:
            return f"{seconds // factor}{label}"
    return f"{seconds}s"


def format_bytes(count: int) -> str:
    for label, factor in (("TB", 10**12), ("GB", 10**9), ("MB", 10**6), ("KB", 10**3)):
        if count >= factor and count % factor == 0:
            return f"{count // factor}{label}"
    return f"{count}B"
