"""Gas schedule and per-transaction metering.

The schedule is configuration, not code; magnitudes track real-chain fee
tables. Reads are free, as on real chains.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GasSchedule:
    base_tx: int = 21_000
    storage_write_new: int = 20_000
    # below 5% of a fresh single-token mint, so a single token costs
    # essentially the same under either token standard
    storage_write_update: int = 2_000
    event_emit: int = 2_000
    read: int = 0  # reads never consume gas

    def __post_init__(self):
        for field_name in ("base_tx", "storage_write_new", "storage_write_update", "event_emit", "read"):
            value = getattr(self, field_name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"gas schedule {field_name} must be a non-negative int")
        if self.read != 0:
            raise ValueError("reads are free; read gas must be 0")


class GasMeter:
    """Counts storage writes and events during one transaction."""

    def __init__(self, schedule: GasSchedule):
        self.schedule = schedule
        self.writes_new = 0
        self.writes_update = 0
        self.events = 0

    def storage_write(self, is_new: bool) -> None:
        if is_new:
            self.writes_new += 1
        else:
            self.writes_update += 1

    def event(self) -> None:
        self.events += 1

    def total(self) -> int:
        return (
            self.schedule.base_tx
            + self.writes_new * self.schedule.storage_write_new
            + self.writes_update * self.schedule.storage_write_update
            + self.events * self.schedule.event_emit
        )


def metered_write(mapping: dict, key, value, meter: GasMeter | None) -> None:
    """Write mapping[key], charging the new-slot or update rate by presence."""
    if meter is not None:
        meter.storage_write(is_new=key not in mapping)
    mapping[key] = value
