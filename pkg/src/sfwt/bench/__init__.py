from .gas import GasRow, run_gas_benchmark, write_gas_csv, read_gas_csv
from .latency import (
    LatencyModel,
    SchemeKind,
    SchemeStats,
    TrialResult,
    block_broadcast_expected_ms,
    run_auth_benchmark,
    write_auth_csv,
    read_auth_csv,
)

__all__ = [
    "GasRow",
    "LatencyModel",
    "SchemeKind",
    "SchemeStats",
    "TrialResult",
    "block_broadcast_expected_ms",
    "read_auth_csv",
    "read_gas_csv",
    "run_auth_benchmark",
    "run_gas_benchmark",
    "write_auth_csv",
    "write_gas_csv",
]
