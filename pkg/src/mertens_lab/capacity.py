"""Memory-budget bookkeeping shared by the sieve and scan entry points.

Large tables are refused up front instead of letting the process OOM: every
builder estimates its peak footprint in bytes and checks it against a
configurable ceiling (default 8 GB, overridable per call or via the
MERTENS_LAB_MEM_GB environment variable).
"""

from __future__ import annotations

import os

DEFAULT_MEMORY_GB = 8.0
MEMORY_ENV_VAR = "MERTENS_LAB_MEM_GB"


class CapacityError(RuntimeError):
    """A requested table or scan exceeds the configured memory/size budget."""


def memory_ceiling_bytes(memory_gb: float | None = None) -> int:
    """Resolve the memory ceiling: explicit argument > env var > default."""
    if memory_gb is None:
        env = os.environ.get(MEMORY_ENV_VAR)
        if env is not None:
            try:
                memory_gb = float(env)
            except ValueError:
                raise CapacityError(f"{MEMORY_ENV_VAR}={env!r} is not a number")
        else:
            memory_gb = DEFAULT_MEMORY_GB
    if memory_gb <= 0:
        raise CapacityError(f"memory ceiling must be positive, got {memory_gb}")
    return int(memory_gb * (1 << 30))


def check_budget(estimated_bytes: int, what: str, memory_gb: float | None = None) -> None:
    """Raise CapacityError if `estimated_bytes` exceeds the ceiling."""
    ceiling = memory_ceiling_bytes(memory_gb)
    if estimated_bytes > ceiling:
        raise CapacityError(
            f"{what} needs ~{estimated_bytes / (1 << 30):.2f} GB, "
            f"over the {ceiling / (1 << 30):.2f} GB ceiling "
            f"(raise via {MEMORY_ENV_VAR} or the memory_gb argument)"
        )
