"""The global work bound for enumeration-style operations.

Exhaustive searches refuse to start when their candidate count exceeds the
bound; they never truncate silently.  The default is ten million candidates
and can be overridden with the ``CLEANFORGE_WORK_BOUND`` environment
variable.
"""

from __future__ import annotations

import os

DEFAULT_WORK_BOUND = 10_000_000
ENV_VAR = "CLEANFORGE_WORK_BOUND"


def work_bound() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_WORK_BOUND
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_WORK_BOUND
    return value if value > 0 else DEFAULT_WORK_BOUND
