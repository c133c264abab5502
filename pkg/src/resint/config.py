"""Resource limits and runtime settings shared by the engines."""
from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace

DEFAULT_CHARACTERISTIC = 32003


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 2_000_000
    max_degree: int = 200
    reseed_attempts: int = 8


_limits = contextvars.ContextVar("resint_limits", default=Limits())


def current_limits() -> Limits:
    return _limits.get()


@contextlib.contextmanager
def limits(**changes):
    """Temporarily override resource limits: ``with limits(max_degree=5): ...``."""
    token = _limits.set(replace(_limits.get(), **changes))
    try:
        yield _limits.get()
    finally:
        _limits.reset(token)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("RESINT_THREADS", "1")))
    except ValueError:
        return 1
