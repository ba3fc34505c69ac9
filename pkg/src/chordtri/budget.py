"""Cooperative wall-clock budget for long eliminations.

Hot loops call :func:`checkpoint`, which raises :class:`ResourceError` once
the innermost active budget has run out.
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Optional

from .errors import ResourceError

_deadline: ContextVar = ContextVar("chordtri_deadline", default=None)


@contextmanager
def time_budget(seconds: Optional[float]):
    """Limit the enclosed computation to ``seconds``; ``None`` means no limit."""
    if seconds is None:
        yield
        return
    end = time.monotonic() + seconds
    outer = _deadline.get()
    token = _deadline.set(end if outer is None else min(end, outer))
    try:
        yield
    finally:
        _deadline.reset(token)


def checkpoint() -> None:
    end = _deadline.get()
    if end is not None and time.monotonic() > end:
        raise ResourceError("time budget exhausted")
