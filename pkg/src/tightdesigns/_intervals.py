"""Tiny shared helper: temporary precision for mpmath's interval context."""

from __future__ import annotations

from contextlib import contextmanager

from mpmath import iv


@contextmanager
def iv_workprec(prec: int):
    """Set iv.prec for the duration of the block (iv has no workprec of its own)."""
    old = iv.prec
    iv.prec = prec
    try:
        yield iv
    finally:
        iv.prec = old
