"""Saturating counters for expansion statistics.

Expanded definitions blow up exponentially, so every length bookkeeping
operation saturates at ``SAT_MAX`` instead of overflowing into useless
astronomical figures.  Saturation is sticky: once either operand has hit
the ceiling the result stays there, even for multiplication by zero.
"""

from __future__ import annotations

SAT_MAX = 2**31 - 1


def sat_add(*values: int) -> int:
    total = 0
    for v in values:
        if v >= SAT_MAX:
            return SAT_MAX
        total += v
    return min(total, SAT_MAX)


def sat_mul(a: int, b: int) -> int:
    # sticky: SAT_MAX * 0 == SAT_MAX by convention
    if a >= SAT_MAX or b >= SAT_MAX:
        return SAT_MAX
    return min(a * b, SAT_MAX)
