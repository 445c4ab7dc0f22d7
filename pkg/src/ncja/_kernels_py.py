"""Pure-Python profile enumeration, the fallback for the compiled kernel."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence


def outcome_classes(masks: Sequence[int], n: int, width: int,
                    h: Sequence[int]) -> tuple[dict[int, tuple[int, ...]], int]:
    """Group every anonymous profile by its count-rule outcome.

    `masks` are the admissible judgment structures as bitmasks over `width`
    issues; a profile is a non-decreasing `n`-tuple of indices into `masks`.
    Issue i is accepted when ``h[count_i]`` is 1.  Returns the distinct
    outcome masks, each with the first profile producing it, and the number
    of profiles visited.
    """
    first: dict[int, tuple[int, ...]] = {}
    total = 0
    for combo in combinations_with_replacement(range(len(masks)), n):
        total += 1
        out = 0
        for i in range(width):
            bit = 1 << i
            count = 0
            for k in combo:
                if masks[k] & bit:
                    count += 1
            if h[count]:
                out |= bit
        if out not in first:
            first[out] = combo
    return first, total
