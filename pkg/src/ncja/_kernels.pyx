# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled profile enumeration; same contract as the pure-Python fallback."""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libc.stdint cimport uint64_t


def outcome_classes(masks, int n, int width, h):
    cdef vector[uint64_t] m = [int(x) for x in masks]
    cdef vector[int] hv = [int(x) for x in h]
    cdef int r = m.size()
    cdef vector[int] idx = vector[int](n, 0)
    cdef unordered_map[uint64_t, size_t] seen
    cdef vector[vector[int]] witnesses
    cdef uint64_t out, bit
    cdef int i, k, count, pos
    cdef long long total = 0
    if r == 0 or n <= 0:
        return {}, 0
    while True:
        total += 1
        out = 0
        for i in range(width):
            bit = (<uint64_t>1) << i
            count = 0
            for k in range(n):
                if m[idx[k]] & bit:
                    count += 1
            if hv[count]:
                out |= bit
        if seen.find(out) == seen.end():
            seen[out] = witnesses.size()
            witnesses.push_back(idx)
        # next non-decreasing tuple
        pos = n - 1
        while pos >= 0 and idx[pos] == r - 1:
            pos -= 1
        if pos < 0:
            break
        idx[pos] += 1
        for k in range(pos + 1, n):
            idx[k] = idx[pos]
    result = {}
    for item in seen:
        result[int(item.first)] = tuple(witnesses[item.second])
    # keep first-seen order like the Python version
    order = sorted(result.items(), key=lambda kv: kv[1])
    return dict(order), total
