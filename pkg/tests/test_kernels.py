import importlib
import os
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncja import _kernels_py, kernels

compiled = pytest.importorskip("ncja._kernels", reason="compiled kernel not built")


def brute_force(masks, n, width, h):
    """Every ordered profile, grouped by outcome; the oracle for both kernels."""
    outcomes = set()
    for combo in product(range(len(masks)), repeat=n):
        out = 0
        for i in range(width):
            count = sum(bool(masks[k] >> i & 1) for k in combo)
            out |= h[count] << i
        outcomes.add(out)
    return outcomes


cases = st.integers(min_value=1, max_value=5).flatmap(
    lambda width: st.tuples(
        st.lists(st.integers(min_value=0, max_value=2 ** width - 1), min_size=1, max_size=6),
        st.sampled_from([1, 3, 5]),
        st.just(width),
    )
).flatmap(lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.just(t[2]),
                              st.lists(st.integers(0, 1), min_size=t[1] + 1, max_size=t[1] + 1)))


class TestOutcomeClasses:
    @settings(max_examples=150, deadline=None)
    @given(cases)
    def test_python_matches_brute_force(self, case):
        masks, n, width, h = case
        first, _ = _kernels_py.outcome_classes(masks, n, width, h)
        assert set(first) == brute_force(masks, n, width, h)

    @settings(max_examples=150, deadline=None)
    @given(cases)
    def test_compiled_matches_python(self, case):
        masks, n, width, h = case
        assert compiled.outcome_classes(masks, n, width, h) == _kernels_py.outcome_classes(masks, n, width, h)

    def test_same_witness_order(self):
        masks = [0b0011, 0b0101, 0b1001, 0b0110, 0b1100]
        a = _kernels_py.outcome_classes(masks, 3, 4, (0, 0, 1, 1))
        b = compiled.outcome_classes(masks, 3, 4, (0, 0, 1, 1))
        assert list(a[0].items()) == list(b[0].items())

    def test_anonymous_profile_count(self):
        # multisets of size 3 from 21 structures
        _, total = _kernels_py.outcome_classes(list(range(21)), 3, 5, (0, 0, 1, 1))
        assert total == 1771

    def test_empty(self):
        assert compiled.outcome_classes([], 3, 2, (0, 0, 1, 1)) == ({}, 0)


class TestBackendSelection:
    def test_compiled_preferred(self):
        expected = "python" if os.environ.get("NCJA_PURE_PYTHON") else "cython"
        assert kernels.BACKEND == expected

    def test_pure_python_forced(self, monkeypatch):
        monkeypatch.setenv("NCJA_PURE_PYTHON", "1")
        try:
            reloaded = importlib.reload(kernels)
            assert reloaded.BACKEND == "python"
            assert reloaded.outcome_classes is _kernels_py.outcome_classes
        finally:
            monkeypatch.undo()
            importlib.reload(kernels)
