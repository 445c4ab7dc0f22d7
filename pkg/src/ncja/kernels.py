"""Selects the compiled enumeration kernel when built, else the Python one.

Set ``NCJA_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

PURE_ENV = "NCJA_PURE_PYTHON"

if os.environ.get(PURE_ENV):
    from ncja._kernels_py import outcome_classes
    BACKEND = "python"
else:
    try:
        from ncja._kernels import outcome_classes
        BACKEND = "cython"
    except ImportError:
        from ncja._kernels_py import outcome_classes
        BACKEND = "python"

__all__ = ["outcome_classes", "BACKEND"]
