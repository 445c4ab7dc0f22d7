"""Compare the compiled and pure-Python profile enumeration kernels.

    python3 benchmarks/bench_kernels.py [--n 3] [--repeat 3]

Both kernels run on the same voter structures (robustly consistent
judgment sets over bundled agendas) and must return identical outcome
classes; the script prints wall-clock times and the speed-up.
"""

from __future__ import annotations

import argparse
import time

from ncja import _kernels_py
from ncja.aggregation import AggregationRule
from ncja.fixtures import load_agenda
from ncja.judgment import ROBUST

try:
    from ncja import _kernels as _compiled
except ImportError:
    _compiled = None

CASES = ["dilemma-cl", "all-dilemma", "dilemma-mall", "mall-complete"]


def _best(fn, repeat: int) -> tuple[float, object]:
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3, help="number of voters (odd)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled kernel not built; only the Python kernel is available")
    h = AggregationRule.majority().h_vector(args.n)
    print(f"{'agenda':<16}{'voters':>8}{'profiles':>12}{'python s':>11}{'cython s':>11}{'speed-up':>10}")
    for name in CASES:
        agenda = load_agenda(name)
        masks = [j.mask for j in ROBUST.members(agenda)]
        call = (masks, args.n, len(agenda), h)
        t_py, r_py = _best(lambda: _kernels_py.outcome_classes(*call), args.repeat)
        if _compiled is None:
            print(f"{name:<16}{len(masks):>8}{r_py[1]:>12}{t_py:>11.4f}{'-':>11}{'-':>10}")
            continue
        t_cy, r_cy = _best(lambda: _compiled.outcome_classes(*call), args.repeat)
        if r_py != r_cy:
            raise SystemExit(f"kernels disagree on {name}")
        print(f"{name:<16}{len(masks):>8}{r_py[1]:>12}{t_py:>11.4f}{t_cy:>11.4f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
