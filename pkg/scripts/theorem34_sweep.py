"""Sweep the level-m transport A_Q(lambda) = A_{Gamma_m}(tau_m(lambda)) over g-loop
quivers and a few two-vertex quivers, reporting case counts and timings."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from refkac.quiver import Quiver, quiver_render
from refkac.verify import TABLE3_QUIVER, check_theorem_3_4


@dataclass
class SweepConfig:
    loops: list[int] = field(default_factory=lambda: [1, 2, 3, 4])
    levels: list[int] = field(default_factory=lambda: [2, 3])
    weight: int = 4
    extra: list[Quiver] = field(default_factory=lambda: [TABLE3_QUIVER, Quiver(((2, 1), (1, 1)))])


def run(cfg: SweepConfig) -> int:
    quivers = [Quiver.loops(g) for g in cfg.loops] + list(cfg.extra)
    failed = 0
    print(f"{'quiver':18} {'m':>2} {'cases':>6} {'secs':>7}  status")
    for Q in quivers:
        for m in cfg.levels:
            t0 = time.perf_counter()
            report = check_theorem_3_4(Q, m, cfg.weight)
            secs = time.perf_counter() - t0
            failed += not report.passed
            print(f"{quiver_render(Q):18} {m:>2} {len(report.cases):>6} {secs:>7.2f}  {report.status}")
            for case in report.failures():
                print(f"    {case.input}: {case.expected} != {case.actual}")
    return 1 if failed else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--loops", type=int, nargs="+", default=SweepConfig().loops)
    p.add_argument("--levels", type=int, nargs="+", default=SweepConfig().levels)
    p.add_argument("--weight", type=int, default=SweepConfig.weight)
    a = p.parse_args()
    return run(SweepConfig(loops=a.loops, levels=a.levels, weight=a.weight))


if __name__ == "__main__":
    raise SystemExit(main())
