"""Recompute the four golden tables and print them next to the stored values."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from refkac.hua import kac_table, refined_kac_table
from refkac.partitions import parse_partition_tuple
from refkac.quiver import quiver_render
from refkac.verify import A2_QUIVER, TABLE3_QUIVER, TWO_LOOP, load_golden


@dataclass
class Config:
    weight: int = 4
    show_all: bool = False  # print matching rows as well as mismatches


def _dim(text):
    return tuple(int(x) for x in text.strip("()").split(","))


def run(cfg: Config) -> int:
    t0 = time.perf_counter()
    mismatches = 0

    def emit(table, key, expected, value):
        nonlocal mismatches
        ok = str(value) == expected
        mismatches += not ok
        if cfg.show_all or not ok:
            print(f"{'ok ' if ok else 'BAD'} {table:8} {key:24} {value}" + ("" if ok else f"  (stored {expected})"))

    t1 = kac_table(TWO_LOOP, cfg.weight)
    for _, alpha, expected in load_golden("table1"):
        emit("table1", alpha, expected, t1[_dim(alpha)])
    t2 = refined_kac_table(TWO_LOOP, cfg.weight)
    for lam, _, expected in load_golden("table2"):
        emit("table2", lam, expected, t2[parse_partition_tuple(lam)])
    for Q, col in ((TABLE3_QUIVER, 1), (A2_QUIVER, 2)):
        k, r = kac_table(Q, cfg.weight), refined_kac_table(Q, cfg.weight)
        name = quiver_render(Q)
        for row in load_golden("table3"):
            emit("table3", f"{row[0]} {name}", row[col], k[_dim(row[0])])
        for row in load_golden("table4"):
            emit("table4", f"{row[0]} {name}", row[col + 1], r[parse_partition_tuple(row[0])])

    print(f"{mismatches} mismatches, {time.perf_counter() - t0:.2f}s")
    return 1 if mismatches else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--weight", type=int, default=Config.weight)
    p.add_argument("--show-all", action="store_true")
    a = p.parse_args()
    return run(Config(weight=a.weight, show_all=a.show_all))


if __name__ == "__main__":
    raise SystemExit(main())
