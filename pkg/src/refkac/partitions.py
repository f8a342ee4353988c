"""Partitions, partition tuples and their multiplicity data.

A partition is a weakly decreasing tuple of positive ints; the empty
partition is ``()``.  A partition tuple is a tuple of partitions, one per
quiver vertex.  A multiplicity matrix has one row per vertex; entry (i, k-1)
counts the parts of size k in the i-th partition.
"""

from __future__ import annotations

import re
from itertools import product
from typing import Iterator, Sequence

__all__ = [
    "Partition",
    "PartitionTuple",
    "multiplicity_vector",
    "tuple_multiplicity_matrix",
    "tuple_from_multiplicity_matrix",
    "matrix_columns",
    "partitions",
    "enumerate_tuples",
    "lambda_fiber",
    "tau_m",
    "parse_partition_tuple",
    "render_partition",
    "render_partition_tuple",
    "render_multiplicity",
]

Partition = tuple[int, ...]
PartitionTuple = tuple[Partition, ...]
MultiplicityMatrix = tuple[tuple[int, ...], ...]


def multiplicity_vector(p: Sequence[int]) -> tuple[int, ...]:
    """(m^(1), ..., m^(r)) where r is the largest part."""
    if not p:
        return ()
    out = [0] * max(p)
    for part in p:
        out[part - 1] += 1
    return tuple(out)


def tuple_multiplicity_matrix(t: Sequence[Sequence[int]]) -> MultiplicityMatrix:
    r = max((max(p) for p in t if p), default=0)
    rows = []
    for p in t:
        v = multiplicity_vector(p)
        rows.append(v + (0,) * (r - len(v)))
    return tuple(rows)


def tuple_from_multiplicity_matrix(M: Sequence[Sequence[int]]) -> PartitionTuple:
    out = []
    for row in M:
        parts: list[int] = []
        for k in range(len(row), 0, -1):
            parts.extend([k] * row[k - 1])
        out.append(tuple(parts))
    return tuple(out)


def matrix_columns(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """The multiplicity vectors of order k = 1..r, i.e. the columns of M."""
    if not M:
        return ()
    return tuple(zip(*M))


def partitions(w: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of w with parts <= max_part, in reverse lexicographic order."""
    if max_part is None or max_part > w:
        max_part = w
    if w == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in partitions(w - first, first):
            yield (first,) + rest


def _compositions(w: int, n: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of w into n parts, first part largest first."""
    if n == 1:
        yield (w,)
        return
    for a in range(w, -1, -1):
        for rest in _compositions(w - a, n - 1):
            yield (a,) + rest


def lambda_fiber(alpha: Sequence[int], max_part: int | None = None) -> Iterator[PartitionTuple]:
    """All partition tuples whose i-th component has weight alpha[i]."""
    yield from product(*(list(partitions(a, max_part)) for a in alpha))


def enumerate_tuples(n: int, weight_bound: int, max_part: int | None = None) -> Iterator[PartitionTuple]:
    """Every n-tuple of total weight <= weight_bound, graded by weight."""
    if n < 1 or weight_bound < 0:
        raise ValueError("need n >= 1 and weight_bound >= 0")
    for w in range(weight_bound + 1):
        for comp in _compositions(w, n):
            yield from lambda_fiber(comp, max_part)


def tau_m(t: Sequence[Sequence[int]], m: int) -> PartitionTuple:
    """Send a tuple with parts <= m to the n*m tuple of all-ones partitions
    [1^(m_{lambda^i}^(k))], listed level-major (k outer, i inner)."""
    for i, p in enumerate(t):
        if p and max(p) > m:
            raise ValueError(f"component {i} has a part {max(p)} exceeding m={m}")
    mults = [multiplicity_vector(p) for p in t]
    out = []
    for k in range(1, m + 1):
        for v in mults:
            c = v[k - 1] if k <= len(v) else 0
            out.append((1,) * c)
    return tuple(out)


_COMPONENT = re.compile(r"\s*\[\s*([0-9,\s]*)\]\s*")


def parse_partition_tuple(text: str) -> PartitionTuple:
    """Parse ``[2,1];[1]``; ``[0]`` and ``[]`` are the empty partition."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        # also accept the rendered form ([2],[1])
        pieces = re.split(r"(?<=\])\s*,\s*(?=\[)", body[1:-1].strip())
    else:
        pieces = body.split(";")
    out = []
    for idx, piece in enumerate(pieces):
        m = _COMPONENT.fullmatch(piece)
        if m is None:
            raise ValueError(f"cannot parse component {idx} of {text!r}: {piece!r}")
        inner = m.group(1).strip()
        parts = tuple(int(x) for x in inner.split(",") if x.strip()) if inner else ()
        if parts == (0,):
            parts = ()
        if any(p <= 0 for p in parts):
            raise ValueError(f"component {idx} of {text!r} has a non-positive part")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"component {idx} of {text!r} is not weakly decreasing")
        out.append(parts)
    return tuple(out)


def render_partition(p: Sequence[int]) -> str:
    return "[" + ",".join(map(str, p)) + "]" if p else "[0]"


def render_partition_tuple(t: Sequence[Sequence[int]]) -> str:
    if len(t) == 1:
        return render_partition(t[0])
    return "(" + ",".join(render_partition(p) for p in t) + ")"


def render_multiplicity(t: Sequence[Sequence[int]]) -> str:
    """The tuple of multiplicity vectors, e.g. ``(2,1)`` or ``((0,1),(1,0))``."""
    if len(t) == 1:
        return "(" + ",".join(map(str, multiplicity_vector(t[0]))) + ")"
    cols = matrix_columns(tuple_multiplicity_matrix(t))
    return "(" + ",".join("(" + ",".join(map(str, c)) + ")" for c in cols) + ")"
