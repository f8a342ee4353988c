"""Quivers given by their companion matrix, the Euler form, and the enlarged quiver Gamma_m."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

__all__ = [
    "Quiver",
    "QuiverParseError",
    "euler_form",
    "rep_space_exponent",
    "has_enough_loops",
    "gamma_m",
    "quiver_parse",
    "quiver_render",
    "quiver_from_file",
]

DimVector = tuple[int, ...]


class QuiverParseError(ValueError):
    """Malformed quiver text; ``position`` names where parsing failed."""

    def __init__(self, message: str, position: str | int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; ``companion[i][j]`` counts arrows from vertex i to vertex j."""

    companion: tuple[tuple[int, ...], ...]
    vertex_labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.companion)
        n = len(rows)
        if n == 0:
            raise ValueError("a quiver needs at least one vertex")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"companion matrix is not square (row {i} has {len(row)} entries, expected {n})")
            for j, a in enumerate(row):
                if a < 0:
                    raise ValueError(f"negative arrow count at ({i},{j})")
        object.__setattr__(self, "companion", rows)
        if self.vertex_labels is not None:
            labels = tuple(self.vertex_labels)
            if len(labels) != n:
                raise ValueError("vertex_labels length does not match vertex count")
            object.__setattr__(self, "vertex_labels", labels)

    @classmethod
    def loops(cls, g: int) -> "Quiver":
        """The g-loop quiver (one vertex, g loops)."""
        return cls(((g,),))

    @property
    def n(self) -> int:
        return len(self.companion)

    def labels(self) -> tuple[str, ...]:
        if self.vertex_labels is not None:
            return self.vertex_labels
        return tuple(f"v{i + 1}" for i in range(self.n))

    def _check(self, a: Sequence[int]) -> None:
        if len(a) != self.n:
            raise ValueError(f"dimension vector has length {len(a)}, quiver has {self.n} vertices")


def euler_form(Q: Quiver, a: Sequence[int], b: Sequence[int]) -> int:
    """<a, b> = a (I - C) b^t."""
    Q._check(a)
    Q._check(b)
    C = Q.companion
    total = sum(x * y for x, y in zip(a, b))
    for i, ai in enumerate(a):
        if ai:
            row = C[i]
            total -= ai * sum(row[j] * bj for j, bj in enumerate(b))
    return total


def rep_space_exponent(Q: Quiver, a: Sequence[int]) -> int:
    """Exponent e with |R(a, F_q)| = q^e, i.e. a C a^t."""
    Q._check(a)
    C = Q.companion
    return sum(ai * C[i][j] * aj for i, ai in enumerate(a) if ai for j, aj in enumerate(a) if aj)


def has_enough_loops(Q: Quiver) -> bool:
    return all(Q.companion[i][i] >= 1 for i in range(Q.n))


def gamma_m(Q: Quiver, m: int) -> Quiver:
    """Enlarged quiver on n*m vertices v_i^k, ordered level-major.

    Loops at v_i^k: 1 + k (a_ii - 1).  For v_i^a strictly before v_s^b the
    arrow count is min(a, b) (d_is + d_si) with D = C - I; arrows only point
    forward in the order.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    missing = [i for i in range(Q.n) if Q.companion[i][i] < 1]
    if missing:
        names = ", ".join(Q.labels()[i] for i in missing)
        raise ValueError(f"quiver does not have enough loops: no loop at vertex {names}")
    n = Q.n
    D = [[Q.companion[i][j] - (i == j) for j in range(n)] for i in range(n)]
    size = n * m
    M = [[0] * size for _ in range(size)]
    for a in range(1, m + 1):
        for i in range(n):
            u = (a - 1) * n + i
            M[u][u] = 1 + a * D[i][i]
            for b in range(a, m + 1):
                for s in range(n):
                    w = (b - 1) * n + s
                    if w <= u:
                        continue
                    M[u][w] = min(a, b) * (D[i][s] + D[s][i])
    labels = tuple(f"v{i + 1}^{k}" for k in range(1, m + 1) for i in range(n))
    return Quiver(tuple(map(tuple, M)), labels)


def _validate_matrix(data, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(data, list) or not data:
        raise QuiverParseError("companion matrix must be a non-empty list of rows", where)
    n = len(data)
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise QuiverParseError("matrix row is not a list", f"{where} row {i}")
        if len(row) != n:
            raise QuiverParseError(f"matrix is not square: row has {len(row)} entries, expected {n}", f"{where} row {i}")
        for j, a in enumerate(row):
            if isinstance(a, bool) or not isinstance(a, int):
                raise QuiverParseError("arrow count is not an integer", f"{where} entry ({i},{j})")
            if a < 0:
                raise QuiverParseError("negative arrow count", f"{where} entry ({i},{j})")
        rows.append(tuple(row))
    return tuple(rows)


def quiver_parse(text: str) -> Quiver:
    """Parse either an inline matrix ``[[1,1],[0,1]]`` or a quiver document.

    A quiver document is JSON with fields ``vertices`` and ``arrows`` and an
    optional ``labels`` list.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverParseError(f"malformed quiver text: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if isinstance(data, list):
        return Quiver(_validate_matrix(data, "matrix"))
    if not isinstance(data, dict):
        raise QuiverParseError("expected a matrix or an object with 'vertices' and 'arrows'", "top level")
    for key in ("vertices", "arrows"):
        if key not in data:
            raise QuiverParseError(f"missing field {key!r}", "top level")
    n = data["vertices"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise QuiverParseError("'vertices' must be a positive integer", "field 'vertices'")
    rows = _validate_matrix(data["arrows"], "field 'arrows'")
    if len(rows) != n:
        raise QuiverParseError(f"'arrows' has {len(rows)} rows but 'vertices' is {n}", "field 'arrows'")
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
            raise QuiverParseError("'labels' must be a list of n strings", "field 'labels'")
        labels = tuple(labels)
    return Quiver(rows, labels)


def quiver_render(Q: Quiver, document: bool = False) -> str:
    """Deterministic text: the inline matrix, or the JSON document form."""
    matrix = "[" + ",".join("[" + ",".join(str(a) for a in row) + "]" for row in Q.companion) + "]"
    if not document:
        return matrix
    doc = {"vertices": Q.n, "arrows": [list(r) for r in Q.companion]}
    if Q.vertex_labels is not None:
        doc["labels"] = list(Q.vertex_labels)
    return json.dumps(doc, indent=None, separators=(", ", ": "))


def quiver_from_file(path: str) -> Quiver:
    with open(path) as fh:
        return quiver_parse(fh.read())
