"""Hua's generating series and extraction of (refined) Kac functions.

A term of the series is indexed by a tuple of dimension vectors
(alpha^1, ..., alpha^L), one per level k, and contributes

    prod_k q^(<alpha^k,alpha^k> - <beta^k,beta^k>) |R(alpha^k)| / |GL(alpha^k)|

with beta^k = alpha^k + alpha^(k+1) + ...  In the unrefined series the
monomial is X^(sum_k k alpha^k); in the refined one the key is the
multiplicity matrix whose k-th column is alpha^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from refkac.partitions import (
    PartitionTuple,
    enumerate_tuples,
    tuple_from_multiplicity_matrix,
    tuple_multiplicity_matrix,
)
from refkac.qfield import IntPolynomial, RationalFunction, gl_order
from refkac.quiver import Quiver, euler_form, rep_space_exponent
from refkac.series import TruncatedSeries, plethystic_log

__all__ = [
    "KacTable",
    "RefinedKacTable",
    "hua_term",
    "level_tuples",
    "p_series",
    "q_series",
    "refined_key",
    "key_to_tuple",
    "kac_table",
    "refined_kac_table",
]

DimVector = tuple[int, ...]
_Q_MINUS_ONE = RationalFunction(IntPolynomial((-1, 1)))


def _vectors(total: int, n: int) -> Iterator[DimVector]:
    if n == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _vectors(total - a, n - 1):
            yield (a,) + rest


def level_tuples(n: int, W: int, levels: int) -> Iterator[tuple[DimVector, ...]]:
    """All (alpha^1, ..., alpha^levels) with sum_k k |alpha^k| <= W.

    Trailing zero vectors are kept so each term appears exactly once as a
    fixed-length tuple; they contribute a factor 1.
    """

    def rec(k: int, remaining: int):
        if k > levels:
            yield ()
            return
        for s in range(remaining // k + 1):
            for col in _vectors(s, n):
                for rest in rec(k + 1, remaining - k * s):
                    yield (col,) + rest

    yield from rec(1, W)


@lru_cache(maxsize=None)
def _vector_exponent(Q: Quiver, a: DimVector) -> int:
    # <a,a> + a C a^t, which is just a a^t
    return euler_form(Q, a, a) + rep_space_exponent(Q, a)


@lru_cache(maxsize=None)
def _gl(a: DimVector) -> IntPolynomial:
    return gl_order(a)


def hua_term(Q: Quiver, alphas: Sequence[Sequence[int]]) -> RationalFunction:
    alphas = [tuple(a) for a in alphas]
    if not alphas:
        raise ValueError("need at least one dimension vector")
    for a in alphas:
        if len(a) != Q.n:
            raise ValueError(f"dimension vector {a} does not match {Q.n} vertices")
    exponent = 0
    den = IntPolynomial((1,))
    beta = [0] * Q.n
    for a in reversed(alphas):
        beta = [x + y for x, y in zip(beta, a)]
        if not any(beta):
            continue
        exponent -= euler_form(Q, beta, beta)
        if any(a):
            exponent += _vector_exponent(Q, a)
            den = den * _gl(a)
    if exponent >= 0:
        return RationalFunction(IntPolynomial.monomial(exponent), den)
    return RationalFunction(1, den * IntPolynomial.monomial(-exponent))


def p_series(Q: Quiver, W: int) -> TruncatedSeries:
    """Hua's series in X_1..X_n, every variable of weight 1."""
    if W < 0:
        raise ValueError("weight bound must be non-negative")
    n = Q.n
    terms: dict[DimVector, list[RationalFunction]] = {}
    for alphas in level_tuples(n, W, max(W, 1)):
        key = tuple(sum((k + 1) * a[i] for k, a in enumerate(alphas)) for i in range(n))
        terms.setdefault(key, []).append(hua_term(Q, alphas))
    return TruncatedSeries((1,) * n, W, [(k, v) for k, vs in terms.items() for v in vs])


def _levels(W: int, m: int | None) -> int:
    if m is not None and m < 1:
        raise ValueError("max level m must be >= 1")
    return max(1, W if m is None else min(m, W))


def refined_weights(n: int, levels: int) -> tuple[int, ...]:
    return tuple(k for _ in range(n) for k in range(1, levels + 1))


def refined_key(t: Sequence[Sequence[int]], levels: int) -> tuple[int, ...]:
    """Flattened multiplicity matrix (row i, column k) of a partition tuple."""
    M = tuple_multiplicity_matrix(t)
    r = len(M[0]) if M else 0
    if r > levels:
        raise ValueError(f"partition tuple has a part larger than {levels}")
    return tuple(x for row in M for x in row + (0,) * (levels - r))


def key_to_tuple(key: Sequence[int], n: int) -> PartitionTuple:
    L = len(key) // n
    return tuple_from_multiplicity_matrix([key[i * L:(i + 1) * L] for i in range(n)])


def q_series(Q: Quiver, W: int, m: int | None = None) -> TruncatedSeries:
    """The refined series with variables X_ik for k <= min(m, W).

    Keys are flattened multiplicity matrices; X_ik has weight k.
    """
    if W < 0:
        raise ValueError("weight bound must be non-negative")
    n = Q.n
    L = _levels(W, m)
    items = []
    for alphas in level_tuples(n, W, L):
        key = tuple(alphas[k][i] for i in range(n) for k in range(L))
        items.append((key, hua_term(Q, alphas)))
    return TruncatedSeries(refined_weights(n, L), W, items)


@dataclass(frozen=True)
class KacTable:
    """Kac polynomials A(alpha, q) for 0 < |alpha| <= weight_bound."""

    quiver: Quiver
    weight_bound: int
    entries: Mapping[DimVector, RationalFunction] = field(repr=False)

    def __getitem__(self, alpha: Sequence[int]) -> RationalFunction:
        alpha = tuple(alpha)
        if len(alpha) != self.quiver.n or any(a < 0 for a in alpha):
            raise KeyError(f"{alpha} is not a dimension vector for this quiver")
        if not 0 < sum(alpha) <= self.weight_bound:
            raise KeyError(f"{alpha} is outside the weight range 1..{self.weight_bound}")
        return self.entries.get(alpha, RationalFunction(0))

    def keys(self, include_zeros: bool = True) -> list[DimVector]:
        if not include_zeros:
            return sorted(self.entries, key=lambda a: (sum(a), a))
        out = []
        for w in range(1, self.weight_bound + 1):
            out.extend(sorted(_vectors(w, self.quiver.n)))
        return out

    def rows(self, include_zeros: bool = True) -> list[tuple[DimVector, RationalFunction]]:
        return [(a, self[a]) for a in self.keys(include_zeros)]


@dataclass(frozen=True)
class RefinedKacTable:
    """Refined Kac functions A(lambda_*, q) for tuples of total weight <= weight_bound."""

    quiver: Quiver
    weight_bound: int
    max_part: int | None
    entries: Mapping[PartitionTuple, RationalFunction] = field(repr=False)

    def __getitem__(self, lam: Sequence[Sequence[int]]) -> RationalFunction:
        lam = tuple(tuple(p) for p in lam)
        if len(lam) != self.quiver.n:
            raise KeyError(f"{lam} has {len(lam)} components, quiver has {self.quiver.n} vertices")
        w = sum(sum(p) for p in lam)
        if not 0 < w <= self.weight_bound:
            raise KeyError(f"{lam} is outside the weight range 1..{self.weight_bound}")
        top = max((max(p) for p in lam if p), default=0)
        if self.max_part is not None and top > self.max_part:
            raise KeyError(f"{lam} has a part exceeding max_part={self.max_part}")
        return self.entries.get(lam, RationalFunction(0))

    def keys(self, include_zeros: bool = True) -> list[PartitionTuple]:
        ordered = [t for t in enumerate_tuples(self.quiver.n, self.weight_bound, self.max_part) if any(t)]
        if include_zeros:
            return ordered
        return [t for t in ordered if t in self.entries]

    def rows(self, include_zeros: bool = True) -> list[tuple[PartitionTuple, RationalFunction]]:
        return [(t, self[t]) for t in self.keys(include_zeros)]


@lru_cache(maxsize=64)
def kac_table(Q: Quiver, W: int) -> KacTable:
    """(q - 1) Log(P) read off coefficientwise."""
    log = plethystic_log(p_series(Q, W))
    entries = {}
    for key, v in log.terms.items():
        v = v * _Q_MINUS_ONE
        if v:
            entries[key] = v
    return KacTable(Q, W, MappingProxyType(entries))


@lru_cache(maxsize=64)
def refined_kac_table(Q: Quiver, W: int, m: int | None = None) -> RefinedKacTable:
    """(q - 1) Log(Q_m) keyed by partition tuples with parts <= m."""
    L = _levels(W, m)
    log = plethystic_log(q_series(Q, W, L))
    entries = {}
    for key, v in log.terms.items():
        v = v * _Q_MINUS_ONE
        if v:
            entries[key_to_tuple(key, Q.n)] = v
    return RefinedKacTable(Q, W, m, MappingProxyType(entries))
