"""Graded multivariate power series over Q(q), truncated at a weight bound.

Each variable j carries a positive weight; a monomial (an exponent key)
has weight sum_j weights[j] * key[j].  Terms heavier than the bound are
dropped by every operation, so products never build up discarded terms.

The plethystic pair is the usual lambda-ring one:

    Exp(s) = exp(sum_{d>=1} psi_d(s) / d)
    Log(f) = sum_{d>=1} mu(d)/d * psi_d(log f)

where psi_d sends q to q^d and every variable to its d-th power.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from refkac.qfield import ONE, RationalFunction

__all__ = [
    "TruncatedSeries",
    "SeriesContextError",
    "series_add",
    "series_mul",
    "adams",
    "formal_log",
    "formal_exp",
    "plethystic_exp",
    "plethystic_log",
    "moebius",
]

Key = tuple[int, ...]


class SeriesContextError(ValueError):
    """Operands live in different series rings (variables, gradings or bounds)."""


class TruncatedSeries:
    __slots__ = ("weights", "bound", "terms")

    def __init__(
        self,
        weights: Sequence[int],
        bound: int,
        terms: Mapping[Key, object] | Iterable[tuple[Key, object]] = (),
    ):
        weights = tuple(int(w) for w in weights)
        if any(w < 1 for w in weights):
            raise ValueError("variable weights must be positive")
        if bound < 0:
            raise ValueError("weight bound must be non-negative")
        self.weights = weights
        self.bound = bound
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Key, RationalFunction] = {}
        for key, c in items:
            key = tuple(key)
            if len(key) != len(weights) or any(e < 0 for e in key):
                raise ValueError(f"bad exponent key {key!r}")
            if self.weight(key) > bound:
                continue
            c = RationalFunction.coerce(c)
            if key in out:
                c = out[key] + c
            out[key] = c
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, weights: tuple[int, ...], bound: int, terms: dict[Key, RationalFunction]) -> "TruncatedSeries":
        s = object.__new__(cls)
        s.weights = weights
        s.bound = bound
        s.terms = terms
        return s

    @classmethod
    def zero(cls, weights: Sequence[int], bound: int) -> "TruncatedSeries":
        return cls(weights, bound)

    @classmethod
    def one(cls, weights: Sequence[int], bound: int) -> "TruncatedSeries":
        return cls(weights, bound, {(0,) * len(weights): ONE})

    @classmethod
    def variable(cls, j: int, weights: Sequence[int], bound: int, coeff=ONE) -> "TruncatedSeries":
        key = [0] * len(weights)
        key[j] = 1
        return cls(weights, bound, {tuple(key): coeff})

    # -- helpers -------------------------------------------------------------
    def weight(self, key: Key) -> int:
        return sum(w * e for w, e in zip(self.weights, key))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def _zero_key(self) -> Key:
        return (0,) * len(self.weights)

    def constant_term(self) -> RationalFunction:
        return self.terms.get(self._zero_key(), RationalFunction(0))

    def coefficient(self, key: Sequence[int]) -> RationalFunction:
        return self.terms.get(tuple(key), RationalFunction(0))

    def same_context(self, other: "TruncatedSeries") -> bool:
        return self.weights == other.weights and self.bound == other.bound

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if not self.same_context(other):
            raise SeriesContextError(
                f"series contexts differ: weights {self.weights} / {other.weights}, "
                f"bounds {self.bound} / {other.bound}"
            )

    def truncate(self, bound: int) -> "TruncatedSeries":
        """The same series viewed with a smaller bound."""
        if bound > self.bound:
            raise ValueError("cannot raise the weight bound of a truncated series")
        return TruncatedSeries._raw(
            self.weights, bound, {k: v for k, v in self.terms.items() if self.weight(k) <= bound}
        )

    def homogeneous(self, w: int) -> dict[Key, RationalFunction]:
        return {k: v for k, v in self.terms.items() if self.weight(k) == w}

    # -- ring structure ----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            out = dict(self.terms)
            for k, v in other.terms.items():
                if k in out:
                    s = out[k] + v
                    if s:
                        out[k] = s
                    else:
                        del out[k]
                else:
                    out[k] = v
            return TruncatedSeries._raw(self.weights, self.bound, out)
        return self + TruncatedSeries.one(self.weights, self.bound).scale(other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.weights, self.bound, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = RationalFunction.coerce(c)
        if not c:
            return TruncatedSeries._raw(self.weights, self.bound, {})
        return TruncatedSeries._raw(self.weights, self.bound, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, Fraction, RationalFunction)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        bound = self.bound
        wt = self.weight
        right = sorted(((wt(k), k, v) for k, v in other.terms.items()), key=lambda t: t[0])
        acc: dict[Key, list[RationalFunction]] = {}
        for ka, va in self.terms.items():
            room = bound - wt(ka)
            for wb, kb, vb in right:
                if wb > room:
                    break
                key = tuple(x + y for x, y in zip(ka, kb))
                acc.setdefault(key, []).append(va * vb)
        out = {}
        for key, vals in acc.items():
            total = _sum_rf(vals)
            if total:
                out[key] = total
        return TruncatedSeries._raw(self.weights, bound, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, c):
        return self.scale(RationalFunction.coerce(c).inverse())

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.same_context(other) and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def adams(self, d: int) -> "TruncatedSeries":
        return adams(self, d)

    def map_keys(self, fn, weights: Sequence[int], bound: int | None = None) -> "TruncatedSeries":
        """Re-index monomials by ``fn`` into a series with the given grading."""
        return TruncatedSeries(weights, self.bound if bound is None else bound,
                               [(fn(k), v) for k, v in self.terms.items()])

    def sorted_items(self) -> list[tuple[Key, RationalFunction]]:
        """Terms in graded lexicographic order (weight first, then key)."""
        return sorted(self.terms.items(), key=lambda kv: (self.weight(kv[0]), kv[0]))

    def dump(self) -> str:
        lines = [f"# weights={list(self.weights)} bound={self.bound}"]
        for k, v in self.sorted_items():
            lines.append(f"{list(k)}: {v}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TruncatedSeries(weights={self.weights}, bound={self.bound}, nterms={len(self.terms)})"


def _sum_rf(vals: list[RationalFunction]) -> RationalFunction:
    # pairwise summation keeps intermediate denominators small
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def adams(s: TruncatedSeries, d: int) -> TruncatedSeries:
    """psi_d: q -> q^d and X -> X^d on every variable."""
    if d < 1:
        raise ValueError("Adams operation index must be >= 1")
    if d == 1:
        return s
    out = {}
    for k, v in s.terms.items():
        if s.weight(k) * d > s.bound:
            continue
        out[tuple(d * e for e in k)] = v.substitute_power(d)
    return TruncatedSeries._raw(s.weights, s.bound, out)


def formal_log(f: TruncatedSeries) -> TruncatedSeries:
    if f.constant_term() != ONE:
        raise ValueError("formal_log needs constant term 1")
    g = f - 1
    result = TruncatedSeries.zero(f.weights, f.bound)
    power = g
    k = 1
    while not power.is_zero():
        term = power.scale(Fraction((-1) ** (k + 1), k))
        result = result + term
        power = power * g
        k += 1
    return result


def formal_exp(s: TruncatedSeries) -> TruncatedSeries:
    if s.constant_term():
        raise ValueError("formal_exp needs constant term 0")
    result = TruncatedSeries.one(s.weights, s.bound)
    term = result
    k = 1
    while True:
        term = (term * s).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
        k += 1
    return result


def moebius(d: int) -> int:
    if d < 1:
        raise ValueError("moebius is defined for positive integers")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def plethystic_exp(s: TruncatedSeries) -> TruncatedSeries:
    if s.constant_term():
        raise ValueError("plethystic_exp needs constant term 0")
    inner = TruncatedSeries.zero(s.weights, s.bound)
    for d in range(1, s.bound + 1):
        psi = adams(s, d)
        if psi.is_zero():
            continue
        inner = inner + psi.scale(Fraction(1, d))
    return formal_exp(inner)


def plethystic_log(f: TruncatedSeries) -> TruncatedSeries:
    if f.constant_term() != ONE:
        raise ValueError("plethystic_log needs constant term 1")
    lg = formal_log(f)
    result = TruncatedSeries.zero(f.weights, f.bound)
    for d in range(1, f.bound + 1):
        mu = moebius(d)
        if mu == 0:
            continue
        psi = adams(lg, d)
        if psi.is_zero():
            continue
        result = result + psi.scale(Fraction(mu, d))
    return result
