"""Exact arithmetic in Z[q] and the rational function field Q(q).

Polynomials are stored densely as tuples of Python ints (lowest exponent
first).  Rational functions are kept in a canonical reduced form so that
equality of values is equality of representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "IntPolynomial",
    "RationalFunction",
    "poly_gcd",
    "gl_order",
    "rf_arith",
    "rf_substitute_power",
    "rf_as_polynomial",
    "rf_is_nonneg_int_poly",
    "parse_rational",
    "Q",
    "ONE",
    "ZERO",
]


class IntPolynomial:
    """Polynomial in ``q`` with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPolynomial":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls._raw((c,) if c else ())

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        if k < 0:
            raise ValueError("negative exponent in IntPolynomial")
        if c == 0:
            return cls._raw(())
        return cls._raw((0,) * k + (c,))

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Index of the leading coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient (0 for the zero polynomial)."""
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return 0

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and not any(self.coeffs[:-1])

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
            if g == 1:
                break
        return g

    def primitive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        if c == 1:
            return self
        return IntPolynomial._raw(tuple(a // c for a in self.coeffs))

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by ``q**k`` (k >= 0) or divide by ``q**-k`` when exact."""
        if not self.coeffs or k == 0:
            return self
        if k > 0:
            return IntPolynomial._raw((0,) * k + self.coeffs)
        if any(self.coeffs[:-k]):
            raise ValueError("shift is not exact")
        return IntPolynomial._raw(self.coeffs[-k:])

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        elif not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial._raw(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        elif not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPolynomial._raw(())
            return IntPolynomial._raw(tuple(a * other for a in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial._raw(())
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of IntPolynomial")
        result = IntPolynomial._raw((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def scalar_divexact(self, c: int) -> "IntPolynomial":
        if c == 1:
            return self
        out = []
        for a in self.coeffs:
            qt, r = divmod(a, c)
            if r:
                raise ArithmeticError("inexact scalar division")
            out.append(qt)
        return IntPolynomial._raw(tuple(out))

    def divexact(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact quotient in Z[q]; raises ArithmeticError if ``other`` does not divide."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        if len(other.coeffs) == 1:
            return self.scalar_divexact(other.coeffs[0])
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        dq = len(rem) - 1 - db
        if dq < 0:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return self
        b = other.coeffs
        lb = b[-1]
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            t, r = divmod(rem[k + db], lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quot[k] = t
            if t:
                for j in range(db + 1):
                    rem[k + j] -= t * b[j]
        if any(rem[:db]):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial._raw(tuple(quot))

    def pseudo_rem(self, other: "IntPolynomial") -> "IntPolynomial":
        """Pseudo-remainder prem(self, other) = lc(other)^(deg a - deg b + 1) * self mod other."""
        b = other.coeffs
        db = len(b) - 1
        rem = list(self.coeffs)
        lb = b[-1]
        while len(rem) - 1 >= db and rem:
            lr = rem[-1]
            shift = len(rem) - 1 - db
            rem = [x * lb for x in rem]
            for j in range(db + 1):
                rem[shift + j] -= lr * b[j]
            while rem and rem[-1] == 0:
                rem.pop()
        return IntPolynomial._raw(tuple(rem))

    def substitute_power(self, d: int) -> "IntPolynomial":
        """Return p(q**d)."""
        if d == 1 or len(self.coeffs) <= 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * d + 1)
        for i, a in enumerate(self.coeffs):
            out[i * d] = a
        return IntPolynomial._raw(tuple(out))

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    # -- text --------------------------------------------------------------
    def __str__(self):
        return _render_terms(list(enumerate(self.coeffs)))

    def __repr__(self):
        return f"IntPolynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        terms = _parse_terms(text)
        if any(k < 0 for k in terms):
            raise ValueError(f"negative exponent in polynomial: {text!r}")
        if any(c.denominator != 1 for c in terms.values()):
            raise ValueError(f"non-integer coefficient in polynomial: {text!r}")
        top = max(terms, default=-1)
        return cls(int(terms.get(k, 0)) for k in range(top + 1))


def _render_terms(terms: Sequence[tuple[int, int]]) -> str:
    """Render (exponent, coefficient) pairs in descending exponent order."""
    parts = []
    for k, a in sorted(terms, key=lambda t: -t[0]):
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            var = "q" if k == 1 else f"q^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+)\s*\*?\s*)?      # coefficient
        (q(?:\s*\^\s*(-?\d+))?)? # power of q
        \s*""",
    re.VERBOSE,
)


def _parse_terms(text: str) -> dict[int, Fraction]:
    s = text.replace("{", "").replace("}", "").strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos = 0
    terms: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        if m.group(1) is None and not first:
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            exp = int(m.group(4)) if m.group(4) is not None else 1
        else:
            exp = 0
        terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
        pos = m.end()
        first = False
    return {k: v for k, v in terms.items() if v}


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd of two integer polynomials, positive leading coefficient.

    Uses the primitive polynomial remainder sequence after stripping the
    common power of ``q``, which is by far the most frequent common factor here.
    """
    if not a.coeffs and not b.coeffs:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not a.coeffs:
        return b.primitive()
    if not b.coeffs:
        return a.primitive()
    va, vb = a.valuation(), b.valuation()
    v = min(va, vb)
    a = a.shift(-va)
    b = b.shift(-vb)
    if a.is_constant() or b.is_constant():
        return IntPolynomial.monomial(v)
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b.coeffs:
        if a == b:
            break
        r = a.pseudo_rem(b)
        a, b = b, r.primitive()
        if b.is_constant() and b.coeffs:
            return IntPolynomial.monomial(v)
    return a.primitive().shift(v)


Scalar = Union[int, Fraction, IntPolynomial, "RationalFunction"]


class RationalFunction:
    """Element of Q(q) held as a canonical pair ``num/den`` of integer polynomials.

    Canonical form: gcd(num, den) = 1 over Q[q], the integer contents of
    ``num`` and ``den`` are coprime, and ``den`` has positive leading coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Scalar = 0, den: Scalar = 1):
        n = _to_rf_parts(num)
        d = _to_rf_parts(den)
        # (n0/n1) / (d0/d1)
        top = n[0] * d[1]
        bot = n[1] * d[0]
        self.num, self.den = _canonical(top, bot)
        self._hash = None

    @classmethod
    def _raw(cls, num: IntPolynomial, den: IntPolynomial) -> "RationalFunction":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    @classmethod
    def q_power(cls, k: int) -> "RationalFunction":
        if k >= 0:
            return cls._raw(IntPolynomial.monomial(k), _ONE_POLY)
        return cls._raw(_ONE_POLY, IntPolynomial.monomial(-k))

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other.num.coeffs:
            return self
        if not self.num.coeffs:
            return other
        if self.den == other.den:
            return RationalFunction._from_unreduced(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.degree == 0:
            # coprime denominators: the sum is already reduced over Q[q]
            num = self.num * other.den + other.num * self.den
            return RationalFunction._from_coprime(num, self.den * other.den)
        d1 = self.den.divexact(g)
        d2 = other.den.divexact(g)
        num = self.num * d2 + other.num * d1
        return RationalFunction._from_unreduced(num, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.degree == 0 else self.num.divexact(g1)
        d2 = other.den if g1.degree == 0 else other.den.divexact(g1)
        n2 = other.num if g2.degree == 0 else other.num.divexact(g2)
        d1 = self.den if g2.degree == 0 else self.den.divexact(g2)
        return RationalFunction._from_coprime(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.coeffs:
            raise ZeroDivisionError("inverse of zero rational function")
        if self.num.lc < 0:
            return RationalFunction._raw(-self.den, -self.num)
        return RationalFunction._raw(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction._raw(self.num**e, self.den**e)

    @classmethod
    def _from_coprime(cls, num: IntPolynomial, den: IntPolynomial) -> "RationalFunction":
        if not num.coeffs:
            return ZERO
        c = gcd(num.content(), den.content())
        if den.lc < 0:
            c = -c
        return cls._raw(num.scalar_divexact(c), den.scalar_divexact(c))

    @classmethod
    def _from_unreduced(cls, num: IntPolynomial, den: IntPolynomial) -> "RationalFunction":
        n, d = _canonical(num, den)
        return cls._raw(n, d)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, IntPolynomial)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    # -- queries ------------------------------------------------------------
    def substitute_power(self, d: int) -> "RationalFunction":
        if d < 1:
            raise ValueError("substitution power must be >= 1")
        if d == 1:
            return self
        # q -> q^d preserves coprimality and contents; only the sign rule is untouched
        return RationalFunction._raw(self.num.substitute_power(d), self.den.substitute_power(d))

    def as_polynomial(self) -> IntPolynomial | None:
        """The polynomial this value equals, or None if it is not in Z[q]."""
        if self.den.coeffs == (1,):
            return self.num
        return None

    def is_nonneg_int_poly(self) -> bool:
        p = self.as_polynomial()
        return p is not None and all(a >= 0 for a in p.coeffs)

    def laurent_terms(self) -> dict[int, Fraction] | None:
        """Exponent -> coefficient map when the value is a Laurent polynomial with
        denominator a power of q (times a positive integer), else None."""
        if not self.den.is_monomial():
            return None
        k = self.den.degree
        c = self.den.lc
        return {i - k: Fraction(a, c) for i, a in enumerate(self.num.coeffs) if a}

    def __call__(self, x):
        """Exact evaluation at a rational point."""
        d = self.den(Fraction(x))
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={x}")
        return Fraction(self.num(Fraction(x))) / d

    def __str__(self):
        if self.den.coeffs == (1,):
            return str(self.num)
        if self.den.is_monomial() and self.den.lc == 1:
            k = self.den.degree
            return _render_terms([(i - k, a) for i, a in enumerate(self.num.coeffs)])
        num = str(self.num)
        if sum(1 for a in self.num.coeffs if a) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        return parse_rational(text)


def _canonical(num: IntPolynomial, den: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    if not den.coeffs:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num.coeffs:
        return _ZERO_POLY, _ONE_POLY
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.divexact(g)
        den = den.divexact(g)
    c = gcd(num.content(), den.content())
    if den.lc < 0:
        c = -c
    return num.scalar_divexact(c), den.scalar_divexact(c)


def _to_rf_parts(x) -> tuple[IntPolynomial, IntPolynomial]:
    if isinstance(x, RationalFunction):
        return x.num, x.den
    if isinstance(x, IntPolynomial):
        return x, _ONE_POLY
    if isinstance(x, bool):
        raise TypeError("bool is not a field element")
    if isinstance(x, int):
        return IntPolynomial.constant(x), _ONE_POLY
    if isinstance(x, Fraction):
        return IntPolynomial.constant(x.numerator), IntPolynomial.constant(x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to RationalFunction")


def _coerce_or_none(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction, IntPolynomial)) and not isinstance(x, bool):
        return RationalFunction(x)
    return None


_ZERO_POLY = IntPolynomial._raw(())
_ONE_POLY = IntPolynomial._raw((1,))
ZERO = RationalFunction._raw(_ZERO_POLY, _ONE_POLY)
ONE = RationalFunction._raw(_ONE_POLY, _ONE_POLY)
Q = RationalFunction._raw(IntPolynomial._raw((0, 1)), _ONE_POLY)


def _split_top_level(s: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parenthesis at position {i} in {s!r}")
        elif ch == sep and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    if depth != 0:
        raise ValueError(f"unbalanced parenthesis in {s!r}")
    parts.append(s[start:])
    return parts


def _strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and _matching_paren(s, 0) == len(s) - 1:
        s = s[1:-1].strip()
    return s


def _matching_paren(s: str, i: int) -> int:
    depth = 0
    for j in range(i, len(s)):
        if s[j] == "(":
            depth += 1
        elif s[j] == ")":
            depth -= 1
            if depth == 0:
                return j
    raise ValueError(f"unbalanced parenthesis in {s!r}")


def _laurent_to_rf(text: str) -> RationalFunction:
    terms = _parse_terms(text)
    if not terms:
        return ZERO
    low = min(min(terms), 0)
    top = max(terms)
    lcm_den = 1
    for c in terms.values():
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    num = IntPolynomial(int(terms.get(k + low, 0) * lcm_den) for k in range(top - low + 1))
    den = IntPolynomial.monomial(-low, lcm_den)
    return RationalFunction(num, den)


def parse_rational(text: str) -> RationalFunction:
    """Parse ``"q^5+q^3"``, ``"-q^-1+q^-2"`` or ``"(q^2-1)/(q-1)"``."""
    s = text.strip()
    pieces = _split_top_level(s, "/")
    if len(pieces) > 2:
        raise ValueError(f"more than one '/' in {text!r}")
    value = _laurent_to_rf(_strip_parens(pieces[0]))
    if len(pieces) == 2:
        den = _laurent_to_rf(_strip_parens(pieces[1]))
        value = value / den
    return value


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()


def rf_substitute_power(r: RationalFunction, d: int) -> RationalFunction:
    return r.substitute_power(d)


def rf_as_polynomial(r: RationalFunction) -> IntPolynomial | None:
    return r.as_polynomial()


def rf_is_nonneg_int_poly(r: RationalFunction) -> bool:
    return r.is_nonneg_int_poly()


@lru_cache(maxsize=None)
def _gl_factor(a: int) -> IntPolynomial:
    p = _ONE_POLY
    for k in range(a):
        p = p * (IntPolynomial.monomial(a) - IntPolynomial.monomial(k))
    return p


def gl_order(alpha: Sequence[int]) -> IntPolynomial:
    """|GL(alpha, F_q)| as a polynomial in q."""
    p = _ONE_POLY
    for a in alpha:
        if a < 0:
            raise ValueError("dimension vector entries must be non-negative")
        if a:
            p = p * _gl_factor(a)
    return p
