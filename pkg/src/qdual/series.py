"""Truncated Laurent series in ``q`` with exact rational coefficients.

A :class:`QSeries` lives on the exponent lattice ``(1/D)Z``.  Internally every
exponent is stored as its integer numerator over ``D``; the public surface
speaks in :class:`~fractions.Fraction` exponents.  ``order`` is the truncation
bound: coefficients at exponents ``>= order`` are unknown.  An order of
``math.inf`` marks an exact (finitely supported) series such as a polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

INF = math.inf

Number = Union[int, Fraction]


class LatticeError(ValueError):
    """Exponents that do not fit the lattice, or mixed lattices."""


class TruncationError(ValueError):
    """A coefficient or comparison was requested beyond the known order."""


class PoleError(ZeroDivisionError):
    """A non-generic argument produced a vanishing constant denominator."""


class NotInvertibleError(ZeroDivisionError):
    """The series is zero to its known order and cannot be inverted."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def to_numerator(e, lattice: int) -> int:
    """Numerator of exponent ``e`` on the lattice ``(1/lattice)Z``."""
    n = as_fraction(e) * lattice
    if n.denominator != 1:
        raise LatticeError(
            f"exponent {as_fraction(e)} is not on the lattice (1/{lattice})Z; refine the lattice first"
        )
    return n.numerator


def _order_numerator(order, lattice: int):
    if order is None or order == INF:
        return INF
    return to_numerator(order, lattice)


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = d * v.denominator // math.gcd(d, v.denominator)
    return d


@dataclass(frozen=True)
class ParamValue:
    """The monomial ``c*q^e`` used as an argument of the special functions."""

    c: Fraction
    e: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        object.__setattr__(self, "e", as_fraction(self.e))
        if self.c == 0:
            raise ValueError("a ParamValue must have a nonzero coefficient")

    @classmethod
    def of(cls, value) -> "ParamValue":
        if isinstance(value, ParamValue):
            return value
        return cls(as_fraction(value), 0)

    def __mul__(self, other):
        if isinstance(other, ParamValue):
            return ParamValue(self.c * other.c, self.e + other.e)
        if isinstance(other, QSeries):
            return other * self
        return ParamValue(self.c * as_fraction(other), self.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * ParamValue.of(other).inverse()

    def __rtruediv__(self, other):
        return ParamValue.of(other) * self.inverse()

    def __neg__(self):
        return ParamValue(-self.c, self.e)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("ParamValue powers must be integers")
        return ParamValue(self.c**k, self.e * k)

    def inverse(self) -> "ParamValue":
        return ParamValue(1 / self.c, -self.e)

    def series(self, order=INF, lattice: int = 1) -> "QSeries":
        return make_monomial(self.c, self.e, order, lattice)

    def __str__(self):
        return format_monomial(self.c, self.e) or "1"

    def __repr__(self):
        return f"ParamValue({self.c}, {self.e})"


#: the monomial ``q`` itself, so arguments read like ``-a*q**2``.
q = ParamValue(1, 1)


def format_exponent(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return f"({e})"


def format_monomial(c: Fraction, e: Fraction) -> str:
    """Canonical text for ``c*q^e``; coefficient first, exact rationals."""
    if e == 0:
        return str(c)
    qpart = "q" if e == 1 else f"q^{format_exponent(e)}"
    if c == 1:
        return qpart
    if c == -1:
        return "-" + qpart
    return f"{c}*{qpart}"


class QSeries:
    """Truncated Laurent series ``sum c_e q^e + O(q^order)``.

    Values are immutable; every operation returns a new series.
    """

    __slots__ = ("_t", "_order", "_lattice")

    def __init__(self, terms: Mapping | Iterable = (), order=INF, lattice: int = 1):
        if lattice < 1:
            raise LatticeError("lattice denominator must be a positive integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        raw: dict[int, Fraction] = {}
        for e, c in items:
            n = to_numerator(e, lattice)
            raw[n] = raw.get(n, Fraction(0)) + as_fraction(c)
        self._set(raw, _order_numerator(order, lattice), lattice)

    def _set(self, raw: dict, order, lattice: int):
        self._t = {n: c for n, c in raw.items() if c and n < order}
        self._order = order
        self._lattice = lattice

    @classmethod
    def _raw(cls, raw: dict, order, lattice: int) -> "QSeries":
        s = cls.__new__(cls)
        s._set(raw, order, lattice)
        return s

    # -- inspection -------------------------------------------------------

    @property
    def lattice(self) -> int:
        return self._lattice

    @property
    def order(self):
        """Truncation bound as a Fraction, or ``math.inf`` for exact series."""
        if self._order == INF:
            return INF
        return Fraction(self._order, self._lattice)

    @property
    def is_exact(self) -> bool:
        return self._order == INF

    def _val(self):
        return min(self._t) if self._t else self._order

    def valuation(self):
        """Lowest exponent with a nonzero coefficient, or None for zero."""
        if not self._t:
            return None
        return Fraction(min(self._t), self._lattice)

    def is_zero(self) -> bool:
        return not self._t

    def degree(self):
        if not self._t:
            return None
        return Fraction(max(self._t), self._lattice)

    def coefficient(self, e) -> Fraction:
        n = to_numerator(e, self._lattice)
        if n >= self._order:
            raise TruncationError(f"coefficient of q^{as_fraction(e)} is beyond the truncation order {self.order}")
        return self._t.get(n, Fraction(0))

    __getitem__ = coefficient

    def terms(self) -> list[tuple[Fraction, Fraction]]:
        D = self._lattice
        return [(Fraction(n, D), self._t[n]) for n in sorted(self._t)]

    def __len__(self):
        return len(self._t)

    def __iter__(self):
        return iter(self.terms())

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self._lattice == other._lattice and self._order == other._order
                and self._t == other._t)

    def __hash__(self):
        return hash((self._lattice, self._order, frozenset(self._t.items())))

    def __str__(self):
        parts = [format_monomial(c, e) for e, c in self.terms()]
        body = ""
        for i, p in enumerate(parts):
            if i == 0:
                body = p
            elif p.startswith("-"):
                body += " - " + p[1:]
            else:
                body += " + " + p
        if self.is_exact:
            return body or "0"
        tail = f"O(q^{format_exponent(self.order)})"
        return f"{body} + {tail}" if body else f"0 + {tail}"

    def __repr__(self):
        return f"QSeries({self})"

    # -- lattice and truncation ------------------------------------------

    def truncate(self, order) -> "QSeries":
        o = _order_numerator(order, self._lattice)
        if o > self._order:
            raise TruncationError(f"cannot raise truncation order from {self.order} to {order}")
        return QSeries._raw(self._t, o, self._lattice)

    def refine(self, lattice: int) -> "QSeries":
        """The same series on the finer lattice ``(1/lattice)Z``."""
        if lattice % self._lattice:
            raise LatticeError(f"lattice {lattice} does not refine {self._lattice}")
        k = lattice // self._lattice
        order = self._order * k if self._order != INF else INF
        return QSeries._raw({n * k: c for n, c in self._t.items()}, order, lattice)

    def _check(self, other: "QSeries"):
        if self._lattice != other._lattice:
            raise LatticeError(f"lattice mismatch: 1/{self._lattice} vs 1/{other._lattice}")

    def _coerce(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return other
        if isinstance(other, ParamValue):
            return other.series(INF, self._lattice)
        if isinstance(other, (int, Rational)):
            return QSeries._raw({0: Fraction(other)}, INF, self._lattice)
        return None

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        order = min(self._order, g._order)
        raw = dict(self._t)
        for n, c in g._t.items():
            raw[n] = raw.get(n, 0) + c
        return QSeries._raw(raw, order, self._lattice)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw({n: -c for n, c in self._t.items()}, self._order, self._lattice)

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def scale(self, c) -> "QSeries":
        c = as_fraction(c)
        if c == 0:
            return QSeries._raw({}, INF, self._lattice)
        return QSeries._raw({n: c * v for n, v in self._t.items()}, self._order, self._lattice)

    def shift(self, e) -> "QSeries":
        """Multiply by ``q^e``."""
        k = to_numerator(e, self._lattice)
        order = self._order + k if self._order != INF else INF
        return QSeries._raw({n + k: c for n, c in self._t.items()}, order, self._lattice)

    def __mul__(self, other):
        if isinstance(other, ParamValue):
            return self.shift(other.e).scale(other.c)
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        return _convolve(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ParamValue):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(1 / as_fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g * self.invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries._raw({0: Fraction(1)}, INF, self._lattice)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse to the propagated order.

        For valuation ``v`` and order ``o`` the inverse has valuation ``-v``
        and order ``o - 2v``.
        """
        if not self._t:
            raise NotInvertibleError("not invertible at this truncation: series is zero to its order")
        v = min(self._t)
        if self._order == INF:
            if len(self._t) == 1:
                return QSeries._raw({-v: 1 / self._t[v]}, INF, self._lattice)
            raise TruncationError("an exact non-monomial series has no finite inverse; truncate it first")
        width = self._order - v
        out_order = self._order - 2 * v
        den = _lcm_denominators(self._t.values())
        ints = {n - v: int(c * den) for n, c in self._t.items()}
        lead = ints.pop(0)
        # h_k = lead^(k+1) * g_k satisfies an integer recurrence
        powers = [1]
        for _ in range(width):
            powers.append(powers[-1] * lead)
        taps = sorted((i, a * powers[i - 1]) for i, a in ints.items() if i < width)
        h = [0] * width
        h[0] = 1
        for k in range(1, width):
            acc = 0
            for i, a in taps:
                if i > k:
                    break
                hk = h[k - i]
                if hk:
                    acc -= a * hk
            h[k] = acc
        raw = {}
        for k in range(width):
            if h[k]:
                raw[k - v] = Fraction(den * h[k], powers[k + 1])
        return QSeries._raw(raw, out_order, self._lattice)

    # -- substitutions ----------------------------------------------------

    def rescale(self, r) -> "QSeries":
        """Apply ``q -> q^r`` for positive rational ``r``."""
        r = as_fraction(r)
        if r <= 0:
            raise ValueError("rescale factor must be positive")
        raw = {}
        for n, c in self._t.items():
            m = n * r
            if m.denominator != 1:
                raise LatticeError(f"rescale by {r} leaves the lattice (1/{self._lattice})Z; refine the lattice first")
            raw[m.numerator] = c
        if self._order == INF:
            order = INF
        else:
            o = self._order * r
            order = math.ceil(o)
        return QSeries._raw(raw, order, self._lattice)

    def dissect(self, modulus: int, residue: int | None = None, weights: Sequence | None = None) -> "QSeries":
        """Keep terms by residue of their lattice numerator modulo ``modulus``.

        With ``weights`` (one per residue) return the weighted recombination
        ``sum_t weights[t] * (terms with numerator = t mod modulus)``.
        """
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if weights is None:
            if residue is None:
                raise ValueError("give a residue or a weight vector")
            weights = [1 if t == residue % modulus else 0 for t in range(modulus)]
        if len(weights) != modulus:
            raise ValueError("need one weight per residue class")
        w = [as_fraction(x) for x in weights]
        raw = {n: c * w[n % modulus] for n, c in self._t.items()}
        return QSeries._raw(raw, self._order, self._lattice)


def _convolve(f: QSeries, g: QSeries) -> QSeries:
    vf, vg = f._val(), g._val()
    order = min(f._order + vg, g._order + vf)
    if not f._t or not g._t:
        return QSeries._raw({}, order, f._lattice)
    df = _lcm_denominators(f._t.values())
    dg = _lcm_denominators(g._t.values())
    fi = sorted((n, int(c * df)) for n, c in f._t.items())
    gi = sorted((n, int(c * dg)) for n, c in g._t.items())
    if len(fi) > len(gi):
        fi, gi = gi, fi
    acc: dict[int, int] = {}
    get = acc.get
    for n1, a in fi:
        lim = order - n1
        for n2, b in gi:
            if n2 >= lim:
                break
            k = n1 + n2
            acc[k] = get(k, 0) + a * b
    den = df * dg
    return QSeries._raw({n: Fraction(v, den) for n, v in acc.items() if v}, order, f._lattice)


# -- module-level operations ------------------------------------------------


def make_monomial(c, e, order=INF, lattice: int = 1) -> QSeries:
    c = as_fraction(c)
    n = to_numerator(e, lattice)
    o = _order_numerator(order, lattice)
    return QSeries._raw({n: c} if c else {}, o, lattice)


def zero(order=INF, lattice: int = 1) -> QSeries:
    return QSeries._raw({}, _order_numerator(order, lattice), lattice)


def one(order=INF, lattice: int = 1) -> QSeries:
    return make_monomial(1, 0, order, lattice)


def add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def invert(f: QSeries) -> QSeries:
    return f.invert()


def rescale(f: QSeries, r) -> QSeries:
    return f.rescale(r)


def dissect(f: QSeries, modulus: int, residue: int | None = None, weights=None) -> QSeries:
    return f.dissect(modulus, residue, weights)


def coefficient(f: QSeries, e) -> Fraction:
    return f.coefficient(e)


def geometric_factor(u, e, order, lattice: int = 1) -> QSeries:
    """Expansion of ``1/(1 - u q^e)`` around ``q = 0``.

    For ``e < 0`` the rewrite ``-sum_{k>=1} u^-k q^(-e k)`` is used, so every
    exponent in the result is nonnegative.
    """
    u = as_fraction(u)
    n = to_numerator(e, lattice)
    o = _order_numerator(order, lattice)
    if o == INF:
        if n == 0:
            pass
        elif u == 0:
            return one(INF, lattice)
        else:
            raise TruncationError("geometric_factor needs a finite order")
    if u == 0:
        return one(order, lattice)
    if n == 0:
        if u == 1:
            raise PoleError("pole: 1/(1 - q^0) with unit coefficient")
        return QSeries._raw({0: 1 / (1 - u)}, o, lattice)
    raw = {}
    if n > 0:
        k, p = 0, Fraction(1)
        while k * n < o:
            raw[k * n] = p
            k += 1
            p *= u
    else:
        step = -n
        inv = 1 / u
        k, p = 1, -inv
        while k * step < o:
            raw[k * step] = p
            k += 1
            p *= inv
    return QSeries._raw(raw, o, lattice)


def div_binomial(f: QSeries, u, e) -> QSeries:
    """``f / (1 - u q^e)`` by a linear recurrence (no full convolution)."""
    u = as_fraction(u)
    if u == 0:
        return f
    D = f._lattice
    n = to_numerator(e, D)
    if n == 0:
        if u == 1:
            raise PoleError("pole: division by 1 - q^0")
        return f.scale(1 / (1 - u))
    if n < 0:
        # 1/(1 - u q^n) = -u^-1 q^-n / (1 - u^-1 q^-n)
        return div_binomial(f.shift(Fraction(-n, D)).scale(-1 / u), 1 / u, Fraction(-n, D))
    if f._order == INF:
        raise TruncationError("cannot divide an exact series by a binomial without truncation")
    if not f._t:
        return f
    lo, hi = min(f._t), f._order
    if n >= hi - lo:
        return f
    arr = [f._t.get(k, 0) for k in range(lo, hi)]
    for i in range(n, hi - lo):
        prev = arr[i - n]
        if prev:
            arr[i] = arr[i] + u * prev
    return QSeries._raw({lo + i: c for i, c in enumerate(arr) if c}, hi, D)


def mul_binomial(f: QSeries, u, e) -> QSeries:
    """``f * (1 - u q^e)``."""
    u = as_fraction(u)
    if u == 0:
        return f
    return f - f.shift(e).scale(u)


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`equal_to_order`."""

    passed: bool
    order: Fraction
    exponent: Fraction | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"pass to O(q^{format_exponent(self.order)})"
        return f"fail at q^{format_exponent(self.exponent)}: {self.lhs} vs {self.rhs}"


def equal_to_order(f: QSeries, g: QSeries, order=None) -> Comparison:
    """Compare two series coefficientwise below ``order``."""
    f._check(g)
    avail = min(f._order, g._order)
    o = avail if order is None else _order_numerator(order, f._lattice)
    if o > avail:
        raise TruncationError(f"comparison order {order} exceeds the available truncation {Fraction(avail, f._lattice) if avail != INF else avail}")
    if o == INF:
        keys = set(f._t) | set(g._t)
    else:
        keys = {n for n in f._t if n < o} | {n for n in g._t if n < o}
    D = f._lattice
    shown = Fraction(o, D) if o != INF else INF
    for n in sorted(keys):
        a, b = f._t.get(n, Fraction(0)), g._t.get(n, Fraction(0))
        if a != b:
            return Comparison(False, shown, Fraction(n, D), a, b)
    return Comparison(True, shown)
