"""Lazy builders for the two sides of a corpus identity.

A side is a small expression tree over expression-language text (:class:`E`),
Eulerian descriptors (:class:`D`) and plain callables (:class:`Fn`).  Building
is cheap; evaluation happens at a working order and is padded by
:func:`qdual.functions.stable` until the requested order is certified.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from ..dual import EulerianDescriptor, evaluate_descriptor, invert_q
from ..expr import Evaluator, parse_descriptor, parse_expression
from ..functions import stable
from ..series import ParamValue, QSeries, as_fraction, zero

Bindings = Mapping[str, ParamValue]


class Side:
    def at(self, b: Bindings, w: Fraction, lattice: int) -> QSeries:
        raise NotImplementedError

    def evaluate(self, bindings: Bindings, order, lattice: int = 1) -> QSeries:
        order = as_fraction(order)
        return stable(lambda w: self.at(bindings, as_fraction(w), lattice), order).truncate(order)

    def __add__(self, o):
        return _Bin("+", self, lift(o))

    def __radd__(self, o):
        return _Bin("+", lift(o), self)

    def __sub__(self, o):
        return _Bin("-", self, lift(o))

    def __rsub__(self, o):
        return _Bin("-", lift(o), self)

    def __mul__(self, o):
        return _Bin("*", self, lift(o))

    def __rmul__(self, o):
        return _Bin("*", lift(o), self)

    def __truediv__(self, o):
        return _Bin("/", self, lift(o))

    def __neg__(self):
        return _Bin("*", E("-1"), self)


def lift(x) -> Side:
    if isinstance(x, Side):
        return x
    if isinstance(x, str):
        return E(x)
    return E(str(as_fraction(x)))


@lru_cache(maxsize=None)
def _expr(text: str):
    return parse_expression(text)


@lru_cache(maxsize=None)
def _desc(text: str) -> EulerianDescriptor:
    return parse_descriptor(text)


class E(Side):
    """Expression-language text."""

    def __init__(self, text: str):
        self.text = text
        _expr(text)

    def at(self, b, w, lattice):
        ev = Evaluator(w, lattice, b)
        node = _expr(self.text)
        ex = ev.exact(node)
        return ex if ex is not None else ev.eval(node, w)

    def __repr__(self):
        return f"E({self.text!r})"


class D(Side):
    """Eulerian descriptor text, ``sum(n>=k) ...`` or ``sum(n in Z) ...``."""

    def __init__(self, text: str):
        self.text = text
        _desc(text)

    def at(self, b, w, lattice):
        return evaluate_descriptor(_desc(self.text), w, b, lattice)

    def __repr__(self):
        return f"D({self.text!r})"


class InvertQ(Side):
    """The ``q -> 1/q`` image of a descriptor, evaluated termwise."""

    def __init__(self, text: str):
        self.text = text
        self.descriptor = invert_q(_desc(text))

    def at(self, b, w, lattice):
        return evaluate_descriptor(self.descriptor, w, b, lattice)

    def __repr__(self):
        return f"InvertQ({self.text!r})"


class Fn(Side):
    """Escape hatch: ``fn(bindings, order, lattice) -> QSeries``."""

    def __init__(self, fn: Callable[[Bindings, Fraction, int], QSeries], label: str = ""):
        self.fn = fn
        self.label = label or getattr(fn, "__name__", "fn")

    def at(self, b, w, lattice):
        return self.fn(b, w, lattice)

    def __repr__(self):
        return f"Fn({self.label})"


class _Bin(Side):
    def __init__(self, op: str, left: Side, right: Side):
        self.op, self.left, self.right = op, left, right

    def at(self, b, w, lattice):
        x = self.left.at(b, w, lattice)
        y = self.right.at(b, w, lattice)
        if self.op in "*/":
            # exact polynomials with many terms must be cut before multiplying
            if self.op == "/" and y.is_exact and len(y.terms()) != 1:
                y = y.truncate(w)
        if self.op == "+":
            return x + y
        if self.op == "-":
            return x - y
        if self.op == "*":
            return x * y
        return x / y

    def __repr__(self):
        return f"({self.left!r} {self.op} {self.right!r})"


class Substituted(Side):
    """``side`` with parameter ``name`` replaced by ``factor * name``."""

    def __init__(self, side: Side, name: str, factor: ParamValue):
        self.side, self.name, self.factor = side, name, factor

    def at(self, b, w, lattice):
        nb = dict(b)
        nb[self.name] = ParamValue.of(b[self.name]) * self.factor
        return self.side.at(nb, w, lattice)

    def __repr__(self):
        return f"{self.side!r}[{self.name} -> {self.factor}*{self.name}]"


def substitute(side: Side, name: str, factor) -> Side:
    return Substituted(side, name, ParamValue.of(factor))


def subst_text(text: str, name: str, replacement: str) -> str:
    return re.sub(rf"\b{re.escape(name)}\b", f"({replacement})", text)


class Rescaled(Side):
    """``side(q^r)`` computed on a finer lattice, optionally dissected by residue."""

    def __init__(self, side: Side, r, weights=None, inner_lattice: int = 1):
        self.side, self.r, self.weights, self.inner = side, as_fraction(r), weights, inner_lattice

    def at(self, b, w, lattice):
        inner_w = Fraction(math.ceil(w / self.r) + 1)
        s = self.side.at(b, inner_w, self.inner)
        s = s.refine(lattice).rescale(self.r)
        if self.weights is not None:
            s = s.dissect(len(self.weights), weights=self.weights)
        return s

    def __repr__(self):
        return f"{self.side!r}(q^{self.r})" + (f" weights {self.weights}" if self.weights else "")


class Alternating(Side):
    """Regularized ``sum*_{n>=0} (-1)^n T_n`` for terms with a q-adic limit ``T_inf``.

    Defined as ``sum (-1)^n (T_n - T_inf) + T_inf / 2``; the first sum converges
    because ``T_n - T_inf`` has valuation at least ``n + 1``.
    """

    def __init__(self, term: Callable[[Bindings, int, Fraction, int], QSeries], limit: Callable[[Bindings, Fraction, int], QSeries], gap: int = 1):
        self.term, self.limit, self.gap = term, limit, gap

    def at(self, b, w, lattice):
        t_inf = self.limit(b, w, lattice)
        total = zero(w, lattice)
        n = 0
        while (n + 1) * self.gap < w + 2:
            d = self.term(b, n, w, lattice) - t_inf
            total = total + (d if n % 2 == 0 else -d)
            n += 1
        return total + t_inf.scale(Fraction(1, 2))

    def __repr__(self):
        return "Alternating(...)"
