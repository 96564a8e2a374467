"""Structured Eulerian forms and the ``q -> 1/q`` duality transform.

An :class:`EulerianDescriptor` describes one single-index sum

    sum_n  coeff * ratio^n * q^(A n^2 + B n + C) * prod slot^(alpha n + beta)
           * prod_num (arg; q^base)_(lam n + mu) / prod_den (arg; q^base)_(lam n + mu)

where each Pochhammer argument is a :class:`Mono`, a monomial whose
``q``-exponent may depend linearly on ``n`` and which may carry formal
parameters ("slots") bound at evaluation time.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .functions import normalized_term, sum_terms
from .series import (
    INF,
    ParamValue,
    QSeries,
    TruncationError,
    as_fraction,
    format_exponent,
)

Slots = tuple[tuple[str, int], ...]


def _merge_slots(*groups: Mapping[str, int] | Slots) -> Slots:
    acc: dict[str, int] = {}
    for g in groups:
        items = g.items() if isinstance(g, Mapping) else g
        for name, k in items:
            acc[name] = acc.get(name, 0) + k
    return tuple(sorted((n, k) for n, k in acc.items() if k))


@dataclass(frozen=True)
class Mono:
    """``c * q^(e0 + e1 n) * prod slot^k``."""

    c: Fraction = Fraction(1)
    e0: Fraction = Fraction(0)
    e1: Fraction = Fraction(0)
    slots: Slots = ()

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        object.__setattr__(self, "e0", as_fraction(self.e0))
        object.__setattr__(self, "e1", as_fraction(self.e1))
        object.__setattr__(self, "slots", _merge_slots(self.slots))
        if self.c == 0:
            raise ValueError("monomial coefficient must be nonzero")

    def inverse(self) -> "Mono":
        return Mono(1 / self.c, -self.e0, -self.e1, tuple((s, -k) for s, k in self.slots))

    def __mul__(self, other: "Mono") -> "Mono":
        return Mono(self.c * other.c, self.e0 + other.e0, self.e1 + other.e1, _merge_slots(self.slots, other.slots))

    def __neg__(self):
        return replace(self, c=-self.c)

    def bind(self, n: int, bindings: Mapping[str, ParamValue]) -> ParamValue:
        c, e = self.c, self.e0 + self.e1 * n
        for name, k in self.slots:
            try:
                v = bindings[name]
            except KeyError:
                raise KeyError(f"no binding for parameter {name!r}") from None
            c *= v.c**k
            e += v.e * k
        return ParamValue(c, e)

    def __str__(self):
        parts = []
        for name, k in self.slots:
            parts.append(name if k == 1 else f"{name}^{k}" if k > 0 else f"{name}^({k})")
        qe = _lin_text(self.e0, self.e1)
        if qe != "0":
            parts.append("q" if qe == "1" else f"q^{qe}" if _simple(qe) else f"q^({qe})")
        body = "*".join(parts)
        if not body:
            return str(self.c)
        if self.c == 1:
            return body
        if self.c == -1:
            return "-" + body
        return f"{self.c}*{body}"


def _simple(text: str) -> bool:
    return text.isdigit() or text == "n"


def _lin_text(c0: Fraction, c1: Fraction, var: str = "n") -> str:
    return _poly_text({0: c0, 1: c1}, var)


def _poly_text(coeffs: Mapping[int, Fraction], var: str = "n") -> str:
    out = ""
    for p in sorted(coeffs, reverse=True):
        c = as_fraction(coeffs[p])
        if c == 0:
            continue
        mag = abs(c)
        if p == 0:
            piece = str(mag)
        else:
            v = var if p == 1 else f"{var}^{p}"
            piece = v if mag == 1 else f"{mag}*{v}"
        if not out:
            out = piece if c > 0 else "-" + piece
        else:
            out += (" + " if c > 0 else " - ") + piece
    return out or "0"


@dataclass(frozen=True)
class Poch:
    """``(arg; q^base)_(lam n + mu)``."""

    arg: Mono
    base: Fraction = Fraction(1)
    lam: int = 1
    mu: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", as_fraction(self.base))
        if self.base <= 0:
            raise ValueError("Pochhammer base exponent must be positive")
        if self.lam < 0:
            raise ValueError("Pochhammer length must be nondecreasing in n")

    def length(self, n: int) -> int:
        return self.lam * n + self.mu

    def __str__(self):
        base = "q" if self.base == 1 else f"q^{format_exponent(self.base)}"
        return f"poch({self.arg}; {base}; {_lin_text(Fraction(self.mu), Fraction(self.lam))})"


@dataclass(frozen=True)
class EulerianDescriptor:
    """One-index q-sum; see the module docstring for the term shape.

    ``start=None`` means the bilateral range ``n in Z``.
    """

    start: int | None = 0
    coeff: Fraction = Fraction(1)
    ratio: Fraction = Fraction(1)
    quad: tuple[Fraction, Fraction, Fraction] = (Fraction(0), Fraction(0), Fraction(0))
    params: tuple[tuple[str, int, int], ...] = ()
    num: tuple[Poch, ...] = ()
    den: tuple[Poch, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        object.__setattr__(self, "ratio", as_fraction(self.ratio))
        object.__setattr__(self, "quad", tuple(as_fraction(v) for v in self.quad))
        object.__setattr__(self, "num", tuple(self.num))
        object.__setattr__(self, "den", tuple(self.den))
        acc: dict[str, list[int]] = {}
        for name, a, b in self.params:
            slot = acc.setdefault(name, [0, 0])
            slot[0] += a
            slot[1] += b
        object.__setattr__(self, "params", tuple(sorted((k, a, b) for k, (a, b) in acc.items() if a or b)))
        if self.ratio == 0 or self.coeff == 0:
            raise ValueError("coefficient and ratio must be nonzero")

    @property
    def bilateral(self) -> bool:
        return self.start is None

    @property
    def is_partial_theta(self) -> bool:
        return not self.num and not self.den and not self.bilateral

    def slots(self) -> set[str]:
        names = {p[0] for p in self.params}
        for f in self.num + self.den:
            names |= {s for s, _ in f.arg.slots}
        return names

    def __str__(self):
        return format_descriptor(self)


def format_descriptor(d: EulerianDescriptor) -> str:
    """Text form accepted by :func:`qdual.expr.parse_descriptor`."""
    head = "sum(n in Z)" if d.bilateral else f"sum(n>={d.start})"
    factors = []
    sign = ""
    if d.coeff == -1:
        sign = "-"
    elif d.coeff != 1:
        factors.append(str(d.coeff) if d.coeff > 0 else f"({d.coeff})")
    if d.ratio != 1:
        r = str(d.ratio) if d.ratio > 0 and d.ratio.denominator == 1 else f"({d.ratio})"
        factors.append(f"{r}^n")
    A, B, C = d.quad
    qe = _poly_text({2: A, 1: B, 0: C})
    if qe != "0":
        factors.append("q" if qe == "1" else f"q^{qe}" if _simple(qe) else f"q^({qe})")
    for name, a, b in d.params:
        factors.append(f"{name}^({_lin_text(Fraction(b), Fraction(a))})")
    factors += [str(p) for p in d.num]
    body = sign + (" * ".join(factors) or "1")
    if d.den:
        body += " / (" + " * ".join(str(p) for p in d.den) + ")" if len(d.den) > 1 else " / " + str(d.den[0])
    return f"{head} {body}"


# -- evaluation --------------------------------------------------------------


def _term_parts(d: EulerianDescriptor, n: int, bindings: Mapping[str, ParamValue], lattice: int):
    c = d.coeff * d.ratio**n
    A, B, C = d.quad
    e = A * n * n + B * n + C
    for name, a, b in d.params:
        v = bindings[name]
        k = a * n + b
        c *= v.c**k
        e += v.e * k
    pochs = [(p.arg.bind(n, bindings), p.base, p.length(n), 1) for p in d.num]
    pochs += [(p.arg.bind(n, bindings), p.base, p.length(n), -1) for p in d.den]
    return normalized_term(c, e, pochs, lattice)


def _bindings(d: EulerianDescriptor, bindings) -> dict[str, ParamValue]:
    b = {k: ParamValue.of(v) for k, v in (bindings or {}).items()}
    missing = d.slots() - set(b)
    if missing:
        raise KeyError(f"unbound descriptor parameters: {sorted(missing)}")
    return b


def term_valuation(d: EulerianDescriptor, n: int, bindings=None, lattice: int = 1) -> Fraction | None:
    """Exact valuation of term ``n`` (None if the term vanishes)."""
    _, e, _, vanishes = _term_parts(d, n, _bindings(d, bindings), lattice)
    return None if vanishes else e


def evaluate_descriptor(d: EulerianDescriptor, order, bindings=None, lattice: int = 1) -> QSeries:
    """Term-by-term evaluation truncated at ``order``."""
    b = _bindings(d, bindings)
    if order == INF:
        raise TruncationError("evaluate_descriptor needs a finite order")
    return sum_terms(lambda n: _term_parts(d, n, b, lattice), d.start, order, lattice)


# -- q -> 1/q ----------------------------------------------------------------


def invert_q(d: EulerianDescriptor) -> EulerianDescriptor:
    """Substitute ``q -> 1/q`` and rewrite every Pochhammer symbol with
    ``(a; rho)_L = (1/a; q)_L (-a)^L rho^C(L,2)``, ``rho = q^-base``."""
    A, B, C = (-v for v in d.quad)
    coeff, ratio = d.coeff, d.ratio
    params = list(d.params)

    def absorb(p: Poch, sign: int) -> Poch:
        nonlocal A, B, C, coeff, ratio
        a = p.arg
        # after q -> 1/q the argument is alpha = c q^-(e0 + e1 n) * slots
        lam, mu, m = p.lam, p.mu, p.base
        cfac = (-a.c) ** mu
        rfac = (-a.c) ** lam
        # exponent of (-alpha)^L rho^C(L,2): -(e0 + e1 n) L - m L(L-1)/2
        dA = -a.e1 * lam - m * lam * lam / 2
        dB = -(a.e0 * lam + a.e1 * mu) - m * lam * (2 * mu - 1) / 2
        dC = -a.e0 * mu - m * mu * (mu - 1) / 2
        if sign > 0:
            coeff, ratio = coeff * cfac, ratio * rfac
            A, B, C = A + dA, B + dB, C + dC
        else:
            coeff, ratio = coeff / cfac, ratio / rfac
            A, B, C = A - dA, B - dB, C - dC
        for name, k in a.slots:
            params.append((name, sign * k * lam, sign * k * mu))
        new_arg = Mono(1 / a.c, a.e0, a.e1, tuple((s, -k) for s, k in a.slots))
        return Poch(new_arg, m, lam, mu)

    num = tuple(absorb(p, 1) for p in d.num)
    den = tuple(absorb(p, -1) for p in d.den)
    return EulerianDescriptor(d.start, coeff, ratio, (A, B, C), tuple(params), num, den)


def reciprocal_polynomial(p: QSeries) -> QSeries:
    """``q^deg * p(1/q)`` where ``deg`` is the top exponent of ``p``."""
    if not p.is_exact:
        raise TruncationError("reciprocal_polynomial needs an exactly known (finitely supported) polynomial")
    if p.is_zero():
        return p
    top = p.degree()
    return QSeries({top - e: c for e, c in p.terms()}, INF, p.lattice)


# -- heuristic step ------------------------------------------------------------


@dataclass(frozen=True)
class AppellCandidate:
    """``prefactor * m(x, q^base, z)`` with ``z = None`` standing for '*'."""

    prefactor: Mono
    x: Mono
    base: Fraction
    z: Mono | None = None

    def __str__(self):
        z = "*" if self.z is None else str(self.z)
        base = "q" if self.base == 1 else f"q^{format_exponent(self.base)}"
        pre = str(self.prefactor)
        core = f"m({self.x}; {base}; {z})"
        if pre == "1":
            return core
        if pre == "-1":
            return "-" + core
        return f"{pre}*{core}"


class ShapeError(ValueError):
    """The descriptor does not have the shape an operation requires."""


def heuristic_candidates(ds: EulerianDescriptor | Sequence[EulerianDescriptor], flip: bool = True) -> list[AppellCandidate]:
    """Appell-Lerch candidates for partial theta descriptors after ``q -> 1/q``.

    A partial theta ``sum_{n>=0} r^n q^(M C(n+1,2) + u n)`` becomes
    ``sum (-1)^n (-r q^-u)^n q^(-M C(n+1,2))`` which the heuristic reads as
    ``m(-r q^-u, q^M, *)``.  With ``flip`` the candidate is rewritten through
    ``m(x,q,z) = x^-1 m(1/x, q, 1/z)`` whenever ``x`` has a negative exponent.
    """
    if isinstance(ds, EulerianDescriptor):
        ds = [ds]
    out = []
    for d in ds:
        if not d.is_partial_theta or d.start != 0:
            raise ShapeError("heuristic needs a partial theta sum over n >= 0 without Pochhammer factors")
        A, B, C = d.quad
        if A <= 0:
            raise ShapeError("partial theta needs a positive quadratic exponent")
        M = 2 * A
        u = B - A
        lin_slots = tuple((name, a) for name, a, _ in d.params)
        const_slots = tuple((name, b) for name, _, b in d.params)
        pre = Mono(d.coeff, -C, 0, const_slots)
        x = Mono(-d.ratio, -u, 0, lin_slots)
        if flip and x.e0 < 0:
            pre = pre * x.inverse()
            x = x.inverse()
        out.append(AppellCandidate(pre, x, M))
    return out


def remainder(lhs: QSeries, resolved: QSeries) -> QSeries:
    """What is left of ``lhs`` after the resolved candidates are subtracted."""
    return lhs - resolved
from .recognize import Bounds, QuadraticClass, Recognition, ThetaAtom, ThetaQuotient, prodmake, theta_recognize  # noqa: E402,F401
