"""Bailey pairs, the conjugate pair behind the duality lemma, and the pair registry.

Everything is relative to ``(a, q^b)``: every ``q`` in the defining relation
``beta_n = sum_r alpha_r / ((a q^b; q^b)_{n+r} (q^b; q^b)_{n-r})`` is read as
``q^b``.  ``alpha_n`` is an exact Laurent polynomial; ``beta_n`` is a
truncated series built from Pochhammer quotients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .functions import DegenerateError, expand_term, normalized_term, pochhammer_inf, sum_terms
from .series import INF, Comparison, ParamValue, QSeries, as_fraction, equal_to_order, zero

Terms = list[tuple[Fraction, Fraction]]  # (exponent, coefficient)


def _sign(n: int) -> int:
    return -1 if n & 1 else 1


def _ratio_poly(s: int, h: Fraction) -> Terms:
    """``(1 - q^(s h)) / (1 - q^h)`` as a list of monomials."""
    if s >= 0:
        return [(i * h, Fraction(1)) for i in range(s)]
    return [(-i * h, Fraction(-1)) for i in range(1, -s + 1)]


def _scaled(terms: Terms, c, e) -> Terms:
    return [(e + x, c * k) for x, k in terms]


# -- pair specifications -------------------------------------------------------


@dataclass(frozen=True)
class Relative:
    """Relative parameters ``(a, q^base)`` of a Bailey pair."""

    a: ParamValue
    base: Fraction

    def __str__(self):
        b = "q" if self.base == 1 else f"q^{self.base}"
        return f"(a={self.a}, base={b})"


@dataclass(frozen=True)
class BaileyPairSpec:
    """Closed-form Bailey pair.

    ``alpha(n)`` returns the monomials of ``alpha_n``; ``beta(n)`` returns
    ``(c, e, pochs)`` meaning ``c q^e prod (x; q^base)_L^power``.
    ``candidates`` are the relative parameters tried by :func:`validate`.
    """

    name: str
    source: str
    alpha: Callable[[int], Terms]
    beta: Callable[[int], tuple]
    alpha_text: str
    beta_text: str
    candidates: tuple[Relative, ...]
    lattice: int = 1

    def alpha_series(self, n: int) -> QSeries:
        return QSeries(self.alpha(n), INF, self.lattice)

    def beta_series(self, n: int, order) -> QSeries:
        c, e, pochs = self.beta(n)
        c, e, binomials, vanishes = normalized_term(c, e, pochs, self.lattice)
        if vanishes:
            return zero(order, self.lattice)
        return expand_term(c, e, binomials, order, self.lattice)


def _relative_factors(rel: Relative, n: int, r: int):
    b = rel.base
    aq = rel.a * ParamValue(1, b)
    return [(aq, b, n + r, -1), (ParamValue(1, b), b, n - r, -1)]


def beta_from_alpha(pair: BaileyPairSpec, n: int, order, rel: Relative | None = None) -> QSeries:
    """``sum_{r=0}^n alpha_r / ((a q)_{n+r} (q)_{n-r})`` relative to ``rel``."""
    if n < 0:
        raise ValueError("beta_from_alpha needs n >= 0")
    rel = rel or relative_of(pair)
    D = pair.lattice
    total = zero(order, D)
    for r in range(n + 1):
        alpha = pair.alpha_series(r)
        if alpha.is_zero():
            continue
        v = alpha.valuation()
        c, e, binomials, vanishes = normalized_term(1, 0, _relative_factors(rel, n, r), D)
        if vanishes:
            continue
        w = as_fraction(order) - v - e
        total = total + (expand_term(c, 0, binomials, w, D) * alpha).shift(e)
    return total.truncate(order)


def _matches(pair: BaileyPairSpec, rel: Relative, nmax: int, order) -> bool:
    try:
        for n in range(nmax + 1):
            if not equal_to_order(beta_from_alpha(pair, n, order, rel), pair.beta_series(n, order), order):
                return False
    except (DegenerateError, ZeroDivisionError):
        return False
    return True


_VALIDATED: dict[str, Relative] = {}


def validate(pair: BaileyPairSpec, nmax: int = 8, order=30) -> Relative:
    """Fix the unique candidate relative parameter satisfying the defining relation."""
    if pair.name in _VALIDATED:
        return _VALIDATED[pair.name]
    good = [rel for rel in pair.candidates if _matches(pair, rel, nmax, order)]
    if len(good) != 1:
        raise ValueError(f"pair {pair.name}: expected exactly one valid relative parameter, found {[str(g) for g in good]}")
    _VALIDATED[pair.name] = good[0]
    return good[0]


def relative_of(pair: BaileyPairSpec) -> Relative:
    return validate(pair)


# -- the conjugate pair and the lemma -------------------------------------------


def _q(b) -> ParamValue:
    return ParamValue(1, b)


def delta_parts(rel: Relative, n: int):
    """``delta_n = (-1)^n q^(b C(n+1,2)) (a; q^b)_n / (1 - a)``."""
    a, b = rel.a, rel.base
    if a.c == 1 and a.e == 0:
        raise DegenerateError("conjugate pair undefined at a = 1: delta has 1/(1 - a)")
    return _sign(n), b * n * (n + 1) / 2, [(a, b, n, 1), (a, b, 1, -1)]


def gamma_from_delta(rel: Relative, n: int, order, lattice: int = 1) -> QSeries:
    """Tail sum ``sum_{r>=n} delta_r / ((a q)_{r+n} (q)_{r-n})``."""
    b = rel.base
    aq = rel.a * _q(b)

    def term(k):
        r = n + k
        c, e, pochs = delta_parts(rel, r)
        return normalized_term(c, e, pochs + [(aq, b, r + n, -1), (_q(b), b, k, -1)], lattice)

    return sum_terms(term, 0, order, lattice)


def gamma_closed(rel: Relative, n: int, order, lattice: int = 1) -> QSeries:
    """``(-1)^n q^(C(n+1,2)) (q)_inf (a)_n / ((q)_n (aq)_inf (1 - a))`` with ``q -> q^b``."""
    a, b = rel.a, rel.base
    c, e, pochs = delta_parts(rel, n)
    c, e, binomials, vanishes = normalized_term(c, e, pochs + [(_q(b), b, n, -1)], lattice)
    if vanishes:
        return zero(order, lattice)
    width = as_fraction(order) - e + 2
    ratio = pochhammer_inf(_q(b), b, width, lattice) / pochhammer_inf(a * _q(b), b, width, lattice)
    core = expand_term(c, 0, binomials, width, lattice)
    return (core * ratio).shift(e).truncate(order)


def lemma_sides(pair: BaileyPairSpec, order, rel: Relative | None = None) -> tuple[QSeries, QSeries]:
    """Both sides of ``sum (-1)^n q^C(n+1,2) (a)_n beta_n
    = (q)_inf/(aq)_inf sum (-1)^n q^C(n+1,2) (a)_n/(q)_n alpha_n``."""
    rel = rel or relative_of(pair)
    a, b = rel.a, rel.base
    D = pair.lattice
    order = as_fraction(order)

    def left(n):
        c, e, pochs = pair.beta(n)
        return normalized_term(_sign(n) * c, e + b * n * (n + 1) / 2, pochs + [(a, b, n, 1)], D)

    lhs = sum_terms(left, 0, order, D)

    # alpha_n is a polynomial: sum its monomials as separate terms
    pad = order + 2
    rhs_sum = zero(pad, D)
    vals: list[Fraction] = []
    n = 0
    while True:
        alpha = pair.alpha_series(n)
        base_c, base_e, binomials, vanishes = normalized_term(_sign(n), b * n * (n + 1) / 2, [(a, b, n, 1), (_q(b), b, n, -1)], D)
        v = base_e + (alpha.valuation() if not alpha.is_zero() else 0)
        vals.append(v)
        if not vanishes and not alpha.is_zero() and v < pad:
            core = expand_term(base_c, 0, binomials, pad - v, D)
            rhs_sum = rhs_sum + (core * alpha).shift(base_e)
        if n > 3 and min(vals[-4:]) >= pad and vals[-1] >= vals[-2] >= vals[-3]:
            break
        n += 1
    ratio = pochhammer_inf(_q(b), b, pad, D) / pochhammer_inf(a * _q(b), b, pad, D)
    rhs = (rhs_sum * ratio).truncate(order)
    return lhs, rhs


def pairing_sides(pair: BaileyPairSpec, order, rel: Relative | None = None) -> tuple[QSeries, QSeries]:
    """``sum beta_n delta_n`` and ``sum alpha_n gamma_n`` for the lemma's conjugate pair."""
    rel = rel or relative_of(pair)
    D = pair.lattice
    order = as_fraction(order)

    def left(n):
        c, e, pochs = pair.beta(n)
        dc, de, dpochs = delta_parts(rel, n)
        return normalized_term(c * dc, e + de, pochs + dpochs, D)

    lhs = sum_terms(left, 0, order, D)
    rhs = zero(order, D)
    n = 0
    misses = 0
    while misses < 4:
        alpha = pair.alpha_series(n)
        if alpha.is_zero():
            n += 1
            continue
        c, e, _ = delta_parts(rel, n)
        v = alpha.valuation() + e
        if v >= order:
            misses += 1
        else:
            misses = 0
            g = gamma_closed(rel, n, order - alpha.valuation() + 2, D)
            rhs = rhs + (g * alpha)
        n += 1
    return lhs, rhs.truncate(order)


def phi11_check(a, c, order, lattice: int = 1) -> Comparison:
    """``sum (-1)^r q^C(r,2) (a)_r (c/a)^r / ((c)_r (q)_r) = (c/a)_inf / (c)_inf``."""
    a, c = ParamValue.of(a), ParamValue.of(c)
    ca = c / a
    q = _q(1)

    def term(r):
        mono = ca**r
        return normalized_term(_sign(r) * mono.c, mono.e + Fraction(r * (r - 1), 2), [(a, 1, r, 1), (c, 1, r, -1), (q, 1, r, -1)], lattice)

    lhs = sum_terms(term, 0, order, lattice)
    top = pochhammer_inf(ca, 1, order + 2, lattice)
    if top.is_zero():
        rhs = zero(order, lattice)
    else:
        rhs = (top / pochhammer_inf(c, 1, order + 2, lattice)).truncate(order)
    return equal_to_order(lhs, rhs, order)


@dataclass
class PairReport:
    """Outcome of :func:`check_pair`: the defining relation and the lemma sides."""

    name: str
    relative: Relative
    definition: Comparison | None
    lemma: Comparison
    pairing: Comparison

    @property
    def passed(self) -> bool:
        return bool(self.definition) and bool(self.lemma) and bool(self.pairing)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status:5} {self.name} relative {self.relative}; definition {self.definition}; lemma {self.lemma}; pairing {self.pairing}"


def check_pair(pair: BaileyPairSpec, nmax: int = 15, order=60, lemma_order=40) -> PairReport:
    """Defining relation for ``n <= nmax`` plus both lemma identities."""
    rel = relative_of(pair)
    definition = None
    for n in range(nmax + 1):
        definition = equal_to_order(beta_from_alpha(pair, n, order, rel), pair.beta_series(n, order), order)
        if not definition:
            break
    lemma = equal_to_order(*lemma_sides(pair, lemma_order, rel), lemma_order)
    pairing = equal_to_order(*pairing_sides(pair, lemma_order, rel), lemma_order)
    return PairReport(pair.name, rel, definition, lemma, pairing)


# -- the registry ------------------------------------------------------------------


def _by_residue(mod: int, pieces: dict[int, Callable[[int], Terms]], first: int = 0):
    """``alpha_{mod*k + t} = pieces[t](k)`` with ``t`` taken in the keyed window."""

    def alpha(n: int) -> Terms:
        for t, piece in pieces.items():
            if (n - t) % mod == 0:
                k = (n - t) // mod
                if mod * k + t == n and (k >= 1 or (k == 0 and t >= 0)):
                    return piece(k)
        return []

    return alpha


def _mono(c, e) -> Terms:
    return [(Fraction(e), Fraction(c))]


def _warnaar(shift: int) -> Callable[[int], Terms]:
    """``(-1)^floor((4n+1)/3) q^((2n+shift)... )`` family with the indicator on n mod 3."""

    def alpha(n: int) -> Terms:
        if n % 3 == 1:
            return []
        e = Fraction((n + shift) * n, 3) if shift == -2 else Fraction((2 * n - 1) * n, 3)
        return _scaled(_ratio_poly(2 * n + 1, Fraction(1)), _sign((4 * n + 1) // 3), e)

    return alpha


def _w44(n: int) -> Terms:
    return _scaled(_ratio_poly(2 * n + 1, Fraction(1)), _sign(n), Fraction((3 * n - 1) * n, 4))


def _g2(n: int) -> Terms:
    h = Fraction(1, 2)
    if n % 2 == 0:
        k = n // 2
        return _scaled(_ratio_poly(4 * k + 1, h), 1, 3 * k * k + h * k)
    k = (n + 1) // 2
    return _scaled(_ratio_poly(-4 * k + 1, h), 1, 3 * k * k - h * k)


def _beta(c=1, e=0, pochs=()):
    return lambda n: (Fraction(c), Fraction(e), list(pochs))


_Q = _q(1)
_HALF = Fraction(1, 2)


def _candidates(*bases) -> tuple[Relative, ...]:
    out = []
    for b in bases:
        for a_e in (0, b, 2 * b):
            out.append(Relative(ParamValue(1, a_e), Fraction(b)))
    return tuple(out)


_STD = _candidates(1, 2)
_HALFSET = _candidates(_HALF, 1, 2)


def _pairs() -> dict[str, BaileyPairSpec]:
    q = _Q
    P = lambda e: ParamValue(1, e)
    specs = [
        BaileyPairSpec(
            "WarnaarP12",
            "Warnaar, p. 12",
            _warnaar(-2),
            lambda n: (Fraction(1), Fraction(n * (n - 1)), [(q, 1, 2 * n, -1)]),
            "(-1)^floor((4n+1)/3) q^((n-2)n/3) (1-q^(2n+1))/(1-q) [n != 1 mod 3]",
            "q^(n(n-1)) / (q;q)_{2n}",
            _STD,
        ),
        BaileyPairSpec(
            "SlaterA6",
            "Slater A6",
            _by_residue(3, {-1: lambda k: _mono(1, 3 * k * k + k), 0: lambda k: _mono(1, 3 * k * k - k),
                            1: lambda k: _mono(-1, 3 * k * k + k) + _mono(-1, 3 * k * k + 5 * k + 2)}),
            lambda n: (Fraction(1), Fraction(n * n), [(P(2), 1, 2 * n, -1)]),
            "a_{3n-1} = q^(3n^2+n), a_{3n} = q^(3n^2-n), a_{3n+1} = -q^(3n^2+n) - q^(3n^2+5n+2)",
            "q^(n^2) / (q^2;q)_{2n}",
            _STD,
        ),
        BaileyPairSpec(
            "SlaterA8",
            "Slater A8",
            _by_residue(3, {-1: lambda k: _mono(1, 3 * k * k - 2 * k), 0: lambda k: _mono(1, 3 * k * k + 2 * k),
                            1: lambda k: _mono(-1, 3 * k * k + 4 * k + 1) + _mono(-1, 3 * k * k + 2 * k)}),
            lambda n: (Fraction(1), Fraction(n * n + n), [(P(2), 1, 2 * n, -1)]),
            "a_{3n-1} = q^(3n^2-2n), a_{3n} = q^(3n^2+2n), a_{3n+1} = -q^(3n^2+4n+1) - q^(3n^2+2n)",
            "q^(n^2+n) / (q^2;q)_{2n}",
            _STD,
        ),
        BaileyPairSpec(
            "Warnaar46",
            "Warnaar (4.6)",
            _warnaar(-1),
            lambda n: (Fraction(1), Fraction(0), [(q, 1, 2 * n, -1)]),
            "(-1)^floor((4n+1)/3) q^((2n-1)n/3) (1-q^(2n+1))/(1-q) [n != 1 mod 3]",
            "1 / (q;q)_{2n}",
            _STD,
        ),
        BaileyPairSpec(
            "SlaterA2",
            "Slater A2",
            _by_residue(3, {-1: lambda k: _mono(1, 6 * k * k - k), 0: lambda k: _mono(1, 6 * k * k + k),
                            1: lambda k: _mono(-1, 6 * k * k + 5 * k + 1) + _mono(-1, 6 * k * k + 7 * k + 2)}),
            lambda n: (Fraction(1), Fraction(0), [(P(2), 1, 2 * n, -1)]),
            "a_{3n-1} = q^(6n^2-n), a_{3n} = q^(6n^2+n), a_{3n+1} = -q^(6n^2+5n+1) - q^(6n^2+7n+2)",
            "1 / (q^2;q)_{2n}",
            _STD,
        ),
        BaileyPairSpec(
            "SlaterA4",
            "Slater A4",
            _by_residue(3, {-1: lambda k: _mono(1, 6 * k * k - 4 * k), 0: lambda k: _mono(1, 6 * k * k + 4 * k),
                            1: lambda k: _mono(-1, 6 * k * k + 8 * k + 2) + _mono(-1, 6 * k * k + 4 * k)}),
            lambda n: (Fraction(1), Fraction(n), [(P(2), 1, 2 * n, -1)]),
            "a_{3n-1} = q^(6n^2-4n), a_{3n} = q^(6n^2+4n), a_{3n+1} = -q^(6n^2+8n+2) - q^(6n^2+4n)",
            "q^n / (q^2;q)_{2n}",
            _STD,
        ),
        BaileyPairSpec(
            "SlaterC4",
            "Slater C4",
            _by_residue(2, {0: lambda k: _mono(_sign(k), 3 * k * k + 3 * k), 1: lambda k: _mono(-_sign(k), 3 * k * k + 3 * k)}),
            lambda n: (Fraction(1), Fraction(n), [(P(3), 2, n, -1), (q, 1, n, -1)]),
            "a_{2n} = (-1)^n q^(3n^2+3n), a_{2n+1} = (-1)^(n+1) q^(3n^2+3n)",
            "q^n / ((q^3;q^2)_n (q;q)_n)",
            _STD,
        ),
        BaileyPairSpec(
            "SlaterC3",
            "Slater C3",
            _by_residue(2, {0: lambda k: _mono(_sign(k), 3 * k * k + k), 1: lambda k: _mono(-_sign(k), 3 * k * k + 5 * k + 2)}),
            lambda n: (Fraction(1), Fraction(0), [(P(3), 2, n, -1), (q, 1, n, -1)]),
            "a_{2n} = (-1)^n q^(3n^2+n), a_{2n+1} = (-1)^(n+1) q^(3n^2+5n+2)",
            "1 / ((q^3;q^2)_n (q;q)_n)",
            _STD,
        ),
        BaileyPairSpec(
            "Warnaar44",
            "Warnaar (4.4)",
            _w44,
            lambda n: (Fraction(1), Fraction(0), [(P(2), 2, n, -1), (ParamValue(-1, _HALF), 1, n, -1)]),
            "(-1)^n q^((3n-1)n/4) (1-q^(2n+1))/(1-q)",
            "1 / ((q^2;q^2)_n (-q^(1/2);q)_n)",
            _HALFSET,
            lattice=2,
        ),
        BaileyPairSpec(
            "SlaterG2",
            "Slater G2",
            _g2,
            lambda n: (Fraction(1), Fraction(0), [(P(2), 2, n, -1), (ParamValue(-1, 3 * _HALF), 1, n, -1)]),
            "a_{2n} = q^(3n^2+n/2) (1-q^(2n+1/2))/(1-q^(1/2)), a_{2n-1} = q^(3n^2-n/2) (1-q^(-2n+1/2))/(1-q^(1/2))",
            "1 / ((q^2;q^2)_n (-q^(3/2);q)_n)",
            _HALFSET,
            lattice=2,
        ),
    ]
    return {p.name: p for p in specs}


REGISTRY: dict[str, BaileyPairSpec] = _pairs()


def get_pair(name: str) -> BaileyPairSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown Bailey pair {name!r}; known: {', '.join(REGISTRY)}") from None


def manifest() -> str:
    """Human-readable registry listing with the validated relative parameters."""
    lines = []
    for p in REGISTRY.values():
        rel = relative_of(p)
        lines.append(f"{p.name}\t{p.source}\trelative {rel} (inferred by validation)\tlattice {p.lattice}")
        lines.append(f"    alpha: {p.alpha_text}")
        lines.append(f"    beta:  {p.beta_text}")
    return "\n".join(lines)
