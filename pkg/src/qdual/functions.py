"""Theta functions, Appell-Lerch sums and related q-series producers.

Every function takes its monomial arguments as :class:`ParamValue` (plain
rationals are accepted as constants), the base as the exponent ``m`` of
``q^m``, the truncation ``order`` and the exponent ``lattice``.  Results are
truncated at exactly ``order``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .series import (
    INF,
    NotInvertibleError,
    ParamValue,
    PoleError,
    QSeries,
    TruncationError,
    as_fraction,
    div_binomial,
    make_monomial,
    one,
    to_numerator,
    zero,
)


class DegenerateError(PoleError):
    """A q-Pochhammer factor that has to be inverted is exactly zero."""


class ThetaZeroError(NotInvertibleError):
    """``j(z; q^m)`` vanishes identically and cannot be divided by."""


def _sign(n: int) -> int:
    return -1 if n & 1 else 1


def _pv(x) -> ParamValue:
    return ParamValue.of(x)


def _base(m, lattice: int) -> int:
    M = to_numerator(m, lattice)
    if M <= 0:
        raise ValueError("the base exponent must be positive")
    return M


def _finite(order, lattice: int) -> int:
    if order is None or order == INF:
        raise TruncationError("an infinite q-series needs a finite truncation order")
    return to_numerator(order, lattice)


def quadratic_support(a, b, c, bound) -> range:
    """Integers ``n`` with ``a*n^2 + b*n + c < bound`` (``a > 0``)."""
    a, b, c, bound = (as_fraction(v) for v in (a, b, c, bound))
    if a <= 0:
        raise ValueError("quadratic_support needs a positive leading coefficient")
    f = lambda n: (a * n + b) * n + c
    start = math.floor(-b / (2 * a))
    if f(start) >= bound and f(start + 1) >= bound:
        return range(0)
    if f(start) >= bound:
        start += 1
    lo = start
    while f(lo - 1) < bound:
        lo -= 1
    hi = start
    while f(hi + 1) < bound:
        hi += 1
    return range(lo, hi + 1)


def stable(compute: Callable[[Fraction], QSeries], order, attempts: int = 6) -> QSeries:
    """Evaluate ``compute`` at a padded order until it reaches ``order``.

    Divisions by series of positive valuation lose precision; the deficit is
    measured and added back as padding on the next attempt.
    """
    order = as_fraction(order)
    pad = Fraction(0)
    for _ in range(attempts):
        s = compute(order + pad)
        if s.order >= order:
            return s.truncate(order)
        pad += order - s.order + 1
    raise TruncationError(f"could not reach order {order} after {attempts} attempts")


# -- Pochhammer symbols ------------------------------------------------------


def _factor_is_zero(c: Fraction, n: int) -> bool:
    return c == 1 and n == 0


def _product(factors: list[tuple[Fraction, int]], order, lattice: int) -> QSeries:
    """``prod (1 - u q^n)`` over numerator pairs, truncated at ``order``.

    Runs on a dense integer array with one common denominator.
    """
    for u, n in factors:
        if _factor_is_zero(u, n):
            return zero(INF if order == INF else Fraction(order, lattice), lattice)
    rem = sum(n for _, n in factors if n < 0)
    low = rem
    top = sum(n for _, n in factors if n > 0) + 1
    cap = top if order == INF else min(top, order - rem)
    arr = [0] * max(cap - low, 1)
    lo = hi = -low  # index range holding nonzero entries
    arr[lo] = 1
    den = 1
    for u, n in factors:
        if n < 0:
            rem -= n
        end = len(arr) if order == INF else min(len(arr), order - rem - low)
        prev = hi
        u = Fraction(u)
        p, d = u.numerator, u.denominator
        den *= d
        if n == 0:
            for i in range(lo, hi + 1):
                arr[i] *= d - p
        elif n > 0:
            old_lo = lo
            new_hi = min(hi + n, end - 1)
            for i in range(new_hi, lo - 1, -1):
                j = i - n
                arr[i] = d * arr[i] - (p * arr[j] if j >= old_lo else 0)
            hi = new_hi
        else:
            old_hi = hi
            lo += n
            for i in range(lo, min(hi, end - 1) + 1):
                j = i - n
                arr[i] = d * arr[i] - (p * arr[j] if j <= old_hi else 0)
            hi = min(hi, end - 1)
        for i in range(end, prev + 1):
            arr[i] = 0
    limit = len(arr) if order == INF else order - low
    raw = {i + low: Fraction(v, den) for i, v in enumerate(arr[:limit]) if v}
    return QSeries._raw(raw, INF if order == INF else order, lattice)


def pochhammer_valuation(x, base, n: int, lattice: int = 1) -> Fraction:
    """Exact valuation of ``(x; q^base)_n`` when no factor vanishes."""
    x = _pv(x)
    M = _base(base, lattice)
    E = to_numerator(x.e, lattice)
    if n >= 0:
        v = sum(min(0, E + M * i) for i in range(n))
    else:
        k = -n
        v = -k * E + M * k * (k + 1) // 2 - sum(min(0, M * (i + 1) - E) for i in range(k))
    return Fraction(v, lattice)


def pochhammer(x, base, n: int, order=INF, lattice: int = 1) -> QSeries:
    """``(x; q^base)_n``; negative ``n`` through ``(x)_{-k} = (-1)^k x^-k q^(base k(k+1)/2) / (q^base/x)_k``."""
    x = _pv(x)
    M = _base(base, lattice)
    E = to_numerator(x.e, lattice)
    o = INF if order == INF else to_numerator(order, lattice)
    if n >= 0:
        return _product([(x.c, E + M * i) for i in range(n)], o, lattice)
    k = -n
    y = ParamValue(1 / x.c, Fraction(M - E, lattice))
    for i in range(k):
        if _factor_is_zero(y.c, M - E + M * i):
            raise DegenerateError(f"degenerate Pochhammer ({x}; q^{base})_{n}: factor (1 - q^0) in the denominator")
    num = ParamValue(_sign(k) / x.c**k, Fraction(-k * E + M * k * (k + 1) // 2, lattice))
    _finite(order, lattice)

    def compute(w):
        s = num.series(w, lattice)
        for i in range(k):
            s = div_binomial(s, y.c, y.e + Fraction(M * i, lattice))
        return s

    return stable(compute, order)


def pochhammer_inf(x, base, order, lattice: int = 1) -> QSeries:
    """``(x; q^base)_inf`` truncated at ``order``."""
    x = _pv(x)
    M = _base(base, lattice)
    E = to_numerator(x.e, lattice)
    o = _finite(order, lattice)
    neg = sum(E + M * i for i in range(max(0, -E // M + 1)) if E + M * i < 0)
    factors = []
    i = 0
    while E + M * i < o - neg:
        factors.append((x.c, E + M * i))
        i += 1
    return _product(factors, o, lattice)


def div_pochhammer(s: QSeries, x, base, n: int) -> QSeries:
    """``s / (x; q^base)_n`` for ``n >= 0`` via binomial recurrences."""
    x = _pv(x)
    D = s.lattice
    M = _base(base, D)
    E = to_numerator(x.e, D)
    for i in range(n):
        if _factor_is_zero(x.c, E + M * i):
            raise DegenerateError(f"degenerate Pochhammer: ({x}; q^{base})_{n} has a zero factor")
        s = div_binomial(s, x.c, Fraction(E + M * i, D))
    return s


# -- theta functions ---------------------------------------------------------


def theta_valuation(x, base, lattice: int = 1) -> Fraction | None:
    """Valuation of ``j(x; q^base)``, or None when it vanishes identically."""
    x = _pv(x)
    M = _base(base, lattice)
    E = to_numerator(x.e, lattice)
    if x.c == 1 and E % M == 0:
        return None
    best = min(quadratic_support_min(Fraction(M, 2), Fraction(E) - Fraction(M, 2)))
    return Fraction(best, lattice)


def quadratic_support_min(a: Fraction, b: Fraction) -> list[Fraction]:
    v = math.floor(-b / (2 * a))
    return [(a * n + b) * n for n in (v, v + 1)]


def theta_j(x, base=1, order=50, lattice: int = 1) -> QSeries:
    """``j(x; q^base) = sum_n (-1)^n q^(base*C(n,2)) x^n``."""
    x = _pv(x)
    M = _base(base, lattice)
    E = to_numerator(x.e, lattice)
    o = _finite(order, lattice)
    raw: dict[int, Fraction] = {}
    for n in quadratic_support(Fraction(M, 2), E - Fraction(M, 2), 0, o):
        k = M * n * (n - 1) // 2 + n * E
        raw[k] = raw.get(k, 0) + _sign(n) * x.c**n
    return QSeries._raw(raw, o, lattice)


def theta_J(a, m, kind: str = "plain", order=50, lattice: int = 1) -> QSeries:
    """``J_{a,m}``, ``Jbar_{a,m}`` (``kind='bar'``) or ``J_m`` (``kind='eta'``)."""
    if kind == "plain":
        return theta_j(ParamValue(1, a), m, order, lattice)
    if kind == "bar":
        return theta_j(ParamValue(-1, a), m, order, lattice)
    if kind == "eta":
        return pochhammer_inf(ParamValue(1, m), m, order, lattice)
    raise ValueError(f"unknown theta kind {kind!r}")


def J(a, m, order=50, lattice: int = 1) -> QSeries:
    return theta_J(a, m, "plain", order, lattice)


def Jbar(a, m, order=50, lattice: int = 1) -> QSeries:
    return theta_J(a, m, "bar", order, lattice)


def Jm(m, order=50, lattice: int = 1) -> QSeries:
    return theta_J(0, m, "eta", order, lattice)


def _theta_inverse(z: ParamValue, M: int, width: int, lattice: int) -> tuple[QSeries, int]:
    """``1/j(z; q^M)`` known to relative precision ``width``; returns (series, valuation)."""
    v = theta_valuation(z, Fraction(M, lattice), lattice)
    if v is None:
        raise ThetaZeroError(f"theta zero: j({z}; q^{Fraction(M, lattice)}) vanishes identically")
    vn = to_numerator(v, lattice)
    jz = theta_j(z, Fraction(M, lattice), Fraction(vn + width, lattice), lattice)
    return jz.invert(), vn


# -- Appell-Lerch sums -------------------------------------------------------


def _geometric_into(raw: dict, s, P: int, u: Fraction, E: int, limit: int):
    """Accumulate ``s q^P / (1 - u q^E)`` (expanded at q=0) into ``raw``."""
    if E > 0:
        k, p = P, s
        while k < limit:
            raw[k] = raw.get(k, 0) + p
            k += E
            p *= u
    elif E < 0:
        inv = 1 / u
        k, p = P - E, -s * inv
        while k < limit:
            raw[k] = raw.get(k, 0) + p
            k -= E
            p *= inv
    else:
        if u == 1:
            raise PoleError
        if P < limit:
            raw[P] = raw.get(P, 0) + s / (1 - u)


def _appell_sum(x: ParamValue, M: int, z: ParamValue, limit: int, lattice: int, alt: bool) -> QSeries:
    Ex, Ez = to_numerator(x.e, lattice), to_numerator(z.e, lattice)
    u = x.c * z.c
    raw: dict[int, Fraction] = {}
    half = Fraction(M, 2)
    lin = Ez + (half if alt else -half)
    for r in quadratic_support(half, lin, 0, limit):
        if alt:
            P = M * r * (r + 1) // 2 + r * Ez
            E = M * r + Ex + Ez
        else:
            P = M * r * (r - 1) // 2 + r * Ez
            E = M * (r - 1) + Ex + Ez
        try:
            _geometric_into(raw, _sign(r) * z.c**r, P, u, E, limit)
        except PoleError:
            raise PoleError(
                f"pole in m({x}, q^{Fraction(M, lattice)}, {z}): denominator 1 - q^{Fraction(E, lattice)}*{u} vanishes at r={r}"
            ) from None
    return QSeries._raw(raw, limit, lattice)


def appell_m(x, base, z, order=50, lattice: int = 1, form: str = "standard") -> QSeries:
    """``m(x, q^base, z) = j(z;q^base)^-1 sum_r (-1)^r q^(base C(r,2)) z^r / (1 - q^(base(r-1)) x z)``.

    ``form='shifted'`` evaluates the index-shifted representation
    ``-z/j(z) sum_r (-1)^r q^(base C(r+1,2)) z^r / (1 - q^(base r) x z)`` instead.
    """
    x, z = _pv(x), _pv(z)
    M = _base(base, lattice)
    o = _finite(order, lattice)
    if form not in ("standard", "shifted"):
        raise ValueError(f"unknown form {form!r}")
    alt = form == "shifted"
    Exz = to_numerator(x.e, lattice) + to_numerator(z.e, lattice)
    if x.c * z.c == 1 and Exz % M == 0:
        r = 1 - Exz // M
        raise PoleError(
            f"pole in m({x}, q^{Fraction(M, lattice)}, {z}): denominator 1 - q^{Fraction(M, lattice)}(r-1)*x*z vanishes at r={r}"
        )
    vj = theta_valuation(z, Fraction(M, lattice), lattice)
    if vj is None:
        raise ThetaZeroError(f"theta zero: j({z}; q^{Fraction(M, lattice)}) vanishes identically")
    vj = to_numerator(vj, lattice)
    Ez = to_numerator(z.e, lattice)
    half = Fraction(M, 2)
    # lower bound on every exponent of the r-sum (geometric tails only add)
    vmin = math.floor(min(quadratic_support_min(half, Ez + (half if alt else -half))))
    shift = Ez if alt else 0
    s = _appell_sum(x, M, z, o + vj - shift, lattice, alt)
    inv, _ = _theta_inverse(z, M, o + vj - vmin - shift, lattice)
    if alt:
        s = s * (-z)
    return (s * inv).truncate(Fraction(o, lattice))


# -- universal mock theta function -------------------------------------------


def _eulerian_tail_done(vals: list[int], limit: int) -> bool:
    if len(vals) < 4:
        return False
    a, b, c, d = vals[-4:]
    return a >= limit and b >= a and c >= b and d >= c and (d - c) >= (c - b) >= 0


def universal_g(x, base=1, order=50, lattice: int = 1, form: str = "product") -> QSeries:
    """Universal mock theta function ``g(x, q^base)``.

    ``form='product'``: ``sum q^(m n(n+1)) / ((x)_{n+1} (q^m/x)_{n+1})``;
    ``form='definition'``: ``x^-1 (-1 + sum q^(m n^2) / ((x)_{n+1} (q^m/x)_n))``.
    """
    x = _pv(x)
    M = _base(base, lattice)
    _finite(order, lattice)
    m = Fraction(M, lattice)
    y = (ParamValue(1, m) / x)
    if form not in ("product", "definition"):
        raise ValueError(f"unknown form {form!r}")
    extra = 1 if form == "product" else 0

    def compute(w):
        W = to_numerator(w, lattice)
        total = zero(w, lattice)
        vals: list[int] = []
        n = 0
        while True:
            quad = M * n * (n + extra)
            v = (quad - to_numerator(pochhammer_valuation(x, m, n + 1, lattice), lattice)
                 - to_numerator(pochhammer_valuation(y, m, n + extra, lattice), lattice))
            vals.append(v)
            if v < W:
                t = make_monomial(1, Fraction(quad, lattice), w, lattice)
                t = div_pochhammer(t, x, m, n + 1)
                t = div_pochhammer(t, y, m, n + extra)
                total = total + t
            if _eulerian_tail_done(vals, W):
                break
            n += 1
        if form == "definition":
            total = (total - 1) / x
        return total

    return stable(compute, order)


# -- Hecke-type double sums ----------------------------------------------------


def hecke_f(A: int, B: int, C: int, x, y, base=1, order=50, lattice: int = 1) -> QSeries:
    """``f_{A,B,C}(x, y, q^base)``: sum over sg(r) = sg(s) of
    ``sg(r) (-1)^(r+s) x^r y^s q^(base (A C(r,2) + B r s + C C(s,2)))``."""
    if not (A > 0 and C > 0 and B >= 0):
        raise ValueError(f"unsupported Hecke triple ({A},{B},{C}): the quadrant bound needs A, C > 0 and B >= 0")
    x, y = _pv(x), _pv(y)
    M = _base(base, lattice)
    o = _finite(order, lattice)
    Ex, Ey = to_numerator(x.e, lattice), to_numerator(y.e, lattice)
    half = Fraction(M, 2)
    raw: dict[int, Fraction] = {}
    # along each quadrant the cross term B r s is >= 0, so the r- and s-parts bound separately
    smin = min(quadratic_support_min(half * C, Ey - half * C))
    for r in quadratic_support(half * A, Ex - half * A, smin, o):
        sign = 1 if r >= 0 else -1
        qr = M * A * r * (r - 1) // 2 + r * Ex
        for s in quadratic_support(half * C, Ey - half * C + M * B * r, qr, o):
            if (s >= 0) != (r >= 0):
                continue
            k = qr + M * (B * r * s + C * s * (s - 1) // 2) + s * Ey
            raw[k] = raw.get(k, 0) + sign * _sign(r + s) * x.c**r * y.c**s
    return QSeries._raw(raw, o, lattice)


# -- starred and bilateral sums ------------------------------------------------


def starred_sum(x, order=50, lattice: int = 1) -> QSeries:
    """``Jbar_{0,1}^-1 sum_{n in Z} (1 + 1/x) q^(n(n+1)/2) / ((1 + x q^n)(1 + q^n/x))``."""
    x = _pv(x)
    if x.c == -1 and x.e.denominator == 1:
        raise PoleError(f"pole: a factor 1 + x q^n of the starred sum vanishes for x = {x}")
    D = lattice
    _finite(order, D)
    pre = one(INF, D) + x.inverse().series(INF, D)

    def compute(w):
        W = to_numerator(w, D)
        acc = zero(w, D)
        for n in quadratic_support(Fraction(D, 2), Fraction(D, 2), 0, W):
            t = make_monomial(1, Fraction(n * (n + 1), 2), w, D)
            t = div_binomial(t, -x.c, x.e + n)
            t = div_binomial(t, -1 / x.c, n - x.e)
            acc = acc + t
        return pre * acc / Jbar(0, 1, w, D)

    return stable(compute, order)


def partial_theta(x, base=1, order=50, lattice: int = 1) -> QSeries:
    """``sum_{n>=0} (-1)^n x^n q^(base C(n+1,2))``."""
    x = _pv(x)
    M = _base(base, lattice)
    o = _finite(order, lattice)
    E = to_numerator(x.e, lattice)
    raw: dict[int, Fraction] = {}
    n = 0
    while True:
        k = M * n * (n + 1) // 2 + n * E
        if k < o:
            raw[k] = raw.get(k, 0) + _sign(n) * x.c**n
        elif n > 0 and M * (n + 1) + E > 0:
            break
        n += 1
    return QSeries._raw(raw, o, lattice)


def normalized_term(c, e, pochs, lattice: int = 1):
    """Split ``c q^e prod (x; q^base)_L^power`` into a monomial and binomials.

    ``pochs`` holds ``(x, base, L, power)`` with ``power = +-1`` and any integer
    ``L``.  Returns ``(c, e, binomials, vanishes)`` where each binomial
    ``(u, E, power)`` stands for ``(1 - u q^(E/lattice))^power`` with ``E >= 0``,
    so ``e`` is the exact valuation of a nonvanishing term.
    """
    c, e = as_fraction(c), as_fraction(e)
    binomials: list[tuple[Fraction, int, int]] = []
    vanishes = False
    for x, base, L, power in pochs:
        x = _pv(x)
        base = as_fraction(base)
        M = _base(base, lattice)
        if L < 0:
            k = -L
            # (x)_{-k} = (-1)^k x^-k q^(base k(k+1)/2) / (q^base/x)_k
            c *= (_sign(k) * x.c ** (-k)) ** power
            e += (-k * x.e + base * k * (k + 1) / 2) * power
            x = ParamValue(1 / x.c, base - x.e)
            L, power = k, -power
        E0 = to_numerator(x.e, lattice)
        for i in range(L):
            E, u = E0 + M * i, x.c
            if E < 0:
                # 1 - u q^E = -u q^E (1 - u^-1 q^-E)
                c *= (-u) ** power
                e += Fraction(E, lattice) * power
                u, E = 1 / u, -E
            if E == 0 and u == 1:
                if power > 0:
                    vanishes = True
                    continue
                raise DegenerateError(f"degenerate Pochhammer factor: ({x}; q^{base}) has (1 - q^0) in a denominator")
            binomials.append((u, E, power))
    return c, e, binomials, vanishes


def expand_term(c, e, binomials, order, lattice: int = 1) -> QSeries:
    """``c q^e prod (1 - u q^E)^power`` truncated at ``order``."""
    W = to_numerator(order, lattice)
    v = to_numerator(e, lattice)
    if v >= W:
        return zero(order, lattice)
    width = W - v
    # dense coefficient array relative to q^e; power is +-1
    arr: list = [Fraction(1)] + [0] * (width - 1)
    const = Fraction(1)
    for u, E, power in binomials:
        if E == 0:
            const *= (1 - u) ** power
        elif E < width:
            if power > 0:
                for i in range(width - 1, E - 1, -1):
                    prev = arr[i - E]
                    if prev:
                        arr[i] = arr[i] - u * prev
            else:
                for i in range(E, width):
                    prev = arr[i - E]
                    if prev:
                        arr[i] = arr[i] + u * prev
    scale = c * const
    return QSeries._raw({v + i: x * scale for i, x in enumerate(arr) if x}, W, lattice)


def sum_terms(term_parts, start: int | None, order, lattice: int = 1) -> QSeries:
    """Sum ``n -> normalized_term(...)`` over ``n >= start`` (or all of Z if None).

    Each direction stops once the exact valuations have passed ``order`` and
    grow convexly, so unbounded ranges terminate.
    """
    W = _finite(order, lattice)
    total = zero(order, lattice)
    runs = [(0, 1), (-1, -1)] if start is None else [(start, 1)]
    for n, step in runs:
        vals: list[int] = []
        while True:
            c, e, binomials, vanishes = term_parts(n)
            v = to_numerator(e, lattice)
            vals.append(v)
            if not vanishes and v < W:
                total = total + expand_term(c, e, binomials, order, lattice)
            if _eulerian_tail_done(vals, W):
                break
            if len(vals) > MAX_TERMS:
                raise ValueError("sum does not converge: term valuations do not pass the truncation order")
            n += step
    return total


MAX_TERMS = 20000


def bilateral_m_sum(a, b, order=50, lattice: int = 1) -> tuple[QSeries, QSeries]:
    """The two bilateral series equal to
    ``(-aq)_inf / (b (q)_inf (-q/b)_inf) * j(-b; q) * m(a/b, q, -b)``:

    ``sum_n a^(-n-1) b^(-n) q^(n^2) / ((-1/a)_{n+1} (-q/b)_n)`` and
    ``sum_n (-aq)_n (-b)_{n+1} q^(n+1)``, both over all integers ``n``.
    """
    a, b = _pv(a), _pv(b)
    D = lattice
    qq = ParamValue(1, 1)
    na, nb = ParamValue(-1, 0) / a, -(qq / b)
    aq, mb = -(a * qq), -b

    def first(n):
        mono = a ** (-n - 1) * b ** (-n)
        return normalized_term(mono.c, mono.e + n * n, [(na, 1, n + 1, -1), (nb, 1, n, -1)], D)

    def second(n):
        return normalized_term(1, n + 1, [(aq, 1, n, 1), (mb, 1, n + 1, 1)], D)

    return sum_terms(first, None, order, D), sum_terms(second, None, order, D)


def gaussian_binomial(n: int, k: int) -> QSeries:
    """``[n choose k]_q`` as an exact polynomial; zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return zero()
    coeffs = _gauss_table(n, min(k, n - k))
    return QSeries._raw({i: Fraction(c) for i, c in enumerate(coeffs) if c}, INF, 1)


@lru_cache(maxsize=None)
def _gauss_table(n: int, k: int) -> tuple[int, ...]:
    if k == 0 or k == n:
        return (1,)
    # [n,k] = [n-1,k-1] + q^k [n-1,k]
    a = _gauss_table(n - 1, min(k - 1, n - k))
    b = _gauss_table(n - 1, min(k, n - 1 - k))
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)
