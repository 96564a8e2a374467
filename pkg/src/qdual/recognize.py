"""Recognize theta quotients, and theta quotients times a partial theta residual.

A series ``f`` is normalized to ``c q^s (1 + ...)`` and rewritten as
``prod (1 - q^k)^(b_k)``.  Every atom ``J_{a,m}``, ``Jbar_{a,m}``, ``J_m`` has a
periodic exponent vector, so a pure quotient is a small integer combination of
atom vectors; the search only uses atoms whose period divides the detected
period of ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .functions import J, Jbar, Jm
from .series import QSeries, one


@dataclass(frozen=True, order=True)
class ThetaAtom:
    """``J_{a,m}`` (kind "J"), ``Jbar_{a,m}`` (kind "Jbar") or ``J_m`` (kind "Jm", a = 0)."""

    kind: str
    m: int
    a: int = 0

    def __str__(self):
        if self.kind == "Jm":
            return f"J{self.m}"
        return f"{self.kind}({self.a},{self.m})"

    @property
    def constant(self) -> int:
        return 2 if self.kind == "Jbar" and self.a == 0 else 1

    @property
    def period(self) -> int:
        return 2 * self.m if self.kind == "Jbar" else self.m

    def vector(self, N: int) -> tuple[int, ...]:
        """Exponents ``b_k`` (k = 0..N-1, b_0 = 0) with ``atom/constant = prod (1-q^k)^b_k``."""
        b = [0] * N
        m, a = self.m, self.a
        for k in range(m, N, m):
            b[k] += 1
        if self.kind == "Jm":
            return tuple(b)
        starts = [a, m - a] if a else [m, m]
        for s in starts:
            for k in range(s, N, m):
                if self.kind == "J":
                    b[k] += 1
                else:
                    # 1 + q^k = (1 - q^2k) / (1 - q^k)
                    b[k] -= 1
                    if 2 * k < N:
                        b[2 * k] += 1
        return tuple(b)

    def series(self, order) -> QSeries:
        if self.kind == "Jm":
            return Jm(self.m, order)
        return (J if self.kind == "J" else Jbar)(self.a, self.m, order)


@dataclass(frozen=True)
class ThetaQuotient:
    """``c q^shift prod atom^exp``."""

    c: Fraction
    shift: Fraction
    factors: tuple[tuple[ThetaAtom, int], ...]

    def __str__(self):
        parts = [] if self.c == 1 else [str(self.c)]
        if self.shift:
            parts.append(f"q^{self.shift}" if self.shift != 1 else "q")
        for atom, e in self.factors:
            parts.append(str(atom) if e == 1 else f"{atom}^{e}")
        return "*".join(parts) or "1"

    def encoding(self) -> dict:
        return {str(a): e for a, e in self.factors}

    def series(self, order) -> QSeries:
        width = order - self.shift + 2
        out = one(width)
        for atom, e in self.factors:
            s = atom.series(width)
            out = out * (s**e if e > 0 else s.invert() ** (-e))
        return (out.shift(self.shift).scale(self.c)).truncate(order)


@dataclass(frozen=True)
class QuadraticClass:
    """``sign * sum_{n>=0} q^(A n^2 + B n + C)`` seen on the window."""

    sign: int
    A: Fraction
    B: Fraction
    C: Fraction
    points: int

    def __str__(self):
        s = "+" if self.sign > 0 else "-"
        return f"{s}sum q^({self.A}n^2 + {self.B}n + {self.C})"


@dataclass(frozen=True)
class Recognition:
    quotient: ThetaQuotient
    residual: tuple[QuadraticClass, ...] | None = None

    @property
    def pure(self) -> bool:
        return self.residual is None

    def __str__(self):
        if self.pure:
            return str(self.quotient)
        return f"{self.quotient} * ({' '.join(str(r) for r in self.residual)})"


@dataclass(frozen=True)
class Bounds:
    max_modulus: int = 30
    max_factors: int = 4
    max_exponent: int = 2
    mixed_modulus: int = 12
    mixed_factors: int = 2


# -- helpers ---------------------------------------------------------------------


def _normalize(f: QSeries):
    """Leading coefficient, valuation and the integer coefficient list of the unit part."""
    if f.is_zero():
        return None
    v = f.valuation()
    c = f.coefficient(v)
    g = f.shift(-v).scale(1 / c)
    if g.lattice != 1:
        if any(e.denominator != 1 for e, _ in g.terms()) or g.order.denominator != 1:
            return None
    N = int(g.order)
    coeffs = [0] * N
    for e, x in g.terms():
        if x.denominator != 1:
            return None
        coeffs[int(e)] = int(x)
    return c, v, coeffs


def _apply(coeffs: list[int], k: int, power: int) -> None:
    """In place: multiply by ``(1 - q^k)^power``."""
    N = len(coeffs)
    if power > 0:
        for _ in range(power):
            for i in range(N - 1, k - 1, -1):
                coeffs[i] -= coeffs[i - k]
    else:
        for _ in range(-power):
            for i in range(k, N):
                coeffs[i] += coeffs[i - k]


def prodmake(coeffs: list[int]) -> list[int]:
    """Exponents ``b_k`` with ``sum coeffs_i q^i = prod (1 - q^k)^(b_k)`` on the window."""
    g = list(coeffs)
    b = [0] * len(g)
    for k in range(1, len(g)):
        b[k] = -g[k]
        if b[k]:
            _apply(g, k, -b[k])
    return b


def _periods(b: list[int], limit: int) -> list[int]:
    N = len(b)
    return [L for L in range(1, min(limit, N // 2) + 1) if all(b[k] == b[k + L] for k in range(1, N - L))]


def atoms(max_modulus: int, dividing: int | None = None) -> list[ThetaAtom]:
    """All canonical atoms up to a modulus, optionally with period dividing ``dividing``."""
    out: list[ThetaAtom] = []
    for m in range(1, max_modulus + 1):
        if dividing is None or dividing % m == 0:
            out.append(ThetaAtom("Jm", m))
            out += [ThetaAtom("J", m, a) for a in range(1, m // 2 + 1) if 3 * a != m]
        if dividing is None or dividing % (2 * m) == 0:
            out += [ThetaAtom("Jbar", m, a) for a in range(0, m // 2 + 1)]
    return out


def _first(vec) -> int:
    return next(k for k, x in enumerate(vec) if x)


def _pure(b: list[int], bounds: Bounds) -> list[tuple[tuple[ThetaAtom, int], ...]]:
    """Every combination of at most ``max_factors`` atoms with exponent vector ``b``.

    Atoms are grouped by the first index they touch; walking the indices in
    order and settling each one exactly once enumerates every combination once.
    """
    N = len(b)
    if not any(b):
        return [()]
    exps = [e for k in range(1, bounds.max_exponent + 1) for e in (k, -k)]
    found: set[tuple] = set()
    for L in _periods(b, 10**9):
        by_first: dict[int, list] = {}
        for atom in atoms(bounds.max_modulus, L):
            vec = atom.vector(N)
            if any(vec):
                by_first.setdefault(_first(vec), []).append((atom, vec))

        def walk(k, residual, chosen):
            budget = bounds.max_factors - len(chosen)
            while k < N and not residual[k] and k not in by_first:
                k += 1
            if k >= N:
                if not any(residual):
                    found.add(tuple(sorted(chosen)))
                return
            if budget == 0:
                return
            group = by_first.get(k, [])
            for size in range(0, min(budget, len(group)) + 1):
                for subset in combinations(group, size):
                    for picks in _exponent_choices(len(subset), exps):
                        if sum(e * vec[k] for (_, vec), e in zip(subset, picks)) != residual[k]:
                            continue
                        r = list(residual)
                        for (_, vec), e in zip(subset, picks):
                            for i in range(k, N):
                                r[i] -= e * vec[i]
                        walk(k + 1, r, chosen + [(a, e) for (a, _), e in zip(subset, picks)])

        walk(1, list(b), [])
        if found:
            break
    return sorted(found, key=_rank)


def _exponent_choices(size: int, exps: list[int]):
    if size == 0:
        yield ()
        return
    for e in exps:
        for rest in _exponent_choices(size - 1, exps):
            yield (e,) + rest


def _fit(points: list[int], N: int) -> tuple[Fraction, Fraction, Fraction] | None:
    """Quadratic through the first three points that reproduces the whole list below N."""
    if len(points) < 3:
        return None
    p0, p1, p2 = points[:3]
    A = Fraction(p2 - 2 * p1 + p0, 2)
    B = p1 - p0 - A
    C = Fraction(p0)
    if A <= 0:
        return None
    predicted = []
    n = 0
    while True:
        e = A * n * n + B * n + C
        if e >= N:
            break
        if e.denominator != 1:
            return None
        predicted.append(int(e))
        n += 1
    return (A, B, C) if predicted == points else None


def _residual_shape(r: list[int]) -> tuple[QuadraticClass, ...] | None:
    if any(abs(x) > 1 for x in r):
        return None
    N = len(r)
    classes = []
    for sign in (1, -1):
        pts = [i for i, x in enumerate(r) if x == sign]
        if not pts:
            continue
        fit = _fit(pts, N)
        if fit is None:
            return None
        classes.append(QuadraticClass(sign, *fit, len(pts)))
    return tuple(classes)


def _inverse_power(vec: tuple[int, ...], e: int, N: int) -> list[int]:
    """Coefficients of ``(atom/constant)^(-e)``."""
    g = [1] + [0] * (N - 1)
    for k in range(1, N):
        if vec[k]:
            _apply(g, k, -e * vec[k])
    return g


def _times_bounded(f: list[int], p: list[int]) -> list[int] | None:
    """``f * p`` truncated, abandoned once a coefficient leaves {-1, 0, 1}."""
    N = len(f)
    out = [0] * N
    for n in range(N):
        s = 0
        for i in range(n + 1):
            if f[i] and p[n - i]:
                s += f[i] * p[n - i]
        if abs(s) > 1:
            return None
        out[n] = s
    return out


def _mixed(coeffs: list[int], bounds: Bounds) -> list[tuple[tuple, tuple]]:
    N = len(coeffs)
    singles = []
    for atom in atoms(bounds.mixed_modulus):
        vec = atom.vector(N)
        for k in range(1, bounds.max_exponent + 1):
            for e in (k, -k):
                singles.append(((atom, e), vec, _inverse_power(vec, e, N)))
    hits: dict[tuple, tuple] = {}

    def consider(factors, r):
        if r is None or not any(r[1:]):
            return
        shape = _residual_shape(r)
        if shape is None:
            return
        # quotients with the same exponent vector are the same series
        total = [0] * N
        for (atom, e), vec in factors:
            for i in range(N):
                total[i] += e * vec[i]
        key = tuple(total)
        cand = (tuple(sorted(f for f, _ in factors)), shape)
        best = hits.get(key)
        if best is None or _rank(cand[0]) < _rank(best[0]):
            hits[key] = cand

    consider((), _times_bounded(coeffs, [1] + [0] * (N - 1)))
    partial = []
    for fa, va, pa in singles:
        consider(((fa, va),), _times_bounded(coeffs, pa))
        partial.append(_mul_ints(coeffs, pa))
    if bounds.mixed_factors >= 2:
        for i, j in combinations(range(len(singles)), 2):
            (fa, va, _), (fb, vb, pb) = singles[i], singles[j]
            if fa[0] != fb[0]:
                consider(((fa, va), (fb, vb)), _times_bounded(partial[i], pb))
    return list(hits.values())


def _rank(factors) -> tuple:
    return (len(factors), sum(abs(e) for _, e in factors), [(str(a), e) for a, e in factors])


def _mul_ints(f: list[int], p: list[int]) -> list[int]:
    N = len(f)
    out = [0] * N
    for i, x in enumerate(f):
        if x:
            for j in range(N - i):
                if p[j]:
                    out[i + j] += x * p[j]
    return out


def theta_recognize(f: QSeries, bounds: Bounds | None = None, mixed: bool = True) -> list[Recognition]:
    """Candidate factorizations ``f = c q^s prod J^e`` (pure) and, if requested,
    ``f = c q^s prod J^e * R`` with ``R`` a signed sum of partial theta pieces.

    Every reported candidate reproduces ``f`` to its full truncation order.
    """
    bounds = bounds or Bounds()
    norm = _normalize(f)
    if norm is None:
        return []
    c, v, coeffs = norm
    out: list[Recognition] = []
    b = prodmake(coeffs)
    for factors in _pure(b, bounds):
        const = 1
        for atom, e in factors:
            const *= Fraction(atom.constant) ** e
        out.append(Recognition(ThetaQuotient(c / const, v, factors)))
    if mixed and not out:
        for factors, shape in _mixed(coeffs, bounds):
            const = Fraction(1)
            for atom, e in factors:
                const *= Fraction(atom.constant) ** e
            out.append(Recognition(ThetaQuotient(c / const, v, factors), shape))
        out.sort(key=lambda r: (_rank(r.quotient.factors), str(r)))
    return out
