"""The identity corpus, one :class:`IdentityRecord` per displayed identity.

Parametric records are checked at rational specializations of the free
parameter (constants from ``DEFAULT_VALUES`` and a couple of lattice values
``c*q^e``); see each record's ``note`` for excluded samples.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .. import functions as fn
from ..dual import reciprocal_polynomial
from ..series import INF, ParamValue, QSeries, make_monomial, zero
from ..series import div_binomial
from .sides import D, E, Alternating, Fn, InvertQ, Rescaled, Side, substitute
from .verify import DEFAULT_VALUES, IdentityRecord

Q = ParamValue(1, 1)


def pv(c, e=0) -> ParamValue:
    return ParamValue(Fraction(c), Fraction(e))


#: lattice samples ``c*q^e`` shared by parametric records
LATTICE_VALUES = (pv(2, 1), pv(Fraction(-1, 3), 2))


def plan(name: str = "a", values=DEFAULT_VALUES, lattice=LATTICE_VALUES, exclude=()) -> tuple[dict, ...]:
    """One binding per sample value, skipping the excluded ones."""
    vals = [ParamValue.of(v) for v in values] + [ParamValue.of(v) for v in lattice]
    bad = {ParamValue.of(v) for v in exclude}
    return tuple({name: v} for v in vals if v not in bad)


def pairs(*rows) -> tuple[dict, ...]:
    """Bindings from rows of ``(name, value)`` tuples."""
    return tuple({k: ParamValue.of(v) for k, v in row} for row in rows)


RECORDS: list[IdentityRecord] = []


def record(id, anchor, group, *sides, **kw) -> IdentityRecord:
    rec = IdentityRecord(id, anchor, group, tuple(sides), **kw)
    RECORDS.append(rec)
    return rec


NUMERIC_ONLY = "numerically verified only in paper"
SECOND_TYPE = "dual-second-type"


# -- independent oracles used by a few G0 records ------------------------------


def _m_definition(b, w, lattice):
    """m(x,q,z) summed straight from its defining bilateral series."""
    x, z = b["x"], b["z"]
    jz = fn.theta_j(z, 1, w + 4, lattice)
    v = jz.valuation()
    W = w + max(v, 0) + 2
    total = zero(W, lattice)
    R = math.isqrt(2 * int(W) + 8) + int(abs(z.e) + abs(x.e)) + 4
    for r in range(-R, R + 1):
        e = Fraction(r * (r - 1), 2) + r * z.e
        # 1/(1 - u q^k) contributes valuation min(0, k)
        k = r - 1 + x.e + z.e
        if e + min(k, 0) >= W:
            continue
        t = make_monomial((-1) ** (r % 2) * z.c**r, e, W, lattice)
        total = total + div_binomial(t, x.c * z.c, k)
    return total / jz


def _m_shifted(b, w, lattice):
    return fn.appell_m(b["x"], 1, b["z"], w, lattice, form="shifted")


def _hecke_swapped(b, w, lattice):
    return fn.hecke_f(1, 2, 2, b["y"], b["x"], 1, w, lattice)


# -- G0: notation, Appell-Lerch sums, g, Hecke sums ------------------------------

_X = plan("x")

record(
    "theta-def", "theta-def", "G0",
    E("j(x;q)"), E("pochinf(x;q)*pochinf(q/x;q)*pochinf(q;q)"),
    samples=_X,
)
record(
    "theta-def.notation", "theta-def", "G0",
    E("J(2,6)"), E("Jm(2)"), E("pochinf(q^2;q^2)"),
)
record(
    "theta-def.bar", "theta-def", "G0",
    E("Jbar(1,4)"), E("j(-q;q^4)"), E("pochinf(-q;q^4)*pochinf(-q^3;q^4)*pochinf(q^4;q^4)"),
)

_XZ = pairs(
    (("x", 2), ("z", 3)),
    (("x", 5), ("z", -2)),
    (("x", Fraction(1, 2)), ("z", 3)),
    (("x", -2), ("z", 5)),
    (("x", 3), ("z", Fraction(1, 2))),
    (("x", pv(2, 1)), ("z", -1)),
    (("x", pv(Fraction(-1, 3), 2)), ("z", pv(5, 1))),
)

record("mdef-eq", "mdef-eq", "G0", E("m(x;q;z)"), Fn(_m_definition, "definition"), samples=_XZ)
record("alt-mdef-eq", "alt-mdef-eq", "G0", E("m(x;q;z)"), Fn(_m_shifted, "shifted"), samples=_XZ)
record("m-fnq-z", "m-fnq-z", "G0", E("m(x;q;z)"), E("m(x;q;q*z)"), samples=_XZ)
record("m-fnq-flip", "m-fnq-flip", "G0", E("m(x;q;z)"), E("x^-1*m(x^-1;q;z^-1)"), samples=_XZ)
record("m-fnq-x", "m-fnq-x", "G0", E("m(q*x;q;z)"), E("1-x*m(x;q;z)"), samples=_XZ)
record("m-fnq-zflip", "m-fnq-zflip", "G0", E("m(x;q;z)"), E("m(x;q;x^-1*z^-1)"), samples=_XZ)
record(
    "m-change-z", "m-change-z", "G0",
    E("m(x;q;z1)-m(x;q;z0)"),
    E("z0*Jm(1)^3*j(z1/z0;q)*j(x*z0*z1;q)/(j(z0;q)*j(z1;q)*j(x*z0;q)*j(x*z1;q))"),
    samples=pairs(
        (("x", 2), ("z0", 3), ("z1", -1)),
        (("x", 5), ("z0", -2), ("z1", Fraction(1, 3))),
        (("x", Fraction(1, 2)), ("z0", 3), ("z1", 7)),
        (("x", -2), ("z0", 5), ("z1", pv(3, 1))),
        (("x", 3), ("z0", Fraction(1, 2)), ("z1", -5)),
        (("x", pv(2, 1)), ("z0", -1), ("z1", 3)),
        (("x", pv(Fraction(-1, 3), 2)), ("z0", pv(5, 1)), ("z1", 2)),
    ),
)

_G = plan("x", lattice=(pv(2, 1), pv(-1, 1)))
record(
    "g-def", "g-def", "G0",
    E("g(x;q)"),
    E("x^-1") * (D("sum(n>=0) q^(n^2)/(poch(x;q;n+1)*poch(q/x;q;n))") - 1),
    samples=_G,
)
record(
    "newgid", "newgid", "G0",
    E("g(x;q)"), D("sum(n>=0) q^(n*(n+1))/(poch(x;q;n+1)*poch(q/x;q;n+1))"),
    samples=_G,
)
record(
    "g-to-m", "g-to-m", "G0",
    E("g(x;q)"), E("-x^-1*m(q^2*x^-3;q^3;x^2)-x^-2*m(q*x^-3;q^3;x^2)"),
    samples=_G,
)

_XY = pairs(
    (("x", pv(2, 1)), ("y", 3)),
    (("x", 5), ("y", pv(-3, 1))),
    (("x", pv(Fraction(1, 2), 2)), ("y", pv(7, 1))),
    (("x", pv(-2, 1)), ("y", 5)),
    (("x", 3), ("y", pv(Fraction(1, 2), 1))),
)
record(
    "fabc-def", "fabc-def", "G0",
    E("f(2,2,1;x;y;q)"), Fn(_hecke_swapped, "f(1,2,2;y;x;q)"),
    samples=_XY, note="the defining double sum is symmetric under (a,x,r) <-> (c,y,s)",
)
record(
    "f221", "f221", "G0",
    E("f(2,2,1;x;y;q)"),
    E(
        "j(x;q^2)*m(-q*y/x;q;-1)+j(y;q)*m(q*x/y^2;q^2;-1)"
        "-(j(q*y;q^2)*j(-q*x/y;q^2)*Jm(2)^3*j(-q^2/y;q^2)/(j(-q*x/y^2;q^2)*j(q*y/x;q^2))"
        "+q*j(q^2*y;q^2)*j(-x/y;q^2)*Jm(2)^3*j(-q^3/y;q^2)/(j(-q*x/y^2;q^2)*j(q^2*y/x;q^2)))"
        "/(Jbar(0,1)*Jbar(0,2))"
    ),
    samples=_XY,
)

# -- G1: Eulerian forms as Appell-Lerch sums ------------------------------------

record(
    "RLNid1", "RLNid1", "G1",
    E("1+x^-1") * D("sum(n>=0) q^(n+1)*poch(-q;q;2n)/(poch(q*x;q^2;n+1)*poch(q/x;q^2;n+1))"),
    E("-m(x;q^2;q)"),
    samples=plan("x", lattice=(pv(2, 1), pv(-1, 2))), order=40,
)

_RLN2 = D("sum(n>=0) (-1)^n*q^(n^2)*poch(q;q^2;n)/(poch(-x;q^2;n+1)*poch(-q^2/x;q^2;n))")
record("RLNid2.a", "RLNid2", "G1", _RLN2, E("m(x;q;-1)+J(1,2)^2/(2*j(-x;q))"), samples=_X)
record(
    "RLNid2.b", "RLNid2", "G1",
    _RLN2, E("2*m(x;q;-1)-m(x;q;s)"),
    samples=pairs(
        (("x", pv(Fraction(-1, 4), 1)), ("s", 2)),
        (("x", pv(Fraction(-1, 9), 1)), ("s", 3)),
        (("x", pv(-4, 1)), ("s", Fraction(1, 2))),
        (("x", pv(Fraction(-1, 25), 1)), ("s", -5)),
        (("x", pv(Fraction(-4, 9), 1)), ("s", Fraction(-3, 2))),
        (("x", pv(Fraction(-1, 4), -1)), ("s", pv(2, 1))),
        (("x", pv(-9, 3)), ("s", pv(Fraction(1, 3), -1))),
    ),
    note="samples bind x = -q/s^2 so that s is a square root of -q/x",
)
record(
    "RLNid2.c", "RLNid2", "G1",
    _RLN2,
    E("m(-q*x^2;q^4;-q^-1)-q^-1*x*m(-q^-1*x^2;q^4;-q)"),
    E("Jbar(1,4)^-1") * D("sum(n in Z) q^(n*(2n+1))/poch(-x*q^(2n);q;1)"),
    samples=_X,
)


def _rln3_term(b, n, w, lattice):
    x = b["x"]
    num = fn.pochhammer(Q, 2, n, w, lattice)
    den = fn.pochhammer(-x, 1, n + 1, w, lattice) * fn.pochhammer(-(Q / x), 1, n, w, lattice)
    return (num / den).truncate(w)


def _rln3_limit(b, w, lattice):
    x = b["x"]
    num = fn.pochhammer_inf(Q, 2, w, lattice)
    den = fn.pochhammer_inf(-x, 1, w, lattice) * fn.pochhammer_inf(-(Q / x), 1, w, lattice)
    return (num / den).truncate(w)


_STAR = D("sum(n in Z) q^(n*(n+1)/2)/(poch(-x*q^n;q;1)*poch(-q^n/x;q;1))")
record(
    "RLNid3", "RLNid3", "G1",
    E("star(x)"), E("m(x;q;-1)"), Alternating(_rln3_term, _rln3_limit),
    samples=_X,
    note="the starred sum is evaluated both by its bilateral definition and by the regularized alternating sum",
)
record(
    "sumstar-def", "sumstar-def", "G1",
    E("star(x)"), E("(1+1/x)/Jbar(0,1)") * _STAR,
    samples=_X,
)
record(
    "RLNid4", "RLNid4", "G1",
    E("1+1/x") * D("sum(n>=0) (-1)^n*poch(q;q^2;n)*q^((n+1)^2)/(poch(-x*q;q^2;n+1)*poch(-q/x;q^2;n+1))"),
    E("m(x;q;-1)-J(1,2)^2/(2*j(-x;q))"),
    samples=_X,
)
record(
    "RLNid5", "RLNid5", "G1",
    D("sum(n>=0) (-1)^n*q^(2n^2)*poch(q^2;q^4;n)/(poch(-x;q^4;n+1)*poch(-q^4/x;q^4;n))"),
    E("m(x;q^2;q)+Jbar(1,4)^2*j(-x*q^2;q^4)/(j(-x;q^4)*j(x*q;q^2))"),
    samples=plan("x", lattice=(pv(2, 1), pv(Fraction(-1, 3), 1))),
)
record(
    "RLNid4.entry", "RLNid4", "G1",
    _RLN2 - E("1+1/x") * D("sum(n>=0) (-1)^n*poch(q;q^2;n)*q^((n+1)^2)/(poch(-x*q;q^2;n+1)*poch(-q/x;q^2;n+1))"),
    E("J(1,2)^2/j(-x;q)"),
    samples=_X,
)
record(
    "RLNid5.entry", "RLNid5", "G1",
    D("sum(n>=0) (-1)^n*q^(2n^2)*poch(q^2;q^4;n)/(poch(-x;q^4;n+1)*poch(-q^4/x;q^4;n))")
    + E("1+1/x") * D("sum(n>=0) q^(n+1)*poch(-q;q;2n)/(poch(q*x;q^2;n+1)*poch(q/x;q^2;n+1))"),
    E("Jbar(1,4)^2*j(-x*q^2;q^4)/(j(-x;q^4)*j(x*q;q^2))"),
    samples=plan("x", lattice=(pv(2, 1), pv(Fraction(-1, 3), 1))),
)
record(
    "RLNid3.entry", "RLNid3", "G1",
    _RLN2, Alternating(_rln3_term, _rln3_limit) + E("J(1,2)^2/(2*j(-x;q))"),
    samples=_X,
)

_AB = pairs(
    (("a", 2), ("b", 3)),
    (("a", 5), ("b", -2)),
    (("a", Fraction(1, 2)), ("b", 3)),
    (("a", -2), ("b", 5)),
    (("a", 3), ("b", Fraction(1, 3))),
    (("a", pv(2, 1)), ("b", 3)),
    (("a", 3), ("b", pv(Fraction(-1, 3), 1))),
)
record(
    "bilateral-mxqz-prop", "bilateral-mxqz-prop", "G1",
    D("sum(n in Z) a^(-n-1)*b^(-n)*q^(n^2)/(poch(-1/a;q;n+1)*poch(-q/b;q;n))"),
    D("sum(n in Z) poch(-a*q;q;n)*poch(-b;q;n+1)*q^(n+1)"),
    E("pochinf(-a*q;q)*j(-b;q)*m(a/b;q;-b)/(b*pochinf(q;q)*pochinf(-q/b;q))"),
    samples=_AB,
)
record(
    "3.4.7-ABII", "3.4.7-ABII", "G1",
    D("sum(n>=0) a^(-n-1)*b^(-n)*q^(n^2)/(poch(-1/a;q;n+1)*poch(-q/b;q;n))")
    + D("sum(n>=1) poch(-a*q;q;n-1)*poch(-b;q;n)*q^n"),
    E("pochinf(-a*q;q)/(pochinf(q;q)*pochinf(-q/b;q))")
    * (D("sum(n>=0) b^n*q^(n*(n+1)/2)/poch(-a*q^n;q;1)") + E("1/a") * D("sum(n>=1) b^(-n)*q^(n*(n+1)/2)/poch(-q^n/a;q;1)")),
    samples=_AB,
)
record(
    "minus-n", "minus-n", "G1",
    E("poch(a;q;-N)"), E("(-1)^N*a^(-N)*q^(N*(N+1)/2)/poch(q/a;q;N)"), E("1/poch(a*q^(-N);q;N)"),
    samples=tuple(
        {"a": v, "N": ParamValue.of(N)}
        for N in (1, 2, 3, 5)
        for v in [ParamValue.of(c) for c in DEFAULT_VALUES] + list(LATTICE_VALUES)
    ),
)
record(
    "eq6.3", "eq6.3", "G1",
    E("1+a^-1") * D("sum(n>=0) q^(n+1)*poch(-q;q;2n)/(poch(a*q;q^2;n+1)*poch(q/a;q^2;n+1))"),
    E("J(1,2)^-1")
    * (D("sum(n>=1) -(-1)^n*q^(n^2)/poch(a*q^(2n-1);q;1)") + D("sum(n>=1) -(-1)^n*a^(-1)*q^(n^2)/poch(q^(2n-1)/a;q;1)")),
    samples=plan("a", lattice=(pv(2, 1), pv(-1, 2))),
)
_BIL6 = D("sum(n in Z) a^n*q^(n*(n+1)/2)/poch(-q^n;q;1)")
record(
    "eq6.6", "eq6.6", "G1",
    E("j(-a;q)") * D("sum(n>=0) (-1)^n*q^(n^2)*poch(q;q^2;n)/(poch(-a;q^2;n+1)*poch(-q^2/a;q^2;n))"),
    E("1")
    + D("sum(n>=1) a^n*q^(n*(n+1)/2)/poch(-q^n;q;1)")
    + D("sum(n>=1) a^(-n)*q^(n*(n+1)/2)/poch(-q^n;q;1)")
    + D("sum(n>=1) 2*(-1)^n*q^(n*(n+1)/2)/poch(-q^n;q;1)"),
    _BIL6 + E("pochinf(q;q)^2/(2*pochinf(-q;q)^2)"),
    _BIL6 + E("J(1,2)^2/2"),
    samples=plan("a"),
)
record(
    "eq6.9", "eq6.9", "G1",
    D("sum(n>=0) (-1)^n*q^(n^2)*poch(q;q^2;n)/(poch(-a;q^2;n+1)*poch(-q^2/a;q^2;n))"),
    E("1/j(-a;q)") * _BIL6 + E("J(1,2)^2/(2*j(-a;q))"),
    E("a^-1*m(a^-1;q;-a)+J(1,2)^2/(2*j(-a;q))"),
    E("m(a;q;-1)+J(1,2)^2/(2*j(-a;q))"),
    samples=plan("a"),
)

# -- G2: Example 1, the second order function B(q) ---------------------------------

_B1 = "sum(n>=0) q^n*poch(-q;q^2;n)/poch(q;q^2;n+1)"
_B2 = "sum(n>=0) q^(n^2+n)*poch(-q^2;q^2;n)/poch(q;q^2;n+1)^2"
_MIXED = E("q*Jm(4)/J(1,2)*(pt(-q^-1;q^6)-q*pt(-q;q^6))")

record("ex-1", "ex-1", "G2", D(_B1), D(_B2), E("-q^-1*m(1;q^4;q^3)"), order=60)
record(
    "B-first", "B-first", "G2",
    D("sum(n>=0) -(-1)^n*q^(n+1)*poch(-q;q^2;n)/poch(q;q^2;n+1)"), InvertQ(_B1), E("-q*pt(1;q^4)"),
)
record(
    "B-second", "B-second", "G2",
    D("sum(n>=0) q^(2n+2)*poch(-q^2;q^2;n)/poch(q;q^2;n+1)^2"), InvertQ(_B2), E("-q*pt(1;q^4)") + _MIXED,
)
record(
    "B-second.mixed-term", "B-second", "G2",
    InvertQ(_B2) - InvertQ(_B1), _MIXED,
    note="the two duals share the partial theta function and differ by the mixed term",
)

# -- G3: Example 2, Andrews' third order functions ---------------------------------

_A = "sum(n>=0) q^n/poch(-q;q;2n)"
_Bq = "sum(n>=0) q^n/poch(-q;q;2n+1)"
record(
    "ABII-6.5.1A", "ABII-6.5.1A", "G3",
    D(_A),
    D("sum(n>=0) q^(12n^2+n)") - D("sum(n>=0) q^(12n^2+23n+11)")
    + D("sum(n>=0) q^(12n^2+7n+1)") - D("sum(n>=0) q^(12n^2+17n+6)"),
)
record(
    "ABII-6.5.1B", "ABII-6.5.1B", "G3",
    D(_Bq),
    D("sum(n>=0) q^(12n^2+5n)") - D("sum(n>=0) q^(12n^2+19n+7)")
    + D("sum(n>=0) q^(12n^2+11n+2)") - D("sum(n>=0) q^(12n^2+13n+3)"),
)
record(
    "Andrews-psi0", "Andrews-psi0", "G3",
    D("sum(n>=0) q^(2n^2)/poch(-q;q;2n)"),
    InvertQ(_A),
    E("2-2*q*g(-q;q^8)-J(1,2)*Jbar(3,8)/Jm(2)"),
    E("m(-q^11;q^24;q^4)+m(-q^11;q^24;q^22)+q^-1*m(-q^5;q^24;q^4)+q^-1*m(-q^5;q^24;q^10)"),
)
record(
    "Andrews-psi1", "Andrews-psi1", "G3",
    D("sum(n>=0) q^(2n^2+2n+1)/poch(-q;q;2n+1)"),
    InvertQ(_Bq),
    E("2*q^3*g(-q^3;q^8)+q*J(1,2)*Jbar(1,8)/Jm(2)"),
    E("m(-q^7;q^24;q^8)+m(-q^7;q^24;q^16)-q^-3*m(-q^-1;q^24;q^8)-q^-3*m(-q^-1;q^24;q^16)"),
    tags=("corrected",),
    note="Eulerian side uses (-q)_{2n+1}, the exact q -> 1/q image; both m(-q^-1,...) terms carry q^-3",
)

# -- G4: fifth order --------------------------------------------------------------

_CHI0_A = "sum(n>=0) q^n/poch(q^(n+1);q;n)"
_CHI0_B = "sum(n>=0) q^(2n+1)/poch(q^(n+1);q;n+1)"
_CHI1_A = "sum(n>=0) q^n/poch(q^(n+1);q;n+1)"
_CHI1_B1 = "sum(n>=0) q^(2n+1)/poch(q^(n+1);q;n+1)"
_CHI1_B2 = "sum(n>=0) q^(3n+1)/poch(q^(n+1);q;n+1)"
_PT0 = "pt(q^-7;q^15)+q^7*pt(q^7;q^15)+q*pt(q^-2;q^15)+q^3*pt(q^2;q^15)"
_PT1 = "q*pt(q^-4;q^15)+q^5*pt(q^4;q^15)+q^2*pt(q^-1;q^15)+q^3*pt(q;q^15)"

record(
    "mock-chi0-5th.g-form", "mock-chi0-5th", "G4",
    D(_CHI0_A), 1 + D(_CHI0_B), E("2+3*q*g(q;q^5)-Jm(5)^2*J(2,5)/J(1,5)^2"),
)
record(
    "mock-chi0-5th.m-form", "mock-chi0-5th", "G4",
    D(_CHI0_A),
    E("2-2*m(q^7;q^15;q^12)-m(q^7;q^15;q^9)-2*q^-1*m(q^2;q^15;q^12)-q^-1*m(q^2;q^15;q^9)"),
)
record(
    "mock-chi1-5th.g-form", "mock-chi1-5th", "G4",
    D(_CHI1_A), 1 + D(_CHI1_B1) + D(_CHI1_B2), E("3*q*g(q^2;q^5)+Jm(5)^2*J(1,5)/J(2,5)^2"),
)
record(
    "mock-chi1-5th.m-form", "mock-chi1-5th", "G4",
    D(_CHI1_A),
    E("-2*q^-1*m(q^4;q^15;q^-6)-q^-1*m(q^4;q^15;q^3)-2*q^-2*m(q;q^15;q^6)-q^-2*m(q;q^15;q^-3)"),
)
record(
    "mock-chi0-5th-dualA", "mock-chi0-5th-dualA", "G4",
    D("sum(n>=0) (-1)^n*q^(3n^2/2-n/2)/poch(q^(n+1);q;n)"), InvertQ(_CHI0_A), E("2-(" + _PT0 + ")"),
)
record(
    "mock-chi0-5th-dualB", "mock-chi0-5th-dualB", "G4",
    1 + D("sum(n>=0) -(-1)^n*q^(3n^2/2+n/2)/poch(q^(n+1);q;n+1)"), 1 + InvertQ(_CHI0_B), E("1-(" + _PT0 + ")"),
)
record(
    "mock-chi1-5th-dualA", "mock-chi1-5th-dualA", "G4",
    D("sum(n>=0) -(-1)^n*q^(3n*(n+1)/2+1)/poch(q^(n+1);q;n+1)"), InvertQ(_CHI1_A), E("-(" + _PT1 + ")"),
)
record(
    "mock-chi1-5th-dualB", "mock-chi1-5th-dualB", "G4",
    1
    + D("sum(n>=0) -(-1)^n*q^(3n^2/2-n/2)/poch(q^(n+1);q;n+1)")
    + D("sum(n>=0) -(-1)^n*q^(3n^2/2+n/2)/poch(q^(n+1);q;n+1)"),
    1 + InvertQ(_CHI1_B1) + InvertQ(_CHI1_B2),
    E("-1-(" + _PT1 + ")"),
    tags=(NUMERIC_ONLY,),
)

# -- G5: seventh order ------------------------------------------------------------

_F0 = "sum(n>=0) q^(n^2)/poch(q^(n+1);q;n)"
_F1 = "sum(n>=1) q^(n^2)/poch(q^n;q;n)"
_F2 = "sum(n>=0) q^(n^2+n)/poch(q^(n+1);q;n+1)"

record(
    "mock-F0-7th", "mock-F0-7th", "G5",
    D(_F0), E("2+2*q*g(q;q^7)-J(3,7)^2/Jm(1)"),
    E("m(q^10;q^21;q^9)+m(q^10;q^21;q^-9)-q^-1*m(q^4;q^21;q^9)-q^-1*m(q^4;q^21;q^-9)"),
)
record(
    "mock-F1-7th", "mock-F1-7th", "G5",
    D(_F1), E("2*q^2*g(q^2;q^7)+q*J(1,7)^2/Jm(1)"),
    E("-m(q^8;q^21;q^3)-m(q^8;q^21;q^-3)-q^-2*m(q;q^21;q^3)-q^-2*m(q;q^21;q^-3)"),
)
record(
    "mock-F2-7th", "mock-F2-7th", "G5",
    D(_F2), E("2*q^2*g(q^3;q^7)+J(2,7)^2/Jm(1)"),
    E("-q^-1*m(q^5;q^21;q^6)-q^-1*m(q^5;q^21;q^-6)-q^-2*m(q^2;q^21;q^6)-q^-2*m(q^2;q^21;q^-6)"),
)
record(
    "mock-F0-7th-dual", "mock-F0-7th-dual", "G5",
    D("sum(n>=0) (-1)^n*q^(n*(n+1)/2)/poch(q^(n+1);q;n)"), InvertQ(_F0),
    E("pt(q^-10;q^21)+q^10*pt(q^10;q^21)-q*pt(q^-4;q^21)-q^5*pt(q^4;q^21)"),
)
record(
    "mock-F1-7th-dual", "mock-F1-7th-dual", "G5",
    D("sum(n>=0) -(-1)^n*q^(n*(n+1)/2)/poch(q^(n+1);q;n+1)"), InvertQ(_F1),
    E("-pt(q^-8;q^21)-q^8*pt(q^8;q^21)-q^2*pt(q^-1;q^21)-q^3*pt(q;q^21)"),
)
record(
    "mock-F2-7th-dual", "mock-F2-7th-dual", "G5",
    D("sum(n>=0) -(-1)^n*q^((n+1)*(n+2)/2)/poch(q^(n+1);q;n+1)"), InvertQ(_F2),
    E("-q*pt(q^-5;q^21)-q^6*pt(q^5;q^21)-q^2*pt(q^-2;q^21)-q^4*pt(q^2;q^21)"),
)

# -- G6: tenth order --------------------------------------------------------------

_PHI = "sum(n>=0) q^(n*(n+1)/2)/poch(q;q^2;n+1)"
_PSI = "sum(n>=0) q^((n+1)*(n+2)/2)/poch(q;q^2;n+1)"
_XX = "sum(n>=0) (-1)^n*q^(n^2)/poch(-q;q;2n)"
_CHI = "sum(n>=0) (-1)^n*q^((n+1)^2)/poch(-q;q;2n+1)"
_PHI_D = "sum(n>=0) -(-1)^n*q^((n+1)*(n+2)/2)/poch(q;q^2;n+1)"
_PSI_D = "sum(n>=0) -(-1)^n*q^(n*(n+1)/2)/poch(q;q^2;n+1)"
_XX_D = "sum(n>=0) (-1)^n*q^(n*(n+1))/poch(-q;q;2n)"
_CHI_D = "sum(n>=0) (-1)^n*q^(n*(n+1))/poch(-q;q;2n+1)"

record("mock-phi-10th", "mock-phi-10th", "G6", D(_PHI), E("-q^-1*m(q;q^10;q)-q^-1*m(q;q^10;q^2)"))
record("mock-psi-10th", "mock-psi-10th", "G6", D(_PSI), E("-m(q^3;q^10;q)-m(q^3;q^10;q^3)"))
record("mock-X-10th", "mock-X-10th", "G6", D(_XX), E("m(-q^2;q^5;q)+m(-q^2;q^5;q^4)"))
record("mock-chi-10th", "mock-chi-10th", "G6", D(_CHI), E("m(-q;q^5;q^2)+m(-q;q^5;q^3)"))
record(
    "mock-phi-10th-dual", "mock-phi-10th-dual", "G6",
    D(_PHI_D), InvertQ(_PHI), E("-q*pt(q^-1;q^10)-q^2*pt(q;q^10)"),
)
record(
    "mock-psi-10th-dual", "mock-psi-10th-dual", "G6",
    D(_PSI_D), InvertQ(_PSI), E("-pt(q^-3;q^10)-q^3*pt(q^3;q^10)"),
)
record(
    "mock-X-10th-dual", "mock-X-10th-dual", "G6",
    D(_XX_D), InvertQ(_XX), E("pt(-q^-2;q^5)-q^2*pt(-q^2;q^5)"),
)
record(
    "mock-chi-10th-dual", "mock-chi-10th-dual", "G6",
    D(_CHI_D), InvertQ(_CHI), E("pt(-q^-1;q^5)-q*pt(-q;q^5)"),
)

# The root-of-unity combinations (c0 F(w y) + c1 F(w^2 y))/(w - w^2), y = q^(1/3),
# reduce to integer weights on the residue classes of the exponent of y mod 3.
W_SPLIT = (0, 1, -1)  # (F(wy) - F(w^2 y))/(w - w^2)
W_SPLIT_REV = (0, -1, 1)  # (F(w^2 y) - F(wy))/(w - w^2)
W_TWIST = (1, -1, 0)  # (w F(wy) - w^2 F(w^2 y))/(w - w^2)
W_TWIST_REV = (1, 0, -1)  # (w F(w^2 y) - w^2 F(wy))/(w - w^2)


def cube(text: str) -> Side:
    return Rescaled(D(text), 3)


def third(text: str, weights) -> Side:
    return Rescaled(D(text), Fraction(1, 3), weights)


_T = dict(lattice=3, order=30, tags=("corollary",))
record(
    "tenth-dual-I", "tenth-dual-I", "G6",
    E("q^(-2/3)") * cube(_PHI_D) - third(_PSI_D, W_SPLIT_REV), E("0"), **_T,
)
record(
    "tenth-dual-II", "tenth-dual-II", "G6",
    E("q^(2/3)") * cube(_PSI_D) + third(_PHI_D, W_TWIST_REV), E("0"), **_T,
)
record(
    "tenth-dual-III", "tenth-dual-III", "G6",
    cube(_XX_D) - third(_CHI_D, W_TWIST_REV), E("0"), **_T,
)
record(
    "tenth-dual-IV", "tenth-dual-IV", "G6",
    cube(_CHI_D) + E("q^(-2/3)") * third(_XX_D, W_SPLIT_REV), E("0"), **_T,
)

_RATIO = "j(q^(1/3);q^(2/3))/j(q;q^2)"
_RATIO_PLUS = "j(-q^(1/3);q^(1/3))/j(-q;q)"
_C = dict(lattice=3, order=30, tags=("comparison",))
record(
    "tenth-comparison-1", "tenth-duals", "G6",
    E("q^(2/3)") * cube(_PHI) - third(_PSI, W_SPLIT),
    E(f"-q^(1/3)*{_RATIO}*J(4,5)/pochinf(q;q^2)"), **_C,
)
record(
    "tenth-comparison-2", "tenth-duals", "G6",
    E("q^(-2/3)") * cube(_PSI) + third(_PHI, W_TWIST),
    E(f"{_RATIO}*J(3,5)/pochinf(q;q^2)"), **_C,
)
record(
    "tenth-comparison-3", "tenth-duals", "G6",
    cube(_XX) - third(_CHI, W_TWIST),
    E(f"{_RATIO_PLUS}*J(6,10)/pochinf(-q;q)"),
    note="the displayed signed sums over n(n+1)/6 and n(n+1)/2 vanish identically; the unsigned theta quotient is used",
    **_C,
)
record(
    "tenth-comparison-4", "tenth-duals", "G6",
    cube(_CHI) + E("q^(2/3)") * third(_XX, W_SPLIT),
    E(f"-q*{_RATIO_PLUS}*J(8,10)/pochinf(-q;q)"),
    note="unsigned theta quotient as in tenth-comparison-3, and an extra factor q on the right side",
    **_C,
)

# -- G7: mixed partial theta functions and their duals ------------------------------

_A7 = plan("a")
_A7_LAT = plan("a", lattice=(pv(2, 1), pv(Fraction(-1, 3), 1)))

# ABII-6.3.2 family
_F632 = D("sum(n>=0) q^(n+1)*poch(-q/a;q;n)*poch(-a*q;q;n)")
_DUAL632 = "sum(n>=0) q^(n^2)/(poch(-a*q;q;n)*poch(-q/a;q;n))"
record(
    "ABII-6.3.2", "ABII-6.3.2", "G7",
    D("sum(n>=0) q^n/(poch(-a*q;q;n)*poch(-q/a;q;n))"),
    E("1+a") * (D("sum(n>=0) a^(3n)*q^(n*(3n+1)/2)") - D("sum(n>=0) a^(3n+2)*q^((3n^2+5n+2)/2)"))
    - E("(1+a)*Jm(1)/j(-a;q)") * D("sum(n>=0) (-1)^n*a^(2n+1)*q^(n*(n+1)/2)"),
    samples=_A7,
)
record(
    "6.3.2-dual", "6.3.2-dual", "G7",
    D(_DUAL632),
    E("(1+a)*(1-a*g(-a;q))"),
    E("(1+a)*(1-m(-q^2*a^-3;q^3;a^2)+a^-1*m(-q*a^-3;q^3;a^2))"),
    samples=_A7,
)
record(
    "6.3.2-ABII-tail", "6.3.2-ABII-tail", "G7",
    D("sum(n in Z) q^(n^2)/(poch(-a*q;q;n)*poch(-q/a;q;n))") - D(_DUAL632),
    D("sum(n>=1) q^n*poch(-1/a;q;n)*poch(-a;q;n)"),
    E("(1+1/a)*(1+a)") * _F632,
    samples=_A7,
    note="the second and third sides are the display labelled 6.3.2-ABII-tail-2",
)
record(
    "6.3.2-ABII-2ndDualB", "6.3.2-ABII-2ndDualB", "G7",
    E("1+1/a") * _F632, E("-1+a*g(-a;q)+j(-a;q)/Jm(1)*m(a^2;q;-a^-1)"),
    samples=_A7, tags=(SECOND_TYPE,),
)
record(
    "6.3.2-ABII-2ndDualA", "6.3.2-ABII-2ndDualA", "G7",
    E("1+1/a") * _F632,
    E("-1+a*g(-a;q)+j(-a;q)/Jm(1)*m(a^2;q;-1)+j(a;q)^3*j(q*a^2;q^2)/(2*Jm(2)^2*j(a^4;q^2))"),
    samples=_A7, tags=(SECOND_TYPE,),
)
record(
    "6.3.2-ABII-2ndDual.bilateral", "3.4.7-ABII", "G7",
    E("1/(1+a)") * D(_DUAL632) + E("1+1/a") * _F632, E("j(-a;q)/Jm(1)*m(a^2;q;-a^-1)"),
    samples=_A7,
    note="3.4.7-ABII with b = 1/a, used to prove both duals of second type",
)
record(
    "6.3.2-ABII-lovejoy", "6.3.2-ABII-2ndDualA", "G7",
    1 + E("1+1/a") * _F632, E("a*q^3*f(3,2,1;q^6;-a*q^3;q)/Jm(1)"),
    samples=_A7,
)

# ABII-6.3.4 family
_F634 = D("sum(n>=0) q^(2n+1)*poch(-a*q;q^2;n)*poch(-q/a;q^2;n)")
_DUAL634 = "sum(n>=0) q^(2n^2+2n+1)/(poch(-a*q;q^2;n+1)*poch(-q/a;q^2;n+1))"
record(
    "ABII-6.3.4", "ABII-6.3.4", "G7",
    D("sum(n>=0) q^(2n+1)/(poch(-a*q;q^2;n+1)*poch(-q/a;q^2;n+1))"),
    D("sum(n>=0) a^(3n+1)*q^(3n^2+2n)") - D("sum(n>=0) a^(3n+2)*q^(3n^2+4n+1)")
    - E("Jm(2)/j(-a*q;q^2)") * D("sum(n>=0) (-1)^n*a^(2n+1)*q^(n*(n+1))"),
    samples=_A7,
)
record("ABII-6.3.4-dual", "ABII-6.3.4-dual", "G7", D(_DUAL634), E("q*g(-a*q;q^2)"), samples=_A7)
record(
    "ABII-6.3.4-tail", "ABII-6.3.4-tail", "G7",
    D("sum(n in Z) q^(2n^2+2n+1)/(poch(-a*q;q^2;n+1)*poch(-q/a;q^2;n+1))") - D(_DUAL634),
    D("sum(n>=1) q^(2n-1)*poch(-a*q;q^2;n-1)*poch(-q/a;q^2;n-1)"),
    _F634,
    samples=_A7,
    note="the second and third sides are the display labelled ABII-6.3.4-tail-2",
)
record(
    "6.3.4-ABII-2ndDualA", "6.3.4-ABII-2ndDualA", "G7",
    _F634,
    E("-q*g(-a*q;q^2)+a*j(-a*q;q^2)/Jm(2)*m(a^2;q^2;-1)-a*j(a*q;q^2)^3*j(a^2;q^4)/(2*Jm(4)^2*j(a^4;q^4))"),
    samples=_A7, tags=(SECOND_TYPE,),
)
record(
    "6.3.4-ABII-2ndDualB", "6.3.4-ABII-2ndDualB", "G7",
    _F634, E("-q*g(-a*q;q^2)+a*j(-a*q;q^2)/Jm(2)*m(a^2;q^2;-a^-1*q)"),
    samples=_A7, tags=(SECOND_TYPE,),
)
record(
    "6.3.4-ABII-2ndDual.bilateral", "3.4.7-ABII", "G7",
    E("(1+a*q)/a") * D(_DUAL634) + E("q*(1+1/(a*q))") * D("sum(n>=0) q^(2n+1)*poch(-q/a;q^2;n)*poch(-a*q;q^2;n)"),
    E("(1+a*q)*j(-a*q;q^2)/Jm(2)*m(a^2;q^2;-a^-1*q)"),
    samples=_A7,
    note="3.4.7-ABII with q -> q^2, a -> a/q, b -> 1/(aq)",
)
record(
    "6.3.4-ABII-f321", "6.3.4-ABII-2ndDualB", "G7",
    _F634, E("q*f(3,2,1;q^6;-a*q^3;q^2)/Jm(2)"),
    samples=_A7,
)

# ABII-6.3.6 family
_F636 = E("1+1/a") * D("sum(n>=0) q^(2n+1)*poch(-a*q;q^2;n)*poch(-q/a;q^2;n)/poch(q;q^2;n+1)")
record(
    "ABII-6.3.6", "ABII-6.3.6", "G7",
    E("1+1/a") * D("sum(n>=0) poch(q;q^2;n)*q^(2n+1)/(poch(-a*q;q^2;n+1)*poch(-q/a;q^2;n+1))"),
    D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1)/2)")
    - E("Jm(1)/j(-a*q;q^2)") * (D("sum(n>=0) a^(3n)*q^(n*(3n+1))") - D("sum(n>=0) a^(3n+2)*q^(3n^2+5n+2)")),
    samples=_A7,
)
record(
    "ABII-6.3.6-dual", "ABII-6.3.6-dual", "G7",
    E("1+1/a") * D("sum(n>=0) (-1)^n*poch(q;q^2;n)*q^((n+1)^2)/(poch(-a*q;q^2;n+1)*poch(-q/a;q^2;n+1))"),
    E("m(a;q;-1)-J(1,2)^2/(2*j(-a;q))"),
    samples=_A7,
)
record(
    "ABII-6.3.6-dualtypeII", "ABII-6.3.6-dualtypeII", "G7",
    _F636, E("-m(a;q;-1)+j(-a*q;q^2)/Jm(1)*(1-a*g(-a;q^2))-J(1,2)^2/(2*j(-a;q))"),
    samples=_A7, tags=(SECOND_TYPE, NUMERIC_ONLY),
)
_F332 = "f(3,3,2;{x};{y};q^4)"


def _f332(x: str, y: str) -> str:
    return _F332.format(x=x, y=y)


record(
    "ABII-6.3.6-f332", "ABII-6.3.6-dualtypeII", "G7",
    _F636,
    E(
        "Jm(1)^-1*(-q^7*" + _f332("-q^19", "-a^2*q^16") + "+q*" + _f332("-q^11", "-a^2*q^8")
        + "+a*q^4*" + _f332("-q^17", "-a^2*q^12") + "-a*q^14*" + _f332("-q^25", "-a^2*q^20") + ")"
    ),
    samples=_A7, order=40, tags=("heavy",),
)

# ABII-6.3.7 family
_F637 = E("1+1/a") * D("sum(n>=0) poch(a*q;q^2;n)*poch(q/a;q^2;n)*q^(2n+1)/poch(-q;q;2n+1)")
_A7_637 = plan("a", lattice=(pv(2, 1), pv(-1, 2)))
# m(a, q^2, -1) has a pole at a = -q^2
_A7_637M = plan("a", lattice=(pv(2, 1), pv(Fraction(-1, 3), 2)))
record(
    "ABII-6.3.7", "ABII-6.3.7", "G7",
    E("1+1/a") * D("sum(n>=0) poch(-q;q;2n)*q^(2n+1)/(poch(a*q;q^2;n+1)*poch(q/a;q^2;n+1))"),
    E("Jbar(1,4)/j(a*q;q^2)") * D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1)/2)") - D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1))"),
    samples=_A7_637,
)
record(
    "ABII-6.3.7-dualtypeII", "ABII-6.3.7-dualtypeII", "G7",
    _F637,
    E("2*m(a;q^2;-1)-j(a*q;q^2)/Jbar(1,4)*m(a;q;-1)-Jm(1)^5/Jm(2)^4*j(a*q;q^2)/(2*j(-a;q))"),
    samples=_A7_637M, tags=(SECOND_TYPE,),
)
record(
    "ABII-6.3.7-f221", "ABII-6.3.7-dualtypeII", "G7",
    _F637, E("q*f(2,2,1;a*q^3;-q^2;q)/Jbar(1,4)"),
    samples=_A7_637,
)
record(
    "ABII-5.4.4", "ABII-5.4.4", "G7",
    E("1+1/a") * D("sum(n>=0) poch(a*q;q^2;n)*poch(q/a;q^2;n)*q^n/poch(-q;q;2n+1)"),
    D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1))") + D("sum(n>=0) (-1)^n*a^(-n-1)*q^(n*(n+1))"),
    samples=_A7_637,
)

# ABII-6.3.9 family
_F639 = E("1+1/a") * D("sum(n>=0) q^(2n+2)*poch(-a*q^2;q^2;n)*poch(-q^2/a;q^2;n)/poch(q;q^2;n+1)")
record(
    "ABII-6.3.9", "ABII-6.3.9", "G7",
    D("sum(n>=0) poch(q;q^2;n)*q^(2n)/(poch(-a*q^2;q^2;n)*poch(-q^2/a;q^2;n))"),
    E("1+a") * D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1)/2)")
    - E("a*(1+a)*Jm(1)/j(-a;q^2)") * (D("sum(n>=0) a^(3n)*q^(3n^2+2n)") - D("sum(n>=0) a^(3n+1)*q^(3n^2+4n+1)")),
    samples=_A7,
)
record(
    "6.3.9-dual-final", "6.3.9-dual-final", "G7",
    D("sum(n>=0) poch(q;q^2;n)*(-1)^n*q^(n^2)/(poch(-a;q^2;n+1)*poch(-q^2/a;q^2;n))"),
    E("m(a;q;-1)+J(1,2)^2/(2*j(-a;q))"),
    samples=_A7,
)
record(
    "ABII-6.3.9-dualtypeII", "ABII-6.3.9-dualtypeII", "G7",
    _F639, E("-m(a;q;-1)+j(-a;q^2)/Jm(1)*q/a*g(-a*q;q^2)+j(a;q)*J(1,2)/(2*j(a^2;q^2))"),
    samples=_A7, tags=(SECOND_TYPE, NUMERIC_ONLY),
)
record(
    "ABII-6.3.9-f332", "ABII-6.3.9-dualtypeII", "G7",
    _F639,
    E(
        "Jm(1)^-1*(a*q^6*" + _f332("-q^19", "-a^2*q^14") + "-q^5*" + _f332("-q^17", "-a^2*q^14")
        + "-a*q^11*" + _f332("-q^23", "-a^2*q^18") + "+q^2*" + _f332("-q^13", "-a^2*q^10") + ")"
    ),
    samples=_A7, order=40, tags=("heavy",),
)

# ABII-6.3.11 family
_F6311 = E("1+1/a") * D("sum(n>=0) poch(-a*q;q;n)*poch(-q/a;q;n)*q^(n+1)/poch(q;q^2;n+1)")
record(
    "ABII-6.3.11", "ABII-6.3.11", "G7",
    D("sum(n>=0) poch(q;q^2;n)*q^n/(poch(-a*q;q;n)*poch(-q/a;q;n))"),
    E("1+a") * D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1)/2)")
    - E("a*(1+a)*J(1,2)/j(-a;q)") * D("sum(n>=0) (-1)^n*a^(2n)*q^(n*(n+1))"),
    samples=_A7,
)
record(
    "ABII-6.3.1-dualtypeII", "ABII-6.3.1-dualtypeII", "G7",
    _F6311, E("-m(a;q;-1)+j(-a;q)/J(1,2)*m(a^2;q^2;-1)-a*Jm(4)^3/Jm(2)^3*j(a;q)*j(q*a^2;q^2)/j(a^4;q^4)"),
    samples=_A7, tags=(SECOND_TYPE,),
)
record(
    "ABII-6.3.1-f221", "ABII-6.3.1-dualtypeII", "G7",
    _F6311, E("q*f(2,2,1;q^3;-q^2*a;q)/J(1,2)"),
    samples=_A7,
)


def _pad(a: ParamValue) -> int:
    # factors like (-q/a) with a of positive valuation start below q^0
    return 2 * abs(math.ceil(a.e)) + 2


def _543_term(b, n, w, lattice):
    a = b["a"]
    w, out = w + _pad(a), w
    num = fn.pochhammer(-(a * Q), 1, n, w, lattice) * fn.pochhammer(-(Q / a), 1, n, w, lattice)
    return (num / fn.pochhammer(Q, 2, n + 1, w, lattice)).truncate(out)


def _543_limit(b, w, lattice):
    a = b["a"]
    w, out = w + _pad(a), w
    num = fn.pochhammer_inf(-(a * Q), 1, w, lattice) * fn.pochhammer_inf(-(Q / a), 1, w, lattice)
    return (num / fn.pochhammer_inf(Q, 2, w, lattice)).truncate(out)


record(
    "ABII-5.4.3", "ABII-5.4.3", "G7",
    E("1+1/a") * Alternating(_543_term, _543_limit),
    E("1/2") * (D("sum(n>=0) (-1)^n*a^n*q^(n*(n+1)/2)") + D("sum(n>=0) (-1)^n*a^(-n-1)*q^(n*(n+1)/2)")),
    samples=_A7,
    note="the starred sum is the regularized alternating sum sum (-1)^n (T_n - T_inf) + T_inf/2",
)

# -- G8: finite identities of Schur type ---------------------------------------------


def _gauss(n: int, k: int) -> QSeries:
    if k < 0 or k > n:
        return QSeries({}, INF)
    return fn.gaussian_binomial(n, k)


def _mono(e) -> QSeries:
    return QSeries({e: 1}, INF)


def _floor_half(x: int) -> int:
    return x // 2


def _schur_lhs(N: int, shift: int) -> QSeries:
    total = QSeries({}, INF)
    for j in range(N // 2 + 1):
        total = total + _mono(j * j + shift * j) * _gauss(N - j, j)
    return total


def _schur_rhs_terms(N: int, second: bool):
    """``(sign, exponent, n, k)`` for each nonzero term of the bilateral side."""
    out = []
    top = N + 1 if second else N
    for lam in range(-(top // 5) - 2, top // 5 + 3):
        k = _floor_half(top - 5 * lam) + (1 if second else 0)
        if not 0 <= k <= top:
            continue
        e = lam * (5 * lam - 3) // 2 if second else lam * (5 * lam + 1) // 2
        out.append((-1 if lam % 2 else 1, e, top, k))
    return out


def _schur_rhs(N: int, second: bool) -> QSeries:
    total = QSeries({}, INF)
    for sign, e, n, k in _schur_rhs_terms(N, second):
        total = total + _mono(e) * _gauss(n, k).scale(sign)
    return total


def _schur_side(kind: str, second: bool):
    shift = 1 if second else 0

    def side(b, w, lattice):
        N = int(b["N"].c)
        if kind == "lhs":
            return _schur_lhs(N, shift)
        if kind == "rhs":
            return _schur_rhs(N, second)
        deg = _schur_lhs(N, shift).degree()
        if kind == "reciprocal":
            return reciprocal_polynomial(_schur_lhs(N, shift))
        total = QSeries({}, INF)
        if kind == "lhs-inverted":
            # q -> 1/q termwise: [n,k](1/q) = q^(-k(n-k)) [n,k](q)
            for j in range(N // 2 + 1):
                e = deg - (j * j + shift * j) - j * (N - 2 * j)
                total = total + _mono(e) * _gauss(N - j, j)
            return total
        for sign, e, n, k in _schur_rhs_terms(N, second):
            total = total + _mono(deg - e - k * (n - k)) * _gauss(n, k).scale(sign)
        return total

    return Fn(side, f"schur-{kind}")


# N = 0 cannot be a sample since bindings are nonzero monomials; both sides are 1 there
_N = tuple({"N": ParamValue.of(N)} for N in range(1, 41))
_SCHUR_ORDER = 1000
record(
    "Andrews-4.1", "Andrews-4.1", "G8",
    _schur_side("lhs", False), _schur_side("rhs", False),
    samples=_N, order=_SCHUR_ORDER,
    note="exact polynomial identity for each N; the order exceeds every degree involved",
)
record(
    "Andrews-4.2", "Andrews-4.2", "G8",
    _schur_side("lhs", True), _schur_side("rhs", True),
    samples=_N, order=_SCHUR_ORDER,
)
record(
    "Andrews-4.1.reciprocal", "Andrews-4.1", "G8",
    _schur_side("reciprocal", False), _schur_side("lhs-inverted", False), _schur_side("rhs-inverted", False),
    samples=_N, order=_SCHUR_ORDER,
    note="both sides after q -> 1/q and clearing the top power, once via reciprocal_polynomial and once termwise",
)
record(
    "Andrews-4.2.reciprocal", "Andrews-4.2", "G8",
    _schur_side("reciprocal", True), _schur_side("lhs-inverted", True), _schur_side("rhs-inverted", True),
    samples=_N, order=_SCHUR_ORDER,
)

# -- G9: functional equations of the duals of second type ------------------------------

_A9 = plan("a", lattice=(pv(2, 1), pv(Fraction(-1, 3), 2), pv(3, -1)))


def _fe(f: Side, shift) -> Side:
    return substitute(f, "a", shift)


_F632_full = E("1+1/a") * _F632
record(
    "dog", "dog", "G9",
    _fe(_F632_full, Q) + E("1-q*a^2") - E("q*a^3") * _F632_full,
    E("(1-a^2*q)*j(-a;q)/(a*Jm(1))"),
    samples=_A9, tags=("corrected",),
    note="the theta term carries a factor 1/a",
)
record(
    "cat", "cat", "G9",
    _F632_full,
    E("q^-1*a^-3-a^-1-q^-1*a^-4*(1-a^2*q)*j(-a;q)/Jm(1)") + E("q^-1*a^-3") * _fe(_F632_full, Q),
    samples=_A9, tags=("corrected",),
    note="the theta term carries a factor 1/a",
)
record(
    "ABII-6.3.4-func", "ABII-6.3.4-tail-2", "G9",
    _fe(_F634, Q * Q) + E("a*q^2-a^2*q^3") - E("a^3*q^3") * _F634,
    E("q*(1-a^2*q^2)*j(-a*q;q^2)/Jm(2)"),
    samples=_A9,
)
record(
    "ABII-6.3.6-func", "ABII-6.3.6-dualtypeII", "G9",
    _fe(_F636, Q * Q) + E("1-q*a") - E("q*a^2") * _F636,
    E("j(-a*q;q^2)/Jm(1)*(1-a^2*q^2)/(a*q)"),
    samples=_A9,
)
record(
    "ABII-6.3.7-func", "ABII-6.3.7-dualtypeII", "G9",
    _fe(_F637, Q * Q) - 2 + E("a") * _F637,
    E("(1-a*q)/(a*q)*j(a*q;q^2)/Jbar(1,4)"),
    samples=plan("a", lattice=(pv(2, 1), pv(-1, 2), pv(3, -1))),
)
record(
    "ABII-6.3.9-func", "ABII-6.3.9-func", "G9",
    _fe(_F639, Q * Q) + E("1-q*a") - E("q*a^2") * _F639,
    E("(1-a*q)/a*j(-a;q^2)/Jm(1)"),
    samples=_A9,
)
record(
    "ABII-6.3.1-func", "ABII-6.3.1-dualtypeII", "G9",
    _fe(_F6311, Q) + 1 + E("a") * _F6311,
    E("1/a*j(-a;q)/J(1,2)"),
    samples=_A9,
)
