"""The ten acceptance criteria, exact throughout (tolerance zero).

Each test records one PASS/FAIL line, printed in the "acceptance criteria"
section of the pytest terminal summary.
"""

import dataclasses
import json
import random
import time
from fractions import Fraction

import pytest
from click.testing import CliRunner

from qdual import bailey, corpus
from qdual.cli import main
from qdual.corpus import get_record, verify_identity
from qdual.corpus.sides import E, InvertQ, _Bin
from qdual.dual import evaluate_descriptor, invert_q, remainder
from qdual.expr import parse_descriptor
from qdual.functions import pochhammer_inf, theta_j
from qdual.recognize import QuadraticClass, ThetaAtom, theta_recognize
from qdual.series import INF, ParamValue, QSeries, equal_to_order

q = ParamValue(1, 1)


def agree(a, b, order):
    cmp = equal_to_order(a, b, order)
    assert cmp, str(cmp)


def run_cli(*args):
    return CliRunner().invoke(main, list(args))


# -- 1 -----------------------------------------------------------------------------

TRIPLE_ARGS = [
    (2, 0), (3, 0), (5, 0), (-2, 0), (Fraction(1, 2), 0), (Fraction(-1, 3), 0), (Fraction(3, 2), 0),
    (7, 0), (-1, 0), (Fraction(2, 5), 0), (1, Fraction(1, 2)), (2, 1), (-1, 1), (3, -1),
    (Fraction(1, 2), 2), (-2, Fraction(-1, 2)), (5, 3), (-3, -2), (Fraction(2, 3), Fraction(3, 2)),
    (4, Fraction(1, 3)),
]


def test_1_triple_product(criterion):
    with criterion(1, "triple product, sum form = product form to q^200 at 20 arguments, < 5 s"):
        start = time.perf_counter()
        for c, e in TRIPLE_ARGS:
            x = ParamValue(c, e)
            lattice = Fraction(e).denominator
            lhs = theta_j(x, 1, 200, lattice)
            rhs = pochhammer_inf(x, 1, 210, lattice) * pochhammer_inf(q / x, 1, 210, lattice)
            rhs = rhs * pochhammer_inf(q, 1, 210, lattice)
            agree(lhs, rhs, 200)
        assert time.perf_counter() - start < 5


# -- 2 -----------------------------------------------------------------------------

FUNCTIONAL_EQUATIONS = [
    ("m(x;q;z)", "m(x;q;q*z)"),
    ("m(x;q;z)", "x^-1*m(x^-1;q;z^-1)"),
    ("m(q*x;q;z)", "1-x*m(x;q;z)"),
    ("m(x;q;z)", "m(x;q;x^-1*z^-1)"),
    (
        "m(x;q;z1)-m(x;q;z0)",
        "z0*Jm(1)^3*j(z1/z0;q)*j(x*z0*z1;q)/(j(z0;q)*j(z1;q)*j(x*z0;q)*j(x*z1;q))",
    ),
]
_CONSTANTS = [Fraction(v) for v in ("2", "3", "5", "-2", "-3", "1/2", "-1/2", "3/2", "-2/3", "5/3", "-1", "4", "1/3")]


def lattice_bindings(count, seed=2026):
    """Bindings ``c q^e`` with no theta zero and no pole in any of the five equations."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cx, cz, c0, c1 = (rng.choice(_CONSTANTS) for _ in range(4))
        if 1 in (cz, c0, c1, cx * cz, cx * c0, cx * c1):
            continue
        ex, ez, e0, e1 = (rng.randint(-2, 2) for _ in range(4))
        out.append({"x": ParamValue(cx, ex), "z": ParamValue(cz, ez), "z0": ParamValue(c0, e0), "z1": ParamValue(c1, e1)})
    return out


def test_2_appell_lerch_functional_equations(criterion):
    with criterion(2, "the five m(x,q,z) functional equations to q^50 at 20 lattice bindings"):
        bindings = lattice_bindings(20)
        assert len({tuple(sorted((k, str(v)) for k, v in b.items())) for b in bindings}) == 20
        assert all(any(v.e != 0 for v in b.values()) for b in bindings)
        for b in bindings:
            for lhs, rhs in FUNCTIONAL_EQUATIONS:
                agree(E(lhs).evaluate(b, 50), E(rhs).evaluate(b, 50), 50)


# -- 3 and 10 ------------------------------------------------------------------------


@pytest.fixture(scope="module")
def full_run():
    start = time.perf_counter()
    result = run_cli("verify", "--all", "--format", "json")
    return result, time.perf_counter() - start


def test_3_verify_all(criterion, full_run):
    with criterion(3, "verify --all passes on every record and full sample plan in < 180 s"):
        result, seconds = full_run
        doc = json.loads(result.output)
        failing = [r["id"] for r in doc["records"] if r["status"] != "pass"]
        assert failing == []
        assert doc["passed"] == doc["total"] == len(corpus.RECORDS)
        assert {r["group"] for r in doc["records"]} == set(corpus.GROUPS)
        assert result.exit_code == 0
        assert seconds < 180


def _strip_timing(doc):
    for r in doc["records"]:
        r.pop("millis")
    return doc


def test_10_determinism(criterion, full_run):
    with criterion(10, "two verify --all --format json runs agree byte for byte modulo timing"):
        first, _ = full_run
        second = run_cli("verify", "--all", "--format", "json")
        a, b = _strip_timing(json.loads(first.output)), _strip_timing(json.loads(second.output))
        assert json.dumps(a, indent=2) == json.dumps(b, indent=2)
        assert first.exit_code == second.exit_code == 0


# -- 4 -----------------------------------------------------------------------------

DUALS = {
    "mock-chi0-5th-dualA": 0,
    "mock-chi0-5th-dualB": 1,
    "mock-chi1-5th-dualA": 0,
    "mock-chi1-5th-dualB": 1,
    "mock-F0-7th-dual": 0,
    "mock-F1-7th-dual": 0,
    "mock-F2-7th-dual": 0,
    "mock-phi-10th-dual": 0,
    "mock-psi-10th-dual": 0,
    "mock-X-10th-dual": 0,
    "mock-chi-10th-dual": 0,
}


def inverted_texts(side):
    if isinstance(side, InvertQ):
        return [side.text]
    if isinstance(side, _Bin):
        return inverted_texts(side.left) + inverted_texts(side.right)
    return []


def test_4_dual_theorems(criterion):
    with criterion(4, "dual identities to q^40, and invert_q of each original reproduces the dual's left side"):
        for id_, offset in DUALS.items():
            rep = verify_identity(id_, order=40)
            assert rep.passed, rep.line()
            rec = get_record(id_)
            originals = inverted_texts(rec.sides[1])
            assert originals, id_
            image = QSeries({0: offset} if offset else {}, INF)
            for text in originals:
                image = image + evaluate_descriptor(invert_q(parse_descriptor(text)), 40)
            agree(rec.sides[0].evaluate({}, 40), image, 40)


# -- 5 -----------------------------------------------------------------------------

PHI11_SAMPLES = [(q, q**3), (q**2, q**5), (ParamValue(3), q**2), (ParamValue(Fraction(1, 2)), ParamValue(2, 1)), (ParamValue(-1, 1), ParamValue(5))]


def test_5_bailey_suite(criterion):
    with criterion(5, "Bailey pairs for n <= 15 at q^60, lemma sides at q^40, 1phi1 at 5 samples, conjugate pair n <= 5"):
        assert len(bailey.REGISTRY) == 10
        for pair in bailey.REGISTRY.values():
            rep = bailey.check_pair(pair, nmax=15, order=60, lemma_order=40)
            assert rep.passed, rep.line()
        for a, c in PHI11_SAMPLES:
            cmp = bailey.phi11_check(a, c, 40)
            assert cmp, f"1phi1 at a={a}, c={c}: {cmp}"
        for rel in (bailey.Relative(q, Fraction(1)), bailey.Relative(q**2, Fraction(1)), bailey.Relative(ParamValue(3), Fraction(1))):
            for n in range(6):
                agree(bailey.gamma_from_delta(rel, n, 30), bailey.gamma_closed(rel, n, 30), 30)


# -- 6 -----------------------------------------------------------------------------


def test_6_finite_identities(criterion):
    with criterion(6, "both finite polynomial identities and their reciprocals for N <= 40"):
        for id_ in ("Andrews-4.1", "Andrews-4.2", "Andrews-4.1.reciprocal", "Andrews-4.2.reciprocal"):
            rec = get_record(id_)
            assert sorted(int(s["N"].c) for s in rec.samples) == list(range(1, 41))
            rep = verify_identity(id_)
            assert rep.passed, rep.line()
            # every side is an exact polynomial whose degree sits far below the order
            for s in rec.sides:
                poly = s.at({"N": ParamValue(40)}, rec.order, 1)
                assert poly.is_exact and poly.degree() < rec.order


# -- 7 -----------------------------------------------------------------------------


def test_7_tenth_order_corollary(criterion):
    with criterion(7, "four tenth-order dual relations and four comparisons on lattice 3 to q^30"):
        recs = [r for r in corpus.RECORDS if "corollary" in r.tags or "comparison" in r.tags]
        assert len(recs) == 8
        for r in recs:
            assert r.lattice == 3 and r.order == 30
            rep = verify_identity(r.id)
            assert rep.passed, rep.line()


# -- 8 -----------------------------------------------------------------------------

QUOTIENTS = [
    ((ThetaAtom("J", 2, 1), 2), (ThetaAtom("Jm", 1), -1)),
    ((ThetaAtom("Jm", 4), 1), (ThetaAtom("J", 2, 1), -1)),
    ((ThetaAtom("J", 7, 2), 1),),
    ((ThetaAtom("Jbar", 5, 2), 1), (ThetaAtom("Jm", 2), -1)),
    ((ThetaAtom("J", 5, 1), 1), (ThetaAtom("Jm", 1), -1)),
    ((ThetaAtom("J", 5, 2), -1), (ThetaAtom("Jm", 5), 1)),
    ((ThetaAtom("Jbar", 8, 3), 1), (ThetaAtom("J", 2, 1), 1), (ThetaAtom("Jm", 2), -1)),
    ((ThetaAtom("J", 7, 3), 2),),
    ((ThetaAtom("J", 8, 3), 1), (ThetaAtom("Jm", 4), -1)),
    ((ThetaAtom("J", 12, 5), 1), (ThetaAtom("Jbar", 6, 1), -1)),
]


def _residual_series(classes, order):
    total = QSeries({}, order)
    for c in classes:
        n = 0
        while c.A * n * n + c.B * n + c.C < order:
            total = total + QSeries({c.A * n * n + c.B * n + c.C: c.sign}, order)
            n += 1
    return total


def test_8_recognizer(criterion):
    with criterion(8, "recognizer: mixed remainder of the second dual, 10 pure quotients, no match for sum q^(n^2)"):
        order = 40
        b2 = "sum(n>=0) q^(n^2+n)*poch(-q^2;q^2;n)/poch(q;q^2;n+1)^2"
        rest = remainder(InvertQ(b2).evaluate({}, order), E("-q*pt(1;q^4)").evaluate({}, order))
        mixed = E("q*Jm(4)/J(1,2)*(pt(-q^-1;q^6)-q*pt(-q;q^6))").evaluate({}, order)
        found = [r for r in theta_recognize(rest) if r.quotient.encoding() == {"J4": 1, "J(1,2)": -1}]
        assert found, "J4/J(1,2) quotient not reported"
        rec = found[0]
        assert not rec.pure and rec.quotient.shift == 1
        agree(rec.quotient.series(order) * _residual_series(rec.residual, order), mixed, order)
        agree(rest, mixed, order)

        for factors in QUOTIENTS:
            f = QSeries({0: 1}, INF)
            for atom, e in factors:
                s = atom.series(order + 2)
                f = f * (s**e if e > 0 else s.invert() ** (-e))
            f = f.truncate(order)
            hits = theta_recognize(f, mixed=False)
            assert any(h.quotient.encoding() == {str(a): e for a, e in factors} for h in hits), factors

        squares = _residual_series([QuadraticClass(1, Fraction(1), Fraction(0), Fraction(0), 0)], order)
        assert [r for r in theta_recognize(squares) if r.pure] == []


# -- 9 -----------------------------------------------------------------------------

MUTATIONS = [
    ("RLNid1", "q^7", "7"),
    ("mock-F0-7th", "-3*q^12", "12"),
    ("tenth-dual-I", "q^(5/3)", "(5/3)"),
    ("Andrews-4.2", "2*q^3", "3"),
    ("ABII-6.3.4-dual", "1/2*q^9", "9"),
]


def test_9_negative_controls(criterion, monkeypatch):
    with criterion(9, "five mutated records fail at the perturbed exponent with exit code 1"):
        originals = {id_: get_record(id_) for id_, _, _ in MUTATIONS}
        for id_, term, exponent in MUTATIONS:
            rec = originals[id_]
            bad = dataclasses.replace(rec, sides=rec.sides[:-1] + (rec.sides[-1] + E(term),))
            monkeypatch.setattr(corpus, "get_record", lambda _id, bad=bad: bad)
            result = run_cli("verify", "--id", id_, "--format", "json")
            assert result.exit_code == 1, (id_, result.output)
            doc = json.loads(result.output)
            (report,) = doc["records"]
            assert report["status"] == "fail"
            assert report["first_mismatch"]["exponent"] == exponent, (id_, report["first_mismatch"])
