
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdual import functions as fn
from qdual.corpus import RECORDS
from qdual.corpus.sides import D, Rescaled, Substituted, _Bin
from qdual.dual import (
    ShapeError,
    evaluate_descriptor,
    format_descriptor,
    heuristic_candidates,
    invert_q,
    reciprocal_polynomial,
    remainder,
)
from qdual.expr import parse_descriptor
from qdual.recognize import Bounds, ThetaAtom, theta_recognize
from qdual.series import INF, ParamValue, QSeries, TruncationError, equal_to_order


def agree(f, g, order):
    cmp = equal_to_order(f, g, order)
    assert cmp, str(cmp)


def ev(text, order=40, bindings=None):
    return evaluate_descriptor(parse_descriptor(text), order, bindings or {})


class TestEvaluateDescriptor:
    def test_entry_651a(self):
        rhs = ev("sum(n>=0) q^(12n^2+n)") - ev("sum(n>=0) q^(12n^2+23n+11)") + ev("sum(n>=0) q^(12n^2+7n+1)") - ev("sum(n>=0) q^(12n^2+17n+6)")
        agree(ev("sum(n>=0) q^n/poch(-q;q;2n)"), rhs, 40)

    def test_plain_quadratic(self):
        assert ev("sum(n>=0) q^(n^2)", 30) == QSeries({k * k: 1 for k in range(6)}, 30)

    def test_bilateral_matches_module(self):
        b = {"a": ParamValue(2), "b": ParamValue(3)}
        d = ev("sum(n in Z) a^(-n-1)*b^(-n)*q^(n^2)/(poch(-1/a;q;n+1)*poch(-q/b;q;n))", 30, b)
        agree(d, fn.bilateral_m_sum(b["a"], b["b"], 30)[0], 30)


class TestInvertQ:
    @pytest.mark.parametrize(
        "original,dual",
        [
            ("sum(n>=0) q^n/poch(-q;q;2n)", "sum(n>=0) q^(2n^2)/poch(-q;q;2n)"),
            (
                "sum(n>=0) q^n*poch(-q;q^2;n)/poch(q;q^2;n+1)",
                "sum(n>=0) (-1)^(n+1)*q^(n+1)*poch(-q;q^2;n)/poch(q;q^2;n+1)",
            ),
            ("sum(n>=0) q^(n^2)/poch(q^(n+1);q;n)", "sum(n>=0) (-1)^n*q^(n*(n+1)/2)/poch(q^(n+1);q;n)"),
        ],
    )
    def test_examples(self, original, dual):
        agree(evaluate_descriptor(invert_q(parse_descriptor(original)), 40), ev(dual), 40)

    def test_text_form_round_trips(self):
        d = invert_q(parse_descriptor("sum(n>=0) q^n/poch(-q;q;2n)"))
        agree(evaluate_descriptor(parse_descriptor(format_descriptor(d)), 30), evaluate_descriptor(d, 30), 30)


def _descriptors(side):
    if isinstance(side, D):
        yield side.text
    elif isinstance(side, _Bin):
        yield from _descriptors(side.left)
        yield from _descriptors(side.right)
    elif isinstance(side, (Substituted, Rescaled)):
        yield from _descriptors(side.side)


def _corpus_descriptors():
    seen = {}
    for rec in RECORDS:
        for side in rec.sides:
            for text in _descriptors(side):
                seen.setdefault(text, (rec.samples[0], rec.lattice))
    return sorted(seen.items())


@pytest.mark.parametrize("text,context", _corpus_descriptors(), ids=lambda v: v if isinstance(v, str) else "")
def test_invert_q_is_an_involution(text, context):
    binding, lattice = context
    d = parse_descriptor(text)
    order = 15
    agree(evaluate_descriptor(invert_q(invert_q(d)), order, binding, lattice), evaluate_descriptor(d, order, binding, lattice), order)


class TestReciprocal:
    def test_linear(self):
        assert reciprocal_polynomial(QSeries({0: 1, 1: 2}, INF)) == QSeries({0: 2, 1: 1}, INF)

    def test_laurent(self):
        assert reciprocal_polynomial(QSeries({-1: 1, 0: 1}, INF)) == QSeries({0: 1, 1: 1}, INF)

    def test_palindrome(self):
        g = fn.gaussian_binomial(7, 3)
        assert reciprocal_polynomial(g) == g

    def test_truncated_input(self):
        with pytest.raises(TruncationError):
            reciprocal_polynomial(QSeries({0: 1}, 10))

    @given(st.dictionaries(st.integers(-5, 20), st.integers(-9, 9).filter(bool), min_size=1, max_size=8))
    def test_involution_up_to_shift(self, terms):
        p = QSeries(terms, INF)
        back = reciprocal_polynomial(reciprocal_polynomial(p))
        assert back == p.shift(-p.valuation())


class TestHeuristic:
    def test_example_two(self):
        parts = [
            "sum(n>=0) q^(12n^2+n)",
            "sum(n>=0) -q^(12n^2+23n+11)",
            "sum(n>=0) q^(12n^2+7n+1)",
            "sum(n>=0) -q^(12n^2+17n+6)",
        ]
        raw = [str(c) for c in heuristic_candidates([parse_descriptor(p) for p in parts], flip=False)]
        assert raw == ["m(-q^11; q^24; *)", "-q^(-11)*m(-q^(-11); q^24; *)", "q^(-1)*m(-q^5; q^24; *)", "-q^(-6)*m(-q^(-5); q^24; *)"]
        flipped = [str(c) for c in heuristic_candidates([parse_descriptor(p) for p in parts])]
        # the x-values and prefactors of the second line of the psi0 display
        assert flipped == ["m(-q^11; q^24; *)", "m(-q^11; q^24; *)", "q^(-1)*m(-q^5; q^24; *)", "q^(-1)*m(-q^5; q^24; *)"]

    def test_example_one_base(self):
        (c,) = heuristic_candidates(parse_descriptor("sum(n>=0) (-1)^n*q^(2n^2+2n)"))
        assert c.base == 4 and str(c) == "m(1; q^4; *)"

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            heuristic_candidates(parse_descriptor("sum(n>=0) 1"))
        with pytest.raises(ShapeError):
            heuristic_candidates(parse_descriptor("sum(n>=0) q^n/poch(-q;q;n)"))


class TestRemainder:
    def test_identical(self):
        f = ev("sum(n>=0) q^n/poch(-q;q;2n)", 20)
        assert remainder(f, f).is_zero()

    def test_order_min_rule(self):
        r = remainder(QSeries({0: 1}, 10), QSeries({0: 1}, 5))
        assert r.order == 5 and r.is_zero()


def _quotient(factors, order):
    out = QSeries({0: 1}, INF)
    for atom, e in factors:
        s = atom.series(order + 2)
        out = out * (s**e if e > 0 else s.invert() ** (-e))
    return out.truncate(order)


class TestRecognizer:
    # inputs stay within the default bounds and avoid atoms that coincide as series
    CASES = [
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

    @pytest.mark.parametrize("factors", CASES, ids=lambda f: "*".join(f"{a}^{e}" for a, e in f))
    def test_recovers_constructed_quotient(self, factors):
        f = _quotient(factors, 40)
        found = theta_recognize(f, mixed=False)
        assert found, "no factorization found"
        for rec in found:
            agree(rec.quotient.series(40), f, 40)
        target = {str(a): e for a, e in factors}
        assert any(rec.quotient.encoding() == target for rec in found), [str(r) for r in found]

    def test_partial_theta_is_not_a_quotient(self):
        f = ev("sum(n>=0) q^(n^2)", 40)
        assert theta_recognize(f, Bounds(), mixed=False) == []

    def test_zero_series(self):
        assert theta_recognize(QSeries({}, 10)) == []
