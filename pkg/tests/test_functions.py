from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qdual import functions as fn
from qdual.dual import evaluate_descriptor
from qdual.expr import evaluate, parse_descriptor
from qdual.series import INF, ParamValue, PoleError, QSeries, equal_to_order

from conftest import nonzero_rationals

q = ParamValue(1, 1)


def pv(c, e=0):
    return ParamValue(Fraction(c), Fraction(e))


def agree(f, g, order):
    cmp = equal_to_order(f, g, order)
    assert cmp, str(cmp)


def naive_product(factors, order):
    """prod (1 - c q^k) over (c, k) with k >= 0, as a plain coefficient list."""
    out = [Fraction(0)] * order
    out[0] = Fraction(1)
    for c, k in factors:
        if k == 0:
            out = [(1 - c) * x for x in out]
            continue
        out = [out[i] - (c * out[i - k] if i >= k else 0) for i in range(order)]
    return QSeries({i: x for i, x in enumerate(out)}, order)


class TestPochhammer:
    def test_finite(self):
        assert fn.pochhammer(q, 1, 2) == QSeries({0: 1, 1: -1, 2: -1, 3: 1}, INF)

    def test_negative_length(self):
        s = fn.pochhammer(q**2, 1, -1, 10)
        assert s == QSeries({k: 1 for k in range(10)}, 10)

    def test_negative_length_degenerate(self):
        with pytest.raises(fn.DegenerateError):
            fn.pochhammer(q, 1, -1, 10)

    def test_zero_length(self):
        assert fn.pochhammer(pv(7, 3), 2, 0) == QSeries({0: 1}, INF)

    @given(st.integers(1, 6), nonzero_rationals, st.integers(1, 3))
    def test_minus_n_reflection(self, k, c, e):
        # (x)_0 = (x)_{-k} (x q^-k)_k
        assume(not (c == 1 and 1 <= e <= k))
        x = pv(c, e)
        left = fn.pochhammer(x, 1, -k, 20)
        right = fn.pochhammer(x * pv(1, -k), 1, k)
        agree(left * right, QSeries({0: 1}, INF), 20 - k * (k + 1) // 2)


class TestPochhammerInf:
    def test_euler_pentagonal(self):
        agree(fn.pochhammer_inf(q, 1, 15), naive_product([(1, k) for k in range(1, 15)], 15), 15)

    def test_vanishing_factor(self):
        assert fn.pochhammer_inf(pv(1), 1, 10).is_zero()

    def test_inverse_round_trip(self):
        p = fn.pochhammer_inf(pv(-2, 1), 2, 20)
        agree(p * p.invert(), QSeries({0: 1}, INF), 20)


class TestTheta:
    def test_theta_at_minus_one(self):
        assert str(fn.theta_j(pv(-1), 1, 10)) == "2 + 2*q + 2*q^3 + 2*q^6 + O(q^10)"

    def test_zero_of_theta(self):
        assert fn.theta_j(q, 1, 20).is_zero()

    def test_chi0_denominator(self):
        s = fn.theta_j(q**9, 15, 60)
        assert s.valuation() == 0 and s.coefficient(0) == 1

    @given(nonzero_rationals, st.integers(-3, 3), st.integers(1, 4))
    def test_triple_product(self, c, e, m):
        x = pv(c, e)
        order = 40
        w = order + 3 * abs(e) + 4
        prod = fn.pochhammer_inf(x, m, w) * fn.pochhammer_inf(pv(1, m) / x, m, w) * fn.pochhammer_inf(pv(1, m), m, w)
        agree(fn.theta_j(x, m, order), prod, order)

    def test_J12_product(self):
        p = fn.pochhammer_inf(q, 2, 40)
        agree(fn.J(1, 2, 40), p * p * fn.pochhammer_inf(q**2, 2, 40), 40)

    def test_Jbar01(self):
        assert fn.Jbar(0, 1, 10) == fn.theta_j(pv(-1), 1, 10)

    def test_Jm_is_pentagonal(self):
        agree(fn.Jm(1, 30), fn.pochhammer_inf(q, 1, 30), 30)


def _sample_xz():
    return [(pv(2), pv(3)), (pv(-3, 1), pv(5)), (pv(Fraction(1, 2), 2), pv(-2, 1)), (pv(3, -1), pv(Fraction(-1, 3)))]


class TestAppellLerch:
    def test_example_one(self):
        m = fn.appell_m(pv(1), 4, q**3, 30) * QSeries({-1: -1}, INF)
        d = parse_descriptor("sum(n>=0) q^n*poch(-q;q^2;n)/poch(q;q^2;n+1)")
        agree(m, evaluate_descriptor(d, 30), 29)

    @pytest.mark.parametrize("x,z", _sample_xz())
    def test_z_shift(self, x, z):
        agree(fn.appell_m(x, 1, z, 30), fn.appell_m(x, 1, z * q, 30), 30)

    @pytest.mark.parametrize("x,z", _sample_xz())
    def test_shifted_form(self, x, z):
        agree(fn.appell_m(x, 1, z, 30), fn.appell_m(x, 1, z, 30, form="shifted"), 30)

    def test_pole(self):
        # x z = q makes the r = 0 denominator vanish
        with pytest.raises(PoleError, match="r=0"):
            fn.appell_m(q**2, 1, pv(1, -1), 20)
        with pytest.raises(PoleError, match="r=-1"):
            fn.appell_m(q, 1, q, 20)

    def test_generic_point(self):
        assert not fn.appell_m(q, 1, -q, 20).is_zero()
        with pytest.raises(fn.ThetaZeroError):
            fn.appell_m(2 * q, 1, q, 20)


class TestUniversalG:
    def test_forms_agree(self):
        agree(fn.universal_g(-q, 2, 40), fn.universal_g(-q, 2, 40, form="definition"), 40)

    def test_g_to_m(self):
        rhs = "-(-q)^-1*m(q^2*(-q)^-3;q^3;(-q)^2)-(-q)^-2*m(q*(-q)^-3;q^3;(-q)^2)"
        agree(fn.universal_g(-q, 1, 40), evaluate(rhs, 40), 40)

    def test_entry_634_dual(self):
        lhs = evaluate("q*g(-a*q;q^2)", 40, bindings={"a": pv(2)})
        d = parse_descriptor("sum(n>=0) q^(2n^2+2n+1)/(poch(-a*q;q^2;n+1)*poch(-q/a;q^2;n+1))")
        agree(lhs, evaluate_descriptor(d, 40, {"a": pv(2)}), 40)


class TestHecke:
    def test_origin_term(self):
        f = fn.hecke_f(3, 3, 2, pv(5, 2), pv(7, 3), 1, 2)
        assert f.coefficient(0) == 1

    @pytest.mark.parametrize("abc", [(2, 2, 1), (3, 2, 1), (3, 3, 2)])
    def test_symmetry(self, abc):
        A, B, C = abc
        x, y = pv(2, 1), pv(-3, 2)
        agree(fn.hecke_f(A, B, C, x, y, 1, 30), fn.hecke_f(C, B, A, y, x, 1, 30), 30)

    def test_f221_section_four(self):
        a = {"a": pv(2)}
        lhs = evaluate("q*f(2,2,1;a*q^3;-q^2;q)/Jbar(1,4)", 30, bindings=a)
        d = parse_descriptor("sum(n>=0) poch(a*q;q^2;n)*poch(q/a;q^2;n)*q^(2n+1)/poch(-q;q;2n+1)")
        agree(lhs, evaluate_descriptor(d, 30, a).scale(Fraction(3, 2)), 30)

    def test_rejects_unbounded_triple(self):
        with pytest.raises(ValueError):
            fn.hecke_f(0, 1, 1, pv(2), pv(3), 1, 10)


class TestStarredSum:
    @pytest.mark.parametrize("x", [pv(2), q])
    def test_equals_m(self, x):
        agree(fn.starred_sum(x, 30), fn.appell_m(x, 1, pv(-1), 30), 30)

    def test_pole(self):
        with pytest.raises(PoleError):
            fn.starred_sum(pv(-1), 10)

    @pytest.mark.parametrize("x", [pv(2), pv(3, 1), pv(Fraction(-1, 2), 2)])
    def test_inversion(self, x):
        # n -> -n in the bilateral sum gives star(1/x) = x star(x)
        agree(fn.starred_sum(x.inverse(), 30), fn.starred_sum(x, 30) * x, 30)


class TestBilateral:
    def test_two_forms_and_closed_form(self):
        a, b = pv(2), pv(3)
        first, second = fn.bilateral_m_sum(a, b, 30)
        agree(first, second, 30)
        closed = evaluate("pochinf(-a*q)/(b*Jm(1)*pochinf(-q/b))*j(-b;q)*m(a/b;q;-b)", 30, bindings={"a": a, "b": b})
        agree(first, closed, 30)

    def test_equal_parameters(self):
        a = pv(2)
        first, second = fn.bilateral_m_sum(a, a, 30)
        closed = evaluate("pochinf(-a*q)/(a*Jm(1)*pochinf(-q/a))*j(-a;q)*m(1;q;-a)", 30, bindings={"a": a})
        agree(first, closed, 30)
        agree(second, closed, 30)


class TestGaussian:
    def test_four_two(self):
        assert str(fn.gaussian_binomial(4, 2)) == "1 + q + 2*q^2 + q^3 + q^4"

    def test_edges(self):
        assert fn.gaussian_binomial(6, 0) == QSeries({0: 1}, INF)
        assert fn.gaussian_binomial(3, 5).is_zero()

    @given(st.integers(0, 14), st.integers(0, 14))
    def test_symmetry_and_degree(self, n, k):
        g = fn.gaussian_binomial(n, k)
        if k > n:
            assert g.is_zero()
            return
        assert g == fn.gaussian_binomial(n, n - k)
        assert g.degree() == k * (n - k)
        assert all(c > 0 and c.denominator == 1 for _, c in g.terms())

    @given(st.integers(1, 12), st.integers(0, 12))
    def test_q_pascal(self, n, k):
        # [n,k] = [n-1,k-1] + q^k [n-1,k]
        rhs = fn.gaussian_binomial(n - 1, k - 1) + fn.gaussian_binomial(n - 1, k).shift(k) if k > 0 else fn.gaussian_binomial(n - 1, 0)
        assert fn.gaussian_binomial(n, k) == rhs
