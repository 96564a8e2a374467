from fractions import Fraction

import pytest

from qdual import bailey
from qdual.bailey import REGISTRY, Relative, beta_from_alpha, gamma_closed, gamma_from_delta, get_pair, lemma_sides, phi11_check
from qdual.functions import DegenerateError, pochhammer
from qdual.series import ParamValue, QSeries, equal_to_order

q = ParamValue(1, 1)
RQ = Relative(q, Fraction(1))


def agree(f, g, order):
    cmp = equal_to_order(f, g, order)
    assert cmp, str(cmp)


def test_registry_is_exactly_the_cited_pairs():
    assert set(REGISTRY) == {
        "WarnaarP12", "Warnaar46", "Warnaar44",
        "SlaterA2", "SlaterA4", "SlaterA6", "SlaterA8", "SlaterC3", "SlaterC4", "SlaterG2",
    }


def test_unknown_pair():
    with pytest.raises(KeyError):
        get_pair("X")


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_relative_parameter_is_unique(name):
    pair = REGISTRY[name]
    good = [rel for rel in pair.candidates if bailey._matches(pair, rel, 8, 30)]
    assert good == [bailey.relative_of(pair)]


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_beta_zero_is_alpha_zero(name):
    pair = REGISTRY[name]
    agree(beta_from_alpha(pair, 0, 20), pair.alpha_series(0).truncate(20), 20)


@pytest.mark.parametrize("n", range(11))
def test_slater_a6_closed_beta(n):
    # q^(n^2) / (q^2; q)_{2n} built directly
    expected = (QSeries({n * n: 1}, 40) / pochhammer(q**2, 1, 2 * n).truncate(40))
    agree(beta_from_alpha(get_pair("SlaterA6"), n, 40), expected, 40)


@pytest.mark.parametrize("n", range(11))
def test_warnaar_p12_closed_beta(n):
    expected = (QSeries({n * (n - 1): 1}, 40) / pochhammer(q, 1, 2 * n).truncate(40))
    agree(beta_from_alpha(get_pair("WarnaarP12"), n, 40), expected, 40)


class TestConjugatePair:
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_a_equals_q(self, n):
        agree(gamma_from_delta(RQ, n, 30), gamma_closed(RQ, n, 30), 30)

    def test_a_equals_q_squared(self):
        rel = Relative(q**2, Fraction(1))
        agree(gamma_from_delta(rel, 0, 30), gamma_closed(rel, 0, 30), 30)

    def test_a_equals_one(self):
        with pytest.raises(DegenerateError):
            gamma_from_delta(Relative(ParamValue(1), Fraction(1)), 0, 10)


@pytest.mark.parametrize("name", ["SlaterA6", "Warnaar46", "SlaterG2"])
def test_lemma(name):
    agree(*lemma_sides(get_pair(name), 40), 40)


class TestPhi11:
    def test_q_q3(self):
        assert phi11_check(q, q**3, 30)

    def test_q2_q5(self):
        assert phi11_check(q**2, q**5, 30)

    def test_a_equals_c(self):
        # (1)_inf = 0 on the right, so the series side must vanish
        assert phi11_check(q**2, q**2, 30)

    def test_constant_a(self):
        assert phi11_check(ParamValue(3), q**2, 20)


def test_check_pair_report():
    report = bailey.check_pair(get_pair("SlaterA2"), nmax=6, order=30, lemma_order=20)
    assert report.passed
    assert report.line().startswith("PASS  SlaterA2")


def test_manifest_marks_inferred_parameters():
    text = bailey.manifest()
    assert text.count("inferred by validation") == len(REGISTRY)
