import dataclasses
import re
from pathlib import Path

import pytest

from qdual import corpus
from qdual.corpus import (
    GROUPS,
    RECORDS,
    UnknownRecordError,
    coverage,
    get_record,
    list_identities,
    manifest_text,
    display_labels,
    verify_group,
    verify_identity,
)
from qdual.corpus.records import NUMERIC_ONLY, SECOND_TYPE
from qdual.corpus.sides import E
from qdual.corpus.verify import check_record
from qdual.series import ParamValue

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "qdual" / "corpus" / "data"


def mutate(rec, term):
    sides = rec.sides[:-1] + (rec.sides[-1] + E(term),)
    return dataclasses.replace(rec, sides=sides)


class TestListing:
    def test_seventh_order_group(self):
        ids = [m["id"] for m in list_identities("G5")]
        assert len(ids) == 6
        assert sum(i.endswith("-dual") for i in ids) == 3

    def test_second_type_tag(self):
        ids = {m["id"] for m in list_identities(SECOND_TYPE)}
        assert {"6.3.2-ABII-2ndDualA", "6.3.2-ABII-2ndDualB", "6.3.4-ABII-2ndDualA", "6.3.4-ABII-2ndDualB"} <= ids
        assert all(get_record(i).group == "G7" for i in ids)

    def test_empty_filter_is_everything_in_order(self):
        assert [m["id"] for m in list_identities()] == [r.id for r in RECORDS]
        assert [m["id"] for m in list_identities("")] == [r.id for r in RECORDS]

    def test_text_filter(self):
        assert {m["id"] for m in list_identities("RLNid2")} == {"RLNid2.a", "RLNid2.b", "RLNid2.c"}

    def test_every_group_is_populated(self):
        assert {r.group for r in RECORDS} == set(GROUPS)

    def test_ids_are_unique(self):
        assert len({r.id for r in RECORDS}) == len(RECORDS)


class TestStatus:
    def test_numeric_only_records(self):
        tagged = {r.id for r in RECORDS if NUMERIC_ONLY in r.tags}
        assert {"mock-chi1-5th-dualB", "ABII-6.3.6-dualtypeII", "ABII-6.3.9-dualtypeII"} <= tagged
        assert all(get_record(i).status_tag == NUMERIC_ONLY for i in tagged)

    def test_parametric_records_are_never_proved(self):
        for r in RECORDS:
            if any(r.samples):
                assert r.status_tag in ("verified at samples", NUMERIC_ONLY)

    def test_single_parameter_sample_plans(self):
        for r in RECORDS:
            names = {k for s in r.samples for k in s}
            if len(names) != 1 or names == {"N"}:
                continue
            (name,) = names
            values = [s[name] for s in r.samples]
            assert len({v.c for v in values if v.e == 0}) >= 5, r.id
            assert len({v for v in values if v.e != 0}) >= 2, r.id

    def test_heavy_records_run_at_forty(self):
        for r in RECORDS:
            if "heavy" in r.tags:
                assert r.order == 40

    def test_chi0_multiplicities_are_kept(self):
        rec = get_record("mock-chi0-5th.m-form")
        text = " ".join(s.text for s in rec.sides if isinstance(s, E))
        want = "2 - 2*m(q^7;q^15;q^12) - m(q^7;q^15;q^9) - 2*q^-1*m(q^2;q^15;q^12) - q^-1*m(q^2;q^15;q^9)"
        assert want.replace(" ", "") in text.replace(" ", "")


class TestVerify:
    def test_rlnid1(self):
        rep = verify_identity("RLNid1")
        assert rep.passed and rep.order == 40
        bindings = [s.binding for s in rep.samples]
        for want in ("x=2", "x=3", "x=1/2"):
            assert want in bindings

    def test_chi0_m_form(self):
        assert verify_identity("mock-chi0-5th.m-form", order=40).passed

    def test_unknown_id(self):
        with pytest.raises(UnknownRecordError):
            verify_identity("nonsense")
        with pytest.raises(UnknownRecordError):
            verify_group("G42")

    @pytest.mark.parametrize("id_", ["RLNid2.a", "ABII-6.3.4", "mock-F0-7th"])
    def test_mutation_fails_at_the_perturbed_exponent(self, id_):
        rec = mutate(get_record(id_), "q^5")
        rep = check_record(rec)
        assert rep.status == "fail"
        assert rep.first_mismatch["exponent"] == "5"

    def test_order_override(self):
        rep = verify_identity("theta-def", order=10)
        assert rep.passed and rep.order == 10

    def test_sample_override(self):
        rep = verify_identity("ABII-6.3.4-dual", samples=[{"a": ParamValue(7)}])
        assert rep.passed and [s.binding for s in rep.samples] == ["a=7"]

    def test_degenerate_sample_is_infrastructure_error(self):
        rep = verify_identity("ABII-6.3.4-dual", samples=[{"a": ParamValue(-1, -1)}])
        assert rep.status == "error"
        assert rep.samples[0].error

    def test_report_is_deterministic(self):
        a = verify_identity("RLNid4").as_dict()
        b = verify_identity("RLNid4").as_dict()
        a.pop("millis"), b.pop("millis")
        assert a == b


class TestCoverage:
    def test_every_label_is_covered_or_noted(self):
        labels = display_labels()
        cov = coverage()
        missing = [label for label, note in labels.items() if not note and not cov[label]]
        assert missing == []

    def test_noted_labels_have_no_records(self):
        cov = coverage()
        for label, note in display_labels().items():
            if note:
                assert cov[label] == [], label

    def test_record_anchors_are_known_labels(self):
        labels = display_labels()
        assert sorted({r.anchor for r in RECORDS} - set(labels)) == []

    @pytest.mark.skipif(not (ROOT / "paper.md").exists(), reason="source document not shipped")
    def test_label_list_matches_source(self):
        text = (ROOT / "paper.md").read_text(encoding="utf-8")
        found = {m.split(":", 1)[-1] for m in re.findall(r"\\label\{([^}]+)\}", text)}
        assert found == set(display_labels())

    def test_manifest_file_is_current(self):
        assert (DATA / "manifest.tsv").read_text(encoding="utf-8") == manifest_text()

    def test_manifest_fields(self):
        rows = corpus.manifest()
        assert len(rows) == len(RECORDS)
        assert set(rows[0]) == {"id", "label", "group", "status"}
