"""Registry of displayed identities and the verification driver.

>>> from qdual.corpus import verify_identity
>>> verify_identity("RLNid1").passed
True
"""

from __future__ import annotations

from importlib import resources
from typing import Iterable

from .records import RECORDS
from .verify import GROUPS, IdentityRecord, UnknownRecordError, VerificationReport, check_record

__all__ = [
    "GROUPS",
    "IdentityRecord",
    "UnknownRecordError",
    "VerificationReport",
    "coverage",
    "get_record",
    "list_identities",
    "manifest",
    "manifest_text",
    "display_labels",
    "verify_group",
    "verify_identity",
    "verify_records",
]

_BY_ID = {r.id: r for r in RECORDS}
if len(_BY_ID) != len(RECORDS):
    raise RuntimeError("duplicate record ids in the corpus")


def _matches(rec: IdentityRecord, needle: str) -> bool:
    if needle in GROUPS:
        return rec.group == needle
    if needle in rec.tags:
        return True
    low = needle.lower()
    return low in rec.id.lower() or low in rec.anchor.lower()


def list_identities(filter: str | None = None) -> list[dict]:
    """Metadata of the records matching a group, a tag or an id/label substring, in corpus order."""
    return [r.metadata() for r in RECORDS if not filter or _matches(r, filter)]


def get_record(id: str) -> IdentityRecord:
    try:
        return _BY_ID[id]
    except KeyError:
        raise UnknownRecordError(id) from None


def verify_identity(id: str, order=None, samples=None) -> VerificationReport:
    return check_record(get_record(id), order, samples)


def verify_records(records: Iterable[IdentityRecord], order=None) -> list[VerificationReport]:
    return [check_record(r, order) for r in records]


def verify_group(tag: str, order=None) -> list[VerificationReport]:
    """Verify every record of a group (or carrying a tag); unknown tags raise."""
    recs = [r for r in RECORDS if r.group == tag or tag in r.tags]
    if not recs:
        raise UnknownRecordError(tag)
    return verify_records(recs, order)


def manifest() -> list[dict]:
    return [{"id": r.id, "label": r.anchor, "group": r.group, "status": r.status_tag} for r in RECORDS]


def manifest_text() -> str:
    """The checked-in manifest: one tab-separated record per line."""
    rows = ["id\tlabel\tgroup\tstatus"] + [f"{m['id']}\t{m['label']}\t{m['group']}\t{m['status']}" for m in manifest()]
    return "\n".join(rows) + "\n"


def _data(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def display_labels() -> dict[str, str]:
    """Every displayed label, mapped to its out-of-scope note ('' when records cover it)."""
    out = {}
    for line in _data("labels.txt").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        label, _, note = line.partition("\t")
        out[label.strip()] = note.strip()
    return out


# labels of statements whose content is the listed displays
_STATEMENTS = {
    "eulerian-mxqz-prop": ("RLNid1", "RLNid2", "RLNid3", "RLNid4", "RLNid5", "sumstar-def"),
    "ex-2": ("ABII-6.5.1A", "ABII-6.5.1B", "Andrews-psi0", "Andrews-psi1"),
    "fifth-duals": ("mock-chi0-5th-dualA", "mock-chi0-5th-dualB", "mock-chi1-5th-dualA", "mock-chi1-5th-dualB"),
    "seventh-duals": ("mock-F0-7th-dual", "mock-F1-7th-dual", "mock-F2-7th-dual"),
    "6.3.2-ABII-tail-2": ("6.3.2-ABII-tail",),
}


def coverage() -> dict[str, list[str]]:
    """Record ids covering each label; empty for labels with an out-of-scope note."""
    labels = display_labels()
    out: dict[str, list[str]] = {}
    for label in labels:
        ids = [r.id for r in RECORDS if r.anchor == label or r.id == label]
        for anchor in _STATEMENTS.get(label, ()):
            ids += [r.id for r in RECORDS if r.anchor == anchor and r.id not in ids]
        out[label] = ids
    return out
