"""Identity records, verification reports and the driver."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..functions import DegenerateError
from ..series import NotInvertibleError, ParamValue, PoleError, TruncationError, equal_to_order, format_exponent
from ..expr import ExpressionError
from .sides import Side, lift

GROUPS = ("G0", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9")

#: constant sample values shared by parametric records
DEFAULT_VALUES = (Fraction(2), Fraction(3), Fraction(5), Fraction(-2), Fraction(1, 2))


@dataclass(frozen=True)
class IdentityRecord:
    """One displayed identity ``sides[0] = sides[1] = ...``.

    ``samples`` is a tuple of bindings (parameter name to monomial); records
    without parameters use a single empty binding.
    """

    id: str
    anchor: str
    group: str
    sides: tuple[Side, ...]
    samples: tuple[Mapping[str, ParamValue], ...] = ({},)
    lattice: int = 1
    order: int = 50
    tags: tuple[str, ...] = ()
    note: str = ""

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"{self.id}: unknown group {self.group}")
        if len(self.sides) < 2:
            raise ValueError(f"{self.id}: an identity needs at least two sides")
        object.__setattr__(self, "sides", tuple(lift(s) for s in self.sides))

    @property
    def status_tag(self) -> str:
        if "numerically verified only in paper" in self.tags:
            return "numerically verified only in paper"
        params = {k for s in self.samples for k in s}
        return "verified at samples" if params else "verified to order"

    def metadata(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "group": self.group,
            "lattice": self.lattice,
            "order": self.order,
            "samples": [format_binding(s) for s in self.samples],
            "tags": list(self.tags),
            "status": self.status_tag,
        }


def format_binding(b: Mapping[str, ParamValue]) -> str:
    if not b:
        return "-"
    return ", ".join(f"{k}={ParamValue.of(v)}" for k, v in sorted(b.items()))


@dataclass
class SampleOutcome:
    binding: str
    status: str
    first_mismatch: dict | None = None
    error: str | None = None


@dataclass
class VerificationReport:
    id: str
    group: str
    order: Fraction
    lattice: int
    status: str
    samples: list[SampleOutcome] = field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def first_mismatch(self) -> dict | None:
        for s in self.samples:
            if s.first_mismatch is not None:
                return dict(s.first_mismatch, sample=s.binding)
        return None

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "group": self.group,
            "status": self.status,
            "order": str(self.order),
            "lattice": self.lattice,
            "samples": [
                {"binding": s.binding, "status": s.status, **({"error": s.error} if s.error else {})} for s in self.samples
            ],
            "first_mismatch": self.first_mismatch,
            "millis": self.millis,
        }

    def line(self) -> str:
        head = f"{self.status.upper():5} {self.id} [{self.group}] order {self.order} samples {len(self.samples)}"
        fm = self.first_mismatch
        if fm:
            head += f" first mismatch at q^{fm['exponent']}: {fm['lhs']} vs {fm['rhs']} ({fm['sample']})"
        err = next((s.error for s in self.samples if s.error), None)
        if err:
            head += f" error: {err}"
        return head


class UnknownRecordError(KeyError):
    pass


_INFRA = (DegenerateError, PoleError, NotInvertibleError, TruncationError, ExpressionError, ArithmeticError)


def check_record(rec: IdentityRecord, order=None, samples: Sequence[Mapping[str, ParamValue]] | None = None) -> VerificationReport:
    order = Fraction(rec.order if order is None else order)
    start = time.perf_counter()
    outcomes = []
    for b in rec.samples if samples is None else samples:
        label = format_binding(b)
        try:
            values = [s.evaluate(b, order, rec.lattice) for s in rec.sides]
        except _INFRA as exc:
            outcomes.append(SampleOutcome(label, "error", error=f"{type(exc).__name__}: {exc}"))
            continue
        outcome = SampleOutcome(label, "pass")
        for other in values[1:]:
            cmp = equal_to_order(values[0], other, order)
            if not cmp:
                outcome = SampleOutcome(
                    label, "fail", {"exponent": format_exponent(cmp.exponent), "lhs": str(cmp.lhs), "rhs": str(cmp.rhs)}
                )
                break
        outcomes.append(outcome)
    statuses = {o.status for o in outcomes}
    status = "error" if "error" in statuses else "fail" if "fail" in statuses else "pass"
    millis = int((time.perf_counter() - start) * 1000)
    return VerificationReport(rec.id, rec.group, order, rec.lattice, status, outcomes, millis)
