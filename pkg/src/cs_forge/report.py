"""The :class:`InequalityReport` record and its canonical renderings."""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .vectors import DEFAULT_TOLERANCE

__all__ = ["InequalityReport", "make_report", "digest", "format_real", "REPORT_FIELDS"]

REPORT_FIELDS = ("name", "lhs", "rhs", "margin", "holds", "inputs")


def format_real(x):
    """17 significant digits: enough for an exact float round trip."""
    return format(float(x), ".17g")


def _render(value):
    arr = np.asarray(value, dtype=float) if not isinstance(value, str) else None
    if arr is None:
        return value
    if arr.ndim == 0:
        return format_real(arr)
    if arr.ndim == 1:
        return "(" + ",".join(format_real(x) for x in arr) + ")"
    return "(" + ",".join(_render(row) for row in arr) + ")"


def digest(inputs):
    """Canonical one-line rendering of named inputs, in the given order.

    Scalars print as ``p=1.5``, vectors as ``v=(1,2)``, matrices and lists of
    vectors as ``X=((1,2),(3,4))``.
    """
    return " ".join(f"{key}={_render(value)}" for key, value in inputs.items())


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    input_digest: str
    # auxiliary values (e.g. block contributions); not part of the rendered formats
    details: MappingProxyType = field(default_factory=lambda: MappingProxyType({}), compare=False)

    def to_text(self):
        return " ".join(
            [
                self.name,
                format_real(self.lhs),
                format_real(self.rhs),
                format_real(self.margin),
                "true" if self.holds else "false",
            ]
        )

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "inputs": self.input_digest,
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    def to_csv_row(self):
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [
                self.name,
                format_real(self.lhs),
                format_real(self.rhs),
                format_real(self.margin),
                "true" if self.holds else "false",
                self.input_digest,
            ]
        )
        return buf.getvalue()

    @staticmethod
    def csv_header():
        return ",".join(REPORT_FIELDS) + "\n"


def make_report(name, lhs, rhs, inputs, tol=None, details=None):
    tol = DEFAULT_TOLERANCE if tol is None else tol
    lhs = float(lhs)
    rhs = float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise ArithmeticError(f"{name}: non-finite sides lhs={lhs}, rhs={rhs}")
    return InequalityReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
        holds=bool(tol.accepts(lhs, rhs)),
        input_digest=digest(inputs),
        details=MappingProxyType(dict(details or {})),
    )
