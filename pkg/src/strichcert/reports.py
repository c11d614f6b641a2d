"""Result containers shared by the certification front ends.

``CertReport`` is the outcome of one named check: a verdict string, the
numeric margins backing it, boolean side conditions, and free-form notes.
``CoeffTable`` is a small column-ordered table with CSV and JSON emitters;
rows hold already-rounded strings or numbers, whatever the producer decided
is the publishable form.
"""

import io
import json
from dataclasses import dataclass, field


_VERDICTS = ("PASS", "FAIL", "INCONCLUSIVE")


@dataclass(frozen=True)
class CertReport:
    """One check's verdict plus the evidence behind it.

    margins maps criterion names to signed slack (positive means satisfied
    with room); flags are named boolean side conditions; notes carry prose
    the margins cannot, e.g. which branch a scan picked.
    """

    name: str
    verdict: str
    margins: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    notes: tuple = ()

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError(f"verdict must be one of {_VERDICTS}")
        for k, v in self.margins.items():
            if not isinstance(k, str):
                raise TypeError("margin keys must be strings")
            float(v)
        for k, v in self.flags.items():
            if not isinstance(k, str) or not isinstance(v, bool):
                raise TypeError("flags must map strings to bools")

    @property
    def passed(self):
        return self.verdict == "PASS"

    def to_dict(self):
        return {
            "name": self.name,
            "verdict": self.verdict,
            "margins": {k: float(v) for k, v in self.margins.items()},
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class CoeffTable:
    """Column-ordered table of published coefficients."""

    name: str
    columns: tuple
    rows: tuple

    def __post_init__(self):
        ncol = len(self.columns)
        for r in self.rows:
            if len(r) != ncol:
                raise ValueError(
                    f"row {r!r} has {len(r)} entries, expected {ncol}"
                )

    def to_csv(self):
        buf = io.StringIO()
        buf.write(",".join(str(c) for c in self.columns) + "\n")
        for r in self.rows:
            buf.write(",".join(_cell(v) for v in r) + "\n")
        return buf.getvalue()

    def to_json(self):
        return json.dumps(
            {
                "name": self.name,
                "columns": list(self.columns),
                "rows": [list(r) for r in self.rows],
            },
            indent=2,
            sort_keys=True,
        )


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)
