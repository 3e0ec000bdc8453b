"""Structured verification reports.

A report is a list of check records under a suite header.  The JSON
serialization is canonical: records sorted by id, keys in a fixed
order, and a volatile-field scrub for byte-level comparisons.
"""

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

ENGINE_VERSION = "0.1.0"

STATUSES = ("pass", "fail", "finding")

__all__ = ["CheckRecord", "VerificationReport", "ENGINE_VERSION", "STATUSES"]


@dataclass
class CheckRecord:
    """Outcome of one named check.

    status is pass (contract held), fail (contract broken), or finding
    (a documented discrepancy or informational value; never a failure).
    residual holds the rendered leftover, "0" when the check is exact.
    corrections lists the rule repairs in effect during the check.
    """

    id: str
    paper_ref: str
    status: str
    residual: str
    corrections: tuple = ()
    ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_obj(self) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "residual": self.residual,
            "corrections": list(self.corrections),
            "ms": self.ms,
        }


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    engine_version: str = ENGINE_VERSION
    generated_at: str = ""

    def __post_init__(self):
        if not self.generated_at:
            self.generated_at = datetime.now(timezone.utc).isoformat(
                timespec="seconds")
        ids = [c.id for c in self.checks]
        dupes = {i for i in ids if ids.count(i) > 1}
        if dupes:
            raise ValueError(f"duplicate check ids: {sorted(dupes)}")
        self.checks = sorted(self.checks, key=lambda c: c.id)

    # -- aggregation ----------------------------------------------------

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    # -- serialization --------------------------------------------------

    def to_obj(self, volatile: bool = True) -> dict:
        obj = {
            "suite": self.suite,
            "engine_version": self.engine_version,
            "generated_at": self.generated_at if volatile else "",
            "checks": [c.to_obj() for c in self.checks],
        }
        if not volatile:
            for c in obj["checks"]:
                c["ms"] = 0
        return obj

    def to_json(self, volatile: bool = True) -> str:
        return json.dumps(self.to_obj(volatile), indent=2) + "\n"

    @staticmethod
    def from_obj(obj: dict) -> "VerificationReport":
        checks = [
            CheckRecord(
                id=c["id"],
                paper_ref=c["paper_ref"],
                status=c["status"],
                residual=c["residual"],
                corrections=tuple(c.get("corrections", ())),
                ms=c.get("ms", 0),
            )
            for c in obj["checks"]
        ]
        return VerificationReport(
            suite=obj["suite"],
            checks=checks,
            engine_version=obj.get("engine_version", ENGINE_VERSION),
            generated_at=obj.get("generated_at", "-"),
        )

    # -- display ----------------------------------------------------------

    def render_table(self, width: int = 100) -> str:
        id_w = max([len(c.id) for c in self.checks] + [len("check")])
        lines = [
            f"suite: {self.suite}   engine: {self.engine_version}   "
            f"generated: {self.generated_at}",
            f"{'check':<{id_w}}  {'status':<7}  residual",
            "-" * width,
        ]
        for c in self.checks:
            residual = c.residual
            room = width - id_w - 11
            if len(residual) > room > 3:
                residual = residual[:room - 3] + "..."
            lines.append(f"{c.id:<{id_w}}  {c.status:<7}  {residual}")
        counts = self.counts()
        lines.append("-" * width)
        lines.append(
            f"{len(self.checks)} checks: {counts['pass']} pass, "
            f"{counts['fail']} fail, {counts['finding']} findings")
        return "\n".join(lines)
