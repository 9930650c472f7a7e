"""Report documents: typed rows plus a policy echo, rendered as markdown,
CSV or JSON.

The three renderings carry identical row data.  JSON is the canonical,
byte-stable surface: keys are sorted, no volatile fields (wall-clock
times appear only in the markdown header, and only when stamping is
requested), so identical runs serialize identically.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .primality import PrimalityVerdict

DISPLAY_DIGIT_LIMIT = 80

FORMAT_VERSION = 1


def format_value(value: int, form: str | None = None, full: bool = False) -> str:
    """Decimal rendering, or a form descriptor once past the digit limit."""
    digits = len(str(value)) if value.bit_length() < 280 else None
    if digits is None:
        # digit count without materializing the decimal string
        digits = (value.bit_length() * 30103) // 100000 + 1
    if full or digits <= DISPLAY_DIGIT_LIMIT:
        return str(value)
    label = form or "value"
    return f"{label} ({digits} digits)"


def describe_verdict(v: PrimalityVerdict) -> str:
    out = f"{v.status.value}[{v.method}]"
    if v.witness_factor is not None:
        out += f" witness={v.witness_factor}"
    return out


@dataclass
class ReportDocument:
    title: str
    command: str
    policy: dict
    columns: list[str]
    rows: list[dict]
    generated_at: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        doc = {
            "format_version": FORMAT_VERSION,
            "title": self.title,
            "command": self.command,
            "policy": self.policy,
            "columns": self.columns,
            "rows": self.rows,
            "notes": self.notes,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        doc = json.loads(text)
        if doc.get("format_version") != FORMAT_VERSION:
            raise ValueError("unsupported report format version")
        return cls(
            title=doc["title"],
            command=doc["command"],
            policy=doc["policy"],
            columns=doc["columns"],
            rows=doc["rows"],
            notes=doc.get("notes", []),
        )

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=self.columns, extrasaction="ignore")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in self.columns})
        return out.getvalue()

    def to_markdown(self) -> str:
        lines = [f"# {self.title}", ""]
        if self.generated_at:
            lines += [f"generated at: {self.generated_at}", ""]
        policy_echo = ", ".join(f"{k}={v}" for k, v in sorted(self.policy.items()))
        lines += [f"policy: {policy_echo}", ""]
        lines.append("| " + " | ".join(self.columns) + " |")
        lines.append("|" + "|".join(" --- " for _ in self.columns) + "|")
        for row in self.rows:
            cells = ["" if row.get(c) is None else str(row.get(c)) for c in self.columns]
            lines.append("| " + " | ".join(cells) + " |")
        for note in self.notes:
            lines += ["", f"note: {note}"]
        lines.append("")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_markdown()
        raise ValueError(f"unknown format: {fmt}")
