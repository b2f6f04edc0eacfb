"""Report documents: JSON serialization and the aligned text table."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import __version__
from .embedding import ClassificationReport

SCHEMA_VERSION = "cpgroups.report/1"
TOOL = "cpgroups"

ROW_FIELDS = ("index", "order", "generators", "isomorphism", "normal", "defect", "abnormal", "methods_agree")
TEXT_COLUMNS = ("Isomorphism Type", "#", "Order", "Subgroups", "Normal", "Defect", "Abnormal", "Agree")


@dataclass
class ReportDocument:
    spec: str
    group: str
    order: int
    rows: list[dict]
    totals: dict[str, dict[str, int]]
    runtime_seconds: float = 0.0
    schema: str = SCHEMA_VERSION
    tool: str = TOOL
    version: str = __version__

    @classmethod
    def from_report(cls, spec: str, report: ClassificationReport, runtime: float = 0.0) -> "ReportDocument":
        rows = [{f: getattr(r, f) for f in ROW_FIELDS} for r in report.rows]
        return cls(spec, report.group_name, report.order, rows, report.totals, round(runtime, 4))

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)

    @property
    def subgroup_count(self) -> int:
        return len(self.rows)

    @property
    def normal_count(self) -> int:
        return sum(r["normal"] for r in self.rows)


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _row_cells(r: dict) -> list[str]:
    return [
        r["isomorphism"],
        str(r["index"]),
        str(r["order"]),
        "⟨" + ", ".join(r["generators"]) + "⟩",
        _yn(r["normal"]),
        "-" if r["defect"] is None else str(r["defect"]),
        _yn(r["abnormal"]),
        _yn(r["methods_agree"]),
    ]


def _table(header, body) -> list[str]:
    widths = [max(len(row[k]) for row in [header] + body) for k in range(len(header))]
    fmt = lambda cells: " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    sep = "-+-".join("-" * w for w in widths)
    return [fmt(header), sep] + [fmt(c) for c in body]


def render_text(doc: ReportDocument) -> str:
    lines = [f"{doc.spec}  (order {doc.order})", ""]
    lines += _table(list(TEXT_COLUMNS), [_row_cells(r) for r in doc.rows])
    lines.append("")
    summary = [[k, str(v["count"]), str(v["normal"]), str(v["subnormal"]), str(v["abnormal"])] for k, v in doc.totals.items()]
    total = [
        "Total",
        str(doc.subgroup_count),
        str(doc.normal_count),
        str(sum(v["subnormal"] for v in doc.totals.values())),
        str(sum(v["abnormal"] for v in doc.totals.values())),
    ]
    lines += _table(["Isomorphism Type", "#", "# Normal", "# Subnormal", "# Abnormal"], summary + [total])
    return "\n".join(lines) + "\n"


def parse_text_rows(text: str) -> list[dict]:
    """Recover the per-subgroup rows from :func:`render_text` output."""
    lines = text.splitlines()
    start = next(i for i, ln in enumerate(lines) if ln.startswith("Isomorphism Type") and "Subgroups" in ln)
    rows = []
    for ln in lines[start + 2:]:
        if not ln.strip():
            break
        cells = [c.strip() for c in ln.split(" | ")]
        cells += [""] * (len(TEXT_COLUMNS) - len(cells))
        iso, idx, order, gens, normal, defect, abnormal, agree = cells
        rows.append({
            "index": int(idx),
            "order": int(order),
            "generators": gens[1:-1].split(", "),
            "isomorphism": iso,
            "normal": normal == "yes",
            "defect": None if defect == "-" else int(defect),
            "abnormal": abnormal == "yes",
            "methods_agree": agree == "yes",
        })
    return rows
