"""Serialization of survey reports: json (canonical), text table, csv plot data."""
import csv
import io
import json

from ..errors import InvalidInput
from .config import FORMATS
from .runner import FibreReportRecord, SurveyReport

CSV_COLUMNS = ("location", "m", "norm", "rho", "fibre_cm", "discriminant", "discriminant_signs")


def emit_report(report: SurveyReport, fmt: str = "json") -> bytes:
    if fmt not in FORMATS:
        raise InvalidInput(f"format: unknown {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        return to_json(report).encode("utf-8")
    if fmt == "csv":
        return to_csv(report).encode("utf-8")
    return to_text(report).encode("utf-8")


def to_json(report: SurveyReport) -> str:
    payload = {"records": [rec.to_dict() for rec in report.records], "summary": report.summary}
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> SurveyReport:
    data = json.loads(text)
    return SurveyReport([FibreReportRecord.from_dict(r) for r in data["records"]], data["summary"])


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return str(v)


def to_csv(report: SurveyReport) -> str:
    """One row per class: class coordinates, location, rho and the fibre-field
    discriminant gamma^2 - 4 delta (K0 coefficients, space separated)."""
    width = max((len(rec.vector) for rec in report.records), default=0)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"class_{i + 1}" for i in range(width)] + list(CSV_COLUMNS))
    for rec in report.records:
        writer.writerow(list(rec.vector) + [_cell(getattr(rec, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_text(report: SurveyReport) -> str:
    s = report.summary
    st = s["structure"]
    lines = [
        f"field {st['field']}  degree {st['degree']}  d = {st['d']}",
        f"alpha = {' '.join(st['alpha'])}   xi = {' '.join(st['xi'])}",
        "",
    ]
    header = ("class", "location", "m", "norm", "rho", "fibre CM", "two-route", "K0", "notes")
    rows = []
    for rec in report.records:
        notes = rec.error or ("; ".join(a.split(":")[0] for a in rec.alarms) if rec.alarms else "")
        if rec.equator is not None:
            eq = rec.equator
            notes = (f"equator: cm={eq['cm_verdict']} period deg {eq['period_field_degree']} "
                     f"span {eq['imaginary_span_dim']} T'' dim {eq['minimal_substructure_dim']}"
                     + (f"; {notes}" if notes else ""))
        rows.append(("(" + ", ".join(rec.vector) + ")", rec.location, rec.m, rec.norm,
                     _cell(rec.rho), _cell(rec.fibre_cm), _cell(rec.two_route),
                     _cell(rec.k0_equal), notes))
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines.append(fmt.format(*header).rstrip())
    lines.extend(fmt.format(*row).rstrip() for row in rows)
    lines.append("")
    for key in ("classes", "by_location", "errors", "generic_fibres_checked", "generic_fibres_cm",
                "generic_two_route_agree", "generic_k0_equal",
                "generic_discriminant_totally_negative", "equator_fibres_checked",
                "equator_fibres_cm", "max_rho_off_equator", "alarms"):
        lines.append(f"{key}: {s[key]}")
    return "\n".join(lines) + "\n"
