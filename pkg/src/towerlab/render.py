"""Verdict serialization: JSON, CSV and a markdown table mirroring the
reference dataset's column layout."""

import csv
import io
import json

from .classifier import ClassificationVerdict

CSV_COLUMNS = ("d", "p1", "p2", "q", "case", "q1", "q2", "q3", "alpha", "s",
               "t1", "t2", "n", "n1", "n2", "n3", "g_type", "hilbert_cl2")


def _cell(value) -> str:
    return "" if value is None else str(value)


def flat_row(verdict: ClassificationVerdict) -> dict:
    e = verdict.evidence
    symbols = e.get("symbols", {})
    h2 = e.get("h2", {})
    qi = e.get("unit_indices") or (None, None, None)
    return {
        "d": verdict.d,
        "p1": verdict.p1,
        "p2": verdict.p2,
        "q": verdict.q,
        "case": verdict.case.value,
        "q1": qi[0],
        "q2": qi[1],
        "q3": qi[2],
        "alpha": symbols.get("alpha"),
        "s": symbols.get("s4"),
        "t1": symbols.get("t1"),
        "t2": symbols.get("t2"),
        "n": h2.get("n"),
        "n1": h2.get("n1"),
        "n2": h2.get("n2"),
        "n3": h2.get("n3"),
        "g_type": verdict.g_type.value,
        "hilbert_cl2": verdict.hilbert_cl2.value,
    }


def to_json(verdicts) -> str:
    objs = [v.to_dict() for v in verdicts]
    payload = objs[0] if len(objs) == 1 else objs
    return json.dumps(payload, indent=2, sort_keys=False)


def to_csv(verdicts) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for v in verdicts:
        row = flat_row(v)
        writer.writerow([_cell(row[col]) for col in CSV_COLUMNS])
    return buf.getvalue()


def to_markdown(verdicts) -> str:
    header = ("| d=2.p1.p2.q | q1 | q2 | q3 | alpha | s | t1 | t2 "
              "| n | n1 | n2 | n3 | case | G | Cl2(H1) |")
    rule = "|" + "---|" * 15
    lines = [header, rule]
    for v in verdicts:
        row = flat_row(v)
        label = f"{row['d']}=2.{row['p1']}.{row['p2']}.{row['q']}"
        cells = [label] + [_cell(row[c]) for c in
                           ("q1", "q2", "q3", "alpha", "s", "t1", "t2",
                            "n", "n1", "n2", "n3")]
        cells += [row["case"], row["g_type"], row["hilbert_cl2"]]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render(verdicts, fmt: str) -> str:
    verdicts = list(verdicts)
    if fmt == "json":
        return to_json(verdicts) + "\n"
    if fmt == "csv":
        return to_csv(verdicts)
    if fmt == "markdown":
        return to_markdown(verdicts)
    raise ValueError(f"unknown format {fmt!r}")
