"""CSV, JSON and markdown renderings of a :class:`BenchReport`."""

from __future__ import annotations

import csv
import io
import json
import os
from typing import IO

from casim.errors import IOFailure
from casim.harness.bench import BenchReport, CellResult
from casim.storage import Backend, StorageConfig

CSV_HEADER = (
    "backend", "typing", "arity", "entities", "iterations",
    "development_ms", "evolution_ms", "peak_memory_bytes", "supported",
)
FORMATS = ("csv", "json", "md")

_BACKEND_ROW_NAMES = {Backend.INDIRECT: "Indirect-Record", Backend.CONTIGUOUS: "Contiguous-Array"}


def cell_to_dict(cell: CellResult) -> dict:
    return {
        "backend": cell.config.backend.value,
        "typing": cell.config.typing.value,
        "arity": cell.config.arity_label,
        "supported": cell.supported,
        "development_spans": [list(s) for s in cell.development_spans],
        "evolution_spans": [list(s) for s in cell.evolution_spans],
        "development_s": cell.development_time,
        "evolution_s": cell.evolution_time,
        "peak_memory_bytes": cell.peak_memory,
        "memory_note": cell.memory_note,
        "error": cell.error,
    }


def cell_from_dict(d: dict) -> CellResult:
    config = StorageConfig(d["backend"], d["typing"], StorageConfig.parse_arity(d["arity"]))
    return CellResult(
        config=config,
        supported=d["supported"],
        development_spans=tuple(tuple(s) for s in d["development_spans"]),
        evolution_spans=tuple(tuple(s) for s in d["evolution_spans"]),
        peak_memory=d["peak_memory_bytes"],
        memory_note=d["memory_note"],
        error=d["error"],
    )


def report_to_dict(report: BenchReport) -> dict:
    return {
        "entity_count": report.entity_count,
        "iterations": report.iterations,
        "repetitions": report.repetitions,
        "rule_number": report.rule_number,
        "timestamp": report.timestamp,
        "host": report.host,
        "memory_policy": report.memory_policy,
        "cells": [cell_to_dict(c) for c in report.cells],
    }


def report_from_dict(d: dict) -> BenchReport:
    return BenchReport(
        cells=tuple(cell_from_dict(c) for c in d["cells"]),
        entity_count=d["entity_count"],
        iterations=d["iterations"],
        repetitions=d["repetitions"],
        rule_number=d["rule_number"],
        timestamp=d["timestamp"],
        host=d["host"],
        memory_policy=d["memory_policy"],
    )


def parse_report(text: str) -> BenchReport:
    return report_from_dict(json.loads(text))


def _ms(seconds: float | None) -> str:
    return "" if seconds is None else f"{seconds * 1000:.3f}"


def to_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for c in report.cells:
        measured = c.ok
        writer.writerow([
            c.config.backend.value,
            c.config.typing.value,
            c.config.arity_label,
            report.entity_count,
            report.iterations,
            _ms(c.development_time) if measured else "",
            _ms(c.evolution_time) if measured else "",
            c.peak_memory if measured and c.peak_memory is not None else "",
            "true" if c.supported else "false",
        ])
    return buf.getvalue()


def to_json(report: BenchReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def hms(seconds: float) -> str:
    """``hh:mm:ss.mmm``; the milliseconds keep desk-scale runs readable."""
    ms = round(seconds * 1000)
    h, rem = divmod(ms, 3_600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d}.{ms:03d}"


def to_markdown(report: BenchReport) -> str:
    """Metric rows per backend, (typing, arity) columns; '-' marks unsupported cells."""
    columns = list(dict.fromkeys((c.config.typing, c.config.multi) for c in report.cells))
    backends = list(dict.fromkeys(c.config.backend for c in report.cells))
    by_key = {(c.config.backend, c.config.typing, c.config.multi): c for c in report.cells}

    def arity_name(multi):
        return "Single-State" if multi is None else ("Multi-State" if multi == 1 else f"Multi-State ({multi})")

    header = ["Running time [hh:mm:ss.mmm], memory [MB]"] + [
        f"{typing.value.capitalize()} {arity_name(multi)}" for typing, multi in columns
    ]
    lines = [
        f"Entities: {report.entity_count}, iterations: {report.iterations}, "
        f"repetitions: {report.repetitions} (minimum reported)",
        "",
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    metrics = (
        ("Development Time", lambda c: hms(c.development_time)),
        ("Evolution Time", lambda c: hms(c.evolution_time)),
        ("Memory Usage", lambda c: "n/a" if c.peak_memory is None else f"{c.peak_memory / 1e6:.1f}"),
    )
    for metric, fmt in metrics:
        for backend in backends:
            row = [f"{_BACKEND_ROW_NAMES[backend]} {metric}"]
            for typing, multi in columns:
                cell = by_key.get((backend, typing, multi))
                if cell is None or not cell.supported:
                    row.append("-")
                elif cell.error is not None:
                    row.append("error")
                else:
                    row.append(fmt(cell))
            lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


_RENDERERS = {"csv": to_csv, "json": to_json, "md": to_markdown, "markdown": to_markdown}


def emit_report(report: BenchReport, fmt: str, destination: str | os.PathLike | IO[str] | None = None) -> str:
    """Render ``report`` and write it to a path or text stream; returns the text."""
    try:
        render = _RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown report format {fmt!r}; choose from {FORMATS}") from None
    text = render(report)
    if destination is None:
        return text
    try:
        if hasattr(destination, "write"):
            destination.write(text)
        else:
            with open(destination, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        raise IOFailure(f"cannot write report: {exc}") from exc
    return text
