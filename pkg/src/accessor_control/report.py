"""Rendering of :class:`~accessor_control.controllability.Report`."""
from __future__ import annotations

import json

from .controllability import Report

FORMATS = ("human", "machine")


def emit_report(report: Report, format: str = "human") -> str:
    if format == "machine":
        body = report.to_dict()
        timings = body.pop("timings")
        return json.dumps({"report": body, "timings": timings}, indent=2) + "\n"
    if format == "human":
        return _human(report)
    raise ValueError(f"unknown report format {format!r}; expected one of {FORMATS}")


def parse_report(text: str) -> Report:
    doc = json.loads(text)
    return Report.from_dict({**doc["report"], "timings": doc.get("timings", {})})


def _ok(flag: bool) -> str:
    return "PASS" if flag else "FAIL"


def _human(r: Report) -> str:
    closure = "skipped" if r.closure_dimension is None else f"{r.closure_dimension} / {r.target_dimension}"
    rows = [
        ("total dimension", f"{r.n_total}"),
        ("system operators (N~)", f"{r.n_tilde}"),
        ("chain length 3^M >= N~", f"{_ok(r.chain_length_ok)} (minimal M = {r.minimal_chain_length})"),
        ("coupling rank condition", f"{_ok(r.coupling_rank_ok)} (rank {r.coupling_rank} of {r.n_tilde})"),
        ("selected strings", ",".join(r.selected_subset) or "-"),
        ("|det| of selection", f"{r.det_magnitude:.6g}"),
        ("closure dimension", closure),
        ("verdict", r.verdict.value),
    ]
    rows += [(f"time {k}", f"{v:.3f}") for k, v in r.timings.items()]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"
