"""Stable on-disk formats for grids, marginals, and validation reports.

CSV files are long-format data only (header plus records), so identical
inputs always produce byte-identical files. JSON documents carry metadata;
a timestamp is included only when requested, keeping the data sections
deterministic. Floats are printed with 17 significant digits, which
round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import io
import json
import sys
from pathlib import Path
from typing import IO, Any

import numpy as np

from . import __version__
from .marginals import PhaseDistribution, PhotonDistribution
from .oracle import ValidationReport
from .wigner import WignerGrid

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _open_out(destination: str | Path | IO[str]):
    """Yield (handle, should_close) for a path, '-', or writable object."""
    if hasattr(destination, "write"):
        return destination, False
    if str(destination) == "-":
        return sys.stdout, False
    return open(destination, "w", encoding="utf-8", newline="\n"), True


def write_grid_csv(grid: WignerGrid, destination: str | Path | IO[str]) -> None:
    """Write records "n,phi,w", n-major then phi, deterministically ordered."""
    handle, close = _open_out(destination)
    try:
        handle.write("n,phi,w\n")
        for point in grid.points():
            handle.write(f"{point.n},{_fmt(point.phi)},{_fmt(point.value)}\n")
    finally:
        if close:
            handle.close()


def read_grid_csv(source: str | Path | IO[str]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parse a grid CSV back into (n, phi, w) column arrays."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    lines = text.strip().splitlines()
    if not lines or lines[0] != "n,phi,w":
        raise ValueError("not a grid CSV: missing 'n,phi,w' header")
    ns, phis, ws = [], [], []
    for line in lines[1:]:
        n_str, phi_str, w_str = line.split(",")
        ns.append(int(n_str))
        phis.append(float(phi_str))
        ws.append(float(w_str))
    return np.array(ns), np.array(phis), np.array(ws)


def write_photon_csv(dist: PhotonDistribution, destination: str | Path | IO[str]) -> None:
    handle, close = _open_out(destination)
    try:
        handle.write("n,p\n")
        for n, p in enumerate(dist.probabilities):
            handle.write(f"{n},{_fmt(p)}\n")
    finally:
        if close:
            handle.close()


def write_phase_csv(dist: PhaseDistribution, destination: str | Path | IO[str]) -> None:
    handle, close = _open_out(destination)
    try:
        handle.write("phi,p\n")
        for phi, p in zip(dist.phis(), dist.values):
            handle.write(f"{_fmt(phi)},{_fmt(p)}\n")
    finally:
        if close:
            handle.close()


def _metadata(
    state_spec: dict[str, Any] | None,
    cutoff: int | None,
    tail_tol: float | None,
    timestamp: bool,
) -> dict[str, Any]:
    meta: dict[str, Any] = {
        "tool": "npwigner",
        "version": __version__,
    }
    if state_spec is not None:
        meta["state"] = state_spec
    if cutoff is not None:
        meta["cutoff"] = int(cutoff)
    if tail_tol is not None:
        meta["tail_tol"] = float(tail_tol)
    if timestamp:
        import datetime

        meta["created"] = (
            datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        )
    return meta


def grid_document(
    grid: WignerGrid,
    state_spec: dict[str, Any] | None = None,
    tail_tol: float | None = None,
    timestamp: bool = True,
) -> dict[str, Any]:
    """Grid plus metadata as a JSON-compatible tree (row-major values)."""
    return {
        "schema": SCHEMA_VERSION,
        "metadata": _metadata(state_spec, grid.source_cutoff, tail_tol, timestamp),
        "axes": {
            "n": list(range(grid.n_max + 1)),
            "phi": [float(p) for p in grid.phis()],
        },
        "values": [[float(v) for v in row] for row in grid.values],
    }


def write_grid_json(
    grid: WignerGrid,
    destination: str | Path | IO[str],
    state_spec: dict[str, Any] | None = None,
    tail_tol: float | None = None,
    timestamp: bool = True,
) -> None:
    doc = grid_document(grid, state_spec, tail_tol, timestamp)
    _write_json(doc, destination)


def report_document(report: ValidationReport) -> dict[str, Any]:
    """Report as a JSON tree; deviations as decimal strings to keep exactness."""
    checks = []
    for c in report.checks:
        entry = {
            "name": c.name,
            "deviation": _fmt(c.deviation),
            "threshold": _fmt(c.threshold),
            "pass": bool(c.passed),
        }
        if c.informational:
            entry["informational"] = True
        checks.append(entry)
    return {"schema": SCHEMA_VERSION, "checks": checks}


def write_report_json(
    report: ValidationReport, destination: str | Path | IO[str]
) -> None:
    _write_json(report_document(report), destination)


def _write_json(doc: dict[str, Any], destination: str | Path | IO[str]) -> None:
    handle, close = _open_out(destination)
    try:
        json.dump(doc, handle, indent=2, sort_keys=False)
        handle.write("\n")
    finally:
        if close:
            handle.close()


def grid_csv_text(grid: WignerGrid) -> str:
    """The exact CSV bytes (as text) that write_grid_csv would produce."""
    buf = io.StringIO()
    write_grid_csv(grid, buf)
    return buf.getvalue()
