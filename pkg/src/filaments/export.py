"""Writers for the geometry and report formats.

Formats are documented in docs/formats.md; the run-report JSON schema ships
in docs/report_schema.json.  All numeric output uses 17 significant digits so
parsing recovers coordinates bit-for-bit.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .bishop import Filament
from .ingest import Dataset

SCHEMA_VERSION = 1

# Fixed categorical palette; entries cycle for more than ten labels.
PALETTE = [
    (31, 119, 180),
    (255, 127, 14),
    (44, 160, 44),
    (214, 39, 40),
    (148, 103, 189),
    (140, 86, 75),
    (227, 119, 194),
    (127, 127, 127),
    (188, 189, 34),
    (23, 190, 207),
]


class ExportError(ValueError):
    """Nothing to write or inconsistent geometry."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def label_colors(labels, count: int) -> list[tuple[int, int, int]]:
    """Per-item palette colors; unlabeled input maps everything to entry 0."""
    if labels is None:
        return [PALETTE[0]] * count
    order: dict[str, int] = {}
    for lab in labels:
        if lab not in order:
            order[lab] = len(order)
    return [PALETTE[order[lab] % len(PALETTE)] for lab in labels]


def write_ply(filaments: list[Filament], labels, path) -> None:
    """ASCII PLY: colored vertices plus edges linking consecutive points
    within each filament."""
    if not filaments:
        raise ExportError("no filaments to write")
    counts = {f.points.shape[0] for f in filaments}
    if len(counts) != 1:
        raise ExportError(f"filaments have differing step counts: {sorted(counts)}")
    per = counts.pop()
    colors = label_colors(labels, len(filaments))
    n_vertices = len(filaments) * per
    n_edges = len(filaments) * (per - 1)
    lines = [
        "ply",
        "format ascii 1.0",
        f"element vertex {n_vertices}",
        "property float x",
        "property float y",
        "property float z",
        "property uchar red",
        "property uchar green",
        "property uchar blue",
        f"element edge {n_edges}",
        "property int vertex1",
        "property int vertex2",
        "end_header",
    ]
    for fil, (r, g, b) in zip(filaments, colors):
        for p in fil.points:
            lines.append(f"{_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])} {r} {g} {b}")
    for i in range(len(filaments)):
        base = i * per
        for j in range(per - 1):
            lines.append(f"{base + j} {base + j + 1}")
    _write_text(path, "\n".join(lines) + "\n")


def write_curves_json(items, labels, path) -> None:
    """One JSON document holding every curve; ``kind`` is "andrews" for 2-D
    plane-curve samples and "filament" for 3-D polylines."""
    items = list(items)
    if not items:
        raise ExportError("no curves to write")
    if isinstance(items[0], Filament):
        kind = "filament"
        point_sets = [f.points for f in items]
    else:
        kind = "andrews"
        point_sets = [c.points for c in items]
    dims = {p.shape[1] for p in point_sets}
    if len(dims) != 1:
        raise ExportError("mixed point dimensions")
    samples = point_sets[0].shape[0]
    if labels is None:
        labels = [None] * len(items)
    curves = []
    for lab, pts in zip(labels, point_sets):
        rows = ", ".join(
            "[" + ", ".join(_fmt(v) for v in p) + "]" for p in np.asarray(pts)
        )
        curves.append((lab, rows))
    body = ",\n".join(
        f'    {{"label": {json.dumps(lab)}, "points": [{rows}]}}'
        for lab, rows in curves
    )
    doc = (
        "{\n"
        f'  "schema_version": {SCHEMA_VERSION},\n'
        f'  "kind": {json.dumps(kind)},\n'
        f'  "d": {dims.pop()},\n'
        f'  "n": {len(items)},\n'
        f'  "samples": {samples},\n'
        '  "curves": [\n' + body + "\n  ]\n}\n"
    )
    _write_text(path, doc)


@dataclass
class RunReport:
    """Everything needed to re-check a pipeline run."""

    dataset: dict
    map: dict
    metrics: dict
    filaments: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    tool_version: str = ""
    timestamp: str = ""

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dataset": self.dataset,
            "map": self.map,
            "metrics": self.metrics,
            "filaments": self.filaments,
            "config": self.config,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }


def report_timestamp() -> str:
    """ISO timestamp; honors SOURCE_DATE_EPOCH for reproducible output."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = float(epoch) if epoch else time.time()
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def write_report(report: RunReport, path) -> None:
    _write_text(path, json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n")


def write_csv(ds: Dataset, path) -> None:
    """Echo a Dataset back to the points-as-rows CSV layout it came from."""
    d, n = ds.values.shape
    names = ds.feature_names or [f"f{i}" for i in range(d)]
    header = list(names) + (["label"] if ds.labels is not None else [])
    lines = [",".join(header)]
    for j in range(n):
        cells = [_fmt(v) for v in ds.values[:, j]]
        if ds.labels is not None:
            cells.append(str(ds.labels[j]))
        lines.append(",".join(cells))
    _write_text(path, "\n".join(lines) + "\n")


def _write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc}") from exc
