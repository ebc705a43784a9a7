"""CSV loading and per-feature standardization.

Data files store one data point per row; internally the dataset is kept
column-major (features x points) so that every downstream matrix identity
reads the same way it is usually written.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace

import numpy as np


class IngestError(ValueError):
    """Malformed or unreadable input table."""


@dataclass(frozen=True)
class Standardization:
    """Record of the transform applied to each feature row.

    ``mean`` and ``scale`` hold the values actually subtracted/divided so the
    transform is exactly invertible.  ``ddof=1`` records the sample-variance
    convention used for the z-score scale.
    """

    policy: str = "none"  # none | center | zscore
    mean: np.ndarray | None = None
    scale: np.ndarray | None = None
    ddof: int = 1
    constant_rows: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "mean": None if self.mean is None else [float(m) for m in self.mean],
            "scale": None if self.scale is None else [float(s) for s in self.scale],
            "ddof": self.ddof,
            "constant_rows": list(self.constant_rows),
        }


@dataclass(frozen=True)
class Dataset:
    """A d x N column-major data matrix with optional labels."""

    values: np.ndarray
    labels: list[str] | None = None
    feature_names: list[str] | None = None
    standardization: Standardization = field(default_factory=Standardization)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise IngestError(f"expected a 2-d matrix, got shape {values.shape}")
        d, n = values.shape
        if d < 1 or n < 1:
            raise IngestError("empty dataset")
        if not np.all(np.isfinite(values)):
            raise IngestError("dataset contains non-finite entries")
        object.__setattr__(self, "values", values)
        if self.labels is not None and len(self.labels) != n:
            raise IngestError(f"{len(self.labels)} labels for {n} points")
        if self.feature_names is not None and len(self.feature_names) != d:
            raise IngestError(f"{len(self.feature_names)} names for {d} features")

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @property
    def n_points(self) -> int:
        return self.values.shape[1]


def load_csv(
    path,
    delimiter: str = ",",
    has_header: bool = True,
    label_column: str | int | None = None,
) -> Dataset:
    """Read a rectangular numeric table; rows become columns of the Dataset.

    ``label_column`` may be a header name (requires ``has_header``) or a
    0-based column index; that column is stripped from the numeric block.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise IngestError(f"{path}: empty table")

    header = None
    if has_header:
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        if not rows:
            raise IngestError(f"{path}: header but no data rows")

    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise IngestError(f"{path}: ragged rows (widths {sorted(widths)})")
    width = widths.pop()

    label_idx = None
    if label_column is not None:
        if isinstance(label_column, int):
            label_idx = label_column
        else:
            if header is None:
                raise IngestError("label_column by name requires a header row")
            try:
                label_idx = header.index(label_column)
            except ValueError:
                raise IngestError(f"no column named {label_column!r}") from None
        if not 0 <= label_idx < width:
            raise IngestError(f"label column index {label_idx} out of range")

    feature_idx = [j for j in range(width) if j != label_idx]
    if not feature_idx:
        raise IngestError(f"{path}: no feature columns left")

    labels = None
    if label_idx is not None:
        labels = [row[label_idx].strip() for row in rows]

    values = np.empty((len(feature_idx), len(rows)))
    for i, row in enumerate(rows):
        for k, j in enumerate(feature_idx):
            cell = row[j].strip()
            try:
                values[k, i] = float(cell)
            except ValueError:
                raise IngestError(
                    f"{path}: non-numeric cell {cell!r} at row {i + 1}, column {j + 1}"
                ) from None

    feature_names = None
    if header is not None:
        feature_names = [header[j] for j in feature_idx]

    return Dataset(values=values, labels=labels, feature_names=feature_names)


def standardize(
    ds: Dataset, policy: str = "zscore", constant_row_policy: str = "error"
) -> Dataset:
    """Apply a per-feature affine transform; records exact means and scales.

    Scale uses the sample standard deviation (ddof=1).  A constant feature
    under zscore either raises or is mapped to zeros, per
    ``constant_row_policy``.
    """
    if policy not in ("none", "center", "zscore"):
        raise ValueError(f"unknown policy {policy!r}")
    if constant_row_policy not in ("error", "zero"):
        raise ValueError(f"unknown constant_row_policy {constant_row_policy!r}")
    if policy == "none":
        return replace(ds, standardization=Standardization(policy="none"))

    values = ds.values
    d, n = values.shape
    mean = values.mean(axis=1)
    scale = np.ones(d)
    constant = ()
    if policy == "zscore":
        std = values.std(axis=1, ddof=1) if n > 1 else np.zeros(d)
        constant = tuple(int(i) for i in np.flatnonzero(std == 0.0))
        if constant and constant_row_policy == "error":
            raise ValueError(f"constant feature rows under zscore: {constant}")
        scale = np.where(std == 0.0, 1.0, std)

    out = (values - mean[:, None]) / scale[:, None]
    record = Standardization(
        policy=policy, mean=mean, scale=scale, constant_rows=constant
    )
    return replace(ds, values=out, standardization=record)
