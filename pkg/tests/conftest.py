import csv

import numpy as np
import pytest
from sklearn.datasets import load_iris


@pytest.fixture(scope="session")
def iris_csv(tmp_path_factory):
    """Iris as a points-as-rows CSV with a species label column (d=4, N=150)."""
    data = load_iris()
    path = tmp_path_factory.mktemp("data") / "iris.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([name.replace(" ", "_") for name in data.feature_names] + ["species"])
        for row, target in zip(data.data, data.target):
            writer.writerow([f"{float(v)}" for v in row] + [data.target_names[target]])
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def write_csv(path, rows, header=None):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if header is not None:
            writer.writerow(header)
        writer.writerows(rows)
    return path
