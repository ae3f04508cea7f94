"""Two-dimensional views of a dataset for partition scatter plots.

For d <= 2 the raw coordinates pass through unchanged (a single feature gets
a zero second axis). Higher-dimensional data is reduced to its top two
principal component scores with a fixed sign convention so the projection is
reproducible.
"""

from __future__ import annotations

import numpy as np

from .model import Dataset


def project_2d(data: Dataset) -> np.ndarray:
    """n x 2 coordinates for plotting."""
    pts = data.points
    if data.d == 2:
        return pts.copy()
    if data.d == 1:
        return np.column_stack([pts[:, 0], np.zeros(data.n)])
    centered = pts - pts.mean(axis=0)
    cov = centered.T @ centered / max(data.n - 1, 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    top2 = eigenvectors[:, np.argsort(eigenvalues)[::-1][:2]]
    # sign convention: the largest-magnitude loading of each component is positive
    for j in range(top2.shape[1]):
        lead = np.argmax(np.abs(top2[:, j]))
        if top2[lead, j] < 0:
            top2[:, j] = -top2[:, j]
    return centered @ top2
