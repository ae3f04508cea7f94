"""Deterministic datasets used across the suite.

galaxy_scene builds a 50-point layout whose merge history reproduces the
two-table walkthrough structure: seven groups of masses 16/15/2/2/10/3/2 form
in round 0, four connections with mass products 30/30/20/20 join them into
masses 17/17/16 in round 1, and two heavy connections (289 and 272) finish
the hierarchy. The interior spacing is tuned so the automatic cut removes
exactly the two heavy connections, leaving the 17/17/16 partition.
"""

import numpy as np

SQ15_83 = np.sqrt(15.83)  # gap between the two mass-17 groups
SQ14_50 = np.sqrt(14.50)  # gap between the mass-16 group and its neighbour


def _chain(start_x, gaps, y=0.0):
    xs = np.concatenate([[start_x], start_x + np.cumsum(gaps)])
    return np.column_stack([xs, np.full(xs.size, y)])


def galaxy_scene():
    """Returns (points, expected) for the 50-sample two-stage merge layout."""
    g16_gaps = [2.5, 2.2, 1.9, 1.5, 1.1, 0.8, 0.5, 0.3, 0.5, 0.8, 1.1, 1.5, 1.9, 2.2, 2.5]
    g15_gaps = [2.4, 2.0, 1.6, 1.2, 0.9, 0.6, 0.35, 0.2, 0.3, 0.4, 0.5, 0.6, 0.65, 0.7]
    g10_gaps = [0.7, 0.5, 0.3, 0.2, 0.3, 0.5, 0.7, 0.9, 1.1]

    g16 = _chain(0.0, g16_gaps)
    g15 = _chain(g16[-1, 0] + SQ14_50, g15_gaps)
    g2_left = _chain(g15[-1, 0] + 0.8, [0.3])
    g2_mid = _chain(g2_left[-1, 0] + SQ15_83, [0.3])
    g10 = _chain(g2_mid[-1, 0] + 0.8, g10_gaps)
    anchor_x = g10[4, 0]  # member with the smallest adjacent gaps
    g3 = np.array([[anchor_x, 1.0], [anchor_x, 1.3], [anchor_x, 1.7]])
    g2_right = _chain(g10[-1, 0] + 1.2, [0.3])

    points = np.vstack([g16, g15, g2_left, g2_mid, g10, g3, g2_right])
    expected = {
        "n": 50,
        "rounds": (50, 7, 3, 1),
        "round0_masses": sorted([16, 15, 2, 2, 10, 3, 2]),
        "late_mass_products": sorted([30, 30, 20, 20, 289, 272]),
        "heavy_mass_products": {289, 272},
        "final_sizes": sorted([16, 17, 17]),
    }
    return points, expected


def gaussian_blobs(sizes, centers, seed, sigma=1.0):
    """Isotropic blobs with their generating labels."""
    rng = np.random.default_rng(seed)
    points = np.vstack([rng.normal(center, sigma, size=(size, 2))
                        for size, center in zip(sizes, centers)])
    labels = np.repeat(np.arange(len(sizes)), sizes)
    return points, labels


def two_blobs(seed=11, sizes=(150, 150)):
    return gaussian_blobs(sizes, [(0.0, 0.0), (30.0, 0.0)], seed)


def three_blobs(seed=7, sizes=(120, 90, 140)):
    return gaussian_blobs(sizes, [(0.0, 0.0), (32.0, 0.0), (0.0, 32.0)], seed)
