"""External clustering-quality indices: NMI, ACC and AMI.

All three reduce to the contingency table of the two label vectors, so they
are invariant under any relabeling of either side. Conventions pinned here:
natural-log entropies, geometric-mean normalization for NMI, arithmetic-mean
denominator with an exactly-summed hypergeometric expectation for AMI, and
0 * log 0 == 0 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.special import gammaln

from .exceptions import InputError


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray  # r x c joint counts
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    n: int


def _first_appearance_index(labels: np.ndarray) -> np.ndarray:
    """Cluster index per sample, numbered by order of first appearance.

    Unlike value-sorted indexing, this ordering survives any relabeling, so
    downstream float summations run in the identical order and the indices
    are bitwise invariant under label permutations.
    """
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.intp)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return rank[inverse]


def contingency_table(a, b) -> ContingencyTable:
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.size != b.size:
        raise InputError(f"label vectors differ in length: {a.size} vs {b.size}")
    if a.size < 1:
        raise InputError("label vectors must be nonempty")
    ai = _first_appearance_index(a)
    bi = _first_appearance_index(b)
    r, c = int(ai.max()) + 1, int(bi.max()) + 1
    counts = np.bincount(ai * c + bi, minlength=r * c).reshape(r, c)
    return ContingencyTable(counts, counts.sum(axis=1), counts.sum(axis=0), int(a.size))


def _entropy(marginals: np.ndarray, n: int) -> float:
    p = marginals[marginals > 0] / n
    return float(-(p * np.log(p)).sum())


def _mutual_information(table: ContingencyTable) -> float:
    n = table.n
    rows, cols = np.nonzero(table.counts)
    nij = table.counts[rows, cols].astype(np.float64)
    ai = table.row_marginals[rows].astype(np.float64)
    bj = table.col_marginals[cols].astype(np.float64)
    terms = (nij / n) * np.log((nij * n) / (ai * bj))
    return max(float(terms.sum()), 0.0)


def _is_bijection(table: ContingencyTable) -> bool:
    nonzero = table.counts > 0
    return (table.counts.shape[0] == table.counts.shape[1]
            and bool(np.all(nonzero.sum(axis=1) == 1))
            and bool(np.all(nonzero.sum(axis=0) == 1)))


def nmi(a, b) -> float:
    """Normalized mutual information, I/sqrt(H(a) H(b)); 1 when both sides
    are single-cluster, 0 when exactly one is."""
    table = contingency_table(a, b)
    h_a = _entropy(table.row_marginals, table.n)
    h_b = _entropy(table.col_marginals, table.n)
    if h_a == 0.0 and h_b == 0.0:
        return 1.0
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    if _is_bijection(table):
        return 1.0  # identical up to relabeling, exactly
    value = _mutual_information(table) / np.sqrt(h_a * h_b)
    return float(min(max(value, 0.0), 1.0))


def acc(pred, truth) -> float:
    """Best-matching accuracy: the largest fraction of agreeing samples over
    all one-to-one assignments of predicted to true labels."""
    table = contingency_table(pred, truth)
    counts = table.counts
    size = max(counts.shape)
    padded = np.zeros((size, size), dtype=counts.dtype)
    padded[:counts.shape[0], :counts.shape[1]] = counts
    rows, cols = linear_sum_assignment(padded, maximize=True)
    return float(padded[rows, cols].sum() / table.n)


def expected_mutual_information(table: ContingencyTable) -> float:
    """E[I] under the hypergeometric model of random tables with the same
    marginals, by exact summation over the support (no sampling)."""
    n = table.n
    log_fact = gammaln(np.arange(n + 1, dtype=np.float64) + 1.0)
    total = 0.0
    for ai in table.row_marginals:
        ai = int(ai)
        for bj in table.col_marginals:
            bj = int(bj)
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.intp)
            log_p = (log_fact[ai] + log_fact[bj] + log_fact[n - ai] + log_fact[n - bj]
                     - log_fact[n] - log_fact[nij] - log_fact[ai - nij]
                     - log_fact[bj - nij] - log_fact[n - ai - bj + nij])
            terms = (nij / n) * np.log((nij * n) / (float(ai) * bj))
            total += float((np.exp(log_p) * terms).sum())
    return total


def ami(a, b) -> float:
    """Adjusted mutual information, (I - E[I]) / (mean(H) - E[I]); 0 when the
    denominator vanishes. Can be negative for worse-than-chance agreement."""
    table = contingency_table(a, b)
    h_a = _entropy(table.row_marginals, table.n)
    h_b = _entropy(table.col_marginals, table.n)
    emi = expected_mutual_information(table)
    denominator = 0.5 * (h_a + h_b) - emi
    if denominator == 0.0:
        return 0.0
    if _is_bijection(table):
        return 1.0
    return float((_mutual_information(table) - emi) / denominator)
