"""Multi-dimensional dynamic time warping with exact path recovery.

The distance between two series is the square root of the minimal sum of
squared Euclidean ground distances over all admissible alignment paths.
Costs are accumulated in squared space and the square root is applied once
at the end, so the dynamic program and the exhaustive oracle in
:func:`brute_force_dtw` produce bit-identical cumulative sums.

All functions are pure and all value types are immutable after
construction, so results and inputs can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MultiSeries",
    "AlignmentPath",
    "DtwResult",
    "ground_distance",
    "dtw",
    "brute_force_dtw",
    "project_onto_reference",
    "path_is_admissible",
]


@dataclass(frozen=True, eq=False)
class MultiSeries:
    """A ``length x dims`` matrix of observations, rows ordered by time.

    One-dimensional input is treated as a single-channel series. Entries
    must be finite; both dimensions must be at least 1. The stored array
    is a read-only copy.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, np.newaxis]
        if arr.ndim != 2:
            raise ValueError(f"series must be 1-D or 2-D, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"series must be non-empty, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("series contains non-finite entries")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dims(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class AlignmentPath:
    """Ordered 0-based ``(i, j)`` index pairs aligning two series.

    Admissible paths start at ``(0, 0)``, end at ``(M-1, N-1)``, advance
    each index by at most one per step, never repeat a pair, and have
    between ``max(M, N)`` and ``M + N - 1`` pairs.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("alignment path must contain at least one pair")
        object.__setattr__(
            self, "pairs", tuple((int(i), int(j)) for i, j in self.pairs)
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def transposed(self) -> "AlignmentPath":
        return AlignmentPath(tuple((j, i) for i, j in self.pairs))


@dataclass(frozen=True)
class DtwResult:
    """Minimal alignment cost and one optimal path achieving it."""

    distance: float
    path: AlignmentPath


def path_is_admissible(pairs, m: int, n: int) -> bool:
    """Check boundary, monotone-step and length constraints for a path."""
    pairs = list(pairs)
    p = len(pairs)
    if p < max(m, n) or p > m + n - 1:
        return False
    if pairs[0] != (0, 0) or pairs[-1] != (m - 1, n - 1):
        return False
    for (i0, j0), (i1, j1) in zip(pairs, pairs[1:]):
        di, dj = i1 - i0, j1 - j0
        if di not in (0, 1) or dj not in (0, 1) or (di, dj) == (0, 0):
            return False
    return True


def _coerce(series) -> MultiSeries:
    return series if isinstance(series, MultiSeries) else MultiSeries(series)


def ground_distance(a, b) -> float:
    """Euclidean distance between two equal-dimension observation vectors."""
    av = np.asarray(a, dtype=float).ravel()
    bv = np.asarray(b, dtype=float).ravel()
    if av.shape != bv.shape:
        raise ValueError(
            f"dimension mismatch: {av.shape[0]} vs {bv.shape[0]}"
        )
    if av.size < 1:
        raise ValueError("vectors must have at least one dimension")
    if not (np.isfinite(av).all() and np.isfinite(bv).all()):
        raise ValueError("vectors contain non-finite entries")
    return math.sqrt(float(np.sum((av - bv) ** 2)))


def _squared_cost_matrix(x: MultiSeries, y: MultiSeries) -> np.ndarray:
    """Pairwise squared Euclidean ground distances, shape (M, N)."""
    diff = x.values[:, np.newaxis, :] - y.values[np.newaxis, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _check_pair(x: MultiSeries, y: MultiSeries) -> None:
    if x.dims != y.dims:
        raise ValueError(f"dimension mismatch: {x.dims} vs {y.dims}")


def dtw(x, y) -> DtwResult:
    """Optimal alignment of two series by dynamic programming.

    Cumulative squared costs follow
    ``D[i][j] = d_ij^2 + min(D[i-1][j], D[i][j-1], D[i-1][j-1])`` and the
    distance is ``sqrt(D[M-1][N-1])``. Backtracking breaks ties preferring
    the diagonal, then advancing the first index, then the second, which
    makes the returned path deterministic.

    Args:
        x: first series (``MultiSeries`` or array-like).
        y: second series with the same number of channels.

    Returns:
        DtwResult with the minimal distance and one optimal path.
    """
    xs, ys = _coerce(x), _coerce(y)
    _check_pair(xs, ys)
    s = _squared_cost_matrix(xs, ys).tolist()
    m, n = xs.length, ys.length

    acc = [[0.0] * n for _ in range(m)]
    row0, s0 = acc[0], s[0]
    row0[0] = s0[0]
    for j in range(1, n):
        row0[j] = row0[j - 1] + s0[j]
    for i in range(1, m):
        cur, prev, si = acc[i], acc[i - 1], s[i]
        cur[0] = prev[0] + si[0]
        for j in range(1, n):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = si[j] + best

    i, j = m - 1, n - 1
    rev = [(i, j)]
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag, up, left = acc[i - 1][j - 1], acc[i - 1][j], acc[i][j - 1]
            best = min(diag, up, left)
            if diag == best:
                i, j = i - 1, j - 1
            elif up == best:
                i -= 1
            else:
                j -= 1
        rev.append((i, j))
    rev.reverse()
    return DtwResult(math.sqrt(acc[m - 1][n - 1]), AlignmentPath(tuple(rev)))


#: Enumeration guard: series longer than this are rejected by the oracle.
BRUTE_FORCE_MAX_LENGTH = 8


def brute_force_dtw(x, y) -> DtwResult:
    """Exhaustive-enumeration oracle for :func:`dtw`, for short series only.

    Every admissible path is enumerated and evaluated; the minimum is
    returned. Intended for verification in tests; both series must have at
    most :data:`BRUTE_FORCE_MAX_LENGTH` time steps.
    """
    xs, ys = _coerce(x), _coerce(y)
    _check_pair(xs, ys)
    m, n = xs.length, ys.length
    if m > BRUTE_FORCE_MAX_LENGTH or n > BRUTE_FORCE_MAX_LENGTH:
        raise ValueError(
            f"series too long for exhaustive enumeration: {m}x{n} "
            f"(limit {BRUTE_FORCE_MAX_LENGTH})"
        )
    s = _squared_cost_matrix(xs, ys).tolist()

    best_cost = math.inf
    best_path: list[tuple[int, int]] | None = None
    path: list[tuple[int, int]] = []

    def extend(i: int, j: int, cost: float) -> None:
        nonlocal best_cost, best_path
        cost = cost + s[i][j]
        path.append((i, j))
        if i == m - 1 and j == n - 1:
            if cost < best_cost:
                best_cost = cost
                best_path = list(path)
        else:
            for di, dj in ((1, 1), (1, 0), (0, 1)):
                ni, nj = i + di, j + dj
                if ni < m and nj < n:
                    extend(ni, nj, cost)
        path.pop()

    extend(0, 0, 0.0)
    assert best_path is not None
    return DtwResult(math.sqrt(best_cost), AlignmentPath(tuple(best_path)))


def project_onto_reference(path: AlignmentPath, test, ref_length: int) -> MultiSeries:
    """Collapse an aligned test series onto the reference timeline.

    Row ``i`` of the output is the mean of all test rows ``j`` with
    ``(i, j)`` on the path, so the result has exactly ``ref_length`` rows.
    With the diagonal path this is the identity.

    Args:
        path: alignment with reference indices first, test indices second.
        test: the series to be synchronized.
        ref_length: number of rows of the reference series.

    Raises:
        ValueError: if the path is not admissible for the stated lengths.
    """
    ts = _coerce(test)
    if ref_length < 1:
        raise ValueError("reference length must be positive")
    if not path_is_admissible(path.pairs, ref_length, ts.length):
        raise ValueError(
            f"path is not admissible for lengths ({ref_length}, {ts.length})"
        )
    sums = np.zeros((ref_length, ts.dims))
    counts = np.zeros(ref_length)
    for i, j in path.pairs:
        sums[i] += ts.values[j]
        counts[i] += 1
    return MultiSeries(sums / counts[:, np.newaxis])
