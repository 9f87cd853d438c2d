"""
Change-point estimation by maximizing the weighted Jensen-Shannon divergence
between the left and right parts of a sequence.

For a cursor ``k`` in ``2..n`` the sequence splits into positions
``1..k-1`` and ``k..n`` with weights ``(k-1)/n`` and ``(n+1-k)/n``. For each
catalog observable the outcome frequencies on both sides are compared; an
observable missing from one side contributes zero. The profile maximum over
observables is scanned and its first argmax is the estimate.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .infodiv import jsd_weighted
from .seqgen import OutcomeSequence

WEIGHTS_DESCRIPTION = "pi1(k) = (k-1)/n, pi2(k) = (n+1-k)/n"


def cursor_weights(k: int, n: int) -> tuple:
    """Weights of the left and right parts at cursor ``k``."""
    if not 2 <= k <= n:
        raise ValueError(f"cursor k={k} outside 2..{n}")
    return (k - 1) / n, (n + 1 - k) / n


class PrefixCounts:
    """
    Cumulative outcome counts per observable.

    ``table(r)[t, j]`` is the number of outcome ``j`` of observable ``r``
    among the first ``t`` positions, for ``t = 0..n``.
    """

    def __init__(self, seq: OutcomeSequence):
        self.n = seq.n
        self._tables = []
        for r, alphabet in enumerate(seq.alphabets):
            onehot = np.zeros((self.n + 1, len(alphabet)), dtype=np.int64)
            pos = np.flatnonzero(seq.obs_index == r)
            onehot[pos + 1, seq.outcome_index[pos]] = 1
            self._tables.append(np.cumsum(onehot, axis=0))

    def table(self, r: int) -> np.ndarray:
        return self._tables[r]

    def left(self, r: int, k: int) -> np.ndarray:
        """Counts among positions ``1..k-1``."""
        return self._tables[r][k - 1]

    def right(self, r: int, k: int) -> np.ndarray:
        """Counts among positions ``k..n``."""
        return self._tables[r][self.n] - self._tables[r][k - 1]

    def total(self, r: int) -> int:
        return int(self._tables[r][self.n].sum())


def _frequencies(counts):
    counts = np.asarray(counts)
    totals = counts.sum(axis=-1)
    m = counts.shape[-1]
    out = np.full(counts.shape, 1.0 / m)
    np.divide(counts, totals[..., None], out=out, where=totals[..., None] > 0)
    return out, totals > 0


def estimated_distributions(seq: OutcomeSequence, k: int, r: int):
    """
    Empirical outcome distributions of observable ``r`` left and right of
    cursor ``k``, or ``None`` when either side has no ``r`` measurements.
    """
    n = seq.n
    if not 2 <= k <= n:
        raise ValueError(f"cursor k={k} outside 2..{n}")
    m = len(seq.alphabets[r])
    left = seq.outcome_index[:k - 1][seq.obs_index[:k - 1] == r]
    right = seq.outcome_index[k - 1:][seq.obs_index[k - 1:] == r]
    if left.size == 0 or right.size == 0:
        return None
    return (np.bincount(left, minlength=m) / left.size,
            np.bincount(right, minlength=m) / right.size)


@dataclass(frozen=True, eq=False)
class JsdProfile:
    """
    Divergence profile over cursors ``k = 2..n``.

    ``values[r, k-2]`` holds the divergence for observable ``labels[r]`` and
    ``max_curve[k-2]`` the maximum over observables.
    """

    n: int
    labels: tuple
    values: np.ndarray = field(repr=False)
    max_curve: np.ndarray = field(init=False, repr=False)
    argmax_k: int = field(init=False)
    argmax_value: float = field(init=False)
    argmax_observable: str = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(self.labels), self.n - 1):
            raise ValueError("profile values must have shape (n_observables, n - 1)")
        values.setflags(write=False)
        max_curve = values.max(axis=0)
        max_curve.setflags(write=False)
        i = int(np.argmax(max_curve))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "max_curve", max_curve)
        object.__setattr__(self, "argmax_k", i + 2)
        object.__setattr__(self, "argmax_value", float(max_curve[i]))
        object.__setattr__(self, "argmax_observable",
                           self.labels[int(np.argmax(values[:, i]))])

    @property
    def ks(self) -> np.ndarray:
        return np.arange(2, self.n + 1)

    @property
    def per_observable(self) -> dict:
        return dict(zip(self.labels, self.values))

    def at(self, k: int) -> float:
        return float(self.max_curve[k - 2])


def jsd_profile(seq: OutcomeSequence) -> JsdProfile:
    """
    Divergence profile of ``seq`` for every cursor and catalog observable.

    Runs in ``O(n * sum_r m_r)`` using prefix counts.
    """
    n = seq.n
    if n < 2:
        raise ValueError("n >= 2 required")
    counts = PrefixCounts(seq)
    ks = np.arange(2, n + 1)
    pi1 = (ks - 1) / n
    pi2 = (n + 1 - ks) / n
    values = np.zeros((len(seq.labels), n - 1))
    for r in range(len(seq.labels)):
        table = counts.table(r)
        left = table[1:n]
        right = table[n] - left
        p1, ok1 = _frequencies(left)
        p2, ok2 = _frequencies(right)
        v = jsd_weighted(p1, p2, (pi1, pi2))
        values[r] = np.where(ok1 & ok2, v, 0.0)
    return JsdProfile(n, seq.labels, values)


@dataclass(frozen=True)
class SegmentationResult:
    estimated_changepoint: int
    profile: JsdProfile = field(repr=False)
    no_signal: bool = False
    weights_used: str = WEIGHTS_DESCRIPTION

    @property
    def argmax_value(self) -> float:
        return self.profile.argmax_value

    @property
    def argmax_observable(self) -> str:
        return self.profile.argmax_observable


def estimate_changepoint(seq: OutcomeSequence) -> SegmentationResult:
    """
    Single change-point estimate: the smallest cursor maximizing the profile.

    An identically zero profile yields ``k = 2`` with ``no_signal`` set.
    """
    profile = jsd_profile(seq)
    return SegmentationResult(profile.argmax_k, profile, no_signal=profile.argmax_value == 0.0)


def segment_recursive(seq: OutcomeSequence, threshold: float = 0.01,
                      min_segment: int = 50) -> list:
    """
    Multiple change points by binary recursion.

    A window is split at its estimated change point when the profile maximum
    is at least ``threshold`` nats and both parts keep ``min_segment``
    entries; both parts are then searched again.

    Returns
    -------
    list of int
        Sorted 1-based change points of ``seq``.
    """
    if min_segment < 2:
        raise ValueError("min_segment must be at least 2")
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    found = []
    stack = [(0, seq.n)]
    while stack:
        start, stop = stack.pop()
        if stop - start < 2 * min_segment:
            continue
        result = estimate_changepoint(seq.window(start, stop))
        if result.no_signal or result.argmax_value < threshold:
            continue
        split = start + result.estimated_changepoint - 1
        if split - start < min_segment or stop - split < min_segment:
            continue
        found.append(split + 1)
        stack.append((start, split))
        stack.append((split, stop))
    return sorted(found)


# -- export -------------------------------------------------------------------

def format_profile_csv(profile: JsdProfile) -> str:
    """CSV with header ``k,<labels>,jsd_max``; values to 12 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", *profile.labels, "jsd_max"])
    for i, k in enumerate(profile.ks):
        writer.writerow([int(k), *(f"{v:.12g}" for v in profile.values[:, i]),
                         f"{profile.max_curve[i]:.12g}"])
    return buf.getvalue()


def write_profile_csv(profile: JsdProfile, path) -> None:
    Path(path).write_text(format_profile_csv(profile), encoding="utf-8")


def read_profile_csv(path) -> JsdProfile:
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    if header[0] != "k" or header[-1] != "jsd_max":
        raise ValueError("not a profile CSV")
    data = np.array([[float(x) for x in row] for row in body])
    ks = data[:, 0].astype(int)
    if not np.array_equal(ks, np.arange(2, len(ks) + 2)):
        raise ValueError("profile CSV rows must cover k = 2..n in order")
    return JsdProfile(len(ks) + 1, tuple(header[1:-1]), data[:, 1:-1].T)


def summary_dict(result: SegmentationResult, seed=None, **extra) -> dict:
    return {
        "estimated_changepoint": int(result.estimated_changepoint),
        "argmax_value": float(result.argmax_value),
        "argmax_observable": result.argmax_observable,
        "no_signal": bool(result.no_signal),
        "seed": seed,
        **extra,
    }
