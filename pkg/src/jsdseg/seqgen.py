"""
Seeded generation of outcome sequences.

A quantum generated sequence measures observable ``pattern[i]`` of a
catalog on a fresh copy of the state active at position ``i``. A classical
generated sequence draws i.i.d. symbols from piecewise-constant
distributions. Both consume exactly one uniform variate per entry, drawn
from ``numpy.random.default_rng(seed)``, and map it to an outcome by
inverse CDF in alphabet order.
"""
from __future__ import annotations

import hashlib
import io
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .infodiv import as_distribution
from .qmath import Observable, QuantumState, born_distribution, parse_observable


@dataclass(frozen=True, eq=False)
class ObservableProgram:
    """A catalog of observables and the length-``n`` list of catalog indices to measure."""

    catalog: tuple
    pattern: np.ndarray = field(repr=False)

    def __post_init__(self):
        catalog = tuple(self.catalog)
        pattern = np.asarray(self.pattern, dtype=np.intp).copy()
        if not catalog:
            raise ValueError("observable catalog is empty")
        if pattern.ndim != 1 or pattern.size < 2:
            raise ValueError("a program needs at least two measurements")
        if pattern.min() < 0 or pattern.max() >= len(catalog):
            raise ValueError("pattern refers to an observable outside the catalog")
        if len({o.dim for o in catalog}) != 1:
            raise ValueError("catalog observables act on different Hilbert spaces")
        pattern.setflags(write=False)
        object.__setattr__(self, "catalog", catalog)
        object.__setattr__(self, "pattern", pattern)

    @classmethod
    def cyclic(cls, catalog, n: int) -> "ObservableProgram":
        """Alternate the catalog observables in order, stopping after ``n`` entries."""
        return cls(catalog, np.arange(n) % len(catalog))

    @property
    def n(self) -> int:
        return self.pattern.size

    @property
    def labels(self) -> tuple:
        return tuple(o.label for o in self.catalog)


@dataclass(frozen=True, eq=False)
class StateSchedule:
    """Piecewise-constant sequence of states, as ``(state, length)`` segments."""

    segments: tuple

    def __post_init__(self):
        segments = tuple((s, int(l)) for s, l in self.segments)
        if not segments:
            raise ValueError("schedule has no segments")
        for state, length in segments:
            if not isinstance(state, QuantumState):
                raise TypeError("schedule entries must be QuantumState instances")
            if length < 1:
                raise ValueError("segment lengths must be positive")
        object.__setattr__(self, "segments", segments)

    @classmethod
    def two_state(cls, rho1, rho2, n: int, l1: int) -> "StateSchedule":
        if not 1 <= l1 < n:
            raise ValueError("need 1 <= l1 < n")
        return cls(((rho1, l1), (rho2, n - l1)))

    @property
    def n(self) -> int:
        return sum(l for _, l in self.segments)

    @property
    def changepoints(self) -> list:
        """1-based positions where a new state takes over."""
        return [int(c) + 1 for c in np.cumsum([l for _, l in self.segments])[:-1]]

    def bounds(self):
        """Yield ``(start, stop, state)`` with 0-based half-open positions."""
        start = 0
        for state, length in self.segments:
            yield start, start + length, state
            start += length


@dataclass(frozen=True, eq=False)
class OutcomeSequence:
    """
    A realized symbolic sequence.

    Entry ``i`` was produced by catalog observable ``obs_index[i]`` and took
    the value ``alphabets[obs_index[i]][outcome_index[i]]``.
    """

    obs_index: np.ndarray = field(repr=False)
    outcome_index: np.ndarray = field(repr=False)
    labels: tuple
    alphabets: tuple = field(repr=False)
    seed: int | None = None
    spec_digest: str = ""

    def __post_init__(self):
        obs = np.asarray(self.obs_index, dtype=np.intp).copy()
        out = np.asarray(self.outcome_index, dtype=np.intp).copy()
        labels = tuple(self.labels)
        alphabets = tuple(tuple(float(v) for v in a) for a in self.alphabets)
        if obs.shape != out.shape or obs.ndim != 1:
            raise ValueError("observable and outcome index arrays must be 1-D and equal length")
        if len(labels) != len(alphabets):
            raise ValueError("one alphabet per catalog label required")
        if len(set(labels)) != len(labels):
            raise ValueError("catalog labels must be unique")
        if obs.size:
            if obs.min() < 0 or obs.max() >= len(labels):
                raise ValueError("observable index outside the catalog")
            sizes = np.array([len(a) for a in alphabets])
            if out.min() < 0 or np.any(out >= sizes[obs]):
                raise ValueError("outcome index outside its observable's alphabet")
        obs.setflags(write=False)
        out.setflags(write=False)
        object.__setattr__(self, "obs_index", obs)
        object.__setattr__(self, "outcome_index", out)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "alphabets", alphabets)

    def __len__(self):
        return self.obs_index.size

    @property
    def n(self) -> int:
        return self.obs_index.size

    def __eq__(self, other):
        if not isinstance(other, OutcomeSequence):
            return NotImplemented
        return (self.labels == other.labels and self.alphabets == other.alphabets
                and self.seed == other.seed and self.spec_digest == other.spec_digest
                and np.array_equal(self.obs_index, other.obs_index)
                and np.array_equal(self.outcome_index, other.outcome_index))

    __hash__ = None

    def values(self) -> np.ndarray:
        """Measured eigenvalues (or symbol values) as floats."""
        lut = [np.asarray(a) for a in self.alphabets]
        return np.array([lut[r][j] for r, j in zip(self.obs_index, self.outcome_index)])

    def window(self, start: int, stop: int) -> "OutcomeSequence":
        """Sub-sequence of 0-based positions ``start:stop`` on the same catalog."""
        return OutcomeSequence(self.obs_index[start:stop], self.outcome_index[start:stop],
                               self.labels, self.alphabets, self.seed, self.spec_digest)

    def reversed(self) -> "OutcomeSequence":
        return OutcomeSequence(self.obs_index[::-1], self.outcome_index[::-1],
                               self.labels, self.alphabets, self.seed, self.spec_digest)


def _inverse_cdf(p: np.ndarray, u):
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    return np.searchsorted(cdf, u, side="right")


def sample_outcome(state: QuantumState, obs: Observable, rng: np.random.Generator) -> int:
    """Draw one outcome index of ``obs`` measured on ``state``, using one uniform variate."""
    p = born_distribution(state, obs)
    return int(_inverse_cdf(p, rng.random()))


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part if isinstance(part, bytes) else repr(part).encode())
    return h.hexdigest()[:16]


def generate_quantum_sequence(program: ObservableProgram, schedule: StateSchedule,
                              seed: int) -> OutcomeSequence:
    """
    Simulate measuring ``program`` against ``schedule``.

    Equivalent to calling :func:`sample_outcome` position by position on one
    ``default_rng(seed)`` stream, but vectorized per (segment, observable).
    """
    if program.n != schedule.n:
        raise ValueError(f"program length {program.n} does not match schedule length {schedule.n}")
    dim = program.catalog[0].dim
    for state, _ in schedule.segments:
        if state.dim != dim:
            raise ValueError(f"state dimension {state.dim} does not match observable dimension {dim}")

    u = np.random.default_rng(seed).random(program.n)
    outcomes = np.empty(program.n, dtype=np.intp)
    for start, stop, state in schedule.bounds():
        pat = program.pattern[start:stop]
        for r, obs in enumerate(program.catalog):
            mask = pat == r
            if mask.any():
                p = born_distribution(state, obs)
                outcomes[start:stop][mask] = _inverse_cdf(p, u[start:stop][mask])

    digest = _digest(program.labels, program.pattern.tobytes(),
                     *[(s.rho.tobytes(), l) for s, l in schedule.segments])
    return OutcomeSequence(program.pattern, outcomes, program.labels,
                           [o.alphabet for o in program.catalog], seed, digest)


def generate_classical_sequence(segments, seed: int, label: str = "s",
                                alphabet=None) -> OutcomeSequence:
    """
    Draw a classical generated sequence from ``(distribution, length)`` segments.

    Symbols are tagged as outcomes of a single pseudo-observable ``label``
    whose alphabet defaults to ``0, 1, ..., m-1``.
    """
    segments = [(as_distribution(p), int(l)) for p, l in segments]
    m = segments[0][0].shape[-1]
    if any(p.shape != (m,) for p, _ in segments):
        raise ValueError("all segment distributions must be 1-D over one alphabet")
    if any(l < 1 for _, l in segments):
        raise ValueError("segment lengths must be positive")
    if alphabet is None:
        alphabet = tuple(float(j) for j in range(m))
    elif len(alphabet) != m:
        raise ValueError("alphabet size does not match the distributions")

    n = sum(l for _, l in segments)
    u = np.random.default_rng(seed).random(n)
    outcomes = np.empty(n, dtype=np.intp)
    start = 0
    for p, length in segments:
        outcomes[start:start + length] = _inverse_cdf(p, u[start:start + length])
        start += length
    digest = _digest(label, tuple(alphabet), *[(p.tobytes(), l) for p, l in segments])
    return OutcomeSequence(np.zeros(n, dtype=np.intp), outcomes, (label,), (tuple(alphabet),),
                           seed, digest)


# -- text format --------------------------------------------------------------

class SequenceFormatError(ValueError):
    """Malformed sequence file; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def format_sequence(seq: OutcomeSequence) -> str:
    """
    Serialize to the line format::

        # seed=42
        # program=X,Y,Z
        # digest=...
        # alphabet.X=-1.0;1.0
        X,1.0
        Y,-1.0
        ...

    Values are written with ``repr`` so they parse back bit-exactly.
    """
    buf = io.StringIO()
    buf.write(f"# seed={'' if seq.seed is None else seq.seed}\n")
    buf.write(f"# program={','.join(seq.labels)}\n")
    if seq.spec_digest:
        buf.write(f"# digest={seq.spec_digest}\n")
    for label, alpha in zip(seq.labels, seq.alphabets):
        buf.write(f"# alphabet.{label}={';'.join(repr(v) for v in alpha)}\n")
    text = [[repr(v) for v in a] for a in seq.alphabets]
    for r, j in zip(seq.obs_index, seq.outcome_index):
        buf.write(f"{seq.labels[r]},{text[r][j]}\n")
    return buf.getvalue()


def write_sequence(seq: OutcomeSequence, path) -> None:
    Path(path).write_text(format_sequence(seq), encoding="utf-8")


def _match_outcome(alphabet, value, tol=1e-9):
    for j, a in enumerate(alphabet):
        if a == value:
            return j
    for j, a in enumerate(alphabet):
        if abs(a - value) <= tol:
            return j
    return None


def parse_sequence(text: str, catalog=None) -> OutcomeSequence:
    """
    Parse the line format produced by :func:`format_sequence`.

    Parameters
    ----------
    text : str
        File contents.
    catalog : sequence of str, optional
        Observable labels, in catalog order. Lines naming any other label are
        rejected. Without it the ``# program=`` header is used, falling back
        to order of first appearance.

    Observables lacking an ``# alphabet.<label>=`` header must be Pauli
    strings (``X``, ``X*Y``, ``X⊗Y``); their alphabet is computed.
    """
    seed = None
    digest = ""
    header_labels = None
    declared = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].strip().partition("=")
            key = key.strip()
            val = val.strip()
            if not sep:
                continue
            if key == "seed":
                try:
                    seed = int(val) if val else None
                except ValueError:
                    raise SequenceFormatError(f"bad seed {val!r}", lineno) from None
            elif key == "program":
                header_labels = [s for s in val.split(",") if s]
            elif key == "digest":
                digest = val
            elif key.startswith("alphabet."):
                try:
                    declared[key[len("alphabet."):]] = tuple(float(v) for v in val.split(";"))
                except ValueError:
                    raise SequenceFormatError(f"bad alphabet {val!r}", lineno) from None
            continue
        label, sep, val = line.rpartition(",")
        if not sep or not label:
            raise SequenceFormatError(f"expected 'label,value', got {raw!r}", lineno)
        try:
            value = float(val)
        except ValueError:
            raise SequenceFormatError(f"bad outcome value {val!r}", lineno) from None
        rows.append((lineno, label.strip(), value))

    if catalog is not None:
        labels = list(catalog)
    elif header_labels is not None:
        labels = list(header_labels)
    else:
        labels = list(dict.fromkeys(label for _, label, _ in rows))

    first_line = {}
    for lineno, label, _ in rows:
        first_line.setdefault(label, lineno)
    alphabets = []
    for label in labels:
        if label in declared:
            alphabets.append(declared[label])
        else:
            try:
                alphabets.append(parse_observable(label).alphabet)
            except ValueError:
                raise SequenceFormatError(f"unknown observable label {label!r}",
                                          first_line.get(label, 0)) from None

    index = {label: r for r, label in enumerate(labels)}
    obs = np.empty(len(rows), dtype=np.intp)
    out = np.empty(len(rows), dtype=np.intp)
    for i, (lineno, label, value) in enumerate(rows):
        r = index.get(label)
        if r is None:
            raise SequenceFormatError(f"unknown observable label {label!r}", lineno)
        j = _match_outcome(alphabets[r], value)
        if j is None:
            raise SequenceFormatError(
                f"value {value!r} is not an outcome of {label!r} {alphabets[r]}", lineno)
        obs[i] = r
        out[i] = j
    return OutcomeSequence(obs, out, labels, alphabets, seed, digest)


def read_sequence(path, catalog=None) -> OutcomeSequence:
    return parse_sequence(Path(os.fspath(path)).read_text(encoding="utf-8"), catalog)
