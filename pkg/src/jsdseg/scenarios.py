"""
Catalog of the one- and two-qubit experiments.

Each scenario measures a cyclic program of Pauli observables (``n = 2000``)
on one state for the first 1000 positions and on another for the rest, so
the true change point is 1001. Which observables can tell the two states
apart is computed from their Born distributions, not asserted.

One-qubit state pairs:

* ``pure``  : kets proportional to ``|0> + 2i|1>`` and ``|0> + 8i|1>``
* ``mixed`` : ``|0><0|`` and ``I/2``

Two-qubit pair: ``|00>`` and ``(|00> + |11>)/sqrt(2)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .qmath import born_distribution, maximally_mixed, parse_observable, pure_to_density
from .seqgen import ObservableProgram, StateSchedule, generate_quantum_sequence

N = 2000
L1 = 1000
DISTINGUISH_TOL = 1e-9

_ONE_QUBIT_PROGRAMS = {
    "x": ("X",), "y": ("Y",), "z": ("Z",),
    "xy": ("X", "Y"), "xz": ("X", "Z"), "yz": ("Y", "Z"),
    "xyz": ("X", "Y", "Z"),
}
_TWO_QUBIT_PROGRAMS = {
    "xx": ("X*X",), "xy": ("X*Y",), "xz": ("X*Z",),
    "yy": ("Y*Y",), "yz": ("Y*Z",), "zz": ("Z*Z",),
    "xxyyzz": ("X*X", "Y*Y", "Z*Z"),
}
_PANELS = ("x", "y", "z", "xy", "xz", "yz")
_PANELS_2Q = ("xx", "xy", "xz", "yy", "yz", "zz")


def _names():
    names = {}
    for pair, fig_main, fig_panels in (("pure", "fig1", "fig2"), ("mixed", "fig3", "fig4")):
        names[f"q1_xyz_{pair}"] = fig_main
        for i, key in enumerate(_PANELS):
            names[f"q1_{key}_{pair}"] = f"{fig_panels}{'abcdef'[i]}"
    names["q2_xxyyzz"] = "fig5"
    for i, key in enumerate(_PANELS_2Q):
        names[f"q2_{key}"] = f"fig6{'abcdef'[i]}"
    return names


#: Stable scenario names mapped to figure aliases, in listing order.
SCENARIOS = _names()
_ALIASES = {alias: name for name, alias in SCENARIOS.items()}


def state_pair(kind: str):
    """The two states of a named pair: ``"pure"``, ``"mixed"`` or ``"bell"``."""
    if kind == "pure":
        # The kets are specified unnormalized; the amplitude ratio is what matters.
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            return pure_to_density([1, 2j]), pure_to_density([1, 8j])
    if kind == "mixed":
        return pure_to_density([1, 0]), maximally_mixed(2)
    if kind == "bell":
        s = 1 / np.sqrt(2)
        return pure_to_density([1, 0, 0, 0]), pure_to_density([s, 0, 0, s])
    raise ValueError(f"unknown state pair {kind!r}")


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    alias: str
    program: ObservableProgram
    schedule: StateSchedule
    true_changepoint: int
    born: dict
    distinguishing_observables: tuple

    @property
    def n(self) -> int:
        return self.program.n

    @property
    def detectable(self) -> bool:
        return bool(self.distinguishing_observables)

    def generate(self, seed: int):
        return generate_quantum_sequence(self.program, self.schedule, seed)


def scenario_from_parts(name, labels, states, lengths, alias=""):
    """
    Build a scenario from observable labels cycled over ``sum(lengths)``
    positions and one state per segment.

    ``born`` maps each label to the list of its Born distributions, one per
    state; an observable is distinguishing when any two of them differ in L1
    by more than 1e-9.
    """
    catalog = [parse_observable(label) for label in labels]
    schedule = StateSchedule(tuple(zip(states, lengths)))
    program = ObservableProgram.cyclic(catalog, schedule.n)
    born = {}
    distinguishing = []
    for obs in catalog:
        dists = [born_distribution(s, obs) for s in states]
        born[obs.label] = dists
        if any(np.abs(d - dists[0]).sum() > DISTINGUISH_TOL for d in dists[1:]):
            distinguishing.append(obs.label)
    cps = schedule.changepoints
    return Scenario(name, alias, program, schedule, cps[0] if cps else 0,
                    born, tuple(distinguishing))


def build_scenario(name: str) -> Scenario:
    """
    Build a catalog scenario by name (``"q1_xyz_pure"``) or figure alias
    (``"fig1"``, ``"fig6b"``).
    """
    name = _ALIASES.get(name, name)
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}; valid names: {', '.join(SCENARIOS)}")
    qubits, key, *rest = name.split("_")
    if qubits == "q1":
        labels = _ONE_QUBIT_PROGRAMS[key]
        states = state_pair(rest[0])
    else:
        labels = _TWO_QUBIT_PROGRAMS[key]
        states = state_pair("bell")
    return scenario_from_parts(name, labels, states, (L1, N - L1), SCENARIOS[name])


def list_scenarios() -> list:
    return [build_scenario(name) for name in SCENARIOS]
