"""
Small dense linear algebra for qubit registers: Hermitian observables with
grouped spectral decompositions, density matrices and Born-rule outcome
distributions.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

HERMITIAN_TOL = 1e-10
PROJECTOR_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-8
TRACE_TOL = 1e-9
GROUP_TOL = 1e-9

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _as_square(m, name="matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def hermitian_defect(m) -> float:
    """Largest absolute entry of ``m - m^dagger``."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def spectral_decomposition(m, group_tol: float = GROUP_TOL):
    """
    Decompose a Hermitian matrix into distinct eigenvalues and the
    orthogonal projectors onto their eigenspaces.

    Eigenvalues closer than ``group_tol`` to their neighbour are merged into a
    single outcome whose projector has rank equal to the multiplicity.
    Eigenvalues within ``group_tol`` of an integer are snapped to it, so the
    +/-1 spectra of Pauli strings print cleanly.

    Parameters
    ----------
    m : array_like
        Hermitian matrix.
    group_tol : float
        Merging tolerance for eigenvalues.

    Returns
    -------
    list of (float, ndarray)
        ``(eigenvalue, projector)`` pairs in strictly increasing eigenvalue
        order.

    Raises
    ------
    ValueError
        If ``m`` is not Hermitian within 1e-10 or ``group_tol <= 0``.
    """
    m = _as_square(m)
    if group_tol <= 0:
        raise ValueError("group_tol must be positive")
    defect = hermitian_defect(m)
    if defect > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (max |M - M^dagger| = {defect:.3e})")
    m = 0.5 * (m + m.conj().T)
    vals, vecs = np.linalg.eigh(m)

    groups = [[0]]
    for i in range(1, len(vals)):
        if vals[i] - vals[groups[-1][-1]] <= group_tol:
            groups[-1].append(i)
        else:
            groups.append([i])

    spectrum = []
    for idx in groups:
        value = float(np.mean(vals[idx]))
        if abs(value - round(value)) <= group_tol:
            value = float(round(value))
        v = vecs[:, idx]
        spectrum.append((value, v @ v.conj().T))
    return spectrum


@dataclass(frozen=True, eq=False)
class Observable:
    """
    Labeled Hermitian operator with its spectral decomposition.

    The outcome alphabet is the tuple of distinct eigenvalues in increasing
    order; outcome ``j`` of a measurement refers to ``alphabet[j]`` and the
    projector ``projectors[j]``.
    """

    label: str
    matrix: np.ndarray = field(repr=False)
    group_tol: float = field(default=GROUP_TOL, repr=False)
    alphabet: tuple = field(init=False)
    projectors: tuple = field(init=False, repr=False)

    def __post_init__(self):
        matrix = _as_square(self.matrix, f"observable {self.label!r}")
        matrix.setflags(write=False)
        spectrum = spectral_decomposition(matrix, self.group_tol)
        projectors = []
        for _, p in spectrum:
            p.setflags(write=False)
            projectors.append(p)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "alphabet", tuple(v for v, _ in spectrum))
        object.__setattr__(self, "projectors", tuple(projectors))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.alphabet)

    def reconstruct(self) -> np.ndarray:
        return sum(a * p for a, p in zip(self.alphabet, self.projectors))

    def check(self) -> None:
        """Raise ``AssertionError`` if any spectral invariant is violated."""
        ident = np.eye(self.dim)
        assert np.all(np.diff(self.alphabet) > 0)
        assert np.max(np.abs(sum(self.projectors) - ident)) <= PROJECTOR_TOL
        assert np.max(np.abs(self.reconstruct() - self.matrix)) <= RECONSTRUCTION_TOL
        for i, p in enumerate(self.projectors):
            assert hermitian_defect(p) <= PROJECTOR_TOL
            assert np.max(np.abs(p @ p - p)) <= PROJECTOR_TOL
            for q in self.projectors[i + 1:]:
                assert np.max(np.abs(p @ q)) <= PROJECTOR_TOL


def pauli(name: str) -> Observable:
    """Single-qubit Pauli observable ``"X"``, ``"Y"`` or ``"Z"``."""
    if name not in ("X", "Y", "Z"):
        raise ValueError(f"unknown Pauli name {name!r}; expected X, Y or Z")
    return Observable(name, _PAULI[name].copy())


def tensor(a: Observable, b: Observable) -> Observable:
    """Kronecker product ``a (x) b``; degenerate eigenvalues are grouped."""
    return Observable(f"{a.label}⊗{b.label}", np.kron(a.matrix, b.matrix))


_PAULI_STRING = re.compile(r"^[XYZ]([*⊗][XYZ])*$")


def parse_observable(text: str) -> Observable:
    """
    Build an observable from a Pauli string such as ``"Z"``, ``"X*Y"`` or
    ``"X⊗Y"``. Compact forms like ``"XX"`` are also accepted.
    """
    s = text.strip().replace(" ", "")
    if re.fullmatch(r"[XYZ]{2,}", s):
        s = "*".join(s)
    if not _PAULI_STRING.match(s):
        raise ValueError(f"unknown observable label {text!r}")
    factors = [pauli(c) for c in re.split(r"[*⊗]", s)]
    return reduce(tensor, factors)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Density matrix; validated to be Hermitian, unit trace and PSD."""

    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = _as_square(self.rho, "density matrix")
        defect = hermitian_defect(rho)
        if defect > HERMITIAN_TOL:
            raise ValueError(f"density matrix is not Hermitian (defect {defect:.3e})")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix has trace {tr!r}, expected 1")
        lowest = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
        if lowest < -TRACE_TOL:
            raise ValueError(f"density matrix is not positive semidefinite (eigenvalue {lowest:.3e})")
        rho = rho.copy()
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def __repr__(self):
        return f"QuantumState(dim={self.dim})"


def pure_to_density(amplitudes, normalize: bool = True) -> QuantumState:
    """
    Return ``|psi><psi|`` for a ket given by its amplitudes.

    With ``normalize`` the ket is divided by its Euclidean norm first; a
    ``UserWarning`` is emitted if that norm differs from 1 by more than 1e-6.
    """
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    if psi.size == 0:
        raise ValueError("amplitude vector is empty")
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("amplitude vector is zero")
    if normalize:
        if abs(norm - 1.0) > 1e-6:
            warnings.warn(f"ket has norm {norm:.6g}; normalizing", UserWarning, stacklevel=2)
        psi = psi / norm
    return QuantumState(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> QuantumState:
    return QuantumState(np.eye(dim, dtype=complex) / dim)


def born_distribution(state: QuantumState, obs: Observable) -> np.ndarray:
    """
    Outcome probabilities ``p_j = tr(rho Pi_j)`` in alphabet order.

    Returns
    -------
    ndarray
        Probability vector summing to one.

    Raises
    ------
    ValueError
        On dimension mismatch, or if some ``tr(rho Pi_j) < -1e-9``.
    """
    if state.dim != obs.dim:
        raise ValueError(f"state dimension {state.dim} does not match observable "
                         f"{obs.label!r} dimension {obs.dim}")
    p = np.array([np.trace(state.rho @ proj).real for proj in obs.projectors])
    if np.any(p < -PROJECTOR_TOL):
        raise ValueError(f"negative Born probability {p.min():.3e}")
    p = np.clip(p, 0.0, 1.0)
    return p / p.sum()
