"""
Entropy and divergence functionals on discrete distributions.

All quantities are in nats. Functions operate on the last axis, so stacks
of distributions of shape ``(..., m)`` are evaluated in one call.
"""
from __future__ import annotations

import numpy as np
from scipy.special import entr, rel_entr

PROB_TOL = 1e-9
WEIGHT_TOL = 1e-12


class UndefinedDivergenceError(ValueError):
    """Raised when the Kullback-Leibler divergence has no finite value."""


def as_distribution(p) -> np.ndarray:
    """Validate and return ``p`` as a float array of probability vectors."""
    p = np.asarray(p, dtype=float)
    if p.ndim == 0 or p.shape[-1] == 0:
        raise ValueError("a distribution needs at least one outcome")
    if not np.all(np.isfinite(p)) or np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    dev = np.max(np.abs(p.sum(axis=-1) - 1.0))
    if dev > PROB_TOL:
        raise ValueError(f"probabilities must sum to 1 (deviation {dev:.3e})")
    return p


def _check_weights(pi1, pi2):
    pi1 = np.asarray(pi1, dtype=float)
    pi2 = np.asarray(pi2, dtype=float)
    if np.any(pi1 < 0) or np.any(pi2 < 0):
        raise ValueError("weights must be non-negative")
    if np.max(np.abs(pi1 + pi2 - 1.0)) > WEIGHT_TOL:
        raise ValueError("weights must sum to 1")
    return pi1, pi2


def shannon_entropy(p):
    """Shannon entropy ``-sum p ln p`` with ``0 ln 0 = 0``."""
    return entr(as_distribution(p)).sum(axis=-1)


def kl_divergence(p, q):
    """
    Kullback-Leibler divergence ``sum p ln(p/q)``.

    Raises
    ------
    UndefinedDivergenceError
        If some outcome has ``p > 0`` and ``q = 0``.
    """
    p = as_distribution(p)
    q = as_distribution(q)
    if p.shape[-1] != q.shape[-1]:
        raise ValueError("distributions are over different alphabets")
    terms = rel_entr(p, q)
    if np.any(np.isinf(terms)):
        raise UndefinedDivergenceError("KL divergence undefined: q vanishes where p does not")
    return terms.sum(axis=-1)


def jsd_weighted(p1, p2, weights=(0.5, 0.5)):
    """
    Weighted Jensen-Shannon divergence of two distributions.

    Evaluated as ``H(pi1 p1 + pi2 p2) - pi1 H(p1) - pi2 H(p2)``, which is
    finite for every pair of distributions. Rounding residue below zero is
    clipped, so the result is always in ``[0, H((pi1, pi2))]``.

    Parameters
    ----------
    p1, p2 : array_like
        Distributions on the same alphabet, shape ``(..., m)``.
    weights : pair of float or pair of array_like
        ``(pi1, pi2)``, non-negative and summing to one; arrays broadcast
        against the leading axes of ``p1``.
    """
    p1 = as_distribution(p1)
    p2 = as_distribution(p2)
    if p1.shape[-1] != p2.shape[-1]:
        raise ValueError("distributions are over different alphabets")
    pi1, pi2 = _check_weights(*weights)
    w1 = pi1[..., None]
    w2 = pi2[..., None]
    mix = w1 * p1 + w2 * p2
    # grouped so that swapping (p1, pi1) with (p2, pi2) is bit-exact
    value = entr(mix).sum(axis=-1) - (pi1 * entr(p1).sum(axis=-1) + pi2 * entr(p2).sum(axis=-1))
    return np.maximum(value, 0.0)


def jsd_multi(dists, weights):
    """
    Jensen-Shannon divergence of ``m`` distributions,
    ``H(sum_i pi_i P_i) - sum_i pi_i H(P_i)``.
    """
    dists = as_distribution(np.atleast_2d(dists))
    weights = np.asarray(weights, dtype=float)
    if dists.ndim != 2 or weights.shape != (dists.shape[0],):
        raise ValueError("need one weight per distribution")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_TOL:
        raise ValueError("weights must be non-negative and sum to 1")
    mix = weights @ dists
    value = entr(mix).sum() - weights @ entr(dists).sum(axis=-1)
    return max(float(value), 0.0)
