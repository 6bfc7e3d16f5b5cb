"""The concrete five-stage interferometer and its named states.

Named states are written out in closed form rather than read off the
network, so tests can compare two independent constructions.
"""
from __future__ import annotations

from fractions import Fraction
from importlib import resources
from math import sqrt

import numpy as np

from .hilbert import as_operator, as_state, basis_state
from .network import InterferometerNetwork, build_network, parse_fraction

# (inputs, outputs, reflectivity). The first input gets +sqrt(R) on the
# first output; see pathcurrents.network for the full convention.
CANONICAL_STAGES = (
    (("0,0", "1,0"), ("a,0", "b,0"), Fraction(1, 2)),
    (("0,1", "a,0"), ("f_NL", "N1"), Fraction(1, 3)),
    (("N1", "b,0"), ("N2", "0,b"), Fraction(1, 4)),
    (("f_NL", "N2"), ("1,0", "0,a"), Fraction(1, 3)),
    (("0,a", "0,b"), ("0,0", "0,1"), Fraction(1, 2)),
)

CANONICAL_FILE = "canonical_network.json"

_S2 = sqrt(2.0)
_S3 = sqrt(3.0)
_S6 = sqrt(6.0)

_NAMED = {
    "0,0": basis_state("0,0"),
    "0,1": basis_state("0,1"),
    "1,0": basis_state("1,0"),
    "1,1": basis_state("1,1"),
    "a,0": as_state(np.array([1, 0, -1, 0]) / _S2),
    "b,0": as_state(np.array([1, 0, 1, 0]) / _S2),
    "0,a": as_state(np.array([1, -1, 0, 0]) / _S2),
    "0,b": as_state(np.array([1, 1, 0, 0]) / _S2),
    "f_NL": as_state(np.array([-1, 1, 1, 0]) / _S3),
    "N1": as_state(np.array([1, 2, -1, 0]) / _S6),
    "N2": as_state(np.array([1, -1, 2, 0]) / _S6),
    "Phi_max": as_state(np.array([0, 1, 1, 0]) / _S2),
}

NAMED_LABELS = tuple(_NAMED)


def canonical_stage_descriptions() -> list[dict]:
    return [
        {"inputs": list(i), "outputs": list(o), "reflectivity": r} for i, o, r in CANONICAL_STAGES
    ]


def canonical_network() -> InterferometerNetwork:
    return build_network(canonical_stage_descriptions())


def canonical_network_text() -> str:
    """Contents of the network-definition file shipped with the package."""
    return resources.files("pathcurrents").joinpath("data", CANONICAL_FILE).read_text()


def named_state(label: str) -> np.ndarray:
    try:
        return _NAMED[label]
    except KeyError:
        raise KeyError(f"unknown state {label!r}; known: {', '.join(NAMED_LABELS)}") from None


def swap_operator() -> np.ndarray:
    """Permutation exchanging |0,1> and |1,0>."""
    return as_operator(np.eye(4)[[0, 2, 1, 3]])


def rho_eta(eta) -> np.ndarray:
    """Equal mixture of |0,1> and |1,0> with coherence ``eta`` between them.

    ``eta = 1`` is the pure state |Phi_max><Phi_max|; ``eta = 0`` is the
    incoherent mixture. Fractions and fraction strings are accepted.
    """
    eta = float(parse_fraction(eta))
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {eta!r}")
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = 0.5
    rho[1, 2] = rho[2, 1] = eta / 2
    return as_operator(rho)
