"""Single-qubit Kraus channels and their placement on reduced or global states.

A channel acts as rho -> sum_k E_k rho E_k^dagger with the completeness
relation sum_k E_k^dagger E_k = I.  The three kinds used here, each with a
decay probability P:

    phase damping: E0 = diag(1, sqrt(1-P)),        E1 = diag(0, sqrt(P))
    phase flip:    E0 = sqrt(1-P) I,               E1 = sqrt(P) diag(1, -1)
    bit flip:      E0 = sqrt(1-P) I,               E1 = sqrt(P) sigma_x
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, identity, num_qubits, check_qubit
from .scenario import ChannelKind, NoisePolicy, Scenario

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    kind: ChannelKind
    p: float
    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        dim = self.operators[0].shape[0]
        acc = np.zeros((dim, dim), dtype=np.complex128)
        for e in self.operators:
            acc += e.conj().T @ e
        resid = float(np.abs(acc - np.eye(dim)).max())
        if resid > COMPLETENESS_TOL:
            raise ValueError(f"Kraus completeness violated by {resid:.3e}")

    def completeness_residual(self) -> float:
        dim = self.operators[0].shape[0]
        acc = sum(e.conj().T @ e for e in self.operators)
        return float(np.abs(acc - np.eye(dim)).max())


def make_channel(kind: ChannelKind, p: float) -> KrausChannel:
    """Build the two-operator Kraus channel of the given kind."""
    if not (0.0 <= p <= 1.0) or not math.isfinite(p):
        raise ValueError(f"decay probability must lie in [0, 1], got {p}")
    s0, s1 = math.sqrt(1.0 - p), math.sqrt(p)
    if kind is ChannelKind.PHASE_DAMPING:
        ops = (np.diag([1.0, s0]), np.diag([0.0, s1]))
    elif kind is ChannelKind.PHASE_FLIP:
        ops = (s0 * np.eye(2), s1 * np.diag([1.0, -1.0]))
    elif kind is ChannelKind.BIT_FLIP:
        ops = (s0 * np.eye(2), s1 * np.array([[0.0, 1.0], [1.0, 0.0]]))
    else:
        raise ValueError(f"unknown channel kind {kind}")
    ops = tuple(o.astype(np.complex128) for o in ops)
    for o in ops:
        o.flags.writeable = False
    return KrausChannel(kind, p, ops)


def apply_to_qubit(rho: DensityMatrix, q: int, ch: KrausChannel) -> DensityMatrix:
    """Apply a single-qubit channel to qubit q, identity on the rest."""
    n = rho.n_qubits
    check_qubit(q, rho.dim)
    left = identity(1 << q)
    right = identity(1 << (n - 1 - q))
    m = rho.matrix
    out = np.zeros_like(m)
    for e in ch.operators:
        lifted = np.kron(np.kron(left, e), right)
        out += lifted @ m @ lifted.conj().T
    return DensityMatrix(out)


def apply_policy(s: Scenario, state: DensityMatrix) -> DensityMatrix:
    """Place the scenario's channels on `state` according to the noise policy.

    reduced_qubit expects an 8x8 reduced state; rindler_mode expects the
    32-dim global state (reduction is the caller's next step).  A scenario
    without a channel leaves the state untouched.
    """
    if s.channel is None:
        return state
    ch_b = make_channel(s.channel, s.pb)
    ch_c = make_channel(s.channel, s.pc)
    if s.policy is NoisePolicy.REDUCED_QUBIT:
        if state.dim != 8:
            raise ValueError(
                f"reduced_qubit policy needs an 8x8 reduced state, got dim {state.dim}"
            )
        out = apply_to_qubit(state, 1, ch_b)
        return apply_to_qubit(out, 2, ch_c)
    if state.dim != 32:
        raise ValueError(
            f"rindler_mode policy needs the 32-dim global state, got dim {state.dim}"
        )
    out = state
    for q in (1, 2):  # B_I, B_II
        out = apply_to_qubit(out, q, ch_b)
    for q in (3, 4):  # C_I, C_II
        out = apply_to_qubit(out, q, ch_c)
    return out
