"""Initial state, Unruh-mode dilation, and the six tripartite reductions.

The three observers start from the 3-qubit mixture

    rho = alpha |GHZ><GHZ| + (1 - alpha) |000><000|,
    |GHZ> = (|000> + |111>) / sqrt(2).

Bob's and Charlie's Minkowski modes are each dilated into a pair of Rindler
modes (region I outside the horizon, region II inside) by the isometry

    |0>_M -> cos(r) |0>_I |0>_II + sin(r) |1>_I |1>_II,
    |1>_M -> |1>_I |0>_II,

after which the global mode order is fixed as [A, B_I, B_II, C_I, C_II]
(A most significant).  Reductions keep three of the five modes, always
including A, in ascending global order -- which coincides with the order
the subsystem labels are written in.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import DensityMatrix, partial_trace, tensor_product
from .scenario import R_MAX, Subsystem, check_acceleration

GLOBAL_MODES = ("A", "B1", "B2", "C1", "C2")

#: Global mode positions kept by each reduction.
KEPT_MODES = {
    Subsystem.AB1C1: (0, 1, 3),
    Subsystem.AB2C1: (0, 2, 3),
    Subsystem.AB1C2: (0, 1, 4),
    Subsystem.AB2C2: (0, 2, 4),
    Subsystem.AB1B2: (0, 1, 2),
    Subsystem.AC1C2: (0, 3, 4),
}


def kept_modes(s: Subsystem) -> tuple[int, int, int]:
    return KEPT_MODES[s]


def dropped_modes(s: Subsystem) -> tuple[int, int]:
    kept = set(KEPT_MODES[s])
    return tuple(q for q in range(len(GLOBAL_MODES)) if q not in kept)


def acceleration_parameter(omega: float, a: float, c: float) -> float:
    """Acceleration parameter r from physical quantities.

    cos r = (exp(-2 pi omega c / a) + 1)^(-1/2); r lies in [0, pi/4],
    reaching pi/4 only in the infinite-acceleration limit.
    """
    for name, v in (("omega", omega), ("a", a), ("c", c)):
        if not (v > 0.0) or not math.isfinite(v):
            raise ValueError(f"{name} must be positive and finite, got {v}")
    cos_r = (math.exp(-2.0 * math.pi * omega * c / a) + 1.0) ** -0.5
    r = math.acos(min(1.0, cos_r))
    if not math.isfinite(r):
        raise ArithmeticError(f"acceleration parameter not finite for a={a}")
    return min(r, R_MAX)


def initial_state(alpha: float) -> DensityMatrix:
    """GHZ/|000> mixture on the three Minkowski qubits (8x8, X-shaped)."""
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    m = np.zeros((8, 8), dtype=np.complex128)
    m[0, 0] = (2.0 - alpha) / 2.0
    m[7, 7] = alpha / 2.0
    m[0, 7] = m[7, 0] = alpha / 2.0
    return DensityMatrix(m)


def unruh_isometry(r: float) -> np.ndarray:
    """4x2 isometry splitting one Minkowski qubit into a Rindler-mode pair."""
    check_acceleration(r)
    v = np.zeros((4, 2), dtype=np.complex128)
    v[0, 0] = math.cos(r)  # |0> -> cos r |00>
    v[3, 0] = math.sin(r)  # ... + sin r |11>
    v[2, 1] = 1.0  # |1> -> |10>
    return v


def dilate(rho_abc: DensityMatrix, rb: float, rc: float) -> DensityMatrix:
    """Embed an 8x8 A-B-C state into the 32-dim mode space [A,B1,B2,C1,C2]."""
    if rho_abc.dim != 8:
        raise ValueError(f"expected an 8x8 state, got dim {rho_abc.dim}")
    w = tensor_product(np.eye(2), tensor_product(unruh_isometry(rb), unruh_isometry(rc)))
    return DensityMatrix(w @ rho_abc.matrix @ w.conj().T)


def reduce_to_subsystem(global_rho: DensityMatrix, s: Subsystem) -> DensityMatrix:
    """Trace the 32-dim dilated state down to one of the six 8x8 reductions."""
    if global_rho.dim != 32:
        raise ValueError(f"expected the 32-dim global state, got dim {global_rho.dim}")
    return partial_trace(global_rho, dropped_modes(s))
