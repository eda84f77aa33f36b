"""Closed-form reduced matrices, evolved matrices, and coherence values.

Every reduction of the dilated GHZ mixture admits an analytic 8x8 X-shaped
matrix.  For the four A-B-C reductions these coincide with an honest partial
trace; for AB1B2 and AC1C2 the published forms instead follow the
substitution pattern rc -> rb (resp. rb -> rc) applied to the AB1C1 matrix,
which an honest trace does not reproduce -- the `verify` module reports the
difference.  The noisy evolutions scale the single coherent pair by a
channel factor while leaving the diagonal untouched:

    phase damping: sqrt(1-P_b) sqrt(1-P_c)
    phase flip:    (2 P_b - 1)(2 P_c - 1)
    bit flip:      (1 - P_b)(1 - P_c)
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .linalg import DensityMatrix
from .scenario import ChannelKind, Subsystem, check_acceleration

#: Zero-based (row, col) of the coherent pair's upper entry per reduction.
COHERENT_PAIR = {
    Subsystem.AB1C1: (0, 7),
    Subsystem.AB2C1: (2, 5),
    Subsystem.AB1C2: (1, 6),
    Subsystem.AB2C2: (3, 4),
    Subsystem.AB1B2: (0, 7),
    Subsystem.AC1C2: (0, 7),
}


def _check_params(alpha: float, rb: float, rc: float, pb: float, pc: float) -> None:
    for name, v in (("alpha", alpha), ("pb", pb), ("pc", pc)):
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    check_acceleration(rb, "rb")
    check_acceleration(rc, "rc")


def trig_factor(s: Subsystem, rb: float, rc: float) -> float:
    """Subsystem-specific trigonometric factor of the coherent pair."""
    cb, sb = math.cos(rb), math.sin(rb)
    cc, sc = math.cos(rc), math.sin(rc)
    return {
        Subsystem.AB1C1: cb * cc,
        Subsystem.AB2C1: sb * cc,
        Subsystem.AB1C2: cb * sc,
        Subsystem.AB2C2: sb * sc,
        Subsystem.AB1B2: cb * cb,
        Subsystem.AC1C2: cc * cc,
    }[s]


def channel_factor(kind: Optional[ChannelKind], pb: float, pc: float) -> float:
    """Scale applied to the coherent pair by the noisy evolution."""
    if kind is None:
        return 1.0
    if kind is ChannelKind.PHASE_DAMPING:
        return math.sqrt(1.0 - pb) * math.sqrt(1.0 - pc)
    if kind is ChannelKind.PHASE_FLIP:
        return (2.0 * pb - 1.0) * (2.0 * pc - 1.0)
    if kind is ChannelKind.BIT_FLIP:
        return (1.0 - pb) * (1.0 - pc)
    raise ValueError(f"unknown channel kind {kind}")


def _diagonal(s: Subsystem, alpha: float, rb: float, rc: float) -> np.ndarray:
    """The eight diagonal entries, in basis order."""
    w = (2.0 - alpha) / 2.0
    if s in (Subsystem.AB1B2, Subsystem.AC1C2):
        r = rb if s is Subsystem.AB1B2 else rc
        c2, s2 = math.cos(r) ** 2, math.sin(r) ** 2
        top = [w * c2 * c2, w * c2 * s2, w * c2 * s2, w * s2 * s2]
    else:
        cb2, sb2 = math.cos(rb) ** 2, math.sin(rb) ** 2
        cc2, sc2 = math.cos(rc) ** 2, math.sin(rc) ** 2
        top = [w * cb2 * cc2, w * cb2 * sc2, w * sb2 * cc2, w * sb2 * sc2]
    diag = np.zeros(8)
    diag[:4] = top
    # the GHZ |111...> component lands on the anti-diagonal partner of the
    # coherent pair's row
    row = COHERENT_PAIR[s][0]
    diag[7 - row] = alpha / 2.0
    return diag


def reduced_matrix_closed_form(
    s: Subsystem, alpha: float, rb: float, rc: float
) -> DensityMatrix:
    """Analytic 8x8 reduction of the dilated initial state (no noise)."""
    _check_params(alpha, rb, rc, 0.0, 0.0)
    m = np.zeros((8, 8), dtype=np.complex128)
    np.fill_diagonal(m, _diagonal(s, alpha, rb, rc))
    i, j = COHERENT_PAIR[s]
    m[i, j] = m[j, i] = (alpha / 2.0) * trig_factor(s, rb, rc)
    return DensityMatrix(m)


def evolved_matrix_closed_form(
    s: Subsystem,
    alpha: float,
    rb: float,
    rc: float,
    kind: Optional[ChannelKind],
    pb: float,
    pc: float,
) -> DensityMatrix:
    """Analytic noisy evolution: coherent pair scaled, diagonal unchanged."""
    _check_params(alpha, rb, rc, pb, pc)
    m = np.zeros((8, 8), dtype=np.complex128)
    np.fill_diagonal(m, _diagonal(s, alpha, rb, rc))
    i, j = COHERENT_PAIR[s]
    m[i, j] = m[j, i] = (
        (alpha / 2.0) * channel_factor(kind, pb, pc) * trig_factor(s, rb, rc)
    )
    return DensityMatrix(m)


def concurrence_closed_form(
    s: Subsystem,
    alpha: float,
    rb: float,
    rc: float,
    kind: Optional[ChannelKind] = None,
    pb: float = 0.0,
    pc: float = 0.0,
) -> float:
    """Coherence concurrence of the closed-form (possibly evolved) reduction.

    alpha * |channel factor| * trig factor; the phase-flip factor can be
    negative, hence the absolute value.
    """
    _check_params(alpha, rb, rc, pb, pc)
    return abs(alpha * channel_factor(kind, pb, pc) * trig_factor(s, rb, rc))


def complementarity_residuals(
    alpha: float, rb: float, rc: float
) -> tuple[float, float, float]:
    """Residuals of the three coherence trade-off identities.

    residual1 = C^2(AB1C1) + C^2(AB1C2) - alpha^2
    residual2 = C^2(AB1C2) + alpha C(AC1C2) - alpha^2
    residual3 = sum of C^2 over the four A-B-C reductions - alpha^2

    The first two vanish only on the rb = 0 slice (residual1 equals
    -alpha^2 sin^2 rb in general); the third vanishes identically.
    """
    _check_params(alpha, rb, rc, 0.0, 0.0)
    c = {s: concurrence_closed_form(s, alpha, rb, rc) for s in Subsystem}
    a2 = alpha * alpha
    residual1 = c[Subsystem.AB1C1] ** 2 + c[Subsystem.AB1C2] ** 2 - a2
    residual2 = c[Subsystem.AB1C2] ** 2 + alpha * c[Subsystem.AC1C2] - a2
    residual3 = (
        math.fsum(
            c[s] ** 2
            for s in (
                Subsystem.AB1C1,
                Subsystem.AB1C2,
                Subsystem.AB2C1,
                Subsystem.AB2C2,
            )
        )
        - a2
    )
    return residual1, residual2, residual3
