"""Shared parameter vocabulary: subsystems, channel kinds, noise placement.

A `Scenario` is the full parameter record driving both the first-principles
simulation and the closed-form expressions, so the two routes can never
drift apart on inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

R_MAX = math.pi / 4


class Subsystem(Enum):
    """The six tripartite reductions of the dilated five-mode state.

    1 marks a region-I (outside-horizon) mode, 2 a region-II (inside) mode.
    Qubit order inside each reduction follows the label left to right.
    """

    AB1C1 = "ab1c1"
    AB2C1 = "ab2c1"
    AB1C2 = "ab1c2"
    AB2C2 = "ab2c2"
    AB1B2 = "ab1b2"
    AC1C2 = "ac1c2"


#: Reductions holding one B-type and one C-type mode alongside A.
ABC_SUBSYSTEMS = (
    Subsystem.AB1C1,
    Subsystem.AB2C1,
    Subsystem.AB1C2,
    Subsystem.AB2C2,
)


class ChannelKind(Enum):
    PHASE_DAMPING = "damping"
    PHASE_FLIP = "phase-flip"
    BIT_FLIP = "bit-flip"


class NoisePolicy(Enum):
    """Where the single-qubit channels act.

    reduced_qubit: channel(P_b) on qubit 1 and channel(P_c) on qubit 2 of an
    8-dim reduced state (zero-based; A is qubit 0).  This placement
    reproduces every published evolved matrix.

    rindler_mode: channel(P_b) independently on modes B_I and B_II and
    channel(P_c) on C_I and C_II of the 32-dim global state, before
    reduction.  Equivalent to reduced_qubit for the dephasing channels on
    the A-B-C subsystems; bit flip moves population between Rindler modes,
    so there the two placements genuinely differ.
    """

    REDUCED_QUBIT = "reduced_qubit"
    RINDLER_MODE = "rindler_mode"


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances for state validation."""

    hermiticity: float = 1e-10
    trace: float = 1e-10
    psd_floor: float = -1e-9


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def check_acceleration(r: float, name: str = "r") -> float:
    """Validate an acceleration parameter, 0 <= r <= pi/4 (radians)."""
    if not math.isfinite(r) or not (0.0 <= r <= R_MAX):
        raise ValueError(f"{name} must lie in [0, pi/4], got {r}")
    return r


@dataclass(frozen=True)
class Scenario:
    """Full parameter record for one evaluation point."""

    subsystem: Subsystem
    alpha: float
    rb: float = 0.0
    rc: float = 0.0
    channel: Optional[ChannelKind] = None
    pb: float = 0.0
    pc: float = 0.0
    policy: NoisePolicy = NoisePolicy.REDUCED_QUBIT
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        _check_unit("alpha", self.alpha)
        check_acceleration(self.rb, "rb")
        check_acceleration(self.rc, "rc")
        _check_unit("pb", self.pb)
        _check_unit("pc", self.pc)
