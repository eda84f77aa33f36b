"""Shared helpers for building random test states."""

from __future__ import annotations

import math

import numpy as np

from tricoh.linalg import DensityMatrix, PureState


def random_density(rng: np.random.Generator, dim: int) -> DensityMatrix:
    """Ginibre-sampled full-rank density matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_pure(rng: np.random.Generator, dim: int) -> PureState:
    a = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(a / np.linalg.norm(a))


def random_x_state(rng: np.random.Generator, dim: int = 8) -> DensityMatrix:
    """Random X-shaped density matrix: each anti-diagonal pair stays PSD."""
    diag = rng.random(dim) + 0.05
    diag /= diag.sum()
    m = np.zeros((dim, dim), dtype=np.complex128)
    np.fill_diagonal(m, diag)
    for i in range(dim // 2):
        j = dim - 1 - i
        z = (
            rng.random()
            * math.sqrt(diag[i] * diag[j])
            * np.exp(2j * np.pi * rng.random())
        )
        m[i, j] = z
        m[j, i] = np.conj(z)
    return DensityMatrix(m)


def permute_qubits(matrix: np.ndarray, perm: list[int]) -> np.ndarray:
    """Relabel qubits: output qubit k holds what input qubit perm[k] held."""
    n = int(math.log2(matrix.shape[0]))
    t = matrix.reshape((2,) * (2 * n))
    axes = list(perm) + [p + n for p in perm]
    return t.transpose(axes).reshape(matrix.shape)
