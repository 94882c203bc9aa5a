"""This module contains the compiled (JIT) functions used by the mesh and the cost evaluation."""

from __future__ import annotations

import numpy as np
from numba import jit


@jit
def mesh_product(blocks: np.ndarray, modes_lo: np.ndarray, modes_hi: np.ndarray, dim: int) -> np.ndarray:
    """
    Multiply a sequence of embedded two-mode blocks, later blocks acting on the left.

    Parameters
    ----------
    blocks : np.ndarray
        The 2x2 blocks. Dims : [slot, 2, 2]. Type : np.complex128
    modes_lo : np.ndarray
        The first mode of each block. Dims : [slot]. Type : np.int64
    modes_hi : np.ndarray
        The second mode of each block. Dims : [slot]. Type : np.int64
    dim : int
        The number of optical modes.

    Returns
    -------
    unitary : np.ndarray
        The product G_last ... G_first. Dims : [dim, dim].

    """
    unitary = np.zeros((dim, dim), dtype=np.complex128)
    for mode in range(dim):
        unitary[mode, mode] = 1.0
    for slot in range(blocks.shape[0]):
        lo = modes_lo[slot]
        hi = modes_hi[slot]
        row_lo = unitary[lo, :].copy()
        row_hi = unitary[hi, :].copy()
        unitary[lo, :] = blocks[slot, 0, 0] * row_lo + blocks[slot, 0, 1] * row_hi
        unitary[hi, :] = blocks[slot, 1, 0] * row_lo + blocks[slot, 1, 1] * row_hi
    return unitary


@jit
def junk_probabilities(unitary: np.ndarray, states: np.ndarray, keep: int) -> np.ndarray:
    """
    Occupation probability of the trailing (junk) modes for each state.

    Parameters
    ----------
    unitary : np.ndarray
        The encoding transformation. Dims : [dim, dim]. Type : np.complex128
    states : np.ndarray
        The input amplitudes. Dims : [state, dim]. Type : np.complex128
    keep : int
        The number of retained modes. Modes keep..dim-1 are junk.

    Returns
    -------
    probabilities : np.ndarray
        Dims : [state]. Type : np.float64

    """
    dim = unitary.shape[0]
    probabilities = np.zeros(states.shape[0], dtype=np.float64)
    for index in range(states.shape[0]):
        total = 0.0
        for row in range(keep, dim):
            amplitude = 0.0 + 0.0j
            for column in range(dim):
                amplitude += unitary[row, column] * states[index, column]
            total += amplitude.real * amplitude.real + amplitude.imag * amplitude.imag
        probabilities[index] = total
    return probabilities
