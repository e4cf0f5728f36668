"""Compiled loops for the contiguous store.

Plain nested loops over flat arrays, the same shape as a hand-written
pointer-array update; numba turns them into machine code.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def ring_milieu(milieu, periodic):
    # The sentinel index n points at the spare always-false row of each plane.
    n = milieu.shape[0]
    for i in range(1, n - 1):
        milieu[i, 0] = i - 1
        milieu[i, 1] = i + 1
    if periodic:
        milieu[0, 0] = n - 1
        milieu[0, 1] = 1 % n
        if n > 1:
            milieu[n - 1, 0] = n - 2
            milieu[n - 1, 1] = 0
    else:
        milieu[0, 0] = n
        milieu[0, 1] = 1 if n > 1 else n
        if n > 1:
            milieu[n - 1, 0] = n - 2
            milieu[n - 1, 1] = n


@njit(cache=True, nogil=True)
def step_single(current, nxt, milieu, outputs):
    n = milieu.shape[0]
    for i in range(n):
        code = 0
        if current[milieu[i, 0]]:
            code += 4
        if current[i]:
            code += 2
        if current[milieu[i, 1]]:
            code += 1
        nxt[i] = outputs[code]


@njit(cache=True, nogil=True)
def step_multi(current, nxt, milieu, outputs):
    # Slots are independent layers; slot-outer order keeps the inner loop
    # identical to the single-state one.
    n = milieu.shape[0]
    k = current.shape[1]
    for s in range(k):
        for i in range(n):
            code = 0
            if current[milieu[i, 0], s]:
                code += 4
            if current[i, s]:
                code += 2
            if current[milieu[i, 1], s]:
                code += 1
            nxt[i, s] = outputs[code]


def warm_up() -> None:
    """Compile (or load from cache) every kernel signature the store uses."""
    outputs = np.zeros(8, dtype=np.bool_)
    for dtype in (np.uint32, np.uint64):
        milieu = np.zeros((3, 2), dtype=dtype)
        ring_milieu(milieu, False)
        step_single(np.zeros(4, np.bool_), np.zeros(4, np.bool_), milieu, outputs)
        step_multi(np.zeros((4, 1), np.bool_), np.zeros((4, 1), np.bool_), milieu, outputs)
