"""Numba kernels for the dense statevector backend.

Bit convention (fixed package-wide): qubit 0 is the most significant bit of
the basis-state index, so qubit q has stride 2**(L-1-q) in the amplitude
array. All kernels mutate the amplitude buffer in place.
"""

import numba
import numpy as np


@numba.njit(cache=True, fastmath=True)
def apply_two_qubit_inplace(amps, gate, si, sj):
    # si, sj: strides of the gate's first/second qubit. Iterate over indices
    # with both target bits clear, gathering the 4-amplitude block each time.
    shi = si if si > sj else sj
    slo = sj if si > sj else si
    n = amps.size
    g00 = gate[0, 0]; g01 = gate[0, 1]; g02 = gate[0, 2]; g03 = gate[0, 3]
    g10 = gate[1, 0]; g11 = gate[1, 1]; g12 = gate[1, 2]; g13 = gate[1, 3]
    g20 = gate[2, 0]; g21 = gate[2, 1]; g22 = gate[2, 2]; g23 = gate[2, 3]
    g30 = gate[3, 0]; g31 = gate[3, 1]; g32 = gate[3, 2]; g33 = gate[3, 3]
    for hi in range(0, n, 2 * shi):
        for mid in range(hi, hi + shi, 2 * slo):
            for x in range(mid, mid + slo):
                a0 = amps[x]
                a1 = amps[x + sj]
                a2 = amps[x + si]
                a3 = amps[x + si + sj]
                amps[x] = g00 * a0 + g01 * a1 + g02 * a2 + g03 * a3
                amps[x + sj] = g10 * a0 + g11 * a1 + g12 * a2 + g13 * a3
                amps[x + si] = g20 * a0 + g21 * a1 + g22 * a2 + g23 * a3
                amps[x + si + sj] = g30 * a0 + g31 * a1 + g32 * a2 + g33 * a3


@numba.njit(cache=True, fastmath=True)
def branch_weights(amps, s):
    # Born weights of outcomes (0, 1) on the qubit with stride s.
    n = amps.size
    p0 = 0.0
    p1 = 0.0
    for base in range(0, n, 2 * s):
        for x in range(base, base + s):
            a = amps[x]
            p0 += a.real * a.real + a.imag * a.imag
            b = amps[x + s]
            p1 += b.real * b.real + b.imag * b.imag
    return p0, p1


@numba.njit(cache=True, fastmath=True)
def collapse_bit_inplace(amps, s, outcome, inv_norm):
    # Zero the discarded branch, rescale the kept one.
    n = amps.size
    for base in range(0, n, 2 * s):
        if outcome == 0:
            for x in range(base, base + s):
                amps[x] *= inv_norm
                amps[x + s] = 0.0
        else:
            for x in range(base, base + s):
                amps[x] = 0.0
                amps[x + s] *= inv_norm


def warmup():
    """Trigger JIT compilation once (cached to disk afterwards)."""
    a = np.zeros(8, dtype=np.complex128)
    a[0] = 1.0
    g = np.eye(4, dtype=np.complex128)
    apply_two_qubit_inplace(a, g, 4, 2)
    branch_weights(a, 4)
    collapse_bit_inplace(a, 4, 0, 1.0)
