"""Dense statevector kernel for small qubit chains.

Conventions, fixed once for the whole package:

* Qubit 0 is the most significant bit of the basis-state index. For an
  ``L``-qubit register the basis state ``|b_0 b_1 ... b_{L-1}>`` sits at
  index ``sum_q b_q * 2**(L-1-q)``.
* Entropies are in nats (natural logarithm).
* States carry 2**L complex128 amplitudes and stay normalized to 1 within
  1e-10 under every operation here.

Operations mutate the state's amplitude buffer in place and return the same
object; callers that need the previous state must copy first.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BipartitionError, NumericalConsistencyError, SizeError

DEFAULT_MAX_QUBITS = 24

# Schmidt eigenvalues at or below this threshold count as exact zeros.
EIG_CUTOFF = 1e-14


@dataclass
class StateVector:
    """Pure state of ``n_qubits`` qubits as a dense amplitude vector."""

    n_qubits: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def qubit_stride(self, q: int) -> int:
        return 1 << (self.n_qubits - 1 - q)


def _check_size(L: int, max_qubits: int) -> None:
    if L < 2:
        raise SizeError(f"need at least 2 qubits, got L={L}")
    if L > max_qubits:
        raise SizeError(f"L={L} exceeds the memory cap of {max_qubits} qubits")


def basis_state(L: int, index: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Computational basis state ``|index>`` of an L-qubit register."""
    _check_size(L, max_qubits)
    amps = np.zeros(1 << L, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(L, amps)


def haar_random_state(
    L: int, rng: np.random.Generator, max_qubits: int = DEFAULT_MAX_QUBITS
) -> StateVector:
    """Haar-distributed pure state: normalized vector of iid complex Gaussians."""
    _check_size(L, max_qubits)
    dim = 1 << L
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    amps /= np.linalg.norm(amps)
    return StateVector(L, amps)


def apply_two_qubit(state: StateVector, gate: np.ndarray, i: int, j: int) -> StateVector:
    """Apply a 4x4 gate to qubits (i, j); the gate's first tensor factor acts on i.

    Mutates and returns ``state``. The gate is assumed unitary (not checked:
    this is the hot path of the trajectory engine).
    """
    L = state.n_qubits
    if i == j:
        raise IndexError(f"gate needs two distinct qubits, got i=j={i}")
    if not (0 <= i < L and 0 <= j < L):
        raise IndexError(f"qubit index out of range: i={i}, j={j}, L={L}")
    g = np.ascontiguousarray(gate, dtype=np.complex128)
    _kernels.apply_two_qubit_inplace(
        state.amps, g, state.qubit_stride(i), state.qubit_stride(j)
    )
    return state


def measure_z(
    state: StateVector, q: int, rng: np.random.Generator
) -> tuple[int, StateVector]:
    """Projective Pauli-Z measurement of qubit q with Born-rule collapse.

    Returns (outcome, state); the state is projected and renormalized in
    place, leaving qubit q in a product state with the rest.
    """
    L = state.n_qubits
    if not (0 <= q < L):
        raise IndexError(f"qubit index out of range: q={q}, L={L}")
    s = state.qubit_stride(q)
    p0, p1 = _kernels.branch_weights(state.amps, s)
    if p0 < 1e-14 and p1 < 1e-14:
        raise NumericalConsistencyError(
            f"both measurement branches have weight < 1e-14 (p0={p0}, p1={p1})"
        )
    outcome = 0 if rng.random() * (p0 + p1) < p0 else 1
    p_kept = p0 if outcome == 0 else p1
    _kernels.collapse_bit_inplace(state.amps, s, outcome, 1.0 / np.sqrt(p_kept))
    return outcome, state


def half_chain_entropy(state: StateVector) -> float:
    """Von Neumann entropy (nats) of qubits [0, L/2) against [L/2, L).

    Uses the Gram matrix of the 2**(L/2) x 2**(L/2) amplitude matrix, which
    is Hermitian PSD with the Schmidt spectrum as its eigenvalues. Round-off
    eigenvalues at or below 1e-14 contribute zero.
    """
    L = state.n_qubits
    if L % 2 != 0:
        raise BipartitionError(f"half-chain cut needs even L, got L={L}")
    m = state.amps.reshape(1 << (L // 2), -1)
    gram = m @ m.conj().T
    evals = np.linalg.eigvalsh(gram)
    lam = evals[evals > EIG_CUTOFF]
    if lam.size == 0:
        return 0.0
    return float(-(lam * np.log(lam)).sum())


def page_mean_entropy_bound(L: int) -> float:
    """Upper bound (L/2) ln 2 on the half-chain entropy."""
    return (L / 2) * np.log(2.0)
