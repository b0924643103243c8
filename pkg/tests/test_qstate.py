"""Statevector kernel tests: conventions, gate application, measurement, entropy."""

import numpy as np
import pytest

from mipt import qstate
from mipt.errors import BipartitionError, NumericalConsistencyError, SizeError
from mipt.gates import CNOT_GATE, SWAP_GATE
from mipt.qstate import (
    StateVector,
    apply_two_qubit,
    basis_state,
    haar_random_state,
    half_chain_entropy,
    measure_z,
)

LN2 = np.log(2.0)
H_GATE = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def embed_single(u, side):
    """Lift a 1-qubit gate into a 4x4 two-qubit gate on the given factor."""
    eye = np.eye(2, dtype=np.complex128)
    return np.kron(u, eye) if side == 0 else np.kron(eye, u)


def test_qubit0_is_most_significant_bit():
    # |q0 q1 q2> = |100> must sit at index 4, so measuring qubit 0 yields 1
    # and measuring qubit 2 yields 0.
    rng = np.random.default_rng(0)
    st = basis_state(3, 0b100)
    out0, _ = measure_z(st, 0, rng)
    out2, _ = measure_z(st, 2, rng)
    assert (out0, out2) == (1, 0)
    assert st.qubit_stride(0) == 4 and st.qubit_stride(2) == 1


def test_haar_state_norm_and_length():
    rng = np.random.default_rng(1)
    st = haar_random_state(4, rng)
    assert st.amps.size == 16
    assert abs(st.norm() - 1.0) < 1e-12


def test_haar_state_uniform_basis_weights():
    rng = np.random.default_rng(2)
    n_samples = 10_000
    w = np.zeros(4)
    for _ in range(n_samples):
        st = haar_random_state(2, rng)
        w += np.abs(st.amps) ** 2
    w /= n_samples
    # |amp|^2 of one basis state is Beta(1, 3): variance 3/80
    se = np.sqrt(3.0 / 80.0 / n_samples)
    assert np.all(np.abs(w - 0.25) < 3 * se)


def test_haar_state_size_errors():
    rng = np.random.default_rng(3)
    with pytest.raises(SizeError):
        haar_random_state(1, rng)
    with pytest.raises(SizeError):
        haar_random_state(30, rng)
    haar_random_state(12, rng, max_qubits=12)
    with pytest.raises(SizeError):
        haar_random_state(13, rng, max_qubits=12)


def test_haar_mean_entropy_matches_page_value():
    # Mean half-chain entropy of Haar states at L=12 sits at ~ 6 ln2 - 1/2.
    rng = np.random.default_rng(4)
    vals = [half_chain_entropy(haar_random_state(12, rng)) for _ in range(1500)]
    mean = np.mean(vals)
    se = np.std(vals, ddof=1) / np.sqrt(len(vals))
    assert abs(mean - (6 * LN2 - 0.5)) < 2 * se


def test_swap_on_basis_state():
    st = basis_state(2, 0b01)
    apply_two_qubit(st, SWAP_GATE, 0, 1)
    expect = np.zeros(4, dtype=np.complex128)
    expect[0b10] = 1.0
    assert np.array_equal(st.amps, expect)


def test_identity_gate_is_bitwise_noop():
    rng = np.random.default_rng(5)
    st = haar_random_state(5, rng)
    before = st.amps.copy()
    apply_two_qubit(st, np.eye(4, dtype=np.complex128), 1, 3)
    assert np.array_equal(st.amps, before)


def test_cnot_builds_bell_pair():
    st = basis_state(2, 0)
    apply_two_qubit(st, embed_single(H_GATE, 0), 0, 1)
    apply_two_qubit(st, CNOT_GATE, 0, 1)
    assert abs(half_chain_entropy(st) - LN2) < 1e-10


def test_gate_index_errors():
    st = basis_state(4, 0)
    gate = np.eye(4, dtype=np.complex128)
    with pytest.raises(IndexError):
        apply_two_qubit(st, gate, 2, 2)
    with pytest.raises(IndexError):
        apply_two_qubit(st, gate, 0, 4)
    with pytest.raises(IndexError):
        measure_z(st, 4, np.random.default_rng(0))


def test_gate_application_against_dense_matrix():
    # Cross-check the strided kernel against explicit kron-embedding, for
    # both qubit orderings (i < j and i > j).
    rng = np.random.default_rng(6)
    gate = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
    for i, j in [(0, 2), (2, 0), (1, 3)]:
        st = haar_random_state(4, rng)
        ref = st.amps.copy().reshape([2] * 4)
        g4 = gate.reshape(2, 2, 2, 2)
        ref = np.einsum(g4, [10, 11, i, j], ref, [0, 1, 2, 3], _out_indices(i, j))
        apply_two_qubit(st, gate, i, j)
        assert np.max(np.abs(st.amps - ref.reshape(-1))) < 1e-12


def _out_indices(i, j):
    out = [0, 1, 2, 3]
    out[i] = 10
    out[j] = 11
    return out


def test_measure_eigenstate_is_certain():
    rng = np.random.default_rng(7)
    st = basis_state(3, 0)
    before = st.amps.copy()
    outcome, _ = measure_z(st, 1, rng)
    assert outcome == 0
    assert np.array_equal(st.amps, before)


def test_measure_plus_state_frequencies():
    rng = np.random.default_rng(8)
    n_trials = 10_000
    ones = 0
    plus = np.array([1, 1], dtype=np.complex128) / np.sqrt(2)
    for _ in range(n_trials):
        st = StateVector(2, np.kron(plus, np.array([1, 0], dtype=np.complex128)))
        out, _ = measure_z(st, 0, rng)
        ones += out
    se = 0.5 / np.sqrt(n_trials)
    assert abs(ones / n_trials - 0.5) < 3 * se


def test_measurement_disentangles_bell_pair():
    rng = np.random.default_rng(9)
    st = basis_state(2, 0)
    apply_two_qubit(st, embed_single(H_GATE, 0), 0, 1)
    apply_two_qubit(st, CNOT_GATE, 0, 1)
    measure_z(st, 0, rng)
    assert half_chain_entropy(st) < 1e-12
    assert abs(st.norm() - 1.0) < 1e-12


def test_measure_underflow_raises():
    st = StateVector(2, np.zeros(4, dtype=np.complex128))
    with pytest.raises(NumericalConsistencyError):
        measure_z(st, 0, np.random.default_rng(0))


def test_entropy_product_state_zero():
    rng = np.random.default_rng(10)
    left = haar_random_state(2, rng).amps
    right = haar_random_state(2, rng).amps
    st = StateVector(4, np.kron(left, right))
    assert abs(half_chain_entropy(st)) < 1e-10


def test_entropy_bell_pair_straddling_cut():
    # Bell pair on qubits (1, 2) of a 4-qubit chain, others |0>.
    st = basis_state(4, 0)
    apply_two_qubit(st, embed_single(H_GATE, 0), 1, 2)
    apply_two_qubit(st, CNOT_GATE, 1, 2)
    assert abs(half_chain_entropy(st) - LN2) < 1e-10


@pytest.mark.parametrize("L", [4, 6, 8])
def test_entropy_ghz_state(L):
    amps = np.zeros(1 << L, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    assert abs(half_chain_entropy(StateVector(L, amps)) - LN2) < 1e-10


def test_entropy_needs_even_L():
    with pytest.raises(BipartitionError):
        half_chain_entropy(basis_state(3, 0))


def test_norm_preserved_under_random_circuit():
    rng = np.random.default_rng(11)
    st = haar_random_state(6, rng)
    for _ in range(60):
        q = rng.integers(0, 6)
        if rng.random() < 0.3:
            measure_z(st, q, rng)
        else:
            g = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
            j = (q + 1 + rng.integers(0, 5)) % 6
            apply_two_qubit(st, g, q, j)
        assert abs(st.norm() - 1.0) < 1e-10
        s = half_chain_entropy(st)
        assert -1e-12 <= s <= 3 * LN2 + 1e-10


def test_product_gate_within_one_side_keeps_entropy():
    rng = np.random.default_rng(12)
    for _ in range(10):
        st = haar_random_state(6, rng)
        s0 = half_chain_entropy(st)
        a = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
        b = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
        side = rng.integers(0, 2)
        i, j = (0, 2) if side == 0 else (3, 5)
        apply_two_qubit(st, np.kron(a, b), i, j)
        assert abs(half_chain_entropy(st) - s0) < 1e-10


def _entropy_by_partial_trace(amps, L):
    """Independent route: explicit reduced density matrix of the first half."""
    m = amps.reshape(1 << (L // 2), 1 << (L // 2))
    rho = np.einsum("ab,cb->ac", m, m.conj())
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-14]
    return float(-(w * np.log(w)).sum())


@pytest.mark.parametrize("L", [4, 6])
def test_swap_matches_analytic_relabeling(L):
    rng = np.random.default_rng(13)
    for _ in range(5):
        st = haar_random_state(L, rng)
        i, j = sorted(rng.choice(L, size=2, replace=False))
        permuted = np.moveaxis(
            st.amps.reshape([2] * L), (i, j), (j, i)
        ).reshape(-1)
        apply_two_qubit(st, SWAP_GATE, int(i), int(j))
        assert np.max(np.abs(st.amps - permuted)) < 1e-12
        assert abs(
            half_chain_entropy(st) - _entropy_by_partial_trace(permuted, L)
        ) < 1e-10
