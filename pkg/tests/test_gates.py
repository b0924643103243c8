"""Gate construction, operator Schmidt spectra, and LU-invariant tests."""

import math

import numpy as np
import pytest

from mipt import gates
from mipt.errors import NonUnitaryError, OutsideRegionError, WeylOrderError
from mipt.gates import (
    CartanCoeffs,
    CNOT_GATE,
    E_SWAP,
    ISWAP_GATE,
    SWAP_GATE,
    cartan_from_invariants,
    cartan_gate,
    cnot_coeffs,
    dress_gate,
    haar_su2,
    haar_su2_batch,
    identity_coeffs,
    invariants_from_cartan,
    invariants_from_gate,
    is_feasible,
    iswap_coeffs,
    linear_operator_entanglement,
    operator_schmidt,
    phase_insensitive_distance,
    swap_coeffs,
    swap_power_coeffs,
)

PI_2 = math.pi / 2


def random_weyl_point(rng) -> CartanCoeffs:
    c = np.sort(rng.random(3) * PI_2)[::-1]
    return CartanCoeffs(*c)


def test_cartan_gate_zero_is_identity():
    assert np.max(np.abs(cartan_gate(identity_coeffs()) - np.eye(4))) < 1e-14


def test_cartan_gate_swap_point():
    u = cartan_gate(swap_coeffs())
    expected = np.exp(-1j * math.pi / 4) * SWAP_GATE
    assert np.max(np.abs(u - expected)) < 1e-12


def test_cartan_gate_cnot_class_invariants():
    inv = invariants_from_gate(cartan_gate(cnot_coeffs()))
    assert abs(inv.e_p - 2 / 3) < 1e-10
    assert abs(inv.g_t - 1 / 3) < 1e-10


def test_cartan_gate_unitary():
    rng = np.random.default_rng(0)
    for _ in range(25):
        u = cartan_gate(random_weyl_point(rng))
        assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-12


def test_cartan_ordering_enforced():
    with pytest.raises(WeylOrderError):
        CartanCoeffs(0.1, 0.5, 0.2)
    with pytest.raises(WeylOrderError):
        CartanCoeffs(2.0, 0.5, 0.2)
    with pytest.raises(WeylOrderError):
        CartanCoeffs(0.5, 0.2, -0.1)


def test_haar_su2_unitarity_and_column_uniformity():
    rng = np.random.default_rng(1)
    us = haar_su2_batch(100_000, rng)
    eye = np.eye(2)
    sample = us[:200]
    assert np.max(np.abs(np.swapaxes(sample.conj(), 1, 2) @ sample - eye)) < 1e-12
    m = np.mean(np.abs(us[:, 0, 0]) ** 2)
    # |u00|^2 is uniform on [0, 1]: variance 1/12
    se = np.sqrt(1 / 12 / us.shape[0])
    assert abs(m - 0.5) < 3 * se


def _haar_u2_by_angles(n, rng):
    """Independent Haar U(2) sampler from the explicit angle parameterization."""
    theta = np.arccos(np.sqrt(rng.random(n)))
    alpha, beta, gamma = (rng.random(n) * 2 * np.pi for _ in range(3))
    c, s = np.cos(theta), np.sin(theta)
    u = np.empty((n, 2, 2), dtype=np.complex128)
    u[:, 0, 0] = np.exp(1j * alpha) * c
    u[:, 0, 1] = np.exp(1j * beta) * s
    u[:, 1, 0] = -np.exp(-1j * beta) * s
    u[:, 1, 1] = np.exp(-1j * alpha) * c
    return u * np.exp(1j * gamma)[:, None, None]


def test_haar_su2_trace_statistic_vs_independent_sampler():
    rng = np.random.default_rng(2)
    n = 100_000
    t_qr = np.abs(np.trace(haar_su2_batch(n, rng), axis1=1, axis2=2)) ** 2 / 4
    t_ref = np.abs(np.trace(_haar_u2_by_angles(n, rng), axis1=1, axis2=2)) ** 2 / 4
    se = np.sqrt(np.var(t_ref) / n)
    assert abs(t_qr.mean() - 0.25) < 3 * np.sqrt(np.var(t_qr) / n)
    assert abs(t_qr.mean() - t_ref.mean()) < 3 * np.sqrt(2) * se


def test_haar_su2_single_is_unitary():
    u = haar_su2(np.random.default_rng(3))
    assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-12


def test_dress_gate_identity_locals():
    core = cartan_gate(iswap_coeffs())
    eye = np.eye(2, dtype=np.complex128)
    assert np.array_equal(dress_gate(core, eye, eye, eye, eye), core)


def test_dress_gate_preserves_invariants():
    rng = np.random.default_rng(4)
    for _ in range(100):
        core = cartan_gate(random_weyl_point(rng))
        dressed = dress_gate(core, *(haar_su2(rng) for _ in range(4)))
        inv_core = invariants_from_gate(core)
        inv_dressed = invariants_from_gate(dressed)
        assert abs(inv_core.e_p - inv_dressed.e_p) < 1e-10
        assert abs(inv_core.g_t - inv_dressed.g_t) < 1e-10


def test_dress_identity_core_has_no_operator_entanglement():
    rng = np.random.default_rng(5)
    dressed = dress_gate(np.eye(4, dtype=np.complex128), *(haar_su2(rng) for _ in range(4)))
    assert abs(linear_operator_entanglement(dressed)) < 1e-10


def test_dress_gate_rejects_non_unitary():
    bad = np.ones((2, 2), dtype=np.complex128)
    eye = np.eye(2, dtype=np.complex128)
    with pytest.raises(NonUnitaryError):
        dress_gate(np.eye(4, dtype=np.complex128), bad, eye, eye, eye)


def test_operator_schmidt_known_spectra():
    assert np.allclose(operator_schmidt(np.eye(4)).lambdas, (4, 0, 0, 0), atol=1e-10)
    assert np.allclose(operator_schmidt(SWAP_GATE).lambdas, (1, 1, 1, 1), atol=1e-10)
    assert np.allclose(operator_schmidt(CNOT_GATE).lambdas, (2, 2, 0, 0), atol=1e-10)


def test_operator_schmidt_sums_to_four():
    rng = np.random.default_rng(6)
    for _ in range(20):
        u = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
        assert abs(sum(operator_schmidt(u).lambdas) - 4.0) < 1e-9


def test_linear_operator_entanglement_landmarks():
    assert abs(linear_operator_entanglement(np.eye(4))) < 1e-12
    assert abs(linear_operator_entanglement(SWAP_GATE) - 0.75) < 1e-12
    assert abs(linear_operator_entanglement(CNOT_GATE) - 0.5) < 1e-12


def test_invariants_from_gate_landmarks():
    for gate, e_p, g_t in [
        (SWAP_GATE, 0.0, 1.0),
        (CNOT_GATE, 2 / 3, 1 / 3),
        (np.eye(4, dtype=np.complex128), 0.0, 0.0),
        (ISWAP_GATE, 2 / 3, 2 / 3),
    ]:
        inv = invariants_from_gate(gate)
        assert abs(inv.e_p - e_p) < 1e-10
        assert abs(inv.g_t - g_t) < 1e-10


def test_invariants_from_cartan_landmarks():
    inv = invariants_from_cartan(swap_power_coeffs(0.5))
    assert abs(inv.e_p - 0.5) < 1e-12 and abs(inv.g_t - 0.5) < 1e-12
    inv = invariants_from_cartan(iswap_coeffs())
    assert abs(inv.e_p - 2 / 3) < 1e-12 and abs(inv.g_t - 2 / 3) < 1e-12


def test_invariant_paths_agree():
    rng = np.random.default_rng(7)
    for _ in range(100):
        c = random_weyl_point(rng)
        a = invariants_from_cartan(c)
        b = invariants_from_gate(cartan_gate(c))
        assert abs(a.e_p - b.e_p) < 1e-10
        assert abs(a.g_t - b.g_t) < 1e-10
        assert abs(a.E_U - b.E_U) < 1e-10
        assert abs(a.E_US - b.E_US) < 1e-10


def test_dual_line_maximal_operator_entanglement():
    rng = np.random.default_rng(8)
    for c3 in rng.random(20) * PI_2:
        inv = invariants_from_cartan(CartanCoeffs(PI_2, PI_2, float(c3)))
        assert abs(inv.E_U - E_SWAP) < 1e-10


def test_t_dual_line_maximal_swapped_entanglement():
    rng = np.random.default_rng(9)
    for c1 in rng.random(20) * PI_2:
        inv = invariants_from_cartan(CartanCoeffs(float(c1), 0.0, 0.0))
        assert abs(inv.E_US - E_SWAP) < 1e-10


def test_invariant_ranges_over_chamber():
    rng = np.random.default_rng(10)
    for _ in range(10_000):
        inv = invariants_from_cartan(random_weyl_point(rng))
        assert -1e-12 <= inv.e_p <= 2 / 3 + 1e-12
        assert -1e-12 <= inv.g_t <= 1 + 1e-12


def test_monte_carlo_entangling_power():
    # Average linear entropy generated on Haar product pairs, scaled by
    # (d+1)/(d-1) = 3, against the closed form. 3 sigma, 10 Weyl points.
    rng = np.random.default_rng(11)
    n = 10_000
    for _ in range(10):
        c = random_weyl_point(rng)
        u = cartan_gate(c)
        a = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
        b = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
        a /= np.linalg.norm(a, axis=1, keepdims=True)
        b /= np.linalg.norm(b, axis=1, keepdims=True)
        prod = np.einsum("na,nb->nab", a, b).reshape(n, 4)
        out = prod @ u.T
        m = out.reshape(n, 2, 2)
        # linear entropy of a two-qubit pure state is 2 |det(m)|^2
        lin_ent = 2 * np.abs(np.linalg.det(m)) ** 2
        est = 3 * lin_ent.mean()
        se = 3 * lin_ent.std(ddof=1) / np.sqrt(n)
        assert abs(est - invariants_from_cartan(c).e_p) < 3 * se


def test_cartan_from_invariants_vertices():
    c = cartan_from_invariants(2 / 3, 1 / 3)
    assert np.allclose(c.as_tuple(), (PI_2, 0, 0), atol=1e-10)
    assert cartan_from_invariants(0.0, 0.0).as_tuple() == (0.0, 0.0, 0.0)
    assert np.allclose(cartan_from_invariants(2 / 3, 2 / 3).as_tuple(), (PI_2, PI_2, 0), atol=1e-10)
    assert np.allclose(cartan_from_invariants(0.0, 1.0).as_tuple(), (PI_2, PI_2, PI_2), atol=1e-10)


def test_cartan_from_invariants_needs_third_face():
    # (0.5, 0.5) sits on the fractional-SWAP parabola, out of reach of the
    # c3 = 0 and c1 = pi/2 faces.
    c = cartan_from_invariants(0.5, 0.5)
    assert np.allclose(c.as_tuple(), (math.pi / 4,) * 3, atol=1e-10)
    c = cartan_from_invariants(0.33, 0.2)
    inv = invariants_from_cartan(c)
    assert abs(inv.e_p - 0.33) < 1e-9 and abs(inv.g_t - 0.2) < 1e-9


def test_cartan_from_invariants_outside_region():
    with pytest.raises(OutsideRegionError):
        cartan_from_invariants(0.7, 0.5)
    with pytest.raises(OutsideRegionError):
        cartan_from_invariants(0.31, 0.2)  # left of the parabola
    assert not is_feasible(0.1, 0.9)


def sample_plane_points(n, seed):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        e_p, g_t = rng.random() * (2 / 3), rng.random()
        if is_feasible(e_p, g_t):
            pts.append((e_p, g_t))
    return pts


def test_inverse_map_round_trip_over_plane():
    for e_p, g_t in sample_plane_points(614, seed=12):
        inv = invariants_from_cartan(cartan_from_invariants(e_p, g_t))
        assert abs(inv.e_p - e_p) < 1e-9
        assert abs(inv.g_t - g_t) < 1e-9


def test_phase_insensitive_distance():
    rng = np.random.default_rng(13)
    u = cartan_gate(random_weyl_point(rng))
    assert phase_insensitive_distance(u, np.exp(0.7j) * u) < 1e-12
    assert phase_insensitive_distance(np.eye(4), SWAP_GATE) > 1.0
