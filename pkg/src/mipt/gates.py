"""Two-qubit interaction cores and their local-unitary invariants.

A two-qubit gate class is fixed (up to single-qubit "dressing") by three
Cartan angles (c1, c2, c3) inside the Weyl chamber
``0 <= c3 <= c2 <= c1 <= pi/2``; the interaction core is

    exp(-(i/2) * (c1 XX + c2 YY + c3 ZZ))

with XX = sigma_x (x) sigma_x etc. The two scalar invariants used throughout
are the entangling power ``e_p`` (in [0, 2/3] for qubits) and the gate
typicality ``g_t`` (in [0, 1]), both functions of the operator Schmidt
spectrum of the gate and of the gate times SWAP.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonUnitaryError, OutsideRegionError, WeylOrderError

# Linear operator entanglement of SWAP: 1 - 1/d^2 at d=2. This is the
# normalization constant in the e_p / g_t definitions, exact by construction.
E_SWAP = 0.75

_ORDER_TOL = 1e-12
# Clamping tolerance for the quadratic roots of the inverse map; boundary
# edges (e.g. the CNOT-iSWAP line) produce zero discriminants up to round-off.
_ROOT_CLAMP = 1e-12

SWAP_GATE = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)
CNOT_GATE = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)
ISWAP_GATE = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)

# Bell ("magic") basis columns: common eigenvectors of XX, YY, ZZ, with the
# sign table of their eigenvalues alongside.
_BELL = np.array(
    [
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, -1],
        [1, -1, 0, 0],
    ],
    dtype=np.complex128,
) / math.sqrt(2)
_BELL_SIGNS = np.array(
    [
        [1, -1, 1],   # (|00>+|11>)/sqrt2
        [-1, 1, 1],   # (|00>-|11>)/sqrt2
        [1, 1, -1],   # (|01>+|10>)/sqrt2
        [-1, -1, -1], # (|01>-|10>)/sqrt2
    ],
    dtype=np.float64,
)


@dataclass(frozen=True)
class CartanCoeffs:
    """Cartan angles (radians) of a two-qubit interaction core."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        c1, c2, c3 = self.c1, self.c2, self.c3
        if not (
            -_ORDER_TOL <= c3
            and c3 <= c2 + _ORDER_TOL
            and c2 <= c1 + _ORDER_TOL
            and c1 <= math.pi / 2 + _ORDER_TOL
        ):
            raise WeylOrderError(
                f"coefficients ({c1}, {c2}, {c3}) violate 0 <= c3 <= c2 <= c1 <= pi/2"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class GateInvariants:
    """Entangling power, gate typicality, and the two operator entanglements."""

    e_p: float
    g_t: float
    E_U: float
    E_US: float

    @property
    def is_dual_unitary(self) -> bool:
        return self.E_U >= E_SWAP - 1e-9

    @property
    def is_t_dual(self) -> bool:
        return self.E_US >= E_SWAP - 1e-9


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Operator Schmidt coefficients of a two-qubit gate, sorted descending."""

    lambdas: tuple[float, float, float, float]


# Named Weyl chamber points and the boundary families of the invariant plane.

def identity_coeffs() -> CartanCoeffs:
    return CartanCoeffs(0.0, 0.0, 0.0)


def cnot_coeffs() -> CartanCoeffs:
    return CartanCoeffs(math.pi / 2, 0.0, 0.0)


def iswap_coeffs() -> CartanCoeffs:
    return CartanCoeffs(math.pi / 2, math.pi / 2, 0.0)


def swap_coeffs() -> CartanCoeffs:
    return CartanCoeffs(math.pi / 2, math.pi / 2, math.pi / 2)


def swap_power_coeffs(alpha: float) -> CartanCoeffs:
    """SWAP**alpha family: c1 = c2 = c3 = alpha*pi/2, alpha in [0, 1]."""
    a = alpha * math.pi / 2
    return CartanCoeffs(a, a, a)


def cnot_power_coeffs(alpha: float) -> CartanCoeffs:
    """CNOT**alpha family: c1 = alpha*pi/2, c2 = c3 = 0."""
    return CartanCoeffs(alpha * math.pi / 2, 0.0, 0.0)


def swap_iswap_line_coeffs(alpha: float) -> CartanCoeffs:
    """(SWAP)^alpha (iSWAP)^(1-alpha) family: c1 = c2 = pi/2, c3 = alpha*pi/2."""
    return CartanCoeffs(math.pi / 2, math.pi / 2, alpha * math.pi / 2)


def cnot_iswap_line_coeffs(alpha: float) -> CartanCoeffs:
    """(CNOT)^(1-alpha) (iSWAP)^alpha family: c1 = pi/2, c2 = alpha*pi/2, c3 = 0."""
    return CartanCoeffs(math.pi / 2, alpha * math.pi / 2, 0.0)


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    d = u.shape[0]
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(d))) < tol)


def phase_insensitive_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over phi of the Frobenius norm  || a - e^{i phi} b ||."""
    na = np.sum(np.abs(a) ** 2).real
    nb = np.sum(np.abs(b) ** 2).real
    ov = abs(np.trace(a.conj().T @ b))
    return float(math.sqrt(max(na + nb - 2 * ov, 0.0)))


def cartan_gate(c: CartanCoeffs) -> np.ndarray:
    """Interaction core exp(-(i/2)(c1 XX + c2 YY + c3 ZZ)).

    Computed exactly in the Bell basis, where XX, YY and ZZ are simultaneously
    diagonal, rather than through a generic matrix exponential.
    """
    phases = np.exp(-0.5j * (_BELL_SIGNS @ np.array(c.as_tuple())))
    return (_BELL * phases) @ _BELL.conj().T


def haar_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed 2x2 unitary (QR of a complex Gaussian, phases fixed)."""
    return haar_su2_batch(1, rng)[0]


def haar_su2_batch(n: int, rng: np.random.Generator) -> np.ndarray:
    """n Haar 2x2 unitaries as an (n, 2, 2) array."""
    z = rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))
    q, r = np.linalg.qr(z)
    d = np.einsum("nii->ni", r)
    return q * (d / np.abs(d))[:, None, :]


def dress_gate(
    core: np.ndarray,
    u_k: np.ndarray,
    u_k1: np.ndarray,
    w_k: np.ndarray,
    w_k1: np.ndarray,
) -> np.ndarray:
    """(w_k (x) w_k1) . core . (u_k (x) u_k1), validating unitarity of the inputs."""
    for name, u in (("core", core), ("u_k", u_k), ("u_k1", u_k1), ("w_k", w_k), ("w_k1", w_k1)):
        if not is_unitary(u):
            raise NonUnitaryError(f"{name} is not unitary")
    return np.kron(w_k, w_k1) @ core @ np.kron(u_k, u_k1)


def operator_schmidt(gate: np.ndarray) -> SchmidtSpectrum:
    """Operator Schmidt coefficients lambda_i of a 4x4 matrix.

    These are the squared singular values of the realigned matrix
    R[(a,c),(b,d)] = U[(a,b),(c,d)]; for a unitary they sum to d^2 = 4.
    """
    r = np.asarray(gate, dtype=np.complex128).reshape(2, 2, 2, 2)
    r = r.transpose(0, 2, 1, 3).reshape(4, 4)
    sv = np.linalg.svd(r, compute_uv=False)
    lam = np.sort(sv**2)[::-1]
    return SchmidtSpectrum(tuple(float(x) for x in lam))


def linear_operator_entanglement(gate: np.ndarray) -> float:
    """Linear-entropy operator entanglement 1 - sum(lambda_i^2)/d^4 (d = 2)."""
    lam = np.array(operator_schmidt(gate).lambdas)
    return float(1.0 - np.sum(lam**2) / 16.0)


def invariants_from_gate(gate: np.ndarray) -> GateInvariants:
    """(e_p, g_t) of a unitary via the operator-Schmidt route.

    e_p = [E(U) + E(US) - E(S)] / E(S)    (range [0, 2/3] for qubits)
    g_t = [E(U) - E(US) + E(S)] / (2 E(S)) (range [0, 1])
    """
    e_u = linear_operator_entanglement(gate)
    e_us = linear_operator_entanglement(gate @ SWAP_GATE)
    e_p = (e_u + e_us - E_SWAP) / E_SWAP
    g_t = (e_u - e_us + E_SWAP) / (2 * E_SWAP)
    return GateInvariants(e_p=e_p, g_t=g_t, E_U=e_u, E_US=e_us)


def invariants_from_cartan(c: CartanCoeffs) -> GateInvariants:
    """(e_p, g_t) from the Cartan angles in closed form.

    e_p = (2/3)(sin^2 c1 cos^2 c2 + sin^2 c2 cos^2 c3 + sin^2 c3 cos^2 c1)
    g_t = (1/3)(sin^2 c1 + sin^2 c2 + sin^2 c3)

    E(U) and E(US) follow by inverting the two linear relations above.
    """
    s1, s2, s3 = (math.sin(x) ** 2 for x in c.as_tuple())
    k1, k2, k3 = 1 - s1, 1 - s2, 1 - s3
    e_p = (2.0 / 3.0) * (s1 * k2 + s2 * k3 + s3 * k1)
    g_t = (s1 + s2 + s3) / 3.0
    e_u = E_SWAP * (e_p + 2 * g_t) / 2.0
    e_us = E_SWAP * (2 + e_p - 2 * g_t) / 2.0
    return GateInvariants(e_p=e_p, g_t=g_t, E_U=e_u, E_US=e_us)


def _clamped_unit_roots(s: float, prod: float) -> tuple[float, float] | None:
    """Roots of z^2 - s z + prod when both lie in [0, 1] (within clamping)."""
    disc = s * s - 4.0 * prod
    if disc < -_ROOT_CLAMP:
        return None
    r = math.sqrt(max(disc, 0.0))
    hi, lo = (s + r) / 2.0, (s - r) / 2.0
    if hi > 1.0 + _ROOT_CLAMP or lo < -_ROOT_CLAMP:
        return None
    return min(hi, 1.0), max(lo, 0.0)


def _asin_sqrt(x: float) -> float:
    return math.asin(math.sqrt(min(max(x, 0.0), 1.0)))


def cartan_from_invariants(e_p: float, g_t: float) -> CartanCoeffs:
    """Weyl chamber point realizing a feasible (e_p, g_t) pair.

    Solved face by face, in a fixed preference order; within each face the
    invariant formulas reduce to a quadratic in sin^2 of the free angles:

    * face c3 = 0:       sin^2 c1 + sin^2 c2 = 3 g_t,
                         sin^2 c1 * sin^2 c2 = 3 g_t - (3/2) e_p
    * face c1 = pi/2:    sin^2 c2 + sin^2 c3 = 3 g_t - 1,
                         sin^2 c2 * sin^2 c3 = 1 - (3/2) e_p
    * face c1 = c2:      sin^2 c1 = g_t + sqrt(g_t^2 - g_t + e_p/2),
                         sin^2 c3 = 3 g_t - 2 sin^2 c1

    The first two faces alone miss a band along the fractional-SWAP parabola
    e_p = 2 g_t (1 - g_t); the third face closes it, so feasibility here is
    exactly membership in the permissible region of the invariant plane. The
    larger quadratic root goes to the earlier coefficient, which keeps the
    Weyl ordering. Raises OutsideRegionError if no face has a solution.
    """
    if not (-_ROOT_CLAMP <= e_p <= 2.0 / 3.0 + _ROOT_CLAMP) or not (
        -_ROOT_CLAMP <= g_t <= 1.0 + _ROOT_CLAMP
    ):
        raise OutsideRegionError(f"(e_p={e_p}, g_t={g_t}) outside [0,2/3]x[0,1]")

    roots = _clamped_unit_roots(3.0 * g_t, 3.0 * g_t - 1.5 * e_p)
    if roots is not None:
        a, b = roots
        return CartanCoeffs(_asin_sqrt(a), _asin_sqrt(b), 0.0)

    roots = _clamped_unit_roots(3.0 * g_t - 1.0, 1.0 - 1.5 * e_p)
    if roots is not None:
        b, cc = roots
        return CartanCoeffs(math.pi / 2, _asin_sqrt(b), _asin_sqrt(cc))

    rad = g_t * g_t - g_t + e_p / 2.0
    if rad >= -_ROOT_CLAMP:
        s = g_t + math.sqrt(max(rad, 0.0))
        v = 3.0 * g_t - 2.0 * s
        if s <= 1.0 + _ROOT_CLAMP and -_ROOT_CLAMP <= v <= s + _ROOT_CLAMP:
            s = min(s, 1.0)
            v = min(max(v, 0.0), s)
            c1 = _asin_sqrt(s)
            return CartanCoeffs(c1, c1, _asin_sqrt(v))

    raise OutsideRegionError(
        f"(e_p={e_p}, g_t={g_t}) is outside the permissible gate region"
    )


def is_feasible(e_p: float, g_t: float) -> bool:
    """Whether some two-qubit gate realizes the pair (e_p, g_t)."""
    try:
        cartan_from_invariants(e_p, g_t)
        return True
    except OutsideRegionError:
        return False
