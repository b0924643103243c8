"""Geometry of the permissible (entangling power, gate typicality) region.

Presentation-only: boundary curves of the gate region, used for masking
interpolated heatmaps and drawing the outline. Vertices: identity (0, 0),
CNOT (2/3, 1/3), iSWAP (2/3, 2/3), SWAP (0, 1).
"""

import numpy as np

EP_MAX = 2.0 / 3.0
VERTICES = {
    "I": (0.0, 0.0),
    "CNOT": (EP_MAX, 1.0 / 3.0),
    "iSWAP": (EP_MAX, 2.0 / 3.0),
    "SWAP": (0.0, 1.0),
}


def inside(e_p, g_t, tol: float = 1e-9):
    """Vectorized membership test for the permissible region."""
    e_p = np.asarray(e_p)
    g_t = np.asarray(g_t)
    return (
        (e_p >= 2.0 * g_t * (1.0 - g_t) - tol)
        & (e_p <= 2.0 * g_t + tol)
        & (e_p <= 2.0 * (1.0 - g_t) + tol)
        & (e_p <= EP_MAX + tol)
    )


def boundary_path(n: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """Closed boundary polyline (e_p, g_t), counter-clockwise from identity."""
    g_lower = np.linspace(0.0, 1.0 / 3.0, n // 4)
    g_right = np.linspace(1.0 / 3.0, 2.0 / 3.0, n // 4)
    g_upper = np.linspace(2.0 / 3.0, 1.0, n // 4)
    g_parab = np.linspace(1.0, 0.0, n // 4)
    e = np.concatenate(
        [2.0 * g_lower, np.full(g_right.size, EP_MAX), 2.0 * (1.0 - g_upper),
         2.0 * g_parab * (1.0 - g_parab)]
    )
    g = np.concatenate([g_lower, g_right, g_upper, g_parab])
    return e, g
