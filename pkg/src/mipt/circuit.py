"""Hybrid-circuit trajectory engine.

One time step is a brick-wall unitary layer followed by a probabilistic
measurement layer. The unitary layer applies the fixed interaction core to
the odd-sublattice pairs (1,2), (3,4), ... and then the even-sublattice pairs
(2,3), (4,5), ... (1-based site labels, open chain), every application dressed
with four fresh Haar single-qubit unitaries. The measurement layer measures
each qubit independently with probability p. Measured qubits stay in the
register.
"""

import functools
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import EntropyCurve
from .gates import CartanCoeffs, cartan_gate, haar_su2_batch
from .qstate import (
    DEFAULT_MAX_QUBITS,
    StateVector,
    half_chain_entropy,
    haar_random_state,
    measure_z,
)

WORKERS_ENV_VAR = "MIPT_WORKERS"


@dataclass(frozen=True)
class CircuitConfig:
    """One trajectory's parameters; t_steps defaults to 2L when omitted."""

    L: int
    cartan: CartanCoeffs
    p: float
    seed: int
    t_steps: int | None = None
    record_timeseries: bool = False
    max_qubits: int = DEFAULT_MAX_QUBITS

    def __post_init__(self):
        if self.L % 2 != 0 or not (4 <= self.L <= self.max_qubits):
            raise ValueError(f"L must be even with 4 <= L <= {self.max_qubits}, got {self.L}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.t_steps is not None and self.t_steps < 1:
            raise ValueError(f"t_steps must be >= 1, got {self.t_steps}")

    @property
    def steps(self) -> int:
        return 2 * self.L if self.t_steps is None else self.t_steps


@dataclass
class TrajectoryRecord:
    """Outcome of one trajectory."""

    final_entropy: float
    entropy_series: list[float] | None
    n_measurements: int
    seed: int


@functools.lru_cache(maxsize=64)
def _cached_core(coeffs: tuple[float, float, float]) -> np.ndarray:
    return cartan_gate(CartanCoeffs(*coeffs))


def _sublattice_pairs(L: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    odd = [(k, k + 1) for k in range(0, L - 1, 2)]
    even = [(k, k + 1) for k in range(1, L - 1, 2)]
    return odd, even


def _apply_dressed_pairs(state, core, pairs, rng) -> None:
    # One batch of Haar locals per sublattice: per pair the draw order is
    # (u_k, u_k1, w_k, w_k1). The dressed 4x4 gates are composed in bulk.
    n = len(pairs)
    loc = haar_su2_batch(4 * n, rng).reshape(n, 4, 2, 2)
    pre = np.einsum("nab,ncd->nacbd", loc[:, 0], loc[:, 1]).reshape(n, 4, 4)
    post = np.einsum("nab,ncd->nacbd", loc[:, 2], loc[:, 3]).reshape(n, 4, 4)
    dressed = post @ core @ pre
    L = state.n_qubits
    for m, (i, j) in enumerate(pairs):
        _kernels.apply_two_qubit_inplace(
            state.amps,
            np.ascontiguousarray(dressed[m]),
            1 << (L - 1 - i),
            1 << (L - 1 - j),
        )


def brickwall_layer(
    state: StateVector, cartan: CartanCoeffs, rng: np.random.Generator
) -> StateVector:
    """Apply one brick-wall layer V (odd pairs, then even pairs) in place."""
    core = _cached_core(cartan.as_tuple())
    odd, even = _sublattice_pairs(state.n_qubits)
    _apply_dressed_pairs(state, core, odd, rng)
    _apply_dressed_pairs(state, core, even, rng)
    return state


def measurement_layer(
    state: StateVector, p: float, rng: np.random.Generator
) -> tuple[StateVector, int]:
    """Measure each qubit with probability p, in ascending qubit order."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    draws = rng.random(state.n_qubits)
    n_measured = 0
    for q in range(state.n_qubits):
        if draws[q] <= p:
            measure_z(state, q, rng)
            n_measured += 1
    return state, n_measured


def run_trajectory(config: CircuitConfig) -> TrajectoryRecord:
    """Evolve a Haar initial state for `steps` (layer, measurement) rounds.

    Fully deterministic given config.seed; the final entropy is recorded
    after the last measurement layer.
    """
    rng = np.random.default_rng(config.seed)
    state = haar_random_state(config.L, rng, max_qubits=config.max_qubits)
    series: list[float] | None = [] if config.record_timeseries else None
    n_measured = 0
    for _ in range(config.steps):
        brickwall_layer(state, config.cartan, rng)
        _, k = measurement_layer(state, config.p, rng)
        n_measured += k
        if series is not None:
            series.append(half_chain_entropy(state))
    final = series[-1] if series else half_chain_entropy(state)
    return TrajectoryRecord(final, series, n_measured, config.seed)


def child_seed(master_seed: int, p_index: int, traj_index: int) -> int:
    """Counter-based per-trajectory seed, independent of execution order."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(p_index, traj_index))
    return int(ss.generate_state(1, np.uint64)[0])


def _trajectory_entropy(args) -> float:
    L, coeffs, p, t_steps, seed, max_qubits = args
    config = CircuitConfig(
        L=L, cartan=CartanCoeffs(*coeffs), p=p, seed=seed, t_steps=t_steps,
        max_qubits=max_qubits,
    )
    return run_trajectory(config).final_entropy


def default_workers() -> int:
    return max(1, int(os.environ.get(WORKERS_ENV_VAR, "1")))


def sweep(
    L: int,
    cartan: CartanCoeffs,
    p_grid,
    n_traj: int,
    t_steps: int | None = None,
    seed: int = 0,
    n_workers: int | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> EntropyCurve:
    """Mean final entropy over n_traj independent trajectories per p value.

    Per-trajectory seeds depend only on (seed, p-index, trajectory-index), so
    the result is bitwise identical at any worker count; workers reduce in
    task-index order.
    """
    p_grid = np.asarray(list(p_grid), dtype=float)
    if n_traj < 1:
        raise ValueError(f"n_traj must be >= 1, got {n_traj}")
    if np.any((p_grid < 0) | (p_grid > 1)):
        raise ValueError("all p values must lie in [0, 1]")
    if n_workers is None:
        n_workers = default_workers()

    coeffs = cartan.as_tuple()
    tasks = [
        (L, coeffs, float(p_grid[ip]), t_steps, child_seed(seed, ip, it), max_qubits)
        for ip in range(p_grid.size)
        for it in range(n_traj)
    ]
    if n_workers <= 1:
        results = [_trajectory_entropy(t) for t in tasks]
    else:
        import multiprocessing as mp

        _kernels.warmup()  # compile before forking so workers inherit the JIT
        chunk = max(1, len(tasks) // (n_workers * 8))
        with mp.Pool(n_workers) as pool:
            results = list(pool.imap(_trajectory_entropy, tasks, chunksize=chunk))

    ent = np.array(results).reshape(p_grid.size, n_traj)
    mean = ent.mean(axis=1)
    std = ent.std(axis=1, ddof=1) if n_traj > 1 else np.zeros(p_grid.size)
    return EntropyCurve(
        L=L,
        p_values=p_grid,
        mean_entropy=mean,
        std_err=std / np.sqrt(n_traj),
        n_traj=n_traj,
        std_dev=std,
        master_seed=seed,
    )
