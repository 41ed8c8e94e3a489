"""Grover search, simulated on the full statevector and in the 2D rotation picture."""
from __future__ import annotations

from dataclasses import dataclass
from math import acos, ceil, pi, sin, sqrt

import numpy as np

from .majorder import DEFAULT_TOL, Trace, compare
from .statevec import StateVector, probabilities, uniform_superposition


@dataclass
class GroverConfig:
    n: int
    target: int
    max_iters: int
    initial: StateVector | None = None  # None: uniform superposition

    def __post_init__(self):
        if not 0 <= self.target < (1 << self.n):
            raise ValueError(f"target {self.target} out of range for n={self.n}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.initial is not None and self.initial.n != self.n:
            raise ValueError(
                f"initial state has {self.initial.n} qubits, config has {self.n}"
            )


def oracle_reflect(s: StateVector, y0: int) -> None:
    if not 0 <= y0 < s.dim:
        raise IndexError(f"target {y0} out of range")
    s.amps[y0] = -s.amps[y0]


def diffusion(s: StateVector) -> None:
    """Inversion about the mean, ``2|s><s| - 1``."""
    a = s.amps
    mean = a.mean()
    a *= -1
    a += 2 * mean


def kernel(s: StateVector, y0: int) -> None:
    oracle_reflect(s, y0)
    diffusion(s)


def run(cfg: GroverConfig) -> Trace:
    state = cfg.initial.copy() if cfg.initial is not None else uniform_superposition(cfg.n)
    trace = Trace("grover", cfg.n)
    trace.add("m=0", probabilities(state))
    for m in range(1, cfg.max_iters + 1):
        kernel(state, cfg.target)
        trace.add(f"m={m}", probabilities(state))
    return trace


def boosted_start(n: int, target: int, boost: int | None = None) -> StateVector:
    """Uniform amplitudes except one non-target entry doubled, renormalized.

    Breaks the symmetry of the off-target subspace; used as the fixed
    counterexample start.
    """
    N = 1 << n
    if boost is None:
        boost = (target + 1) % N
    if boost == target:
        raise ValueError("boosted entry must differ from the target")
    a = np.ones(N, dtype=np.complex128)
    a[boost] = 2.0
    return StateVector(n, a / np.linalg.norm(a))


@dataclass(frozen=True)
class ReducedModel:
    N: int
    theta: float

    @classmethod
    def for_size(cls, N: int) -> "ReducedModel":
        if N < 2:
            raise ValueError("N must be >= 2")
        return cls(N, acos(1 - 2 / N))


def reduced_success_amplitude(model: ReducedModel, m: int) -> float:
    # K is a rotation by theta; |s> starts at angle theta/2 from |y0_perp>
    # since sin(theta/2) = 1/sqrt(N)
    if m < 0:
        raise ValueError("m must be >= 0")
    return sin((2 * m + 1) * model.theta / 2)


def optimal_iterations(N: int) -> int:
    """Kernel count (at least one) at the first maximum of the success probability.

    Later revivals of the rotation are not considered.
    """
    model = ReducedModel.for_size(N)
    best_m, best_p = 1, reduced_success_amplitude(model, 1) ** 2
    for m in range(2, ceil(pi * sqrt(N)) + 1):
        p = reduced_success_amplitude(model, m) ** 2
        if p < best_p - 1e-12:
            break
        if p > best_p + 1e-12:
            best_m, best_p = m, p
    return best_m


def symmetric_list(p: float, N: int) -> np.ndarray:
    rest = (1.0 - p) / (N - 1)
    return np.concatenate([[p], np.full(N - 1, rest)])


def check_symmetric_step(p: float, p_next: float, N: int, tol: float = DEFAULT_TOL) -> bool:
    """Whether one step ``p -> p_next`` majorizes the symmetric probability lists.

    ``p <= p_next`` implies every partial-sum inequality of the symmetric
    lists; the lists are compared explicitly as well.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    rising = p <= p_next + tol
    verdict = compare(symmetric_list(p, N), symmetric_list(p_next, N), tol)
    return rising and verdict.relation.is_forward


def theorem_window(trace: Trace, N: int) -> Trace:
    """Snapshots from the start up to the optimal iteration count."""
    return trace.window(min(optimal_iterations(N), len(trace) - 1))

