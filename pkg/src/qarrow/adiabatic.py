"""Adiabatic evolution under H(t/T) = (1 - t/T) H0 + (t/T) H1, with hbar = 1.

Two reduced models are provided.  The projector model lives in the 2D span
of the target |0> and its complement; the transverse-field model lives in
the (n+1)-dimensional symmetric subspace spanned by |k>, the normalized sum
of basis states with k qubits set.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb, pi, sqrt

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

from . import _kernels
from .majorder import Trace

NORM_ABORT = 1e-3
SNAPSHOTS_PER_SWEEP = 500


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class InterpolatingHamiltonian:
    """``H(s) = (1 - s) h0 + s h1`` for real symmetric ``h0``, ``h1``."""

    h0: np.ndarray
    h1: np.ndarray

    def __post_init__(self):
        h0 = np.array(self.h0, dtype=float)
        h1 = np.array(self.h1, dtype=float)
        if h0.shape != h1.shape or h0.ndim != 2 or h0.shape[0] != h0.shape[1]:
            raise ValueError("h0 and h1 must be square matrices of equal shape")
        for h in (h0, h1):
            if not np.allclose(h, h.T, rtol=0, atol=1e-12):
                raise ValueError("Hamiltonian terms must be symmetric")
            h.flags.writeable = False
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h1", h1)

    @classmethod
    def constant(cls, h) -> "InterpolatingHamiltonian":
        return cls(h, h)

    @property
    def dim(self) -> int:
        return self.h0.shape[0]

    def eval(self, s: float) -> np.ndarray:
        return (1.0 - s) * self.h0 + s * self.h1

    def max_norm(self) -> float:
        """Spectral norm maximized over s at the endpoints and the midpoint."""
        return max(np.linalg.norm(self.eval(s), 2) for s in (0.0, 0.5, 1.0))


def projector_hamiltonian(n: int) -> InterpolatingHamiltonian:
    """``-(1-s)|s><s| - s|0><0|`` in the basis ``{|0>, |0_perp>}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = 2.0 ** n
    off = sqrt(N - 1) / N
    s_proj = np.array([[1 / N, off], [off, (N - 1) / N]])
    return InterpolatingHamiltonian(-s_proj, -np.diag([1.0, 0.0]))


def number_coupling(n: int) -> np.ndarray:
    """Tridiagonal ``N`` with ``N[j-1, j] = sqrt(j) sqrt(n - j + 1)``."""
    m = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        m[j - 1, j] = m[j, j - 1] = sqrt(j) * sqrt(n - j + 1)
    return m


def farhi_hamiltonian(n: int) -> InterpolatingHamiltonian:
    """Transverse-field driver ``(n/2) I - N`` interpolated to ``-|0><0|``.

    The constant shift of the driver does not affect the dynamics.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    h0 = (n / 2) * np.eye(n + 1) - number_coupling(n)
    h1 = np.zeros((n + 1, n + 1))
    h1[0, 0] = -1.0
    return InterpolatingHamiltonian(h0, h1)


def symmetric_uniform_state(n: int) -> np.ndarray:
    """|s> in the symmetric basis: amplitudes sqrt(C(n, k) / 2**n)."""
    return np.sqrt([comb(n, k) / 2 ** n for k in range(n + 1)]).astype(np.complex128)


def projector_start(n: int) -> np.ndarray:
    N = 2.0 ** n
    return np.array([1 / sqrt(N), sqrt(1 - 1 / N)], dtype=np.complex128)


@dataclass(frozen=True)
class EvolutionConfig:
    T: float
    dt: float
    snapshot_stride: int = 1

    def __post_init__(self):
        if not 0 < self.dt <= self.T:
            raise ValueError(f"need 0 < dt <= T, got dt={self.dt}, T={self.T}")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be >= 1")

    @classmethod
    def for_sweep(cls, H: InterpolatingHamiltonian, T: float,
                  snapshots: int = SNAPSHOTS_PER_SWEEP) -> "EvolutionConfig":
        dt = min(0.01, 0.05 / H.max_norm())
        n_steps = ceil(T / dt)
        return cls(T, T / n_steps, max(1, n_steps // snapshots))

    @property
    def n_steps(self) -> int:
        return max(1, round(self.T / self.dt))


@dataclass
class Evolution:
    times: np.ndarray
    probs: np.ndarray  # one row per recorded step
    final_state: np.ndarray

    @property
    def norm_drift(self) -> float:
        return float(abs(np.linalg.norm(self.final_state) - 1.0))


def integrate(H: InterpolatingHamiltonian, psi0, cfg: EvolutionConfig,
              check_policy: bool = True) -> Evolution:
    """Fixed-step classic RK4 on ``psi' = -i H(t/T) psi``, no renormalization."""
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (H.dim,):
        raise ValueError(f"initial state has shape {psi0.shape}, expected ({H.dim},)")
    if check_policy and cfg.dt * H.max_norm() > 0.05 + 1e-12:
        raise ValueError(f"dt={cfg.dt} violates dt*|H| <= 0.05")
    n_steps = cfg.n_steps
    dt = cfg.T / n_steps
    probs, steps, psi = _kernels.rk4_interp(
        H.h0, H.h1, psi0, float(cfg.T), dt, n_steps, cfg.snapshot_stride
    )
    ev = Evolution(steps * dt, probs, psi)
    if ev.norm_drift > NORM_ABORT or not np.all(np.isfinite(psi)):
        raise IntegrationError(
            f"norm drifted by {ev.norm_drift:.3e} over {n_steps} steps of dt={dt:.3e}"
        )
    return ev


def rk4_evolve(H: InterpolatingHamiltonian, psi0, cfg: EvolutionConfig,
               algorithm: str = "adiabatic", n_qubits: int = 0) -> Trace:
    ev = integrate(H, psi0, cfg)
    trace = Trace(algorithm, n_qubits)
    for t, p in zip(ev.times, ev.probs):
        trace.add(f"t={t:.6g}", p)
    return trace


def expand_symmetric(p_target: float, N: int) -> np.ndarray:
    """Full N-outcome list ``[p, (1-p)/(N-1), ...]`` from the target probability."""
    rest = max(0.0, 1.0 - p_target) / (N - 1)
    return np.concatenate([[p_target], np.full(N - 1, rest)])


def run_projector_sweep(n: int, T: float, cfg: EvolutionConfig | None = None) -> Trace:
    if n > 12:
        raise ValueError("projector sweep is limited to n <= 12")
    H = projector_hamiltonian(n)
    cfg = cfg or EvolutionConfig.for_sweep(H, T)
    ev = integrate(H, projector_start(n), cfg)
    N = 1 << n
    trace = Trace("adiabatic-projector", n)
    for t, p in zip(ev.times, ev.probs):
        trace.add(f"t={t:.6g}", expand_symmetric(p[0] / p.sum(), N))
    return trace


def run_farhi_sweep(n: int, T: float, cfg: EvolutionConfig | None = None) -> Trace:
    if n > 10:
        raise ValueError("symmetric-subspace sweep is limited to n <= 10")
    H = farhi_hamiltonian(n)
    cfg = cfg or EvolutionConfig.for_sweep(H, T)
    ev = integrate(H, symmetric_uniform_state(n), cfg)
    trace = Trace("adiabatic-farhi", n)
    for t, p in zip(ev.times, ev.probs):
        trace.add(f"t={t:.6g}", p / p.sum())
    return trace


def static_hamiltonian(n: int) -> np.ndarray:
    """``-|s><s| - |0><0|`` in the basis ``{|0>, |0_perp>}``."""
    hp = projector_hamiltonian(n)
    return hp.h0 + hp.h1


def static_mixture_success(n: int, t: float) -> float:
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    w, v = np.linalg.eigh(static_hamiltonian(n))
    u = (v * np.exp(-1j * w * t)) @ v.T
    amp = (u @ projector_start(n))[0]
    return float(abs(amp) ** 2)


def run_static_sweep(n: int, T: float, cfg: EvolutionConfig | None = None) -> Trace:
    H = InterpolatingHamiltonian.constant(static_hamiltonian(n))
    cfg = cfg or EvolutionConfig.for_sweep(H, T)
    ev = integrate(H, projector_start(n), cfg)
    N = 1 << n
    trace = Trace("adiabatic-static", n)
    for t, p in zip(ev.times, ev.probs):
        trace.add(f"t={t:.6g}", expand_symmetric(p[0] / p.sum(), N))
    return trace


def projector_gap(n: int, s: float) -> float:
    w = np.linalg.eigvalsh(projector_hamiltonian(n).eval(s))
    return float(w[1] - w[0])


def min_gap_projector(n: int) -> tuple[float, float]:
    """Location and size of the minimum spectral gap over s in [0, 1]."""
    H = projector_hamiltonian(n)
    grid = np.linspace(0.0, 1.0, 10001)
    stack = (1.0 - grid)[:, None, None] * H.h0 + grid[:, None, None] * H.h1
    w = np.linalg.eigvalsh(stack)
    gaps = w[:, 1] - w[:, 0]
    i = int(np.argmin(gaps))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(lambda s: projector_gap(n, s), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    if res.fun < gaps[i]:
        return float(res.x), float(res.fun)
    return float(grid[i]), float(gaps[i])


def ground_state_overlaps(H: InterpolatingHamiltonian, psi0, cfg: EvolutionConfig) -> np.ndarray:
    """|<ground(s)|psi(t)>|^2 at every recorded step.

    Needs amplitudes, so it integrates segment by segment between records.
    """
    psi = np.asarray(psi0, dtype=np.complex128)
    n_steps = cfg.n_steps
    dt = cfg.T / n_steps
    out = []
    k = 0
    while True:
        _, v = np.linalg.eigh(H.eval(k * dt / cfg.T))
        out.append(abs(np.vdot(v[:, 0], psi)) ** 2)
        if k >= n_steps:
            break
        seg = min(cfg.snapshot_stride, n_steps - k)
        psi = _segment(H, psi, cfg.T, dt, k, seg)
        k += seg
    return np.array(out)


def _segment(H, psi, T, dt, k0, n):
    # shift time origin: H(s) is affine in t, so re-base h0 at t = k0 dt
    s0 = k0 * dt / T
    span = n * dt / T
    sub = InterpolatingHamiltonian(H.eval(s0), H.eval(s0 + span))
    _, _, out = _kernels.rk4_interp(sub.h0, sub.h1, psi, n * dt, dt, n, n)
    return out


def success_peak(success) -> int:
    """Index of the first local maximum with prominence above 1e-6.

    Falls back to the last index when the curve never turns over.
    """
    success = np.asarray(success, dtype=float)
    peaks, _ = find_peaks(success, prominence=1e-6)
    return int(peaks[0]) if peaks.size else success.size - 1


def peak_window(trace: Trace) -> Trace:
    success = [trace.probs(i)[0] for i in range(len(trace))]
    return trace.window(success_peak(success))


def fixed_order_partial_sums(trace: Trace) -> np.ndarray:
    """Cumulative sums ``p_0, p_0 + p_1, ...`` in basis order, one row per snapshot.

    For the symmetric-subspace model this is target sector first, then
    increasing Hamming weight.
    """
    return np.cumsum(np.array([p for _, p in trace.snapshots]), axis=1)


def grover_time(n: int) -> float:
    return pi / 2 * 2 ** (n / 2)
