"""Phase estimation with a majorization checkpoint after every gate.

The eigenvector register is never stored: a controlled ``U**(2**j)`` acting
on an eigenvector of ``U`` with eigenvalue ``exp(-2 pi i phi)`` only deposits
the phase ``exp(-2 pi i 2**j phi)`` on control qubit ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, pi

import numpy as np

from .majorder import Trace, prob_vector
from .statevec import (
    Hadamard,
    Phase,
    StateVector,
    Swap,
    apply_gate,
    from_basis,
    probabilities,
    qft_gate_sequence,
)


@dataclass(frozen=True)
class QpeConfig:
    n: int
    phi: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.phi < 1.0:
            raise ValueError(f"phi must lie in [0, 1), got {self.phi}")


def slice_labels(n: int) -> list[str]:
    """Checkpoint labels: t0..tn, then t{n}|1.. inside the QFT, then t{n+1}."""
    n_qft = n + n * (n - 1) // 2
    return (
        [f"t{m}" for m in range(n + 1)]
        + [f"t{n}|{g}" for g in range(1, n_qft)]
        + [f"t{n + 1}"]
    )


def prepare_kickback(cfg: QpeConfig, record: Trace | None = None) -> StateVector:
    n = cfg.n
    state = from_basis(n, 0)
    for q in range(n):
        apply_gate(state, Hadamard(q))
    if record is not None:
        record.add("t0", probabilities(state))
    for j in range(n):
        # phase is taken mod 1 before scaling to keep the angle small
        apply_gate(state, Phase(j, -2 * pi * ((2 ** j * cfg.phi) % 1.0)))
        if record is not None:
            record.add(f"t{j + 1}", probabilities(state))
    return state


def run_qpe(cfg: QpeConfig) -> Trace:
    n = cfg.n
    trace = Trace("qpe", n)
    state = prepare_kickback(cfg, trace)
    gates = qft_gate_sequence(n, swaps=False)
    swaps = [g for g in qft_gate_sequence(n) if isinstance(g, Swap)]
    for g_idx, g in enumerate(gates, start=1):
        apply_gate(state, g)
        if g_idx < len(gates):
            trace.add(f"t{n}|{g_idx}", probabilities(state))
    # the bit-reversal swaps only permute outcomes; fold them into the last slice
    for g in swaps:
        apply_gate(state, g)
    trace.add(f"t{n + 1}", probabilities(state))
    return trace


def final_distribution(cfg: QpeConfig) -> np.ndarray:
    """Outcome distribution ``sin^2(2^n pi d) / (2^2n sin^2(pi d))``, d = phi - y/2^n."""
    N = 1 << cfg.n
    delta = cfg.phi - np.arange(N) / N
    den = np.sin(np.pi * delta)
    exact = np.isclose(delta - np.round(delta), 0.0, atol=1e-15)
    p = np.empty(N)
    p[exact] = 1.0
    ok = ~exact
    p[ok] = np.sin(N * np.pi * delta[ok]) ** 2 / (N * N * den[ok] ** 2)
    return prob_vector(p, tol_entry=1e-12)


def direct_sum_distribution(cfg: QpeConfig) -> np.ndarray:
    """Same distribution by explicit summation over x; independent check."""
    N = 1 << cfg.n
    x = np.arange(N)
    y = np.arange(N)[:, None]
    amps = np.exp(-2j * np.pi * x * (cfg.phi - y / N)).sum(axis=1) / N
    return np.abs(amps) ** 2


def interference_value(alpha: float, sign: str) -> float:
    """``|(1 +/- exp(2 pi i alpha)) / sqrt(2)|^2 = 1 +/- cos(2 pi alpha)``."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    z = (1 + (1 if sign == "+" else -1) * np.exp(2j * np.pi * alpha)) / np.sqrt(2)
    return float(abs(z) ** 2)


def interference_inequality(alpha: float, sign: str) -> bool:
    return interference_value(alpha, sign) >= 1 - 1e-12


def interference_range(sign: str) -> list[tuple[float, float]]:
    """Ranges of alpha where the inequality is guaranteed for ``sign``."""
    if sign == "+":
        return [(0.0, 0.25), (0.75, 1.0)]
    if sign == "-":
        return [(0.25, 0.75)]
    raise ValueError("sign must be '+' or '-'")


def multiplicative_order(a: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(a, modulus) != 1:
        raise ValueError(f"gcd({a}, {modulus}) != 1")
    r, x = 1, a % modulus
    while x != 1:
        x = x * a % modulus
        r += 1
    return r


def order_finding_phase(a: int, modulus: int, s: int = 1) -> float:
    r = multiplicative_order(a, modulus)
    if not 0 <= s < r:
        raise ValueError(f"s must lie in [0, {r})")
    return s / r
