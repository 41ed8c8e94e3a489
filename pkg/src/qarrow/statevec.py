"""Dense n-qubit statevector and the handful of gates the algorithms need.

Basis index ``x = sum_j x_j 2**j``: qubit ``j`` is bit ``j`` of the index.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi
from typing import Union

import numpy as np

from . import _kernels
from .majorder import prob_vector

MAX_QUBITS = 20


@dataclass(frozen=True)
class Hadamard:
    q: int


@dataclass(frozen=True)
class Phase:
    q: int
    angle: float


@dataclass(frozen=True)
class ControlledPhase:
    ctrl: int
    tgt: int
    angle: float


@dataclass(frozen=True)
class Swap:
    q1: int
    q2: int


GateOp = Union[Hadamard, Phase, ControlledPhase, Swap]


class StateVector:
    def __init__(self, n: int, amps=None):
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"n must be in [1, {MAX_QUBITS}], got {n}")
        self.n = n
        if amps is None:
            amps = np.zeros(1 << n, dtype=np.complex128)
            amps[0] = 1.0
        amps = np.array(amps, dtype=np.complex128)
        if amps.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} amplitudes, got {amps.shape}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        self.amps = amps

    @property
    def dim(self) -> int:
        return self.amps.size

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def probabilities(self) -> np.ndarray:
        return probabilities(self)

    def apply(self, gate: GateOp) -> "StateVector":
        apply_gate(self, gate)
        return self

    def __repr__(self):
        return f"StateVector(n={self.n})"


def from_basis(n: int, x: int) -> StateVector:
    if not 0 <= x < (1 << n):
        raise ValueError(f"basis index {x} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[x] = 1.0
    return StateVector(n, amps)


def uniform_superposition(n: int) -> StateVector:
    N = 1 << n
    return StateVector(n, np.full(N, 1.0 / np.sqrt(N), dtype=np.complex128))


def _check_qubit(s: StateVector, q: int) -> None:
    if not 0 <= q < s.n:
        raise IndexError(f"qubit {q} out of range for {s.n} qubits")


def apply_gate(s: StateVector, g: GateOp) -> None:
    """Apply ``g`` to ``s`` in place."""
    if isinstance(g, Hadamard):
        _check_qubit(s, g.q)
        _kernels.hadamard(s.amps, g.q)
    elif isinstance(g, Phase):
        _check_qubit(s, g.q)
        _kernels.phase(s.amps, g.q, float(g.angle))
    elif isinstance(g, ControlledPhase):
        _check_qubit(s, g.ctrl)
        _check_qubit(s, g.tgt)
        if g.ctrl == g.tgt:
            raise ValueError("control and target must differ")
        _kernels.cphase(s.amps, g.ctrl, g.tgt, float(g.angle))
    elif isinstance(g, Swap):
        _check_qubit(s, g.q1)
        _check_qubit(s, g.q2)
        if g.q1 != g.q2:
            _kernels.swap(s.amps, g.q1, g.q2)
    else:
        raise TypeError(f"unknown gate {g!r}")


def inverse(g: GateOp) -> GateOp:
    if isinstance(g, Phase):
        return Phase(g.q, -g.angle)
    if isinstance(g, ControlledPhase):
        return ControlledPhase(g.ctrl, g.tgt, -g.angle)
    return g


def probabilities(s: StateVector) -> np.ndarray:
    a = s.amps
    return prob_vector(a.real ** 2 + a.imag ** 2)


def qft_gate_sequence(n: int, *, swaps: bool = True) -> list[GateOp]:
    """Hadamard + controlled-phase decomposition of the QFT on ``n`` qubits.

    Maps ``|x>`` to ``2**(-n/2) sum_y exp(+2 pi i x y / 2**n) |y>``.  Qubits are
    processed from the most significant down; each gets a Hadamard followed by
    controlled phases ``2 pi / 2**k`` from the lower qubits.  The trailing swaps
    undo the bit reversal this ordering leaves behind.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ops: list[GateOp] = []
    for tgt in range(n - 1, -1, -1):
        ops.append(Hadamard(tgt))
        for ctrl in range(tgt - 1, -1, -1):
            ops.append(ControlledPhase(ctrl, tgt, 2 * pi / 2 ** (tgt - ctrl + 1)))
    if swaps:
        ops.extend(Swap(j, n - 1 - j) for j in range(n // 2))
    return ops
