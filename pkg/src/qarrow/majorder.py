"""Majorization order on probability vectors.

``x`` is majorized by ``y`` (``x ≺ y``) when every prefix sum of ``x`` sorted
in non-increasing order is at most the matching prefix sum of sorted ``y``.
The uniform vector is the bottom of this partial order and a point mass the
top.  A :class:`Trace` is a sequence of labeled snapshots taken during one
algorithm run; :func:`verify_trace` checks that each snapshot is majorized by
the next one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

TOL_ENTRY = 1e-12
TOL_SUM = 1e-9
DEFAULT_TOL = 1e-12


class MajorizationError(ValueError):
    pass


def prob_vector(values, *, tol_entry: float = TOL_ENTRY) -> np.ndarray:
    """Validate ``values`` as a probability vector and return a read-only copy.

    Entries in ``[-tol_entry, 0)`` are clamped to zero; anything more negative,
    non-finite entries and totals off by more than 1e-9 are rejected.
    """
    v = np.array(values, dtype=float).ravel()
    if v.size == 0:
        raise MajorizationError("probability vector must have at least one entry")
    if not np.all(np.isfinite(v)):
        raise MajorizationError("probability vector has non-finite entries")
    if v.min() < -tol_entry:
        raise MajorizationError(f"negative probability {v.min():.3e}")
    v[v < 0] = 0.0
    total = v.sum()
    if abs(total - 1.0) > TOL_SUM:
        raise MajorizationError(f"probabilities sum to {total!r}, not 1")
    v.flags.writeable = False
    return v


def sort_desc(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if np.isnan(v).any():
        raise MajorizationError("cannot sort a vector containing NaN")
    # stable descending: sort the negation
    return -np.sort(-v, kind="stable")


def prefix_sums(v) -> np.ndarray:
    return np.cumsum(np.asarray(v, dtype=float))


class Relation(enum.Enum):
    EQUAL = "equal"
    FIRST_PRECEDES = "first_precedes"
    SECOND_PRECEDES = "second_precedes"
    INCOMPARABLE = "incomparable"

    @property
    def is_forward(self) -> bool:
        """True when the first argument is majorized by the second."""
        return self in (Relation.EQUAL, Relation.FIRST_PRECEDES)


@dataclass(frozen=True)
class Verdict:
    relation: Relation
    # cumsum(sorted y) - cumsum(sorted x), one entry per rank
    prefix_margins: np.ndarray = field(repr=False)


def compare(x, y, tol: float = DEFAULT_TOL) -> Verdict:
    """Compare two probability vectors in the majorization order.

    Returns ``FIRST_PRECEDES`` when ``x ≺ y``, ``SECOND_PRECEDES`` when
    ``y ≺ x``, ``EQUAL`` when both hold within ``tol`` and ``INCOMPARABLE``
    otherwise.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise MajorizationError(f"dimension mismatch: {x.size} vs {y.size}")
    if abs(x.sum() - y.sum()) > TOL_SUM:
        raise MajorizationError("vectors carry different total mass")
    margins = prefix_sums(sort_desc(y)) - prefix_sums(sort_desc(x))
    x_le_y = bool(np.all(margins >= -tol))
    y_le_x = bool(np.all(margins <= tol))
    if x_le_y and y_le_x:
        rel = Relation.EQUAL
    elif x_le_y:
        rel = Relation.FIRST_PRECEDES
    elif y_le_x:
        rel = Relation.SECOND_PRECEDES
    else:
        rel = Relation.INCOMPARABLE
    margins.flags.writeable = False
    return Verdict(rel, margins)


def least_element(d: int) -> np.ndarray:
    if d < 1:
        raise MajorizationError("dimension must be at least 1")
    return prob_vector(np.full(d, 1.0 / d))


def greatest_element(d: int) -> np.ndarray:
    if d < 1:
        raise MajorizationError("dimension must be at least 1")
    v = np.zeros(d)
    v[0] = 1.0
    return prob_vector(v)


def lorenz_points(v) -> list[tuple[int, float]]:
    """Points ``(k, sum of the k+1 largest entries)`` of the Lorenz curve."""
    cum = prefix_sums(sort_desc(v))
    return [(k, float(c)) for k, c in enumerate(cum)]


def shannon_entropy(v) -> float:
    v = np.asarray(v, dtype=float)
    nz = v[v > 0]
    return float(-(nz * np.log(nz)).sum())


@dataclass
class Trace:
    algorithm: str
    n_qubits: int
    snapshots: list[tuple[str, np.ndarray]] = field(default_factory=list)

    def add(self, label: str, probs) -> None:
        p = prob_vector(probs)
        if self.snapshots and p.size != self.dim:
            raise MajorizationError(
                f"snapshot {label!r} has dimension {p.size}, trace has {self.dim}"
            )
        self.snapshots.append((label, p))

    @property
    def dim(self) -> int:
        return self.snapshots[0][1].size

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.snapshots]

    def probs(self, i: int) -> np.ndarray:
        return self.snapshots[i][1]

    def index(self, label: str) -> int:
        for i, (lab, _) in enumerate(self.snapshots):
            if lab == label:
                return i
        raise KeyError(label)

    def window(self, stop: int) -> "Trace":
        """Snapshots ``0..stop`` inclusive, as a new trace."""
        return Trace(self.algorithm, self.n_qubits, list(self.snapshots[: stop + 1]))

    def __len__(self) -> int:
        return len(self.snapshots)


@dataclass(frozen=True)
class TraceReport:
    step_verdicts: list[Verdict]
    first_violation: int | None

    @property
    def monotone_prefix_len(self) -> int:
        if self.first_violation is None:
            return len(self.step_verdicts)
        return self.first_violation

    @property
    def violations(self) -> list[int]:
        return [i for i, v in enumerate(self.step_verdicts) if not v.relation.is_forward]

    @property
    def ok(self) -> bool:
        return self.first_violation is None

    def to_dict(self) -> dict:
        return {
            "verdicts": [v.relation.value for v in self.step_verdicts],
            "first_violation": self.first_violation,
        }


def verify_trace(trace: Trace, tol: float = DEFAULT_TOL) -> TraceReport:
    if len(trace) < 2:
        raise MajorizationError("a trace needs at least two snapshots to verify")
    dims = {p.size for _, p in trace.snapshots}
    if len(dims) != 1:
        raise MajorizationError(f"snapshots have mixed dimensions {sorted(dims)}")
    verdicts = [
        compare(trace.probs(m), trace.probs(m + 1), tol) for m in range(len(trace) - 1)
    ]
    first = next((m for m, v in enumerate(verdicts) if not v.relation.is_forward), None)
    return TraceReport(verdicts, first)
