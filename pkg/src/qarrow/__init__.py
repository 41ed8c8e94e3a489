"""Majorization analysis of simulated quantum algorithms."""
from ._kernels import BACKEND
from .majorder import (
    MajorizationError,
    Relation,
    Trace,
    TraceReport,
    Verdict,
    compare,
    greatest_element,
    least_element,
    lorenz_points,
    prefix_sums,
    prob_vector,
    sort_desc,
    verify_trace,
)

__version__ = "0.1.0"
