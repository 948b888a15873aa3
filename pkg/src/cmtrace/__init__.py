"""Signed Frobenius traces, point counts and group structures for a catalog of
CM elliptic curves over real quadratic and pure cubic fields."""

from .catalog import SUPPORTED_DISCRIMINANTS, CurveRecord, UnsupportedDiscriminant, catalog_lookup
from .trace import TraceResult, frobenius_trace, trace_at

__all__ = [
    "SUPPORTED_DISCRIMINANTS",
    "CurveRecord",
    "TraceResult",
    "UnsupportedDiscriminant",
    "catalog_lookup",
    "frobenius_trace",
    "trace_at",
]
