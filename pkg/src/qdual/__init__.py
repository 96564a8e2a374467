"""Exact truncated q-series, mock theta functions and the q -> 1/q duality pipeline."""

from .series import (
    INF,
    Comparison,
    LatticeError,
    NotInvertibleError,
    ParamValue,
    PoleError,
    QSeries,
    TruncationError,
    add,
    coefficient,
    dissect,
    equal_to_order,
    geometric_factor,
    invert,
    make_monomial,
    mul,
    q,
    rescale,
)

__all__ = [
    "INF",
    "Comparison",
    "LatticeError",
    "NotInvertibleError",
    "ParamValue",
    "PoleError",
    "QSeries",
    "TruncationError",
    "add",
    "coefficient",
    "dissect",
    "equal_to_order",
    "geometric_factor",
    "invert",
    "make_monomial",
    "mul",
    "q",
    "rescale",
]

__version__ = "0.1.0"
