"""Sparse group l0 solver over box constraints."""

from ._core import (
    Certificate,
    Problem,
    RelaxationParams,
    SolveReport,
    bench_signal,
    capped_theta,
    certify,
    mse,
    prox,
    psnr,
    solve,
)

__all__ = [
    "Certificate",
    "Problem",
    "RelaxationParams",
    "SolveReport",
    "bench_signal",
    "capped_theta",
    "certify",
    "mse",
    "prox",
    "psnr",
    "solve",
]
