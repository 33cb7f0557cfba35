"""Spectral solver and revival analysis for the Airy and dislocation problems."""

from ._core import (
    AccuracyError,
    NumericError,
    PiecewiseFn,
    SingularityError,
    airy_revival,
    airy_root,
    airy_root_offset,
    airy_spectrum,
    disloc_revival,
    disloc_root,
    disloc_root_offset,
    disloc_spectrum,
    dk_airy,
    dk_dis,
    hilbert_indicator,
    hilbert_pv,
    hilbert_transform,
    reflect_problem,
    set_thread_count,
    solve_airy,
    solve_disloc,
    ur_closed_airy,
    ur_closed_disloc,
)

__all__ = [name for name in dir() if not name.startswith("_")]
