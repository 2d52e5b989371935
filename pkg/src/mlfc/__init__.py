"""Mittag-Leffler oscillatory integrals: evaluation, decay verification, PDE checks."""

from .domains import Interval, WholeLine
from .mlf import MLParams, SectorBoundParams, ml_eval, ml_eval_asymptotic, ml_eval_oracle

__all__ = [
    "Interval",
    "WholeLine",
    "MLParams",
    "SectorBoundParams",
    "ml_eval",
    "ml_eval_asymptotic",
    "ml_eval_oracle",
]

__version__ = "0.1.0"
