"""Exception hierarchy.

Split into three groups so the CLI can map them to exit codes:
usage problems (exit 1), hypothesis violations (exit 2), and numerical
failures (exit 3).
"""

from __future__ import annotations


class MlfcError(Exception):
    """Base class for all package errors."""


class ConfigError(MlfcError):
    """Bad configuration file, unknown key, or malformed flag value."""


class HypothesisViolation(MlfcError):
    """A decay setting was invoked with its hypotheses not satisfied.

    ``clauses`` names every violated clause; no decay verdict is produced.
    """

    def __init__(self, clauses, message=None):
        if isinstance(clauses, str):
            clauses = [clauses]
        self.clauses = list(clauses)
        super().__init__(message or "; ".join(self.clauses))


class NotCertifiable(HypothesisViolation):
    """A derivative lower bound fails; carries a witness point."""

    def __init__(self, clause, witness=None):
        self.witness = witness
        msg = clause if witness is None else f"{clause} (witness x={witness!r})"
        super().__init__([clause], msg)


class NumericalFailure(MlfcError):
    """Base for failures of the numerical machinery itself."""


class NonFinite(NumericalFailure):
    """Evaluation overflowed or produced NaN; carries the argument and regime."""

    def __init__(self, z, regime, message=None):
        self.z = z
        self.regime = regime
        super().__init__(message or f"non-finite result at z={z!r} in regime '{regime}'")


class ToleranceUnreachable(NumericalFailure):
    """No evaluation regime can certify the requested tolerance."""


class PrecisionExhausted(NumericalFailure):
    """The arbitrary-precision path hit its precision or term budget."""


class OutsideValidity(NumericalFailure):
    """Asymptotic expansion requested below its switch radius."""


class OutsideSector(NumericalFailure):
    """Sector envelope requested outside the sector it bounds."""


class UnsupportedOrder(NumericalFailure):
    """Phase derivative order above the supported maximum."""


class QuadratureFailure(NumericalFailure):
    """Adaptive quadrature could not meet the tolerance within budget."""

    def __init__(self, message, est_error=None, n_evals=None):
        self.est_error = est_error
        self.n_evals = n_evals
        super().__init__(message)


class TailBoundFailure(NumericalFailure):
    """Whole-line truncation tail exceeds the allowed share of the tolerance."""


class BudgetExceeded(NumericalFailure):
    """Non-adaptive oracle quadrature would exceed its evaluation budget."""


class DegenerateFit(NumericalFailure):
    """Too few usable samples remain for a decay fit."""


class SvgError(MlfcError):
    """Plot emission failed (for example an empty series)."""
