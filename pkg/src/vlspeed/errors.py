"""Exception types shared across the package.

Everything derives from ValueError so callers can stay coarse, while the
CLI and tests can distinguish input problems from estimation failures.
"""


class VlspeedError(ValueError):
    """Base class for all package-specific errors."""


class OutOfSegmentError(VlspeedError):
    """A requested time falls outside the valid road segment."""


class DomainError(VlspeedError):
    """An argument violates a mathematical precondition (sign, range)."""


class SingularFitError(VlspeedError):
    """Least-squares system has no unique solution (degenerate abscissae)."""


class UnderdeterminedError(VlspeedError):
    """Too few distinct data points to fit the requested model."""


class NoSolutionError(VlspeedError):
    """Inversion target lies outside the attainable range of the model."""


class EnergyError(VlspeedError):
    """Detected optical power exceeds the transmitted power."""


class EmptyInputError(VlspeedError):
    """An operation that needs at least one element got none."""


class NoiseStateError(VlspeedError):
    """Noise injection requested on a trace that is already noisy."""


class DegenerateWindowError(VlspeedError):
    """Too many samples were clamped for the window to be trustworthy."""


class TraceFormatError(VlspeedError):
    """A CSV/JSON input file is malformed; message carries file and line."""


class SweepError(VlspeedError):
    """A Monte Carlo sweep aborted; message carries the sweep coordinates."""
