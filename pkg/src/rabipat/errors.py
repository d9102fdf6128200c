"""Exception hierarchy for rabipat.

The CLI maps these onto exit codes: UsageError -> 2, NumericalError
(and subclasses) -> 3. Validation failures are reported, not raised.
"""


class RabipatError(Exception):
    """Base class for all rabipat errors."""


class UsageError(RabipatError):
    """Invalid flag or configuration combination supplied by the caller."""


class NumericalError(RabipatError):
    """A computation could not be completed reliably."""


class DegenerateSpectrumError(NumericalError):
    """Eigenvalues too close for a perturbative derivative formula."""


class ContinuityError(NumericalError):
    """Adjacent sweep points too far apart for unambiguous identity tracking."""


class EigensolverError(NumericalError):
    """Dense eigensolver failed to converge or violated its accuracy contract."""


class TransitionWindowError(NumericalError):
    """Curvature minimum fell on the edge of the sweep window."""
