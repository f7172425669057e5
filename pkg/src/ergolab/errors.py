"""Exception types shared across the package."""


class ErgolabError(Exception):
    """Base class for all ergolab errors."""


class InvalidParameterError(ErgolabError):
    """A system or estimator parameter is outside its allowed range."""


class IncompatiblePartitionError(ErgolabError):
    """Partition kind does not match the point family (e.g. cylinder on a circle point)."""


class IncompatibleObservableError(ErgolabError):
    """Observable kind does not match the system family."""


class LengthMismatchError(ErgolabError):
    """Two sequences that must have equal length do not."""


class InstanceTooLargeError(ErgolabError):
    """Exact cover search asked for an instance beyond its feasibility cap."""


class BudgetExhaustedError(ErgolabError):
    """Greedy cover could not reach the target mass within the center budget."""

    def __init__(self, message, centers=None, covered_mass=None):
        super().__init__(message)
        self.centers = centers or []
        self.covered_mass = covered_mass


class UnsupportedRefinementError(ErgolabError):
    """Partition refinement is not implemented for this partition/system pair."""


class PlotDataError(ErgolabError):
    """Plot emission was asked to render an empty dataset."""


class ConfigError(ErgolabError):
    """Experiment configuration failed validation."""
