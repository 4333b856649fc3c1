"""Exception types shared across the package."""


class AddlabError(Exception):
    """Base class for all addlab errors."""


class OverflowRiskError(AddlabError):
    """Raised when an operation's intermediate sums could exceed 62 bits.

    All arithmetic is done in 64-bit signed integers; rather than silently
    wrapping, operations reject inputs whose universe bound is too large for
    the requested computation.
    """


class OutOfUniverseError(AddlabError):
    """Raised when a hash function is evaluated outside its universe."""


class DepthTooLargeError(AddlabError):
    """Raised when an offset-set enumeration would exceed the configured cap."""


class EmptySetError(AddlabError):
    """Raised by operations that require a nonempty set."""


class ExtractionFailedError(AddlabError):
    """Raised when dense-subgraph extraction fails after all retries."""


class DecompositionFailedError(AddlabError):
    """Raised when the shift-cover decomposition fails after all retries."""


class HybridDensityError(AddlabError):
    """Raised when the hybrid enumerator is run on a graph that is too sparse."""


class InfeasibleParamsError(AddlabError):
    """Raised by generators when the requested parameters cannot be met."""
