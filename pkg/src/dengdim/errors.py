"""Exception hierarchy shared by all modules."""


class DengDimError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DengDimError):
    def __init__(self, lineno, line, reason="expected two whitespace-separated node tokens"):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class EmptyGraphError(DengDimError):
    pass


class ConnectivityError(DengDimError):
    def __init__(self, first, second, n_components):
        self.representatives = (first, second)
        self.n_components = n_components
        super().__init__(
            f"graph is disconnected ({n_components} components); "
            f"node {first!r} and node {second!r} lie in different components"
        )


class IntegrityError(DengDimError):
    """A box covering is not a partition of the node set."""


class EntropyDomainError(DengDimError):
    pass


class InsufficientRangeError(DengDimError):
    pass


class DegreesOfFreedomError(DengDimError):
    pass


class FitError(DengDimError):
    """Fitting failed. ``best`` carries the best solution found so far, if any."""

    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class FitDomainError(FitError):
    """Residuals became NaN or overflowed."""


class ComparisonError(DengDimError):
    pass


class GenSpecError(DengDimError):
    pass
