"""Exception types shared across the package."""


class MontesError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MontesError):
    """Invalid input: bad polynomial, composite p, reducible f, parse failure."""


class IterationLimitError(MontesError):
    """The main loop exceeded its safety cap without completing every branch."""


class InternalCheckError(MontesError):
    """A runtime self-check failed; indicates a bug, not bad input."""
