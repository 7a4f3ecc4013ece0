"""Exception hierarchy for the qotto toolkit.

Everything raised on purpose derives from :class:`QottoError`, so callers
(and the CLI) can distinguish domain errors from genuine bugs.
"""


class QottoError(Exception):
    """Base class for all qotto domain errors."""


class InvalidArgument(QottoError, ValueError):
    """An argument violates a documented precondition."""


class InvalidState(QottoError):
    """A 3x3 state fails Hermiticity / trace / positivity checks."""


class InfiniteDivergence(QottoError):
    """Relative entropy is infinite: the first state leaks outside the
    support of the second."""


class NegativeTemperatureRequired(QottoError):
    """Requested populations would need an excited level at least as
    populated as the ground level."""


class PopulationMismatch(QottoError):
    """Swap partners do not share the same energy populations; swapping
    them would smuggle heat or work into the books."""


class InvalidAcceptor(QottoError):
    """The swap partner that must be coherence-free carries off-diagonal
    elements."""


class ZeroWork(QottoError):
    """Entropy pollution is undefined: the cycle produced no work."""


class NotAnEngine(QottoError):
    """Parameters put the device outside the engine regime."""


class WrongOmega(QottoError):
    """Operation requires a collective angle of exactly pi."""


class ConfigError(QottoError):
    """Experiment configuration file is malformed or inconsistent."""
