"""Exception types shared across the package."""


class AgeSamplerError(Exception):
    """Base class for all agesampler errors."""


class NotStochastic(AgeSamplerError, ValueError):
    """Transition matrix has a negative entry or a row that does not sum to 1."""


class NotErgodic(AgeSamplerError, ValueError):
    """Transition matrix is reducible or periodic."""


class ChainFormatError(AgeSamplerError, ValueError):
    """Chain/policy input file is malformed; message pinpoints the offending field."""


class MalformedProgram(AgeSamplerError, ValueError):
    """Linear program has inconsistent dimensions or non-finite coefficients."""


class InfeasibleProblem(AgeSamplerError):
    """The constrained sampling problem admits no feasible policy."""


class InfeasibleByConstruction(InfeasibleProblem):
    """Frequency bound requires an average interval larger than the maximum interval."""


class PeriodExceedsM(AgeSamplerError, ValueError):
    """The periodic baseline interval is larger than the maximum interval."""


class InducedNotErgodic(AgeSamplerError):
    """Policy induces a reducible or periodic chain of observed states."""


class ObjectiveMismatch(AgeSamplerError):
    """LP objective and analytic policy evaluation disagree (internal inconsistency)."""


class TooLarge(AgeSamplerError, ValueError):
    """Deterministic-policy enumeration would exceed the configured size guard."""
