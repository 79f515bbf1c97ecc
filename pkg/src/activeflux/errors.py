"""Exception types shared across the solver."""


class ActiveFluxError(Exception):
    """Base class for solver errors."""


class ConfigError(ActiveFluxError):
    """Invalid run configuration."""


class NegativeStateError(ActiveFluxError):
    """A non-admissible state (rho <= 0, p <= 0, or non-finite) was about to be used."""


class RetryExhaustedError(ActiveFluxError):
    """Time step halving hit the retry budget without satisfying the BP constraints."""


class BoundViolationError(ActiveFluxError):
    """A limited stage produced values outside the proven bounds (internal error)."""


class StepConstraintViolation(ActiveFluxError):
    """Internal signal: a BP time-step constraint failed; the step must retry with smaller dt."""

    def __init__(self, which, detail=""):
        self.which = which
        self.detail = detail
        super().__init__(f"{which}: {detail}" if detail else which)
