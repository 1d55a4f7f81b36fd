"""Exceptions raised by the tableau, certificate, spatial and integrator modules."""


class MbpRkError(Exception):
    """Base class for every error raised by this package."""


class NonApplicable(MbpRkError):
    """The SSP equivalence test does not apply: a sub-diagonal entry vanishes."""

    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(
            f"sub-diagonal entry a[{row}][{col}] is zero; the positivity test needs "
            "non-zero sub-diagonal entries"
        )


class PositivityViolated(MbpRkError):
    """A strictly positive coefficient was required but not found."""

    def __init__(self, row: int, col: int, value: float):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(f"a[{row}][{col}] = {value!r} is not positive")


class ShapeMismatch(MbpRkError):
    """Two ragged coefficient arrays do not have the same shape."""


class Unsupported(MbpRkError):
    """The requested operation is outside the supported range."""


class SubdiagonalZero(MbpRkError):
    """A sub-diagonal entry a[i][i-1] vanishes, so the canonical form is undefined."""

    def __init__(self, stage: int):
        self.stage = stage
        super().__init__(f"sub-diagonal entry of stage {stage} is zero")


class NegativeD(MbpRkError):
    """A canonical multiplier d_i is not positive."""

    def __init__(self, stage: int, value: float):
        self.stage = stage
        self.value = value
        super().__init__(f"d_{stage} = {value!r} is not positive; the certificate is undefined")


class NotEliminable(MbpRkError):
    """A derivative term cannot be substituted away because its stage multiplier is zero."""

    def __init__(self, stage: int):
        self.stage = stage
        super().__init__(f"cannot eliminate G(v_{stage - 1}): d_{stage} is zero")


class NotSymmetric(MbpRkError):
    """The matrix handed to the eigen-solver is not symmetric."""


class NonPositiveLambda(MbpRkError):
    """No energy step bound exists because the smallest eigenvalue is not positive."""

    def __init__(self, lam: float):
        self.lam = lam
        super().__init__(f"smallest eigenvalue of the energy discriminant is {lam!r} <= 0")


class BoundViolation(MbpRkError):
    """A monitor (max norm or energy increment) was breached during a run."""

    def __init__(self, step: int, kind: str, value: float):
        self.step = step
        self.kind = kind
        self.value = value
        super().__init__(f"{kind} monitor breached at step {step}: {value!r}")


class ConfigError(MbpRkError):
    """Inconsistent simulation or command settings."""


class ParseError(MbpRkError):
    """A tableau, state or trace file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class InconsistentTableau(MbpRkError):
    """A tableau or Shu-Osher form violates its consistency conditions."""
