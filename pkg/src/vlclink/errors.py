"""Exception types shared across the simulator."""


class LengthError(ValueError):
    """Sequence length violates an operation's contract."""


class EmptyInput(ValueError):
    """An operation received zero elements where at least one is required."""


class ParameterError(ValueError):
    """A scalar parameter is outside its legal range."""


class SchemeError(ValueError):
    """Branch contents are inconsistent with the requested MIMO scheme."""


class SchemeMismatch(ValueError):
    """A mode and an SNR record refer to different MIMO schemes."""


class RangeError(ValueError):
    """An index or window falls outside the available samples."""


class SyncNotFound(RuntimeError):
    """No preamble correlation peak exceeded the detection threshold."""


class SingularMatrix(ArithmeticError):
    """Matrix is rank deficient; typically a fully blocked channel."""


class DeadChannel(RuntimeError):
    """Combined channel gain is zero on every receive branch."""


class BadCode(ValueError):
    """Mode code outside the 3-bit table, or an unknown mode."""


class CalibrationImpossible(RuntimeError):
    """No finite transmit SNR satisfies the calibration target."""


class ParseError(ValueError):
    """Config text could not be parsed.  Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ValueError):
    """A config key failed validation.  Carries the offending key."""

    def __init__(self, key: str, message: str = ""):
        text = f"{key}: {message}" if message else key
        super().__init__(text)
        self.key = key
