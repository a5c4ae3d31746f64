"""Exception hierarchy shared by all fermient modules."""


class FermiError(Exception):
    """Base class for every error raised by fermient."""


class ValidationError(FermiError, ValueError):
    """Input data does not describe a valid object."""


class NonFinite(ValidationError):
    pass


class NotAntisymmetric(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class ZeroState(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class OutOfRange(FermiError, ValueError):
    """A scalar argument or derived quantity lies outside its admissible range."""


class ConsistencyFailure(FermiError, ArithmeticError):
    """An internal identity that must hold analytically was violated numerically."""


class OracleMismatch(ConsistencyFailure):
    """Closed-form results disagree with the brute-force eigensolver."""


class MaximallyEntangled(FermiError, ValueError):
    """The rank-two projectors are singular because eta is (numerically) one."""


class ParseError(FermiError, ValueError):
    """A state or report file is malformed or violates its schema."""
