"""Exception types shared across the package.

Everything except MatrixTooLarge is a data error (CLI exit code 2);
MatrixTooLarge is a capacity error (exit code 3).
"""


class HolomemError(Exception):
    pass


class DimensionMismatch(HolomemError):
    pass


class ConstantImage(HolomemError):
    """Image with all pixels equal; its zero-mean vector cannot be normalized."""


class PhaseOverflow(HolomemError):
    """Requested phase exceeds pi/2; arg() decoding would wrap."""


class EmptyPatternSet(HolomemError):
    pass


class MixedEncodingModes(HolomemError):
    pass


class ZeroState(HolomemError):
    """Intermediate recall state collapsed to (near) zero norm."""


class MalformedPgm(HolomemError):
    pass


class MalformedMemory(HolomemError):
    """Memory file fails magic, mode, or payload-size validation."""


class LengthMismatch(HolomemError):
    pass


class EmptyInput(HolomemError):
    pass


class DatasetEmpty(HolomemError):
    pass


class MatrixTooLarge(HolomemError):
    """Dense backend would exceed the configured byte budget."""
