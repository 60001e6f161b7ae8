"""Exception hierarchy shared by all modules."""


class TensorMelonError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NotABijection(TensorMelonError):
    pass


class ColorCountMismatch(TensorMelonError):
    pass


class BadColor(TensorMelonError):
    pass


class SizeLimitExceeded(TensorMelonError):
    pass


class Disconnected(TensorMelonError):
    pass


class TooFewColors(TensorMelonError):
    pass


class BadLine(TensorMelonError):
    pass


class NotMelonic(TensorMelonError):
    pass


class VertexNotFound(TensorMelonError):
    pass


class RankMismatch(TensorMelonError):
    pass
