"""Exception hierarchy shared by the pipeline and the command line."""


class ZukError(Exception):
    """Base class for every error raised by zukcheck."""


class InputError(ZukError, ValueError):
    """The caller supplied something malformed or violating a precondition."""


class KernelUndefinedError(InputError):
    """The simple random walk is undefined because some vertex has degree 0."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__("kernel undefined: degree-0 vertices " + ", ".join(self.labels))


class InconsistencyError(ZukError, RuntimeError):
    """Two computations that must agree did not (engine cross-check, root count)."""
