"""Exception types raised across the package."""


class CdsError(Exception):
    """Base class for all package errors."""


class ParseError(CdsError, ValueError):
    def __init__(self, line, reason, path=None):
        self.line = line
        self.reason = reason
        self.path = path
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {reason}")


class DuplicateIdError(CdsError, ValueError):
    pass


class EmptyDatasetError(CdsError, ValueError):
    pass


class ConflictError(CdsError, ValueError):
    pass


class RangeError(CdsError, ValueError):
    pass


class NegativeCountError(CdsError, ValueError):
    pass


class ResourceMissingError(CdsError):
    def __init__(self, group, resource):
        self.group = group
        self.resource = resource
        super().__init__(f"feature group {group!r} requires {resource}, which was not provided")


class MissingGroupError(CdsError, ValueError):
    pass


class SchemaMismatchError(CdsError, ValueError):
    pass


class SingleClassError(CdsError, ValueError):
    pass


class EmptyTrainingError(CdsError, ValueError):
    pass


class NonConvergenceError(CdsError, RuntimeError):
    def __init__(self, grad_norm, n_iter):
        self.grad_norm = grad_norm
        self.n_iter = n_iter
        super().__init__(
            f"gradient descent did not converge after {n_iter} iterations "
            f"(final gradient norm {grad_norm:.3e})"
        )


class LengthMismatchError(CdsError, ValueError):
    pass


class TooFewInstancesError(CdsError, ValueError):
    pass


class ConfigError(CdsError, ValueError):
    pass
