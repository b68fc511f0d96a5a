"""Exception hierarchy shared by every module.

Each class carries an ``exit_code`` used by the command-line front end.
"""


class ArborError(Exception):
    exit_code = 2


class FormatError(ArborError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyOrFullSet(ArborError):
    pass


class HostMismatch(ArborError):
    pass


class TooFewVertices(ArborError):
    pass


class InvalidParams(ArborError):
    pass


class NotATree(ArborError):
    pass


class PreconditionViolated(ArborError):
    pass


class Infeasible(ArborError):
    """A valid negative answer to a decision problem.

    ``obstruction`` holds the certificate of infeasibility (a vertex
    partition, a deficient vertex set, ...).
    """

    exit_code = 1

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class SearchBudgetExceeded(ArborError):
    exit_code = 3


class SizeCapExceeded(ArborError):
    exit_code = 3


class InfeasibleWitness(ArborError):
    """A constructive search gave up on an instance whose answer is
    guaranteed to be positive. Signals an implementation limit, not a
    counterexample."""

    exit_code = 3

    def __init__(self, message, stage=None, detail=None):
        if stage:
            message = f"[{stage}] {message}"
        super().__init__(message)
        self.stage = stage
        self.detail = detail


class InternalError(ArborError):
    exit_code = 4
