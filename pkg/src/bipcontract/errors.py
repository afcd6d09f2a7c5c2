"""Exception hierarchy shared by every module of the package."""


class BipContractError(Exception):
    """Base class for all errors raised by this package."""


class InvalidEdgeError(BipContractError, ValueError):
    """An edge that is not present in the host graph was referenced."""


class GraphParseError(BipContractError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidColoringError(BipContractError, ValueError):
    """A coloring is partial, uses colors other than 1/2, or targets another graph."""


class PreconditionError(BipContractError, ValueError):
    pass


class InvalidTerminalsError(BipContractError, ValueError):
    """Terminal sets overlap, or an (x, y) anchor pair is degenerate."""


class ResourceError(BipContractError, RuntimeError):
    """A configured work limit was exhausted before an answer was found."""


class BudgetExceededError(ResourceError):
    def __init__(self, limit, what="enumeration"):
        self.limit = limit
        super().__init__(f"{what} exceeded work limit of {limit} steps")


class DichotomyFailure(ResourceError):
    """Neither a narrow decomposition nor a large enough candidate set was produced."""


class CandidateInvalidError(BipContractError):
    """A well-connected candidate failed flow verification for a partition."""


class IrrelevantEdgeNotFound(BipContractError):
    pass


class DecompositionError(BipContractError, ValueError):
    """A tree decomposition failed validation."""
