"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class ResourceError(RuntimeError):
    """A dense computation would exceed its configured size budget."""


class AnnihilationError(RuntimeError):
    """A postselected branch has (numerically) zero probability."""

    def __init__(self, probability: float):
        super().__init__(f"postselection probability {probability:.3e} below threshold")
        self.probability = probability


class DegeneracyError(RuntimeError):
    """The low-energy eigenspace has no faithful projection onto the constrained space."""


class AlistParseError(ValueError):
    """Malformed alist document; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
