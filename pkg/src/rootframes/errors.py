"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RootFrameError(Exception):
    """Base class for all errors raised by rootframes."""


class InvalidParameterError(RootFrameError, ValueError):
    """A constructor parameter is outside its admissible range."""


class InvalidInputError(RootFrameError, ValueError):
    """Input vectors violate a precondition (zero vector, wrong norm, ...)."""


class InvalidWeightError(InvalidInputError):
    """A weight or parameter function value is not strictly positive."""


class DegenerateFunctionalError(RootFrameError, ValueError):
    """Some root is orthogonal to the separating functional."""

    def __init__(self, message: str, root_index: int | None = None):
        super().__init__(message)
        self.root_index = root_index


class NotAFrameError(RootFrameError):
    """The vectors do not span: the frame operator has a zero eigenvalue."""

    def __init__(self, message: str, smallest_eigenvalue: float | None = None):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue


class NotAnEigenframeError(RootFrameError):
    """Some frame vector is not an eigenvector of the frame operator."""

    def __init__(self, message: str, worst_residual: float, worst_index: int):
        super().__init__(message)
        self.worst_residual = worst_residual
        self.worst_index = worst_index


class InternalError(RootFrameError, RuntimeError):
    """Something that should be practically impossible happened."""


class DocumentError(RootFrameError, ValueError):
    """Base class for interchange document problems."""


class DocumentParseError(DocumentError):
    """The document is not well-formed."""


class DocumentValidationError(DocumentError):
    """The document is well-formed but semantically invalid."""


class DocumentVersionError(DocumentError):
    """Unsupported format_version."""
