from typing import Any, ClassVar, NoReturn, Type


class Error(Exception):
    """
    An expected failure of a ladder computation.

    Every error carries a machine-readable id and the exit code the command
    line reports for it. Library code raises these; only the command line
    turns them into exit codes.
    """

    error_id: ClassVar[str] = "error"
    exit_code: ClassVar[int] = 1

    @classmethod
    def from_string(cls: Type["Error"], string: str) -> Type["Error"]:
        """
        Create an error class with a fixed message.

        The class can be created once at module level and raised wherever that
        error is needed, without repeating the message.
        """

        def __init__(_self: "Error") -> None:
            super(cls, _self).__init__(string)

        return type(cls.__name__, (cls,), dict(__init__=__init__))


class ValidationError(Error):
    """
    Malformed input or a violated precondition.
    """

    error_id = "validation"
    exit_code = 2


class ShapeError(ValidationError):
    """
    A dimension mismatch: matrix shapes, vector lengths or path endpoints.
    """

    error_id = "shape"


class DomainError(ValidationError):
    """
    A value outside the domain of a function, such as the slope of a
    rank-zero dimension vector.
    """

    error_id = "domain"


class ResourceError(Error):
    """
    An enumeration would exceed its configured cap.
    """

    error_id = "resource"
    exit_code = 3


class InconclusiveError(Error):
    """
    A bounded search finished without a verdict.
    """

    error_id = "inconclusive"
    exit_code = 4


def errorf(cls: Type[Error], format: str, *args: Any, **kwargs: Any) -> Error:
    return cls(format.format(*args, **kwargs))


def raisef(cls: Type[Error], format: str, *args: Any, **kwargs: Any) -> NoReturn:
    raise errorf(cls, format, *args, **kwargs)
