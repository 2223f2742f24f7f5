from typing import NoReturn, Optional


class Panic(Exception):
    """
    An internal invariant was violated. This is a bug, not bad input, and is
    deliberately not a ladder.Error.
    """

    def __init__(self, message: str) -> None:
        super().__init__(f"panic: {message}")


def panic(message: str, exc: Optional[Exception] = None) -> NoReturn:
    """
    Raise a Panic, chained to exc when one is given.
    """

    panic = Panic(message)

    if exc:
        raise panic from exc
    raise panic


def invariant(condition: bool, message: str) -> None:
    """
    Panic with the message unless the condition holds.
    """
    if not condition:
        panic(message)
