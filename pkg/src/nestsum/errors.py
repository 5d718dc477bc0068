"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class NestsumError(Exception):
    exit_code = 1


class ParseError(NestsumError):
    exit_code = 2

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class SemanticError(ParseError):
    """Well-formed text describing an invalid object (zero index, a <= b, ...)."""


class DomainError(NestsumError, ValueError):
    exit_code = 3


class NumericError(NestsumError):
    exit_code = 4


class ResourceError(NestsumError):
    exit_code = 5
