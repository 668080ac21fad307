"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: InputError -> 2, ResourceCapError -> 3.
"""


class InputError(ValueError):
    """Bad argument or malformed input."""


class ParseError(InputError):
    def __init__(self, message, line=None, offset=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.offset = offset


class PreconditionError(InputError):
    """An operation was called outside its documented domain."""


class ResourceCapError(RuntimeError):
    """An enumeration would exceed its size cap."""


class GenericityError(RuntimeError):
    """A random realization did not produce the expected matroid."""


class InvariantError(AssertionError):
    """An internal guarantee failed; indicates a bug or a false theorem."""
