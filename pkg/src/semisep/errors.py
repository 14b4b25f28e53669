"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: ArgumentError -> 1, FormatError -> 2,
ResourceError -> 3.  InternalError signals a broken invariant (a corrupt
table or a bug), never a bad input.
"""


class ArgumentError(ValueError):
    """A precondition on the mathematical input is violated."""


class FormatError(ValueError):
    """Malformed table, file, or descriptor."""


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""


class InternalError(AssertionError):
    """An invariant that should be unbreakable was broken."""
