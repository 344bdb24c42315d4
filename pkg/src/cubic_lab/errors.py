"""Exception hierarchy shared by all cubic_lab modules.

Two failure families matter operationally: bad input (the caller handed us
something outside an operation's preconditions) and broken invariants (an
internal postcondition failed, i.e. a bug). The CLI maps them to different
exit codes so batch sweeps can tell them apart.
"""


class CubicLabError(Exception):
    """Base class for every error raised by this package."""


class InputError(CubicLabError):
    """A precondition on caller-supplied data does not hold (CLI exit 1)."""


class Graph6ParseError(InputError):
    """Malformed graph6 text; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class InvariantError(CubicLabError):
    """An internal invariant or postcondition failed; always a bug (CLI exit 2)."""
