"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: InputError -> 1, UnsupportedInputError -> 2,
TheoremViolationError -> 3.
"""


class PathQHError(Exception):
    pass


class InputError(PathQHError):
    """Malformed or inconsistent input (bad arguments, parse errors, ...)."""


class BuildError(InputError):
    """A presentation could not be turned into a finite dimensional algebra."""


class UnsupportedInputError(PathQHError):
    """Input is well-formed but outside the supported hypotheses."""


class TheoremViolationError(PathQHError):
    """An internally re-derived certificate failed; indicates a bug."""
