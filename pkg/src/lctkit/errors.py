"""Exception types shared across the toolkit.

Every failure that a caller may reasonably want to catch separately gets its
own class; plain misuse (wrong argument types, out-of-range parameters) stays
a ValueError.
"""


class LctkitError(Exception):
    pass


class ParseError(LctkitError):
    """Syntax error in series/polynomial text, tagged with a position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class TruncationError(LctkitError):
    """Truncated data is insufficient to certify an answer.

    `required` carries a hint: the truncation bound that would have sufficed,
    when one can be estimated.
    """

    def __init__(self, message, required=None):
        if required is not None:
            message = f"{message}; required truncation >= {required}"
        super().__init__(message)
        self.required = required


class PrecisionError(LctkitError):
    """A numeric coefficient is indistinguishable from zero at the working
    tolerance; retry with more bits."""


class ConsistencyError(LctkitError):
    """Two independent computation routes disagreed.  This is a bug trap:
    it should never fire on valid inputs."""


class BudgetError(LctkitError):
    """A symbolic construction exceeded its configured size budget."""


class DegenerateError(LctkitError):
    """The Newton-boundary oracle refuses degenerate input rather than
    risking a wrong threshold."""
