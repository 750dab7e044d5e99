"""Shared exception types."""


class FormatError(ValueError):
    """Raised when BMAT or certificate input text is malformed."""


class TheoremViolation(RuntimeError):
    """Raised when a search that the structure theory guarantees to succeed
    comes up empty, or when a certified reconstruction fails to replay.

    Hitting this is a falsification signal (or a bug), never a normal
    non-member outcome.  The CLI maps it to exit code 3.
    """
