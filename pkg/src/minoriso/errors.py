"""Shared exception types.

The CLI maps these onto exit codes: InputError -> 65, CapacityError and
InternalError -> 70.  MinorDetected is not an error; it is raised internally to
unwind the isomorphism recursion once a clique minor has been certified, and is
converted into a regular result at the API boundary.
"""


class InputError(ValueError):
    """Malformed input data (bad file, invalid vertex id, broken precondition)."""


class CapacityError(RuntimeError):
    """A brute-force fallback would exceed its configured bound."""


class InternalError(RuntimeError):
    """An invariant the algorithm relies on was violated."""


class MinorDetected(Exception):
    """Raised when a step certifies a K_h minor in the input graph(s)."""

    def __init__(self, reason=""):
        super().__init__(reason)
        self.reason = reason
