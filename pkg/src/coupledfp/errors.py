"""Exception hierarchy.

InputError and its subclasses mark caller mistakes (bad arguments, malformed
files, inadmissible starts); the CLI maps them to exit code 2. Everything else
propagating out of the library is a bug.
"""


class CoupledFPError(Exception):
    """Base class for all library errors."""


class InputError(CoupledFPError):
    """Invalid user input: bad parameter, unknown problem, malformed file."""


class DomainMismatchError(InputError):
    """An element does not belong to the space it was used with."""


class SchemaError(InputError):
    """A problem file does not match the documented JSON schema."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InadmissibleStartError(InputError):
    """A solve required an admissible starting pair and did not get one."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(
            f"starting pair is not admissible (direction={verdict.direction}): {verdict.details}"
        )
