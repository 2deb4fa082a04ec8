"""exceptions.py"""


class SsliError(Exception):
    """
    Base exception for all ssli-verifier errors.

    Extends the standard Exception class with a code attribute. The code is the
    process exit status the CLI uses when the error escapes a command.

    Properties:
        code (int | None): An optional error code, used as exit status by the CLI.
    """
    code: int | None = None

    def __init__(self, message: str = None, code: int | None = None):
        """Initializes the SsliError with an optional message and code.

        Args:
            :param message: (str, optional):     Error message. If empty or None, defaults to "SSLI error".
            :param code: (int | None, optional): An error code, used as exit status by the CLI.
        """
        super().__init__(message if message and message.strip() else "SSLI error")
        self.code = code

    def __str__(self) -> str:
        """Returns a string representation of the error, including the code if present.

        Returns:
            str: Error message, optionally with code information.
        """
        s = super().__str__()

        return f"{s} (code: {self.code})" if self.code else s


class UsageError(SsliError):
    """Invalid command-line usage or invalid run parameters (grid, campaign)."""

    def __init__(self, message: str = None, code: int | None = 64):
        super().__init__(message if message and message.strip() else "Usage error", code)


class InputParseError(SsliError):
    """Input could not be parsed: malformed JSON or a JSON value of the wrong shape."""

    def __init__(self, message: str = None, code: int | None = 65):
        super().__init__(message if message and message.strip() else "Input parse error", code)


class InputNotFoundError(SsliError):
    """An input file named on the command line does not exist."""

    def __init__(self, message: str = None, code: int | None = 66):
        super().__init__(message if message and message.strip() else "Input not found", code)


class ArgumentError(SsliError):
    """Exception class for violated operation preconditions.

    Raised for wrong tuple lengths, out-of-range indices, arguments outside an
    operation's interval, unequal sums where equal sums are required.
    """

    def __init__(self, message: str = None, code: int | None = 67):
        """Initializes the ArgumentError with an optional message and code.

        :param message: (str, optional):     Error message. If empty or None, defaults to "Invalid argument".
        :param code: (int | None, optional): An error code, used as exit status by the CLI.
        """
        super().__init__(message if message and message.strip() else "Invalid argument", code)


class DomainError(SsliError):
    """Exception class for inputs outside the mathematical domain of an operation.

    Non-SPD matrices for the SPD logarithm, singular matrices for the polar
    decomposition, non-positive determinants for the geodesic distance and
    matrices without a principal logarithm all land here.
    """

    def __init__(self, message: str = None, code: int | None = 68):
        """Initializes the DomainError with an optional message and code.

        :param message: (str, optional):     Error message. If empty or None, defaults to "Domain error".
        :param code: (int | None, optional): An error code, used as exit status by the CLI.
        """
        super().__init__(message if message and message.strip() else "Domain error", code)


class TheoremViolationError(SsliError):
    """A statement that is proved to hold failed numerically."""

    def __init__(self, message: str = None, code: int | None = 1):
        super().__init__(message if message and message.strip() else "Theorem violation", code)


class ConfigError(SsliError):
    """Exception class for unreadable or invalid configuration files."""

    def __init__(self, message: str = None, code: int | None = 78):
        super().__init__(message if message and message.strip() else "Configuration error", code)


class FileAccessError(SsliError):
    """An input or output file exists but cannot be read or written: a directory, missing permissions, a missing
    parent directory for an output file."""

    def __init__(self, message: str = None, code: int | None = 74):
        super().__init__(message if message and message.strip() else "File access error", code)
