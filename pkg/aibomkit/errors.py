"""
Exception types raised by the aibomkit library.

Library functions raise these; only the command-line front end turns them
into exit codes and log lines.
"""

from typing import Optional


class AibomError(Exception):
    """Base class for every error raised by aibomkit."""


class UnknownToken(AibomError, ValueError):
    """An enumeration token does not match any member exactly."""

    def __init__(self, kind: str, token: str):
        self.kind = kind
        self.token = token
        super().__init__(f"Unknown {kind} token: {token!r}")


class BadTimestamp(AibomError, ValueError):
    """Text is not a UTC timestamp of the form YYYY-MM-DDThh:mm:ssZ."""

    def __init__(self, text: str, reason: str = "expected YYYY-MM-DDThh:mm:ssZ"):
        self.text = text
        self.reason = reason
        super().__init__(f"Bad timestamp {text!r}: {reason}")


class BadIri(AibomError, ValueError):
    """Text is not an absolute IRI."""

    def __init__(self, text: str, reason: str = "not an absolute IRI"):
        self.text = text
        self.reason = reason
        super().__init__(f"Bad IRI {text!r}: {reason}")


class DuplicateId(AibomError, LookupError):
    """Two elements of one document share an spdxId."""

    def __init__(self, spdx_id: str):
        self.spdx_id = spdx_id
        super().__init__(f"Duplicate spdxId: {spdx_id}")


class DocumentSyntaxError(AibomError, ValueError):
    """Input is not well-formed UTF-8 JSON."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


class MissingType(AibomError, ValueError):
    """An object node carries no "type" discriminator."""

    def __init__(self, location: str):
        self.location = location
        super().__init__(f"Object without \"type\" at {location}")


class DocumentTooLarge(AibomError, ValueError):
    """Input file exceeds the configured size limit."""


class UnknownFramework(AibomError, LookupError):
    """No bundled or configured ruleset has the requested id."""

    def __init__(self, framework_id: str):
        self.framework_id = framework_id
        super().__init__(f"Unknown framework: {framework_id}")


class UnknownFixture(AibomError, LookupError):
    """The fixture corpus has no entry with the requested name."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown fixture: {name}")
