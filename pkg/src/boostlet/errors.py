"""Exception taxonomy shared by every module in the engine."""


class BoostletError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BoostletError):
    """Malformed buffer, kernel, mask, rect, manifest field, or URL."""


class DecodeError(BoostletError):
    """Byte stream is not a PNG this codec can read."""


class UnsupportedFormatError(DecodeError):
    """Well-formed PNG using a feature outside the 8-bit contract."""


class RegistrationError(BoostletError):
    """Adapter registered under a name that is already taken."""


class NoSurfaceError(BoostletError):
    """No drawing surface available in the probed environment."""


class AcquisitionError(BoostletError):
    """The active host could not produce a pixel snapshot."""


class CommitError(BoostletError):
    """Pixels rejected by the active host, e.g. on a dimension mismatch."""


class InteractionCancelled(BoostletError):
    """The user cancelled a request, or a scripted queue ran dry."""


class HttpError(BoostletError):
    """Base class for remote-processing failures."""


class RemoteError(HttpError):
    """Server completed the exchange with a non-2xx status."""

    def __init__(self, status: int, message: str = ""):
        super().__init__(message or f"remote returned status {status}")
        self.status = status


class HttpTimeoutError(HttpError):
    """No complete response arrived within the allowed time."""


class TransportError(HttpError):
    """Connection failed before a response arrived."""


class ConfigurationError(BoostletError):
    """Missing fixture, unreadable descriptor, or unusable invocation."""
