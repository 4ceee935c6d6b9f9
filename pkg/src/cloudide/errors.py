"""Service error hierarchy and the error-code to HTTP-status mapping."""

from __future__ import annotations


class ServiceError(Exception):
    """Base for every error the service can surface to a client.

    `code` is the machine-readable name carried in API bodies; `http_status`
    is the status the API layer must answer with.
    """

    code = "InternalError"
    http_status = 500

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class AuthFailed(ServiceError):
    code = "AuthFailed"
    http_status = 401


class UnknownSession(ServiceError):
    code = "UnknownSession"
    http_status = 401


class Forbidden(ServiceError):
    code = "Forbidden"
    http_status = 403


class UnknownUser(ServiceError):
    code = "UnknownUser"
    http_status = 404


class UnknownPath(ServiceError):
    code = "UnknownPath"
    http_status = 404


class DuplicateUsername(ServiceError):
    code = "DuplicateUsername"
    http_status = 409


class AlreadyExists(ServiceError):
    code = "AlreadyExists"
    http_status = 409


class WeakPassword(ServiceError):
    code = "WeakPassword"
    http_status = 400


class InvalidEmail(ServiceError):
    code = "InvalidEmail"
    http_status = 400


class InvalidLimit(ServiceError):
    code = "InvalidLimit"
    http_status = 400


class PathRejected(ServiceError):
    code = "PathRejected"
    http_status = 400


class ParentMissing(ServiceError):
    code = "ParentMissing"
    http_status = 400


class NotAFile(ServiceError):
    code = "NotAFile"
    http_status = 400


class NotAFolder(ServiceError):
    code = "NotAFolder"
    http_status = 400


class UnsupportedExtension(ServiceError):
    code = "UnsupportedExtension"
    http_status = 400


class TooManyArgs(ServiceError):
    code = "TooManyArgs"
    http_status = 400


class InvalidRequest(ServiceError):
    code = "InvalidRequest"
    http_status = 400


class QuotaExceeded(ServiceError):
    code = "QuotaExceeded"
    http_status = 413


class RequestTooLarge(ServiceError):
    code = "RequestTooLarge"
    http_status = 413


class LimitReached(ServiceError):
    code = "LimitReached"
    http_status = 429


class ToolchainMissing(ServiceError):
    code = "ToolchainMissing"
    http_status = 500


class InternalSandboxError(ServiceError):
    code = "InternalSandboxError"
    http_status = 500


class InvalidCounts(ServiceError):
    """Harness-side: malformed detected/tested counts. Never crosses HTTP."""

    code = "InvalidCounts"
    http_status = 400


class EndpointUnreachable(ServiceError):
    """Harness-side: the service under test cannot be reached."""

    code = "EndpointUnreachable"
    http_status = 503


class VerificationFailed(ServiceError):
    """Harness-side: a suite could not even be set up (fixture account,
    empty case selection). Distinct from cases failing, which is a report."""

    code = "VerificationFailed"
    http_status = 500


# Total code -> status table, kept explicit so tests can assert it is
# exhaustive over everything the API may raise.
STATUS_BY_CODE = {
    cls.code: cls.http_status
    for cls in [
        AuthFailed, UnknownSession, Forbidden, UnknownUser, UnknownPath,
        DuplicateUsername, AlreadyExists, WeakPassword, InvalidEmail,
        InvalidLimit, PathRejected, ParentMissing, NotAFile, NotAFolder,
        UnsupportedExtension, TooManyArgs, InvalidRequest, QuotaExceeded,
        RequestTooLarge, LimitReached, ToolchainMissing, InternalSandboxError,
    ]
}
