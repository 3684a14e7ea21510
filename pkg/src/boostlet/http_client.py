"""HTTP POST client for remote processing services.

Failures map onto a small taxonomy so plugin runs can report precisely why a
remote exchange failed: bad URL (no network touched), timeout, transport
failure, or a completed exchange with a non-2xx status.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from urllib.parse import urlparse

import requests

from .errors import HttpTimeoutError, RemoteError, TransportError, ValidationError

DEFAULT_TIMEOUT_SECONDS = 30.0
TIMEOUT_ENV_VAR = "BOOSTLET_HTTP_TIMEOUT"

PNG_MEDIA_TYPE = "image/png"


@dataclass(frozen=True)
class HttpExchange:
    """Record of one completed POST: request, response, and the time budget."""

    url: str
    request_body: bytes
    request_content_type: str
    status: int
    response_body: bytes
    timeout: float


def default_timeout() -> float:
    """Default exchange budget in seconds; overridable via the environment."""
    raw = os.environ.get(TIMEOUT_ENV_VAR)
    if raw is None:
        return DEFAULT_TIMEOUT_SECONDS
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValidationError(f"{TIMEOUT_ENV_VAR} must be a number, got {raw!r}") from exc
    if value <= 0:
        raise ValidationError(f"{TIMEOUT_ENV_VAR} must be > 0, got {value}")
    return value


def send_http_post(
    url: str,
    body: bytes,
    content_type: str = "application/octet-stream",
    timeout: float | None = None,
) -> HttpExchange:
    """POST a byte body and return the completed exchange on any 2xx status.

    Malformed URLs fail before any network activity. Non-2xx responses raise
    RemoteError carrying the status and the completed exchange.
    """
    if timeout is None:
        timeout = default_timeout()
    if timeout <= 0:
        raise ValidationError(f"timeout must be > 0, got {timeout}")
    parsed = urlparse(url)
    if parsed.scheme not in ("http", "https") or not parsed.netloc:
        raise ValidationError(f"not an absolute http(s) URL: {url!r}")

    try:
        response = requests.post(
            url,
            data=body,
            headers={"Content-Type": content_type},
            timeout=timeout,
        )
    except requests.Timeout as exc:
        raise HttpTimeoutError(f"no response from {url} within {timeout}s") from exc
    except requests.ConnectionError as exc:
        raise TransportError(f"connection to {url} failed: {exc}") from exc
    except requests.RequestException as exc:
        raise TransportError(f"exchange with {url} failed: {exc}") from exc

    exchange = HttpExchange(
        url=url,
        request_body=bytes(body),
        request_content_type=content_type,
        status=response.status_code,
        response_body=response.content,
        timeout=timeout,
    )
    if not 200 <= response.status_code < 300:
        error = RemoteError(response.status_code)
        error.exchange = exchange
        raise error
    return exchange
