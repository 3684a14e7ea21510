import random
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from boostlet import PixelBuffer


def random_buffer(rng: random.Random, max_side: int = 16, channels: int | None = None) -> PixelBuffer:
    width = rng.randint(1, max_side)
    height = rng.randint(1, max_side)
    if channels is None:
        channels = rng.choice((1, 4))
    data = bytes(rng.randrange(256) for _ in range(width * height * channels))
    return PixelBuffer(width, height, channels, data)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xB005)


class _FixtureHandler(BaseHTTPRequestHandler):
    """Local stand-in for a remote processing service. No external network."""

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length)
        if self.path == "/echo":
            self._respond(200, body, self.headers.get("Content-Type", "application/octet-stream"))
        elif self.path.startswith("/status/"):
            self._respond(int(self.path.rsplit("/", 1)[1]), b"status fixture")
        elif self.path.startswith("/delay/"):
            time.sleep(float(self.path.rsplit("/", 1)[1]))
            self._respond(200, body)
        elif self.path.startswith("/canned/"):
            data = self.server.canned.get(self.path.rsplit("/", 1)[1])
            if data is None:
                self._respond(404, b"no canned response under that key")
            else:
                self._respond(200, data)
        else:
            self._respond(404, b"unknown fixture path")

    def _respond(self, status, body, content_type="application/octet-stream"):
        try:
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
        except (BrokenPipeError, ConnectionResetError):
            pass  # client gave up (timeout tests)

    def log_message(self, *args):
        pass


class _QuietServer(ThreadingHTTPServer):
    daemon_threads = True

    def handle_error(self, request, client_address):
        pass  # client-side timeouts are expected in these tests


class HttpFixture:
    def __init__(self, server: _QuietServer):
        self.server = server
        self.base_url = f"http://127.0.0.1:{server.server_address[1]}"
        self.canned = server.canned

    def url(self, path: str) -> str:
        return self.base_url + path


@pytest.fixture(scope="session")
def http_fixture():
    server = _QuietServer(("127.0.0.1", 0), _FixtureHandler)
    server.canned = {}
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield HttpFixture(server)
    finally:
        server.shutdown()
