"""Run ASGI apps on background threads (tests, devstack)."""

from __future__ import annotations

import socket
import threading
import time

import httpx
import uvicorn


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


class ServerThread:
    """A uvicorn server on a daemon thread with readiness polling."""

    def __init__(self, app, port: int | None = None, host: str = "127.0.0.1"):
        self.host = host
        self.port = port or free_port()
        config = uvicorn.Config(app, host=host, port=self.port, log_level="warning", lifespan="off")
        self._server = uvicorn.Server(config)
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def start(self, ready_path: str = "/", timeout_sec: float = 10.0) -> "ServerThread":
        self._thread.start()
        deadline = time.monotonic() + timeout_sec
        while time.monotonic() < deadline:
            if self._server.started:
                try:
                    httpx.get(self.url + ready_path, timeout=1.0)
                    return self
                except httpx.HTTPError:
                    pass
            time.sleep(0.02)
        raise RuntimeError(f"server on {self.url} did not come up")

    def stop(self) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=5.0)
