"""Streaming service: telemetry frames out, key commands in.

One asyncio task owns the simulation and is the only thing that
advances it. Connection handlers never touch simulation state; they
push parsed commands onto a queue that the ticker drains at the top of
each frame interval, so commands land exactly on tick boundaries.

Wire protocol (one JSON object per message):
  server -> client  {"type": "telemetry", ...telemetry fields...}
                    {"type": "error", "msg": "..."}
  client -> server  {"type": "key", "key": 1..5}
                    {"type": "pause"} | {"type": "resume"} | {"type": "reset"}

The ticker advances the simulation to round(active_wall_time * speed)
milliseconds each frame, so real-time drift never accumulates; pausing
stops the active clock rather than the loop.
"""

import asyncio
import json
import threading

from websockets.asyncio.server import broadcast, serve

from .harness import Simulation, record_to_dict

DEFAULT_FRAME_MS = 50


class TelemetryServer:
    def __init__(self, cfg=None, port=0, host="127.0.0.1",
                 frame_ms=DEFAULT_FRAME_MS, speed=1.0, initial=None):
        if frame_ms <= 0:
            raise ValueError("frame_ms must be positive")
        if speed <= 0:
            raise ValueError("speed must be positive")
        self.cfg = cfg
        self.host = host
        self.port = port
        self.frame_ms = frame_ms
        self.speed = speed
        self.initial = initial
        self.sim = Simulation(cfg, initial)
        self.paused = False
        self.bound_port = None
        self._clients = set()
        self._commands = None   # asyncio.Queue, created on start
        self._server = None
        self._ticker = None
        self._active_s = 0.0    # unpaused wall time consumed so far

    async def start(self):
        self._commands = asyncio.Queue()
        self._server = await serve(self._handler, self.host, self.port)
        self.bound_port = self._server.sockets[0].getsockname()[1]
        self._ticker = asyncio.create_task(self._run())

    async def stop(self):
        if self._ticker is not None:
            self._ticker.cancel()
            try:
                await self._ticker
            except asyncio.CancelledError:
                pass
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()

    async def _handler(self, ws):
        self._clients.add(ws)
        try:
            async for message in ws:
                try:
                    cmd = self._parse(message)
                except ValueError as exc:
                    await ws.send(json.dumps(
                        {"type": "error", "msg": str(exc)}))
                    continue
                await self._commands.put(cmd)
        finally:
            self._clients.discard(ws)

    @staticmethod
    def _parse(message):
        try:
            data = json.loads(message)
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise ValueError("message is not valid JSON") from None
        if not isinstance(data, dict):
            raise ValueError("message must be a JSON object")
        kind = data.get("type")
        if kind == "key":
            key = data.get("key")
            if key not in (1, 2, 3, 4, 5):
                raise ValueError("key must be 1..5")
            return ("key", key)
        if kind in ("pause", "resume", "reset"):
            return (kind, None)
        raise ValueError(f"unknown command type: {kind!r}")

    def _apply(self, cmd):
        kind, arg = cmd
        if kind == "key":
            self.sim.apply_key(arg)
        elif kind == "pause":
            self.paused = True
        elif kind == "resume":
            self.paused = False
        elif kind == "reset":
            self.sim = Simulation(self.cfg, self.initial)
            self._active_s = 0.0

    async def _run(self):
        loop = asyncio.get_running_loop()
        frame_s = self.frame_ms / 1000.0
        last = loop.time()
        while True:
            await asyncio.sleep(frame_s)
            now = loop.time()
            if not self.paused:
                self._active_s += now - last
            last = now
            # Commands queued during the previous frame land here, on a
            # tick boundary, in arrival order.
            while not self._commands.empty():
                self._apply(self._commands.get_nowait())
            target_ms = round(self._active_s * 1000.0 * self.speed)
            while self.sim.t_ms < target_ms:
                self.sim.tick()
            frame = record_to_dict(self.sim.record())
            frame["type"] = "telemetry"
            broadcast(self._clients, json.dumps(frame))


async def serve_forever(cfg=None, port=0, host="127.0.0.1",
                        frame_ms=DEFAULT_FRAME_MS, speed=1.0):
    """Run a telemetry server until cancelled; prints the bound port."""
    server = TelemetryServer(cfg, port=port, host=host,
                             frame_ms=frame_ms, speed=speed)
    await server.start()
    print(f"serving on ws://{host}:{server.bound_port}", flush=True)
    try:
        await asyncio.Future()
    finally:
        await server.stop()


class ServerThread:
    """Run a TelemetryServer on a background event loop (for tests).

    Use as a context manager; `port` is available once entered.
    """

    def __init__(self, cfg=None, frame_ms=DEFAULT_FRAME_MS, speed=1.0,
                 initial=None):
        self._kwargs = dict(cfg=cfg, frame_ms=frame_ms, speed=speed,
                            initial=initial)
        self._loop = None
        self._thread = None
        self.server = None
        self.port = None

    def __enter__(self):
        started = threading.Event()

        def main():
            self._loop = asyncio.new_event_loop()
            asyncio.set_event_loop(self._loop)
            self.server = TelemetryServer(port=0, **self._kwargs)
            self._loop.run_until_complete(self.server.start())
            self.port = self.server.bound_port
            started.set()
            self._loop.run_forever()

        self._thread = threading.Thread(target=main, daemon=True)
        self._thread.start()
        if not started.wait(timeout=10.0):
            raise RuntimeError("server thread failed to start")
        return self

    def __exit__(self, *exc):
        async def shutdown():
            await self.server.stop()

        fut = asyncio.run_coroutine_threadsafe(shutdown(), self._loop)
        fut.result(timeout=10.0)
        self._loop.call_soon_threadsafe(self._loop.stop)
        self._thread.join(timeout=10.0)
        self._loop.close()
        return False
