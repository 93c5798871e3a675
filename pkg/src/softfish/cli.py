"""Command line front end.

  softfish run --scenario s.json --out run.csv [--decimation-ms 10]
               [--config cfg.json]
  softfish serve [--port 8765] [--host 127.0.0.1] [--speed 1.0]
                 [--frame-ms 50] [--config cfg.json]
  softfish calibrate-actuator [--config cfg.json]

`run` executes a scenario and writes CSV telemetry (use "-" for
stdout); the run summary is printed to stdout as JSON. `serve` streams
frames to operator consoles over a WebSocket. `calibrate-actuator`
fits the load gain to the 40 mm full-load tip-deflection anchor and
prints the fitted value.
"""

import argparse
import asyncio
import json
import sys

from . import server, tail_actuator
from .config import load_config
from .harness import ScenarioError, load_scenario, run_scenario, write_csv


def _build_parser():
    p = argparse.ArgumentParser(
        prog="softfish",
        description="Soft robotic fish digital twin")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario to CSV telemetry")
    run.add_argument("--scenario", required=True, help="scenario JSON file")
    run.add_argument("--out", required=True,
                     help="output CSV path, or - for stdout")
    run.add_argument("--decimation-ms", type=int, default=10,
                     help="milliseconds between telemetry records")
    run.add_argument("--config", default=None, help="config JSON file")

    srv = sub.add_parser("serve", help="stream telemetry over a WebSocket")
    srv.add_argument("--port", type=int, default=8765,
                     help="TCP port (0 picks a free one)")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--speed", type=float, default=1.0,
                     help="simulation seconds per wall second")
    srv.add_argument("--frame-ms", type=int, default=server.DEFAULT_FRAME_MS,
                     help="telemetry frame interval")
    srv.add_argument("--config", default=None, help="config JSON file")

    cal = sub.add_parser("calibrate-actuator",
                         help="fit the load gain to the 40 mm anchor")
    cal.add_argument("--config", default=None, help="config JSON file")
    return p


def _cmd_run(args):
    cfg = load_config(args.config)
    try:
        sc = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    records, summary = run_scenario(sc, cfg, decimation_ms=args.decimation_ms)
    if args.out == "-":
        write_csv(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    print(json.dumps(summary))
    return 1 if summary["fault"] else 0


def _cmd_serve(args):
    cfg = load_config(args.config)
    try:
        asyncio.run(server.serve_forever(
            cfg, port=args.port, host=args.host,
            frame_ms=args.frame_ms, speed=args.speed))
    except KeyboardInterrupt:
        pass
    return 0


def _cmd_calibrate(args):
    cfg = load_config(args.config)
    gain = tail_actuator.calibrate_gain(cfg.geometry, cfg.material)
    print(f"calibration_gain = {gain!r}")
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "serve":
            return _cmd_serve(args)
        return _cmd_calibrate(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
