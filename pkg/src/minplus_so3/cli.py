"""Command-line front end.

``run`` resolves a config file plus flag overrides, executes the scenario,
writes the per-step CSV, and prints a summary block.  With ``--server`` it
sends the same settings to a running service instead and writes the CSV the
service returns, so both paths produce identical bytes.  ``serve`` starts
the HTTP service.

Exit codes: 0 success, 2 bad config, 3 I/O or server failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from .config import ConfigError, parse_config_text, resolve_run
from .csvio import parse_csv, render_csv
from .metrics import RunSummary, summarize
from .runner import run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _collect_settings(args: argparse.Namespace) -> dict[str, Any]:
    settings: dict[str, Any] = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            settings = parse_config_text(fh.read())
    if args.preset is not None:
        settings["scenario"] = args.preset
    if args.seed is not None:
        settings["seed"] = args.seed
    return settings


def _remote_csv(server: str, settings: dict[str, Any]) -> bytes:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/runs/csv", json=settings, timeout=300.0)
    if resp.status_code == 400:
        raise ConfigError("request", resp.json().get("detail", "rejected by server"))
    resp.raise_for_status()
    return resp.content


def _print_summary(name: str, summary: RunSummary, out_path: str) -> None:
    print(f"scenario: {name}")
    print(f"steps: {summary.steps}")
    print(f"mean tracking error: {summary.mean_te:.6f}")
    print(f"max tracking error: {summary.max_te:.6f}")
    print(f"mean measurement noise: {summary.mean_meas_noise:.6f}")
    print(f"final tracking error: {summary.final_te:.6f}")
    print(f"wrote: {out_path}")


def cmd_run(args: argparse.Namespace) -> int:
    try:
        settings = _collect_settings(args)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read config: {exc}")
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, str(exc))

    try:
        if args.server is not None:
            data = _remote_csv(args.server, settings)
            records = parse_csv(data)
            name = settings.get("scenario", "custom")
            summary = summarize(records)
        else:
            setup, records, summary = _run_local(settings)
            name = setup.name
            data = render_csv(records)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    except Exception as exc:  # connection/protocol failures from the server path
        return _fail(EXIT_IO, f"server request failed: {exc}")

    try:
        with open(args.out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write output: {exc}")

    _print_summary(name, summary, args.out)
    return EXIT_OK


def _run_local(settings: dict[str, Any]):
    setup = resolve_run(settings)
    records, summary = run(setup)
    return setup, records, summary


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("minplus_so3.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minplus-so3")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a scenario, filter it, write per-step CSV")
    p_run.add_argument("--config", help="key = value settings file")
    p_run.add_argument("--out", required=True, help="output CSV path")
    p_run.add_argument("--preset", help="scenario preset name (overrides config)")
    p_run.add_argument("--seed", type=int, help="RNG seed (overrides config)")
    p_run.add_argument("--server", help="base URL of a running service; run there instead")
    p_run.set_defaults(func=cmd_run)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
