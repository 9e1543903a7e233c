"""Deterministic JSON report envelopes.

Envelopes are byte-stable for a fixed config: keys are sorted, floats go
through repr (shortest round-trip form), and the only nondeterministic field
is wall_time_s, which consumers strip before comparing.  File writes are
atomic (temp file + rename in the target directory).
"""

from __future__ import annotations

import json
import os
import tempfile
import time

from . import __version__

SCHEMA_VERSION = 1


def envelope(command: str, config: dict, results: dict, passed: bool,
             exit_status: int, started: float) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "artifact": {"name": "transvector", "version": __version__},
        "command": command,
        "config": config,
        "results": results,
        "summary": {"passed": bool(passed), "exit_status": int(exit_status)},
        "wall_time_s": time.perf_counter() - started,
    }


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def strip_wall_time(text: str) -> str:
    """Comparison form of a rendered report."""
    return "\n".join(line for line in text.splitlines()
                     if not line.lstrip().startswith('"wall_time_s"'))


def write_report(report: dict, path: str | None):
    """Render to path atomically, or to stdout when path is None."""
    text = render(report)
    if path is None:
        print(text, end="")
        return
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
