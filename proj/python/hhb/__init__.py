"""Hyperbolic-harmonic function toolkit on the real unit ball."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, _run

COMMANDS = ("cm-table", "kernel-scan", "reproduce-check", "norm-equiv", "estimate-scan")


def run(command, **config):
    """Run a CLI experiment in process.

    Returns CSV text for cm-table, a (csv, summary) pair for norm-equiv and
    a dict for the JSON-producing commands.
    """
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    text, summary = _run(command, _json.dumps(config))
    if command == "cm-table":
        return text
    if command == "norm-equiv":
        return text, _json.loads(summary)
    return _json.loads(text)
