"""Heisenberg-group Legendrian surfaces and varifold densities."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, _density_json
from ._core import run as _run


def density(varifold, center, radii, cutoff="poly"):
    """DensityReport as a dict."""
    return json.loads(_density_json(varifold, center, radii, cutoff))


def run(command, **options):
    """Runs a CLI command; returns (exit_code, report) with json reports parsed."""
    code, text = _run(command, **options)
    if code != 2 and options.get("format", "json") == "json":
        return code, json.loads(text)
    return code, text
