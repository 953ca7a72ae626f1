"""
Runtime settings for cerf-forge: constants, environment knobs, logging.

Environment:
    CERF_FORGE_THREADS    cap on internal parallelism (0 or unset = all cores)
    CERF_FORGE_LOG_LEVEL  stderr log level (default WARNING)

All diagnostics go to stderr with the `[cerf-forge]` tag; stdout is
reserved for reports.
"""

from __future__ import annotations

import logging
import os
import sys

from checks import CerfError

FORMAT_VERSION = "1.0.0"
SUPPORTED_VERSIONS = ("1.0.0",)

THREADS_ENV = "CERF_FORGE_THREADS"
LOG_LEVEL_ENV = "CERF_FORGE_LOG_LEVEL"

LOG_FORMAT = "[cerf-forge] %(levelname)s %(name)s: %(message)s"

# Brand palette shared by the SVG renderer and the dashboard.
COLORS = {
    "char": "#2D2926",
    "navy": "#074A7A",
    "green": "#85C79D",
    "pink": "#FE99A9",
    "yellow": "#F4C864",
    "sky": "#8EDDED",
    "cream": "#E7B78A",
    "mist": "#D7D2CB",
    "surface": "#fef9f1",
    "outline": "#7e7a71",
}


class SettingsError(CerfError):
    code = "BAD_SETTING"


def thread_count(environ: dict | None = None) -> int:
    """Resolve CERF_FORGE_THREADS to a positive worker count."""
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise SettingsError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise SettingsError(f"{THREADS_ENV} must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(f"cerf_forge.{name}")


def configure_logging(verbose: bool = False, environ: dict | None = None) -> None:
    """Attach the tagged stderr handler once. Safe to call repeatedly."""
    env = os.environ if environ is None else environ
    root = logging.getLogger("cerf_forge")
    level_name = "INFO" if verbose else env.get(LOG_LEVEL_ENV, "WARNING").upper()
    root.setLevel(getattr(logging, level_name, logging.WARNING))
    if not any(getattr(h, "_cerf_forge", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._cerf_forge = True  # type: ignore[attr-defined]
        root.addHandler(handler)
    root.propagate = False
