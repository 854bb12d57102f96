"""Logging setup for hadamard-inverse.

Handlers attach to the ``hadamard_inverse`` package logger rather than the root logger, so
embedding applications keep their own configuration. numpy floating-point events raised
inside :func:`floating_point_logged` become DEBUG records instead of warnings; underflow
stays ignored.
"""

__all__ = ["PACKAGE_LOGGER", "floating_point_logged", "get_logger", "setup_logging"]

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "hadamard_inverse"

_FILE_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


def setup_logging(
    level: int | str = logging.WARNING,
    log_file: Path | None = None,
    console: Console | None = None,
) -> logging.Logger:
    """Attach a rich stderr handler (and optionally a file handler) to the package logger.

    Calling it again replaces the handlers installed by the previous call.

    Args:
        level: Level number or name such as ``"INFO"``
        log_file: Also write plain-text records here
        console: Rich console for the terminal handler; a stderr console by default so
            stdout stays free for artifacts

    Returns:
        The configured package logger
    """
    if isinstance(level, str):
        level = logging.getLevelNamesMapping()[level.upper()]

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
        handler.close()

    package_logger.addHandler(
        RichHandler(
            console=console or Console(stderr=True),
            rich_tracebacks=True,
            show_time=level <= logging.INFO,
            show_path=level <= logging.DEBUG,
            markup=False,
        )
    )
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(_FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        package_logger.addHandler(file_handler)

    package_logger.setLevel(level)
    # ledger writes are routine
    logging.getLogger("tinydb").setLevel(logging.WARNING)
    return package_logger


def get_logger(name: str) -> logging.Logger:
    """Logger below the package namespace; bare names are prefixed with ``hadamard_inverse.``."""
    if name == PACKAGE_LOGGER or name.startswith(PACKAGE_LOGGER + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{PACKAGE_LOGGER}.{name}")


@contextmanager
def floating_point_logged(name: str = "numerics") -> Iterator[logging.Logger]:
    """Route numpy overflow, invalid and divide events to a DEBUG log record.

    Explicit ``np.errstate`` blocks nested inside still take precedence.
    """
    fp_logger = get_logger(name)

    def report(kind: str, flag: int) -> None:
        fp_logger.debug(f"numpy floating-point event: {kind} (flag {flag})")

    with np.errstate(divide="call", over="call", invalid="call", call=report):
        yield fp_logger
