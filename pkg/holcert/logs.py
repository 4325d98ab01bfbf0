r"""
Logging utilities that make it easier to simultaneously log to a file and standard output.

Notes
-----
#.  Split out of utils by David C. Stauffer in July 2019.
#.  Extended for the holcert library with stage timing for the verification pipeline.
"""

# %% Imports
from __future__ import annotations

from contextlib import contextmanager
import datetime
import doctest
import logging
from pathlib import Path
import time
from typing import Any, Iterator
import unittest

from holcert.enums import LogLevel

# %% Globals
root_logger = logging.getLogger("")
this_logger = logging.getLogger(__name__)

SCREEN_FORMAT = "Log:%(levelname)s: %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# %% Functions - activate_logging
def activate_logging(
    log_level: int = logging.INFO, filename: str | Path | None = None, *, file_level: int | None = None
) -> None:
    r"""
    Set up logging to the screen and optionally to a file.

    The screen handler writes to standard error so that a report printed to standard output stays
    parseable.

    Parameters
    ----------
    log_level : int
        Level of logging, LogLevel.L3 shows per-check outcomes and LogLevel.L8 per-order statistics
    filename : pathlib.Path, optional
        File to log to, if empty, only log to the screen
    file_level : int, optional
        Level of logging for the file, if not specified, use the same as the screen logger

    Examples
    --------
    >>> from holcert import activate_logging, deactivate_logging, LogLevel
    >>> import logging
    >>> activate_logging(log_level=LogLevel.L3)
    >>> logging.log(LogLevel.L3, "metric.symmetric: pass")  # doctest: +SKIP
    >>> deactivate_logging()

    """
    if file_level is None:
        file_level = log_level

    deactivate_logging()

    root_logger.setLevel(min(log_level, file_level))

    if filename:
        fh = logging.FileHandler(Path(filename), encoding="utf-8")
        fh.setLevel(file_level)
        fh.setFormatter(logging.Formatter(FILE_FORMAT))
        root_logger.addHandler(fh)

    ch = logging.StreamHandler()
    ch.setLevel(log_level)
    ch.setFormatter(logging.Formatter(SCREEN_FORMAT))
    root_logger.addHandler(ch)
    this_logger.log(LogLevel.L8, "Logging configured to level %s at %s", log_level, datetime.datetime.now())


# %% Functions - deactivate_logging
def deactivate_logging() -> None:
    r"""
    Tear down logging.

    Examples
    --------
    >>> from holcert import deactivate_logging
    >>> deactivate_logging()

    """
    max_handlers = 50
    i = 0
    while root_logger.handlers and i < max_handlers:
        handler = root_logger.handlers.pop()
        handler.flush()
        handler.close()
        root_logger.removeHandler(handler)
        i += 1
    if i == max_handlers or bool(root_logger.handlers):
        raise ValueError("Something bad happended when trying to close the logger.")  # pragma: no cover


# %% Functions - flush_logging
def flush_logging() -> None:
    r"""
    Flush the loggers.

    Examples
    --------
    >>> from holcert import flush_logging
    >>> flush_logging()

    """
    for handler in root_logger.handlers:
        handler.flush()


# %% Functions - log_multiline
def log_multiline(logger: logging.Logger, log_level: int, message: Any, *args: Any) -> None:
    r"""
    Passes messages through to the logger with options for multiline messages.

    Parameters
    ----------
    logger : class logging.Logger
        Logger
    log_level : int
        Log level
    message : str or list[str] or object
        Value to log, sympy matrices and reports are split on their line breaks
    args : list of additional arguments to log
        Additional options to log

    Examples
    --------
    >>> from holcert import activate_logging, deactivate_logging, log_multiline, LogLevel
    >>> import logging
    >>> logger = logging.getLogger("Test")
    >>> activate_logging(LogLevel.L5)
    >>> log_multiline(logger, LogLevel.L5, "Multi-line\nmessage") # doctest: +SKIP

    >>> deactivate_logging()

    """

    def _get_message_list(message: Any) -> list[str]:
        if isinstance(message, list):
            if all(isinstance(x, str) for x in message):
                return message
            return [str(message)]
        if isinstance(message, str):
            return message.split("\n")
        return str(message).split("\n")

    all_msg = _get_message_list(message)
    for x in args:
        all_msg.extend(_get_message_list(x))
    for msg in all_msg:
        logger.log(log_level, msg)


# %% Functions - log_timing
@contextmanager
def log_timing(label: str, timings: dict[str, float] | None = None, *, log_level: int = LogLevel.L5) -> Iterator[None]:
    r"""
    Time a pipeline stage, log the elapsed time and optionally record it.

    Parameters
    ----------
    label : str
        Name of the stage, used as the key in timings
    timings : dict, optional
        Dictionary that receives the elapsed seconds under label
    log_level : int, optional
        Level for the completion message

    Examples
    --------
    >>> from holcert import log_timing
    >>> timings = {}
    >>> with log_timing("stage", timings):
    ...     pass
    >>> print("stage" in timings)
    True

    """
    this_logger.log(LogLevel.L8, "Starting %s", label)
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        if timings is not None:
            timings[label] = elapsed
        this_logger.log(log_level, "Finished %s in %.3f s", label, elapsed)


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_logs", exit=False)
    doctest.testmod(verbose=False)
